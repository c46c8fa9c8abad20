import pytest
from hypothesis import given, strategies as st

from pohp.errors import CyclicOrderError, NotAPermutationError
from pohp.orders import close_order, is_linear_extension


def test_transitivity():
    # {(a,b),(b,c)} closes to {(a,b),(b,c),(a,c)}
    order = close_order(3, [(0, 1), (1, 2)])
    assert sorted(order.pairs()) == [(0, 1), (0, 2), (1, 2)]


def test_empty_relation():
    order = close_order(4, [])
    assert list(order.pairs()) == []
    assert order.minimal_mask() == 0b1111


def test_antisymmetry_violation():
    with pytest.raises(CyclicOrderError):
        close_order(2, [(0, 1), (1, 0)])


def test_longer_cycle_detected():
    with pytest.raises(CyclicOrderError):
        close_order(3, [(0, 1), (1, 2), (2, 0)])


def test_linear_extension_basic():
    order = close_order(3, [(0, 2)])
    assert is_linear_extension((0, 1, 2), order)
    assert not is_linear_extension((2, 1, 0), order)


def test_linear_extension_empty_order():
    order = close_order(3, [])
    for seq in ((0, 1, 2), (2, 0, 1), (1, 2, 0)):
        assert is_linear_extension(seq, order)


def test_not_a_permutation():
    order = close_order(3, [])
    with pytest.raises(NotAPermutationError):
        is_linear_extension((0, 1), order)
    with pytest.raises(NotAPermutationError):
        is_linear_extension((0, 1, 1), order)


@st.composite
def acyclic_pairs(draw):
    n = draw(st.integers(min_value=1, max_value=7))
    perm = draw(st.permutations(range(n)))
    pairs = []
    for i in range(n):
        for j in range(i + 1, n):
            if draw(st.booleans()):
                pairs.append((perm[i], perm[j]))
    return n, pairs


@given(acyclic_pairs())
def test_close_order_idempotent(data):
    n, pairs = data
    once = close_order(n, pairs)
    twice = close_order(n, list(once.pairs()))
    assert once == twice


@given(acyclic_pairs())
def test_prefix_contains_predecessors(data):
    # for any accepted sequence, every prefix contains Pred(v) of its members
    n, pairs = data
    order = close_order(n, pairs)
    # topological sequence: repeatedly take an available vertex
    placed = 0
    seq = []
    while len(seq) < n:
        for v in range(n):
            if not placed >> v & 1 and not order.pred[v] & ~placed:
                seq.append(v)
                placed |= 1 << v
                break
    assert is_linear_extension(tuple(seq), order)
    prefix = 0
    for v in seq:
        assert not order.pred[v] & ~prefix
        prefix |= 1 << v
