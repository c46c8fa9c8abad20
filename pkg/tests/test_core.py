import pytest

from pohp.graphs import Graph
from pohp.instances import Solution, solution_from_indices, validate_solution
from pohp.oracle import oracle_enumerate, oracle_solve

from helpers import build_instance


def test_graph_rejects_self_loop_and_parallel():
    g = Graph(["a", "b"])
    g.add_edge("a", "b", 3)
    with pytest.raises(ValueError):
        g.add_edge("a", "a")
    with pytest.raises(ValueError):
        g.add_edge("b", "a")
    assert g.weight_idx(0, 1) == 3


def test_validate_cycle_ok():
    inst = build_instance(
        "abcd", [("a", "b"), ("b", "c"), ("c", "d"), ("d", "a")],
        [("a", "c")], kind="cycle")
    sol = Solution(("a", "b", "c", "d"), 0, "cycle")
    assert validate_solution(inst, sol).valid


def test_validate_cycle_order_violation():
    inst = build_instance(
        "abcd", [("a", "b"), ("b", "c"), ("c", "d"), ("d", "a")],
        [("a", "c")], kind="cycle")
    sol = Solution(("b", "c", "d", "a"), 0, "cycle")
    report = validate_solution(inst, sol)
    assert not report.valid
    assert report.violation == "sequence is not a linear extension"


def test_validate_path_reversed_constraint():
    inst = build_instance("abc", [("a", "b"), ("b", "c")], [("c", "a")], kind="path")
    sol = Solution(("c", "b", "a"), 0, "path")
    assert validate_solution(inst, sol).valid


def test_validate_adjacency_and_weight():
    inst = build_instance("abc", [("a", "b", 2), ("b", "c", 5)], kind="path")
    assert not validate_solution(inst, Solution(("a", "c", "b"), 0, "path")).valid
    assert not validate_solution(inst, Solution(("a", "b", "c"), 6, "path")).valid
    assert validate_solution(inst, Solution(("a", "b", "c"), 7, "path")).valid


def test_oracle_path_endpoints_blocked():
    # both endpoints would have to precede b
    inst = build_instance("abc", [("a", "b"), ("b", "c")], [("b", "a"), ("b", "c")])
    assert oracle_solve(inst).status == "infeasible"


def test_oracle_cycle_feasible():
    inst = build_instance(
        "abcd", [("a", "b"), ("b", "c"), ("c", "d"), ("d", "a")],
        [("a", "c"), ("b", "d")], kind="cycle")
    res = oracle_solve(inst)
    assert res.status == "feasible"
    assert validate_solution(inst, res.solution).valid


def test_oracle_weighted_path_optimum():
    inst = build_instance(
        "abc", [("a", "b", 1), ("b", "c", 2), ("c", "a", 3)], [("a", "b")])
    res = oracle_solve(inst)
    assert res.status == "feasible"
    assert res.solution.weight == 3
    assert res.solution.order == ("a", "b", "c")


def test_oracle_degenerate_sizes():
    # n = 1: path feasible, cycle infeasible; n = 2 cycle infeasible
    one = build_instance("a", [], kind="path")
    assert oracle_solve(one).status == "feasible"
    one_cycle = build_instance("a", [], kind="cycle")
    assert oracle_solve(one_cycle).status == "infeasible"
    two_cycle = build_instance("ab", [("a", "b")], kind="cycle")
    assert oracle_solve(two_cycle).status == "infeasible"


def test_oracle_enumeration_matches_permutation_filter():
    import itertools
    import random

    from pohp.orders import is_linear_extension

    rng = random.Random(7)
    from helpers import random_instance_from_layout

    for trial in range(20):
        n = rng.randint(3, 6)
        inst = random_instance_from_layout(
            n, width=3, density=0.3, rng=rng,
            kind=rng.choice(["path", "cycle"]))
        found = set(oracle_enumerate(inst))
        g, order = inst.graph, inst.order
        expected = set()
        for perm in itertools.permutations(range(n)):
            if not is_linear_extension(perm, order):
                continue
            if any(not g.has_edge_idx(a, b) for a, b in zip(perm, perm[1:])):
                continue
            if inst.kind == "cycle" and not g.has_edge_idx(perm[-1], perm[0]):
                continue
            expected.add(perm)
        assert found == expected


def test_oracle_monotone_pruning():
    # adding constraints never turns infeasible into feasible
    import random

    from pohp.orders import close_order
    from pohp.instances import Instance
    from helpers import random_instance_from_layout

    rng = random.Random(11)
    for trial in range(30):
        n = rng.randint(4, 7)
        inst = random_instance_from_layout(n, 3, 0.2, rng, kind="cycle")
        base = oracle_solve(inst)
        extra = [(rng.randrange(n), rng.randrange(n)) for _ in range(2)]
        pairs = list(inst.order.pairs()) + [(a, b) for a, b in extra if a != b]
        try:
            stronger = close_order(n, pairs)
        except Exception:
            continue
        res = oracle_solve(Instance(inst.graph, stronger, inst.kind))
        if base.status == "infeasible":
            assert res.status == "infeasible"


def test_solution_from_indices_weights_cycle():
    inst = build_instance(
        "abc", [("a", "b", 1), ("b", "c", 2), ("c", "a", 3)], kind="cycle")
    sol = solution_from_indices(inst, (0, 1, 2))
    assert sol.weight == 6
