"""Strict partial orders over dense vertex indices.

The order is stored transitively closed as successor/predecessor bitmasks,
so every precedence question used by the solvers is one mask operation.
Reflexive pairs are dropped: the order is irreflexive by construction and
closing a relation that would force u < u raises CyclicOrderError.
"""

from __future__ import annotations

from .errors import CyclicOrderError, NotAPermutationError
from .graphs import mask_to_indices


class PartialOrder:
    __slots__ = ("n", "succ", "pred", "_full")

    def __init__(self, n: int, succ):
        self.n = n
        self.succ = list(succ)
        self.pred = [0] * n
        for u in range(n):
            mask = self.succ[u]
            while mask:
                low = mask & -mask
                self.pred[low.bit_length() - 1] |= 1 << u
                mask ^= low
        self._full = (1 << n) - 1

    def less(self, u: int, v: int) -> bool:
        return bool(self.succ[u] >> v & 1)

    def pairs(self):
        for u in range(self.n):
            for v in mask_to_indices(self.succ[u]):
                yield (u, v)

    def pair_count(self) -> int:
        return sum(bin(s).count("1") for s in self.succ)

    def minimal_mask(self) -> int:
        mask = 0
        for v in range(self.n):
            if not self.pred[v]:
                mask |= 1 << v
        return mask

    def maximal_mask(self) -> int:
        mask = 0
        for v in range(self.n):
            if not self.succ[v]:
                mask |= 1 << v
        return mask

    def succ_union(self, mask: int) -> int:
        out = 0
        for v in mask_to_indices(mask):
            out |= self.succ[v]
        return out

    def pred_union(self, mask: int) -> int:
        out = 0
        for v in mask_to_indices(mask):
            out |= self.pred[v]
        return out

    def __eq__(self, other):
        return isinstance(other, PartialOrder) and self.n == other.n and self.succ == other.succ

    def __repr__(self):
        return f"PartialOrder(n={self.n}, pairs={self.pair_count()})"


def close_order(n: int, constraints) -> PartialOrder:
    """Transitive closure of the given (u, v) index pairs as a strict order.

    Raises CyclicOrderError if the closure would contain u < u.
    """
    succ = [0] * n
    for u, v in constraints:
        if not (0 <= u < n and 0 <= v < n):
            raise ValueError(f"vertex index out of range: ({u}, {v})")
        if u == v:
            raise CyclicOrderError(f"constraint {u} < {u}")
        succ[u] |= 1 << v
    # Warshall over bitmask rows.
    for k in range(n):
        bit = 1 << k
        row = succ[k]
        if not row:
            continue
        for i in range(n):
            if succ[i] & bit:
                succ[i] |= row
    for i in range(n):
        if succ[i] >> i & 1:
            raise CyclicOrderError(f"cycle through vertex index {i}")
    return PartialOrder(n, succ)


def is_linear_extension(seq, order: PartialOrder) -> bool:
    """True iff no pair (seq[j], seq[i]) with i < j is in the order.

    seq must be a permutation of 0..n-1.
    """
    if len(seq) != order.n or len(set(seq)) != order.n:
        raise NotAPermutationError("sequence is not a permutation of the vertex set")
    seen = 0
    for v in seq:
        if order.succ[v] & seen:
            return False
        seen |= 1 << v
    return True
