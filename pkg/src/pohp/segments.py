"""Oriented path fragments of a partial Hamiltonian cycle and the placement
feasibility calculus shared by both dynamic-programming solvers.

A *mid* fragment occupies a contiguous interior interval of the eventual
linear extension; its sequence order is the extension order.  The unique
*close* fragment contains the extension's last vertex: positions 1..split of
its sequence form a suffix of the extension (the tail, ending at the last
vertex), the remaining positions form a prefix (the head, starting at the
first vertex).  The edge between tail end and head start is the wrap edge of
the cycle.

Feasibility of every operation depends only on vertex/tail/head sets, kinds
and terminals, never on interior order.  All checks are mask operations on a
transitively closed order:

* no backward pair inside a fragment (in extension order),
* tail closed under successors, head closed under predecessors (over the
  whole vertex set, placed or not),
* no vertex outside a mid fragment is sandwiched between two of its members,
* the forced before/after relation among mid fragments is acyclic.

These are deliberately stronger than the minimal membership rules one could
state per operation; the brute-force reference predicate `order_feasible`
arbitrates (see the equivalence test suite).
"""

from __future__ import annotations

from typing import NamedTuple, Optional

from .errors import (
    AlreadyPlacedError,
    CloseAlreadyExistsError,
    InfeasibleOpError,
    NotAdjacentError,
    TooLargeError,
    TwoClosePartsError,
)
from .graphs import Graph
from .orders import PartialOrder

MID = "mid"
CLOSE = "close"

ORDER_FEASIBLE_CAP = 12


class Fragment(NamedTuple):
    kind: str
    seq: tuple            # oriented vertex indices
    split: int            # close: tail length (1..len); mid: 0
    vset: int
    tail: int             # close only, else 0
    head: int             # close only, else 0
    sall: int             # union of successors over vset
    pall: int             # union of predecessors over vset

    @property
    def front(self) -> int:
        return self.seq[0]

    @property
    def back(self) -> int:
        return self.seq[-1]

    def is_trivial(self) -> bool:
        return len(self.seq) == 1

    def key(self):
        return (self.kind, self.vset, self.tail, self.head, self.seq[0], self.seq[-1])


class SegmentConfiguration(NamedTuple):
    fragments: tuple      # of Fragment
    weight: int
    placed: int

    def close_count(self) -> int:
        return sum(1 for f in self.fragments if f.kind == CLOSE)

    def close_index(self) -> Optional[int]:
        for i, f in enumerate(self.fragments):
            if f.kind == CLOSE:
                return i
        return None


def empty_config() -> SegmentConfiguration:
    return SegmentConfiguration((), 0, 0)


def _mask_of(seq) -> int:
    m = 0
    for v in seq:
        m |= 1 << v
    return m


def _scan_backward_pairs(seq, order: PartialOrder) -> bool:
    """True iff some later element precedes an earlier one (backward pair)."""
    seen = 0
    for v in seq:
        if order.succ[v] & seen:
            return True
        seen |= 1 << v
    return False


def make_mid(seq, order: PartialOrder) -> Fragment:
    seq = tuple(seq)
    vset = _mask_of(seq)
    return Fragment(MID, seq, 0, vset, 0, 0, order.succ_union(vset), order.pred_union(vset))


def make_close(seq, split: int, order: PartialOrder) -> Fragment:
    seq = tuple(seq)
    if not 1 <= split <= len(seq):
        raise ValueError("split out of range")
    vset = _mask_of(seq)
    tail = _mask_of(seq[:split])
    head = vset & ~tail
    return Fragment(CLOSE, seq, split, vset, tail, head,
                    order.succ_union(vset), order.pred_union(vset))


def fragment_internally_consistent(frag: Fragment, order: PartialOrder) -> bool:
    if frag.kind == MID:
        return not _scan_backward_pairs(frag.seq, order)
    tail_ok = not _scan_backward_pairs(frag.seq[: frag.split], order)
    head_ok = not _scan_backward_pairs(frag.seq[frag.split:], order)
    return tail_ok and head_ok


def _tail_closed(frag: Fragment, order: PartialOrder) -> bool:
    return not order.succ_union(frag.tail) & ~frag.tail


def _head_closed(frag: Fragment, order: PartialOrder) -> bool:
    return not order.pred_union(frag.head) & ~frag.head


def _mid_between_ok(frag: Fragment) -> bool:
    return not frag.sall & frag.pall & ~frag.vset


def _mid_digraph_acyclic(fragments, order: PartialOrder) -> bool:
    mids = [f for f in fragments if f.kind == MID]
    k = len(mids)
    if k < 2:
        return True
    succs = [[] for _ in range(k)]
    indeg = [0] * k
    for i in range(k):
        for j in range(k):
            if i != j and mids[i].sall & mids[j].vset:
                succs[i].append(j)
                indeg[j] += 1
    stack = [i for i in range(k) if indeg[i] == 0]
    seen = 0
    while stack:
        i = stack.pop()
        seen += 1
        for j in succs[i]:
            indeg[j] -= 1
            if indeg[j] == 0:
                stack.append(j)
    return seen == k


def config_order_ok(fragments, order: PartialOrder) -> bool:
    """Full static feasibility of a fragment set against the order."""
    close_seen = False
    for f in fragments:
        if f.kind == CLOSE:
            if close_seen:
                return False
            close_seen = True
            if not (_tail_closed(f, order) and _head_closed(f, order)):
                return False
        else:
            if not _mid_between_ok(f):
                return False
        if not fragment_internally_consistent(f, order):
            return False
    return _mid_digraph_acyclic(fragments, order)


def check_config_paths(config: SegmentConfiguration, graph: Graph) -> bool:
    """Structural invariants: disjoint fragments, consecutive adjacency."""
    placed = 0
    for f in config.fragments:
        if f.vset & placed:
            return False
        placed |= f.vset
        for a, b in zip(f.seq, f.seq[1:]):
            if not graph.has_edge_idx(a, b):
                return False
    return placed == config.placed


def recomputed_weight(config: SegmentConfiguration, graph: Graph) -> int:
    total = 0
    for f in config.fragments:
        for a, b in zip(f.seq, f.seq[1:]):
            total += graph.weight_idx(a, b)
    return total


# ---------------------------------------------------------------------------
# operations


def _replace(config, index, new_frag, added_weight, w):
    frags = config.fragments[:index] + (new_frag,) + config.fragments[index + 1:]
    return SegmentConfiguration(frags, config.weight + added_weight, config.placed | 1 << w)


def attach(config: SegmentConfiguration, graph: Graph, order: PartialOrder,
           w: int, target=None) -> SegmentConfiguration:
    """Place w solo (target None) or glue it to a fragment end.

    target is (fragment index, end) with end one of:
      "front"/"back"  — extend the fragment's extension interval (for a
                        close fragment: prepend to the tail / append to the
                        head, the latter across the wrap edge);
      "wrap_front"    — w becomes the extension's last vertex and the mid
                        fragment becomes the head of a fresh close fragment
                        (the traversed edge is the wrap edge itself).
    Raises on rule violations; use `try_attach` in search loops.
    """
    out = try_attach(config, graph, order, w, target, strict=True)
    assert out is not None
    return out


def try_attach(config, graph, order, w, target=None, strict=False):
    wbit = 1 << w
    if config.placed & wbit:
        raise AlreadyPlacedError(w)
    if target is None:
        frag = make_mid((w,), order)
        return SegmentConfiguration(config.fragments + (frag,), config.weight,
                                    config.placed | wbit)
    index, end = target
    frag = config.fragments[index]
    term = frag.back if end == "back" else frag.front
    if not graph.has_edge_idx(term, w):
        if strict:
            raise NotAdjacentError((term, w))
        return None
    wedge = graph.weight_idx(term, w)
    succ_w = order.succ[w]
    pred_w = order.pred[w]

    if end == "wrap_front":
        if frag.kind != MID:
            raise ValueError("wrap_front applies to mid fragments")
        if config.close_index() is not None:
            raise CloseAlreadyExistsError()
        if succ_w:
            if strict:
                raise InfeasibleOpError("extension-last vertex has successors")
            return None
        if frag.pall & ~frag.vset:
            if strict:
                raise InfeasibleOpError("head fragment not closed under predecessors")
            return None
        new = Fragment(CLOSE, (w,) + frag.seq, 1, frag.vset | wbit,
                       wbit, frag.vset, frag.sall | succ_w, frag.pall | pred_w)
        return _replace(config, index, new, wedge, w)

    if frag.kind == MID:
        if end == "back":
            # w right after the interval
            if succ_w & frag.vset:
                if strict:
                    raise InfeasibleOpError("appended vertex precedes a fragment member")
                return None
            new = Fragment(MID, frag.seq + (w,), 0, frag.vset | wbit, 0, 0,
                           frag.sall | succ_w, frag.pall | pred_w)
        else:
            if pred_w & frag.vset:
                if strict:
                    raise InfeasibleOpError("prepended vertex succeeds a fragment member")
                return None
            new = Fragment(MID, (w,) + frag.seq, 0, frag.vset | wbit, 0, 0,
                           frag.sall | succ_w, frag.pall | pred_w)
        if not _mid_between_ok(new):
            if strict:
                raise InfeasibleOpError("outside vertex sandwiched inside the fragment")
            return None
        out = _replace(config, index, new, wedge, w)
        if not _mid_digraph_acyclic(out.fragments, order):
            if strict:
                raise InfeasibleOpError("forced fragment order becomes cyclic")
            return None
        return out

    # close fragment
    if end == "front":
        # w joins the tail front
        if succ_w & ~frag.tail:
            if strict:
                raise InfeasibleOpError("successor of w outside the tail")
            return None
        new = Fragment(CLOSE, (w,) + frag.seq, frag.split + 1,
                       frag.vset | wbit, frag.tail | wbit, frag.head,
                       frag.sall | succ_w, frag.pall | pred_w)
    else:
        # w joins the head back (creates the wrap edge when the head is empty)
        if pred_w & ~frag.head:
            if strict:
                raise InfeasibleOpError("predecessor of w outside the head")
            return None
        new = Fragment(CLOSE, frag.seq + (w,), frag.split,
                       frag.vset | wbit, frag.tail, frag.head | wbit,
                       frag.sall | succ_w, frag.pall | pred_w)
    return _replace(config, index, new, wedge, w)


def merge(config: SegmentConfiguration, graph: Graph, order: PartialOrder,
          w: int, left: int, right: int) -> SegmentConfiguration:
    out = try_merge(config, graph, order, w, left, right, strict=True)
    assert out is not None
    return out


def try_merge(config, graph, order, w, left, right, strict=False, wrap=False):
    """w bridges left fragment's back to right fragment's front.

    In extension order the result reads: left, w, right (the close fragment,
    if involved, keeps its wrap structure).  left and right are fragment
    indices; a close fragment may only appear as the λ-later side of its
    tail (right operand) or the λ-earlier side of its head (left operand).

    With wrap=True both operands are mid, w becomes the extension's last
    vertex, and the edge from w to the right operand is the wrap edge: the
    result is a close fragment with tail = left + w and head = right.
    """
    if left == right:
        raise ValueError("cannot merge a fragment with itself")
    wbit = 1 << w
    if config.placed & wbit:
        raise AlreadyPlacedError(w)
    P = config.fragments[left]
    Q = config.fragments[right]
    if P.kind == CLOSE and Q.kind == CLOSE:
        raise TwoClosePartsError("both operands are close fragments")
    if not (graph.has_edge_idx(P.back, w) and graph.has_edge_idx(w, Q.front)):
        if strict:
            raise NotAdjacentError((P.back, w, Q.front))
        return None
    wedge = graph.weight_idx(P.back, w) + graph.weight_idx(w, Q.front)
    succ_w = order.succ[w]
    pred_w = order.pred[w]

    if wrap:
        if P.kind != MID or Q.kind != MID:
            raise ValueError("wrap merge applies to mid fragments")
        if config.close_index() is not None:
            raise CloseAlreadyExistsError()
        new_tail = P.vset | wbit
        if succ_w or P.sall & ~new_tail:
            if strict:
                raise InfeasibleOpError("merged tail not closed under successors")
            return None
        if Q.pall & ~Q.vset:
            if strict:
                raise InfeasibleOpError("head fragment not closed under predecessors")
            return None
        new = Fragment(CLOSE, P.seq + (w,) + Q.seq, len(P.seq) + 1,
                       P.vset | wbit | Q.vset, new_tail, Q.vset,
                       P.sall | succ_w | Q.sall, P.pall | pred_w | Q.pall)
        keep = tuple(f for i, f in enumerate(config.fragments) if i not in (left, right))
        return SegmentConfiguration(keep + (new,), config.weight + wedge,
                                    config.placed | wbit)

    if P.kind == MID and Q.kind == MID:
        # result interval: P, w, Q
        if succ_w & P.vset or pred_w & Q.vset:
            if strict:
                raise InfeasibleOpError("bridge vertex ordered against an operand")
            return None
        if order.succ_union(Q.vset) & P.vset:
            if strict:
                raise InfeasibleOpError("right operand precedes left operand")
            return None
        new = Fragment(MID, P.seq + (w,) + Q.seq, 0,
                       P.vset | wbit | Q.vset, 0, 0,
                       P.sall | succ_w | Q.sall, P.pall | pred_w | Q.pall)
        if not _mid_between_ok(new):
            if strict:
                raise InfeasibleOpError("outside vertex sandwiched inside the merge")
            return None
    elif Q.kind == CLOSE:
        # mid P (then w) prepended to the tail front of Q
        new_tail = Q.tail | wbit | P.vset
        if (P.sall | succ_w) & ~new_tail:
            if strict:
                raise InfeasibleOpError("successor of the merged tail escapes it")
            return None
        if succ_w & P.vset:
            if strict:
                raise InfeasibleOpError("bridge vertex precedes a left-operand member")
            return None
        new = Fragment(CLOSE, P.seq + (w,) + Q.seq, len(P.seq) + 1 + Q.split,
                       P.vset | wbit | Q.vset, new_tail, Q.head,
                       P.sall | succ_w | Q.sall, P.pall | pred_w | Q.pall)
    else:
        # mid Q (preceded by w) appended to the head back of close P
        new_head = P.head | wbit | Q.vset
        if (order.pred_union(Q.vset) | pred_w) & ~new_head:
            if strict:
                raise InfeasibleOpError("predecessor of the merged head escapes it")
            return None
        if pred_w & Q.vset:
            if strict:
                raise InfeasibleOpError("bridge vertex succeeds a right-operand member")
            return None
        new = Fragment(CLOSE, P.seq + (w,) + Q.seq, P.split,
                       P.vset | wbit | Q.vset, P.tail, new_head,
                       P.sall | succ_w | Q.sall, P.pall | pred_w | Q.pall)

    keep = tuple(f for i, f in enumerate(config.fragments) if i not in (left, right))
    out = SegmentConfiguration(keep + (new,), config.weight + wedge, config.placed | wbit)
    if not _mid_digraph_acyclic(out.fragments, order):
        if strict:
            raise InfeasibleOpError("forced fragment order becomes cyclic")
        return None
    return out


def designate_wrap(config: SegmentConfiguration, order: PartialOrder,
                   frag_index: int, split: int) -> SegmentConfiguration:
    out = try_designate_wrap(config, order, frag_index, split, strict=True)
    assert out is not None
    return out


def try_designate_wrap(config, order, frag_index, split, strict=False):
    """Re-label a mid fragment as the close fragment, split after `split`.

    Positions 1..split become the tail, the rest the head (the head may be
    empty, e.g. for a trivial fragment whose vertex has no successors).
    """
    frag = config.fragments[frag_index]
    if frag.kind != MID:
        raise ValueError("only mid fragments can be designated")
    if config.close_index() is not None:
        raise CloseAlreadyExistsError()
    if not 1 <= split <= len(frag.seq):
        raise ValueError("split out of range")
    tail = _mask_of(frag.seq[:split])
    head = frag.vset & ~tail
    if order.succ_union(tail) & ~tail:
        if strict:
            raise InfeasibleOpError("tail not closed under successors")
        return None
    if order.pred_union(head) & ~head:
        if strict:
            raise InfeasibleOpError("head not closed under predecessors")
        return None
    new = Fragment(CLOSE, frag.seq, split, frag.vset, tail, head, frag.sall, frag.pall)
    frags = config.fragments[:frag_index] + (new,) + config.fragments[frag_index + 1:]
    out = SegmentConfiguration(frags, config.weight, config.placed)
    if not _mid_digraph_acyclic(out.fragments, order):
        if strict:
            raise InfeasibleOpError("forced fragment order becomes cyclic")
        return None
    return out


def valid_wrap_splits(frag: Fragment, order: PartialOrder):
    """All split positions at which the mid fragment could become close."""
    assert frag.kind == MID
    out = []
    tail = 0
    tail_succ = 0
    for j, v in enumerate(frag.seq, start=1):
        tail |= 1 << v
        tail_succ |= order.succ[v]
        if tail_succ & ~tail:
            continue
        head = frag.vset & ~tail
        if not order.pred_union(head) & ~head:
            out.append(j)
    return out


# ---------------------------------------------------------------------------
# reference predicate


def order_feasible(config: SegmentConfiguration, order: PartialOrder,
                   cap: int = ORDER_FEASIBLE_CAP) -> bool:
    """Exhaustively decide whether the unplaced vertices can be interleaved
    with the fragments (kept contiguous and oriented, the close fragment
    wrapping the extension boundary) into a linear extension.

    Usable only for small vertex counts; this is the test oracle for the
    incremental rules, independent of them by construction.
    """
    n = order.n
    if n > cap:
        raise TooLargeError(f"order_feasible capped at {cap} vertices")
    if config.close_count() > 1:
        return False

    head_item = None
    tail_item = None
    blocks = []
    for f in config.fragments:
        if f.kind == CLOSE:
            tail_item = f.seq[: f.split]
            if f.split < len(f.seq):
                head_item = f.seq[f.split:]
        else:
            blocks.append(f.seq)
    free = [v for v in range(n) if not config.placed >> v & 1]

    items = []
    if head_item is not None:
        items.append(head_item)
    items.extend(blocks)
    items.extend((v,) for v in free)
    if tail_item is not None:
        items.append(tail_item)
    head_id = 0 if head_item is not None else None
    tail_id = len(items) - 1 if tail_item is not None else None

    total = len(items)
    full = (1 << total) - 1
    placed_of = {}

    def place(mask_placed, item):
        for v in item:
            if order.pred[v] & ~mask_placed:
                return None
            mask_placed |= 1 << v
        return mask_placed

    memo = {}

    def go(used, mask_placed):
        if used == full:
            return True
        state = used
        hit = memo.get(state)
        if hit is not None:
            return hit
        result = False
        if head_id is not None and not used >> head_id & 1:
            # the head is the extension's prefix: it must come first
            nxt = place(mask_placed, items[head_id])
            result = nxt is not None and go(used | 1 << head_id, nxt)
        else:
            for i in range(total):
                if used >> i & 1:
                    continue
                if i == tail_id and used | 1 << i != full:
                    continue  # tail is the suffix: everything else first
                nxt = place(mask_placed, items[i])
                if nxt is not None and go(used | 1 << i, nxt):
                    result = True
                    break
        memo[state] = result
        return result

    start = 0
    return go(0, start)
