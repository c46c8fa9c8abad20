"""Brute-force exact solver, used as ground truth for the width-bounded
solvers and for tiny hardness instances.

Depth-first search extending the sequence by order-available neighbours of
the last vertex.  The completion cost of a state depends only on the set of
placed vertices and the current endpoint, so states are memoized; this is
what makes exhausting the gadget instances (with their highly symmetric
cliques) tractable while staying a plain, auditable search.  Minimization
is exact for negative weights too (no bound pruning is involved).
"""

from __future__ import annotations

import time
from dataclasses import dataclass
from typing import Optional

from .graphs import mask_to_indices
from .instances import CYCLE, Instance, Solution, solution_from_indices

DEFAULT_NODE_CAP = 10**8
DEFAULT_TIME_CAP = 60.0


@dataclass(frozen=True)
class OracleResult:
    status: str                  # "feasible" | "infeasible" | "unknown"
    solution: Optional[Solution] = None
    nodes: int = 0


class _Capped(Exception):
    pass


def oracle_solve(inst: Instance, time_cap: float = DEFAULT_TIME_CAP,
                 node_cap: int = DEFAULT_NODE_CAP) -> OracleResult:
    """Exact minimum-weight search; Unknown only when a cap is hit.

    Cycles fix the first vertex among the order's minimal elements; both
    traversal directions are distinct candidates and both are searched.
    """
    g = inst.graph
    order = inst.order
    n = g.n
    if n == 0:
        return OracleResult("infeasible")
    if inst.kind == CYCLE and n < 3:
        return OracleResult("infeasible")
    if n == 1:
        return OracleResult("feasible", solution_from_indices(inst, (0,)))

    full = (1 << n) - 1
    adj = g.adj
    pred = order.pred
    weights = [[0] * n for _ in range(n)]
    for (a, b), wt in g.edges_idx():
        weights[a][b] = wt
        weights[b][a] = wt

    deadline = time.monotonic() + time_cap if time_cap else None
    is_cycle = inst.kind == CYCLE
    state = {"nodes": 0}

    import sys
    old_limit = sys.getrecursionlimit()
    sys.setrecursionlimit(max(old_limit, 4 * n + 100))

    def search_from(start):
        """Minimum completion weight per (placed, head); None = infeasible."""
        memo = {}
        choice = {}

        def best(head, placed):
            state["nodes"] += 1
            if state["nodes"] > node_cap:
                raise _Capped()
            if deadline is not None and state["nodes"] % 4096 == 0 \
                    and time.monotonic() > deadline:
                raise _Capped()
            if placed == full:
                if is_cycle:
                    if adj[head] >> start & 1:
                        return weights[head][start]
                    return None
                return 0
            key = (placed, head)
            if key in memo:
                return memo[key]
            # reachability: every unplaced vertex must be reachable from the
            # head through unplaced vertices (sound: any completion walks it)
            free = full & ~placed
            reach = 1 << head
            frontier = reach
            while frontier:
                nxt = 0
                f = frontier
                while f:
                    low = f & -f
                    f ^= low
                    nxt |= adj[low.bit_length() - 1]
                nxt &= free & ~reach
                reach |= nxt
                frontier = nxt
            if free & ~reach:
                memo[key] = None
                return None
            result = None
            pick = None
            cand = adj[head] & free
            while cand:
                low = cand & -cand
                cand ^= low
                v = low.bit_length() - 1
                if pred[v] & ~placed:
                    continue
                sub = best(v, placed | low)
                if sub is not None:
                    total = weights[head][v] + sub
                    if result is None or total < result:
                        result = total
                        pick = v
            memo[key] = result
            choice[key] = pick
            return result

        total = best(start, 1 << start)
        if total is None:
            return None
        seq = [start]
        placed = 1 << start
        while placed != full:
            v = choice[(placed, seq[-1])]
            seq.append(v)
            placed |= 1 << v
        return total, seq

    best_total = None
    best_seq = None
    try:
        for v in mask_to_indices(order.minimal_mask()):
            found = search_from(v)
            if found is not None and (best_total is None or found[0] < best_total):
                best_total, best_seq = found
    except _Capped:
        sys.setrecursionlimit(old_limit)
        return OracleResult("unknown", None, state["nodes"])
    sys.setrecursionlimit(old_limit)

    if best_seq is not None:
        sol = solution_from_indices(inst, best_seq)
        assert sol.weight == best_total
        return OracleResult("feasible", sol, state["nodes"])
    return OracleResult("infeasible", None, state["nodes"])


def oracle_enumerate(inst: Instance, limit: int = 10**6):
    """Yield every feasible solution sequence (indices); testing hook."""
    g = inst.graph
    order = inst.order
    n = g.n
    if n == 0 or (inst.kind == CYCLE and n < 3):
        return
    if n == 1:
        yield (0,)
        return
    adj = g.adj
    pred = order.pred
    is_cycle = inst.kind == CYCLE
    seq = [0] * n
    count = 0

    def dfs(depth, placed):
        nonlocal count
        if count >= limit:
            return
        if depth == n:
            if not is_cycle or adj[seq[-1]] >> seq[0] & 1:
                count += 1
                yield tuple(seq)
            return
        last = seq[depth - 1]
        cand = adj[last] & ~placed
        while cand:
            low = cand & -cand
            cand ^= low
            v = low.bit_length() - 1
            if pred[v] & ~placed:
                continue
            seq[depth] = v
            yield from dfs(depth + 1, placed | low)

    starts = order.minimal_mask()
    while starts:
        low = starts & -starts
        starts ^= low
        seq[0] = low.bit_length() - 1
        yield from dfs(1, low)
