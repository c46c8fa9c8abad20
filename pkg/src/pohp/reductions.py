"""Generic problem reductions between the path and cycle variants."""

from __future__ import annotations

from typing import Callable, Optional

from .graphs import mask_to_indices
from .instances import CYCLE, PATH, Instance, Solution, solution_from_indices, validate_solution
from .orders import close_order
from .pw_solver import add_universal_vertex


def cycle_via_path(inst: Instance, path_solver: Callable[[Instance], Optional[Solution]]
                   ) -> Optional[Solution]:
    """Solve the cycle problem through O(m) path instances.

    For every adjacent pair (x, y) with x minimal and y maximal in the
    order, solve the path problem under the order extended so that x is the
    unique minimal and y the unique maximal element; the best path plus the
    closing edge weight wins.
    """
    if inst.kind != CYCLE:
        raise ValueError("cycle_via_path expects a cycle instance")
    g, order = inst.graph, inst.order
    n = g.n
    if n < 3:
        return None
    minimal = order.minimal_mask()
    maximal = order.maximal_mask()
    best = None
    for x in mask_to_indices(minimal):
        for y in mask_to_indices(g.adj[x] & maximal):
            if x == y:
                continue
            pairs = list(order.pairs())
            pairs += [(x, v) for v in range(n) if v != x]
            pairs += [(v, y) for v in range(n) if v != y]
            try:
                restricted = close_order(n, pairs)
            except Exception:
                continue
            sub = Instance(g, restricted, PATH, inst.objective)
            sol = path_solver(sub)
            if sol is None:
                continue
            seq = [g.idx(v) for v in sol.order]
            assert seq[0] == x and seq[-1] == y
            total = sol.weight + g.weight_idx(y, x)
            if best is None or total < best[0]:
                best = (total, seq)
    if best is None:
        return None
    out = solution_from_indices(inst, best[1], kind=CYCLE)
    assert out.weight == best[0]
    report = validate_solution(inst, out)
    assert report.valid, report.violation
    return out


def path_via_cycle(inst: Instance, cycle_solver: Callable[[Instance], Optional[Solution]]
                   ) -> Optional[Solution]:
    """Solve the path problem once on the graph plus a universal vertex."""
    if inst.kind != PATH:
        raise ValueError("path_via_cycle expects a path instance")
    g = inst.graph
    if g.n == 0:
        return None
    if g.n == 1:
        return solution_from_indices(inst, (0,))
    wrapped, hub = add_universal_vertex(inst)
    sol = cycle_solver(wrapped)
    if sol is None:
        return None
    assert sol.order[-1] == wrapped.graph.names[hub]
    out = solution_from_indices(inst, [g.idx(v) for v in sol.order[:-1]], kind=PATH)
    assert out.weight == sol.weight
    report = validate_solution(inst, out)
    assert report.valid, report.violation
    return out
