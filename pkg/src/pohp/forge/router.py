"""Per-gadget micro-router for grid witness construction.

A gadget's cells must be covered exactly by an ordered list of path
segments, each with a fixed entry cell, an optional fixed exit cell and an
allowed-cell zone.  The zones encode all ordering obligations (pre-end
cells only in the first pass, variable cells before literal cells, ...);
the router only solves the geometry.  Searches are deterministic and the
results are cached per (cells, segment specification), so each gadget case
is solved once per process.
"""

from __future__ import annotations

from typing import Dict, FrozenSet, List, Optional, Tuple

Cell = Tuple[int, int]

_NEIGHBOR_STEPS = ((-1, 0), (0, -1), (0, 1), (1, 0))

_cache: Dict[tuple, Optional[Tuple[Tuple[Cell, ...], ...]]] = {}


class RouterBudgetExceeded(Exception):
    pass


def _neighbors(cell: Cell):
    r, c = cell
    for dr, dc in _NEIGHBOR_STEPS:
        yield (r + dr, c + dc)


def _reachable(start: Cell, pool: FrozenSet[Cell]) -> set:
    seen = {start}
    stack = [start]
    while stack:
        cur = stack.pop()
        for nxt in _neighbors(cur):
            if nxt in pool and nxt not in seen:
                seen.add(nxt)
                stack.append(nxt)
    return seen


def _find_paths(entry: Cell, exit_: Cell, allowed: FrozenSet[Cell],
                must: FrozenSet[Cell], state: dict):
    """Yield simple paths entry->exit inside `allowed` covering `must`.

    exit_ may be None (free end).  Deterministic order; prunes branches from
    which some required cell or the exit is unreachable.
    """
    if entry not in allowed or (exit_ is not None and exit_ not in allowed):
        return
    path = [entry]
    onpath = {entry}

    def done():
        if exit_ is not None and path[-1] != exit_:
            return False
        return must <= onpath

    def feasible():
        pool = frozenset(c for c in allowed if c not in onpath)
        targets = set(must - onpath)
        if exit_ is not None and exit_ not in onpath:
            targets.add(exit_)
        if not targets:
            return True
        seen = _reachable(path[-1], pool | {path[-1]})
        return targets <= seen

    def walk():
        state["nodes"] += 1
        if state["nodes"] > state["budget"]:
            raise RouterBudgetExceeded()
        if done():
            yield tuple(path)
            if exit_ is not None and path[-1] == exit_:
                return  # at a fixed exit the path cannot continue anyway
        if exit_ is not None and path[-1] == exit_:
            return
        if not feasible():
            return
        for nxt in _neighbors(path[-1]):
            if nxt in allowed and nxt not in onpath:
                path.append(nxt)
                onpath.add(nxt)
                yield from walk()
                path.pop()
                onpath.remove(nxt)

    yield from walk()


def route_cover(cells: FrozenSet[Cell], segments, budget: int = 400_000
                ) -> Optional[Tuple[Tuple[Cell, ...], ...]]:
    """Partition `cells` into one path per segment (entry, exit, allowed).

    Each path runs entry->exit within its allowed zone; together the paths
    cover every cell exactly once.  Returns the paths in segment order, or
    None when no cover exists within the node budget.
    """
    key = (cells, tuple((e, x, a) for e, x, a in segments))
    if key in _cache:
        return _cache[key]
    state = {"nodes": 0, "budget": budget}
    segs = [(e, x, frozenset(a) & cells) for e, x, a in segments]

    def solve(i: int, remaining: FrozenSet[Cell]):
        if i == len(segs):
            return () if not remaining else None
        entry, exit_, allowed = segs[i]
        allowed = allowed & remaining
        later = frozenset().union(*(segs[j][2] for j in range(i + 1, len(segs)))) \
            if i + 1 < len(segs) else frozenset()
        must = remaining - later
        if not must <= allowed:
            return None
        for path in _find_paths(entry, exit_, allowed, must, state):
            rest = solve(i + 1, remaining - frozenset(path))
            if rest is not None:
                return (path,) + rest
        return None

    try:
        result = solve(0, frozenset(cells))
    except RouterBudgetExceeded:
        result = None
    _cache[key] = result
    return result
