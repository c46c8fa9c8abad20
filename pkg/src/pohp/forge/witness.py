"""Certified witness construction for the hardness generators.

Witnesses are assembled from per-gadget path segments found by the
micro-router.  Each reduction has a fixed sweep plan (the prefix to the end
vertex, then alternating return sweeps); segment zones encode every
ordering obligation, so any cover the router finds yields an
order-extending traversal.  Where sweep crossing rows are not forced, a
backtracking search over per-boundary row choices runs on top, pruning with
per-gadget cover feasibility (covers are cached inside the router).  The
result is always re-validated end to end.
"""

from __future__ import annotations

from typing import Dict, List, Optional, Tuple

from ..cnf import CnfFormula
from ..errors import UnsatisfiedAssignmentError
from ..instances import Solution, solution_from_indices, validate_solution
from .grids import GridInstance, gen_grid5_minpath, gen_grid6_mincycle, \
    gen_grid7_path, gen_grid9_cycle
from .pi import build_pi_witness, gen_pi_cycle, gen_pi_path
from .router import route_cover

Cell = Tuple[int, int]

REDUCTION_IDS = ("pi-path", "pi-cycle", "grid7-path", "grid9-cycle",
                 "grid5-minpath", "grid6-mincycle")


def _rows(width: int, *rows) -> set:
    return {(r, c) for r in rows for c in range(1, width + 1)}


def _gadget_cells(grid: GridInstance, gname: str) -> frozenset:
    gd = grid.gadget(gname)
    w = gd.col_end - gd.col_start + 1
    return frozenset((r, c) for r in range(1, grid.height + 1) for c in range(1, w + 1))


class Seg:
    __slots__ = ("gadget", "entry", "exit", "allowed")

    def __init__(self, gadget: str, entry: Cell, exit_: Optional[Cell], allowed):
        self.gadget = gadget
        self.entry = entry
        self.exit = exit_
        self.allowed = frozenset(allowed)


def _cover_gadget(grid: GridInstance, gname: str, segs: List[Seg]):
    cells = _gadget_cells(grid, gname)
    return route_cover(cells, [(s.entry, s.exit, s.allowed) for s in segs])


def _solve_plan(grid: GridInstance, plan: List[Seg]):
    """Route every gadget's segments; return the walk as vertex names."""
    by_gadget: Dict[str, List[Seg]] = {}
    for seg in plan:
        by_gadget.setdefault(seg.gadget, []).append(seg)
    paths = {}
    for gname, segs in by_gadget.items():
        result = _cover_gadget(grid, gname, segs)
        if result is None:
            return None
        for s, p in zip(segs, result):
            paths[id(s)] = p
    walk = []
    for seg in plan:
        gd = grid.gadget(seg.gadget)
        for r, c in paths[id(seg)]:
            walk.append(grid.cell(gd, r, c))
    return walk


def _chosen_literals(formula: CnfFormula, assignment) -> List[int]:
    chosen = []
    for j, clause in enumerate(formula.clauses, start=1):
        pick = None
        for a, lit in enumerate(clause, start=1):
            if (lit > 0) == bool(assignment[abs(lit) - 1]):
                pick = a
                break
        if pick is None:
            raise UnsatisfiedAssignmentError(f"clause {j} not satisfied")
        chosen.append(pick)
    return chosen


def _dfs_boundary_rows(grid, names, options, gadget_segs, left_probe, right_probe):
    """Pick one state per boundary so every gadget (and both border gadgets)
    admits a cover.  Boundary i sits left of gadget i; boundary len(names)
    faces the right border gadget."""
    k = len(names)
    dead = set()
    chosen = [None] * (k + 1)

    def rec(idx, left):
        if idx == k:
            return right_probe(left) is not None
        key = (idx, left)
        if key in dead:
            return False
        for right in options[idx + 1]:
            segs = gadget_segs(idx, left, right)
            if segs is not None and _cover_gadget(grid, names[idx], segs) is not None:
                chosen[idx + 1] = right
                if rec(idx + 1, right):
                    return True
        dead.add(key)
        return False

    for b0 in options[0]:
        if left_probe(b0) is None:
            continue
        chosen[0] = b0
        if rec(0, b0):
            return chosen
    return None


# ---------------------------------------------------------------------------
# height 5: minimum path (all crossing rows fixed)


def _grid5_walk(grid: GridInstance, formula: CnfFormula, assignment):
    n, m = formula.num_vars, formula.num_clauses
    chosen = _chosen_literals(formula, assignment)
    x_p1_true = {(5, 1), (5, 2), (5, 3), (4, 3), (3, 3), (3, 4), (4, 4),
                 (5, 4), (5, 5), (5, 6)}
    x_p1_false = {(5, 1), (5, 2), (5, 3), (4, 3), (4, 4), (5, 4), (5, 5), (5, 6)}
    c_p1 = {
        1: {(5, 1), (5, 2), (4, 2), (4, 3), (5, 3), (5, 4), (5, 5), (5, 6), (5, 7)},
        2: {(5, 1), (5, 2), (5, 3), (4, 3), (4, 4), (5, 4), (5, 5), (5, 6), (5, 7)},
    }

    plan: List[Seg] = []
    for i in range(1, n + 1):
        zone = x_p1_true if assignment[i - 1] else x_p1_false
        plan.append(Seg(f"X{i}", (5, 1), (5, 6), zone))
    for j in range(1, m + 1):
        plan.append(Seg(f"C{j}", (5, 1), (5, 7), c_p1[chosen[j - 1]]))
    plan.append(Seg("T", (5, 1), (1, 1), {(r, 1) for r in range(1, 6)}))
    for j in range(m, 0, -1):
        plan.append(Seg(f"C{j}", (1, 7), (1, 1), _rows(7, 1)))
    for i in range(n, 1, -1):
        plan.append(Seg(f"X{i}", (1, 6), (1, 1), _rows(6, 1)))
    x1_late = _rows(6, 2, 3, 4)
    if assignment[0]:
        x1_late -= {(3, 3)}
    plan.append(Seg("X1", (1, 6), (4, 6), _rows(6, 1) | x1_late))
    for i in range(2, n + 1):
        zone = _rows(6, 2, 3, 4)
        if assignment[i - 1]:
            zone -= {(3, 3)}
        plan.append(Seg(f"X{i}", (4, 1), (4, 6), zone))
    for j in range(1, m + 1):
        plan.append(Seg(f"C{j}", (4, 1), (4, 7) if j < m else None, _rows(7, 2, 3, 4)))
    return _solve_plan(grid, plan)


# ---------------------------------------------------------------------------
# height 7: path (all crossing rows fixed)


def _grid7_walk(grid: GridInstance, formula: CnfFormula, assignment):
    n, m = formula.num_vars, formula.num_clauses
    chosen = _chosen_literals(formula, assignment)
    x_p1_true = {(3, 1), (4, 1), (5, 1), (5, 2), (5, 3), (5, 4), (5, 5),
                 (5, 6), (4, 6), (3, 6)}
    x_p1_false = {(3, c) for c in range(1, 7)}
    c_p1 = {
        1: {(3, 1), (3, 2), (3, 3), (3, 4)},
        2: {(3, 1), (4, 1), (4, 2), (4, 3), (4, 4), (3, 4)},
        3: {(3, 1), (4, 1), (5, 1), (5, 2), (5, 3), (5, 4), (4, 4), (3, 4)},
    }
    neg = {(3, 3), (3, 4)}
    pos = {(5, 4), (5, 5)}

    plan: List[Seg] = []
    for i in range(1, n + 1):
        zone = x_p1_true if assignment[i - 1] else x_p1_false
        plan.append(Seg(f"X{i}", (3, 1), (3, 6), zone))
    for j in range(1, m):
        plan.append(Seg(f"C{j}", (3, 1), (3, 4), c_p1[chosen[j - 1]]))
    plan.append(Seg(f"C{m}", (3, 1), (1, 1),
                    c_p1[chosen[m - 1]] | {(2, 4)} | _rows(4, 1)))
    for j in range(m - 1, 0, -1):
        plan.append(Seg(f"C{j}", (1, 4), (1, 1), _rows(4, 1)))
    for i in range(n, 0, -1):
        zone = _rows(6, 1) | (({(2, 3), (2, 4)} | neg) if assignment[i - 1] else set())
        plan.append(Seg(f"X{i}", (1, 6), (1, 1), zone))
    plan.append(Seg("S", (1, 2), (7, 2), _rows(2, 1, 2, 3, 4, 5, 6, 7)))
    for i in range(1, n + 1):
        zone = _rows(6, 7) | (set() if assignment[i - 1] else ({(6, 4), (6, 5)} | pos))
        plan.append(Seg(f"X{i}", (7, 1), (7, 6), zone))
    for j in range(1, m):
        plan.append(Seg(f"C{j}", (7, 1), (7, 4), _rows(4, 7)))
    plan.append(Seg(f"C{m}", (7, 1), (6, 1), _rows(4, 7) | _rows(4, 4, 5, 6)))
    for j in range(m - 1, 0, -1):
        plan.append(Seg(f"C{j}", (6, 4), (6, 1), _rows(4, 4, 5, 6)))
    for i in range(n, 0, -1):
        zone = _rows(6, 6) if assignment[i - 1] else _rows(6, 4, 5, 6) - pos
        entry = (6, 6)
        plan.append(Seg(f"X{i}", entry, (6, 1), zone))
    plan.append(Seg("S", (6, 2), (2, 2), {(r, 2) for r in range(2, 7)}))
    for i in range(1, n + 1):
        zone = _rows(6, 2, 3, 4)
        if assignment[i - 1]:
            zone -= neg
        plan.append(Seg(f"X{i}", (2, 1), (2, 6), zone))
    for j in range(1, m + 1):
        plan.append(Seg(f"C{j}", (2, 1), (2, 4) if j < m else None, _rows(4, 2, 3, 4)))
    return _solve_plan(grid, plan)


# ---------------------------------------------------------------------------
# height 9: cycle -- six sweeps with fixed crossing rows {7,1,9,8,2,3}:
# the prefix travels row 7; returns cover row 1 (negative rescue dips),
# row 9 (positive rescue dips), row 8 plus the lower middle leftovers, and
# rows 2 then 3 plus the cells directly above the prefix, ending beside the
# start vertex.


def _grid9_walk(grid: GridInstance, formula: CnfFormula, assignment):
    n, m = formula.num_vars, formula.num_clauses
    chosen = _chosen_literals(formula, assignment)
    names = [f"X{i}" for i in range(1, n + 1)] + [f"C{j}" for j in range(1, m + 1)]
    k = len(names)

    # prefix routes; X1 climbs via column 2 so column 1 stays free for the
    # closing descent to the cell under the start vertex
    x1_p1 = ({(7, 1), (7, 2), (6, 2)} | {(6, c) for c in range(3, 8)}
             | {(7, 7), (7, 8)}) \
        if assignment[0] else \
        ({(7, 1), (7, 2), (6, 2), (5, 2)} | {(4, c) for c in range(2, 9)}
         | {(5, 8), (6, 8), (7, 8)})
    x_p1_true = {(7, 1), (6, 1)} | {(6, c) for c in range(2, 9)} | {(7, 8)}
    x_p1_false = {(7, 1), (6, 1), (5, 1), (4, 1)} | {(4, c) for c in range(2, 9)} \
        | {(5, 8), (6, 8), (7, 8)}
    c_p1 = {
        1: {(7, 1), (6, 1), (5, 1), (4, 1), (4, 2), (4, 3), (4, 4), (4, 5),
            (5, 5), (6, 5), (7, 5), (7, 6)},
        2: {(7, 1), (6, 1), (5, 1), (5, 2), (5, 3), (5, 4), (5, 5),
            (6, 5), (7, 5), (7, 6)},
        3: {(7, 1), (6, 1), (6, 2), (6, 3), (6, 4), (6, 5), (7, 5), (7, 6)},
    }
    c_p1_last = {
        1: {(7, 1), (6, 1), (5, 1), (4, 1), (4, 2), (4, 3), (4, 4), (4, 5), (4, 6)},
        2: {(7, 1), (6, 1), (5, 1), (5, 2), (5, 3), (5, 4), (5, 5), (4, 5), (4, 6)},
        3: {(7, 1), (6, 1), (6, 2), (6, 3), (6, 4), (6, 5), (5, 5), (4, 5), (4, 6)},
    }
    neg_dip = {(2, 4), (3, 4), (4, 4), (4, 5), (3, 5), (2, 5)}
    pos_dip = {(8, 4), (7, 4), (6, 4), (6, 5), (7, 5), (8, 5)}

    plan: List[Seg] = []
    x_cells = {}

    def leftovers(gname, rows):
        gd = grid.gadget(gname)
        w = gd.col_end - gd.col_start + 1
        return {(r, c) for r in rows for c in range(1, w + 1)} - x_cells[gname]

    for idx, gname in enumerate(names):
        if gname.startswith("X"):
            i = int(gname[1:])
            truthy = bool(assignment[i - 1])
            if i == 1:
                x_cells[gname] = set(x1_p1)
            else:
                x_cells[gname] = set(x_p1_true if truthy else x_p1_false)
            if truthy:
                x_cells[gname] |= {(4, 4), (4, 5)}
            else:
                x_cells[gname] |= pos_dip
        else:
            j = int(gname[1:])
            routes = c_p1_last if idx == k - 1 else c_p1
            x_cells[gname] = set(routes[chosen[j - 1]])

    def x_segments(idx):
        gname = names[idx]
        i = int(gname[1:])
        truthy = bool(assignment[i - 1])
        if i == 1:
            p1_zone = x1_p1
        else:
            p1_zone = x_p1_true if truthy else x_p1_false
        p1 = Seg(gname, (7, 1), (7, 8), p1_zone)
        upper = leftovers(gname, (2, 3, 4, 5)) | {(6, 1), (6, 8)} - x_cells[gname]
        if truthy:
            # negative rescue cells ride the first return sweep only
            p2 = Seg(gname, (1, 8), (1, 1), _rows(8, 1) | upper | {(4, 4), (4, 5)})
            share = upper
        else:
            p2 = Seg(gname, (1, 8), (1, 1), _rows(8, 1) | leftovers(gname, (2, 3)))
            share = leftovers(gname, (2, 3))
        p2b_zone = _rows(8, 9) | (pos_dip if not truthy else set())
        p2b = Seg(gname, (9, 1), (9, 8), p2b_zone)
        low = leftovers(gname, (5, 6, 7, 8))
        if i == 1:
            reserve = {(4, 1), (5, 1), (6, 1)}
            p4 = Seg(gname, (8, 8), (8, 1), low - reserve)
            p5 = Seg(gname, (2, 1), (2, 8), share - reserve)
            p6 = Seg(gname, (3, 8), (6, 1), share | reserve)
        else:
            p4 = Seg(gname, (8, 8), (8, 1), low)
            p5 = Seg(gname, (2, 1), (2, 8), share)
            p6 = Seg(gname, (3, 8), (3, 1), share)
        return p1, p2, p2b, p4, p5, p6

    def c_segments(idx):
        gname = names[idx]
        j = int(gname[1:])
        last = idx == k - 1
        lits = {(r, c) for r in (4, 5, 6) for c in (3, 4)} - x_cells[gname]
        p1 = Seg(gname, (7, 1), (4, 6) if last else (7, 6), x_cells[gname])
        upper = leftovers(gname, (2, 3, 4, 5))
        p2 = Seg(gname, (1, 6), (1, 1), _rows(6, 1) | (upper - lits))
        p2b = Seg(gname, (9, 1), (9, 6), _rows(6, 9))
        low = leftovers(gname, (5, 6, 7)) | _rows(6, 8)
        p4 = Seg(gname, (8, 6), (8, 1), low)
        share = leftovers(gname, (2, 3, 4, 5, 6))
        if last:
            p56 = Seg(gname, (2, 1), (3, 1), share)
            return p1, p2, p2b, p4, p56, None
        p5 = Seg(gname, (2, 1), (2, 6), share)
        p6 = Seg(gname, (3, 6), (3, 1), share)
        return p1, p2, p2b, p4, p5, p6

    segs = [x_segments(i) if names[i].startswith("X") else c_segments(i)
            for i in range(k)]

    t_p1 = Seg("T", (4, 1), (4, 2), {(4, 1), (4, 2)})
    t_top = Seg("T", (3, 2), (1, 1), _rows(2, 1, 2, 3))
    t_turn = Seg("T", (9, 1), (8, 1), {(r, c) for r in range(5, 10) for c in (1, 2)})
    s_transit = Seg("S", (1, 2), (9, 2),
                    {(r, 1) for r in range(1, 10)} | {(1, 2), (9, 2)})
    s_turn = Seg("S", (8, 2), (2, 2), {(r, 2) for r in range(2, 9)})

    for idx in range(k):
        plan.append(segs[idx][0])
    plan += [t_p1, t_top]
    for idx in range(k - 1, -1, -1):
        plan.append(segs[idx][1])
    plan.append(s_transit)
    for idx in range(k):
        plan.append(segs[idx][2])
    plan.append(t_turn)
    for idx in range(k - 1, -1, -1):
        plan.append(segs[idx][3])
    plan.append(s_turn)
    for idx in range(k):
        if segs[idx][5] is not None or idx < k - 1:
            plan.append(segs[idx][4])
    plan.append(segs[k - 1][4])  # merged turn inside the last clause gadget
    for idx in range(k - 2, -1, -1):
        plan.append(segs[idx][5])
    return _solve_plan(grid, plan)


# ---------------------------------------------------------------------------
# height 6: minimum cycle (crossing rows searched; start border hosts the
# upward turn, the last clause gadget the downward one)


def _grid6_walk(grid: GridInstance, formula: CnfFormula, assignment):
    n, m = formula.num_vars, formula.num_clauses
    chosen = _chosen_literals(formula, assignment)
    names = [f"X{i}" for i in range(1, n + 1)] + [f"C{j}" for j in range(1, m + 1)]
    k = len(names)

    x_p1_true = {(6, 1), (6, 2), (6, 3), (5, 3), (4, 3), (4, 4), (5, 4),
                 (6, 4), (6, 5), (6, 6)}
    x_p1_false = {(6, 1), (6, 2), (6, 3), (5, 3), (5, 4), (6, 4), (6, 5), (6, 6)}
    c_p1 = {
        1: {(6, 1), (6, 2), (6, 3), (5, 3), (5, 4), (6, 4), (6, 5), (6, 6), (6, 7)},
        2: {(6, 1), (6, 2), (6, 3), (6, 4), (5, 4), (5, 5), (6, 5), (6, 6), (6, 7)},
    }

    def x_mid_zone(i, for_late):
        zone = _rows(6, 2, 3) | {(4, c) for c in range(1, 7)} | \
            {(5, 1), (5, 2), (5, 5), (5, 6)}
        if assignment[i - 1]:
            zone -= {(4, 3), (4, 4), (5, 3), (5, 4)}
        elif for_late:
            zone -= {(4, 3)}      # the variable vertex must ride the earlier sweep
        return zone

    def c_mid_zone():
        return _rows(7, 2, 3) | {(4, c) for c in range(1, 8)} | \
            {(5, 1), (5, 2), (5, 3), (5, 5), (5, 6), (5, 7)}

    def segs_for(idx, left, right):
        gname = names[idx]
        l2, l3b = left
        r2, r3b = right
        if l2 == l3b or r2 == r3b:
            return None
        if gname.startswith("X"):
            i = int(gname[1:])
            w = 6
            p1 = Seg(gname, (6, 1), (6, 6),
                     x_p1_true if assignment[i - 1] else x_p1_false)
            p2 = Seg(gname, (r2, 6), (l2, 1), x_mid_zone(i, for_late=False))
            p3a = Seg(gname, (1, 1), (1, 6), _rows(w, 1))
            p3b = Seg(gname, (r3b, 6), (l3b, 1), x_mid_zone(i, for_late=True))
            return [p1, p2, p3a, p3b]
        j = int(gname[1:])
        w = 7
        p1 = Seg(gname, (6, 1), (6, 7), c_p1[chosen[j - 1]])
        p2 = Seg(gname, (r2, 7), (l2, 1), _rows(w, 1, 2, 3))
        if idx == k - 1:
            # last gadget: the row-1 corridor turns downward here
            p3 = Seg(gname, (1, 1), (l3b, 1), _rows(w, 1) | c_mid_zone())
            return [p1, p2, p3]
        p3a = Seg(gname, (1, 1), (1, 7), _rows(w, 1))
        p3b = Seg(gname, (r3b, 7), (l3b, 1), c_mid_zone())
        return [p1, p2, p3a, p3b]

    def s_segs(b0):
        sturn = b0[0]
        return [
            Seg("S", (6, 1), (6, 1), {(6, 1)}),
            Seg("S", (sturn, 1), (1, 1), {(r, 1) for r in range(1, sturn + 1)}),
            Seg("S", (sturn + 1, 1), (5, 1), {(r, 1) for r in range(sturn + 1, 6)}),
        ]

    def t_segs(bk):
        if bk[0] != 1:
            return None
        return [Seg("T", (6, 1), (1, 1), {(r, 1) for r in range(1, 7)})]

    def state_options(idx):
        if idx == 0:
            return [(r, r + 1) for r in (2, 3, 4)]
        if idx == k:
            return [(1, 0)]
        if idx <= n:
            pairs = [(a, b) for a in (2, 3, 4, 5) for b in (2, 3, 4, 5) if a != b]
        else:
            pairs = [(a, b) for a in (1, 2, 3) for b in (2, 3, 4, 5) if a != b]
        return pairs

    options = [state_options(i) for i in range(k + 1)]

    def t_probe(bk):
        segs = t_segs(bk)
        if segs is None:
            return None
        return _cover_gadget(grid, "T", segs)

    rows_found = _dfs_boundary_rows(
        grid, names, options, segs_for,
        lambda b0: _cover_gadget(grid, "S", s_segs(b0)),
        t_probe)
    if rows_found is None:
        return None

    ssegs = s_segs(rows_found[0])
    plan: List[Seg] = [ssegs[0]]
    for idx in range(k):
        plan.append(segs_for(idx, rows_found[idx], rows_found[idx + 1])[0])
    plan += t_segs(rows_found[k])
    for idx in range(k - 1, -1, -1):
        plan.append(segs_for(idx, rows_found[idx], rows_found[idx + 1])[1])
    plan.append(ssegs[1])
    for idx in range(k):
        segs = segs_for(idx, rows_found[idx], rows_found[idx + 1])
        if idx < k - 1:
            plan.append(segs[2])
    last = segs_for(k - 1, rows_found[k - 1], rows_found[k])
    plan.append(last[2])
    for idx in range(k - 2, -1, -1):
        plan.append(segs_for(idx, rows_found[idx], rows_found[idx + 1])[3])
    plan.append(ssegs[2])
    return _solve_plan(grid, plan)


def _dfs_boundary_rows(grid, names, options, seg_builder, left_probe, right_probe):
    k = len(names)
    dead = set()
    chosen = [None] * (k + 1)

    def rec(idx, left):
        if idx == k:
            return right_probe(left) is not None
        key = (idx, left)
        if key in dead:
            return False
        for right in options[idx + 1]:
            segs = seg_builder(idx, left, right)
            if segs is None:
                continue
            if _cover_gadget(grid, names[idx], segs) is None:
                continue
            chosen[idx + 1] = right
            if rec(idx + 1, right):
                return True
        dead.add(key)
        return False

    for b0 in options[0]:
        if left_probe(b0) is None:
            continue
        chosen[0] = b0
        if rec(0, b0):
            return chosen
    return None


# ---------------------------------------------------------------------------
# public surface


def witness_for_grid(grid: GridInstance, formula: CnfFormula, assignment) -> Solution:
    if not formula.satisfied_by(assignment):
        raise UnsatisfiedAssignmentError("assignment does not satisfy the formula")
    builder = {
        "grid5-minpath": _grid5_walk,
        "grid7-path": _grid7_walk,
        "grid9-cycle": _grid9_walk,
        "grid6-mincycle": _grid6_walk,
    }[grid.reduction]
    walk = builder(grid, formula, assignment)
    if walk is None:
        raise AssertionError(f"no witness route found for {grid.reduction}")
    g = grid.instance.graph
    sol = solution_from_indices(grid.instance, [g.idx(v) for v in walk])
    report = validate_solution(grid.instance, sol)
    assert report.valid, f"witness failed validation: {report.violation}"
    return sol


def build_witness(reduction: str, formula: CnfFormula, assignment,
                  budget: Optional[int] = None):
    """Build the generated instance and a certified witness for a satisfying
    assignment.  Returns (construction, solution)."""
    if reduction not in REDUCTION_IDS:
        raise ValueError(f"unknown reduction {reduction!r}")
    if not formula.satisfied_by(assignment):
        raise UnsatisfiedAssignmentError("assignment does not satisfy the formula")
    if reduction in ("pi-path", "pi-cycle"):
        cons = gen_pi_path(formula) if reduction == "pi-path" else gen_pi_cycle(formula)
        walk = build_pi_witness(formula, assignment, reduction)
        g = cons.instance.graph
        sol = solution_from_indices(cons.instance, [g.idx(v) for v in walk])
        report = validate_solution(cons.instance, sol)
        if not report.valid:
            raise AssertionError(f"witness failed validation: {report.violation}")
        return cons, sol
    if reduction == "grid7-path":
        cons = gen_grid7_path(formula)
    elif reduction == "grid9-cycle":
        cons = gen_grid9_cycle(formula)
    elif reduction == "grid5-minpath":
        cons = gen_grid5_minpath(formula, budget if budget is not None else formula.num_vars)
    else:
        cons = gen_grid6_mincycle(formula, budget if budget is not None else formula.num_vars)
    sol = witness_for_grid(cons, formula, assignment)
    return cons, sol
