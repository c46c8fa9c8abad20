"""Rectangular-grid hardness instances compiled from CNF formulas.

Four generators: unweighted path (height 7) and cycle (height 9) instances
from 3-CNF, and weighted minimum-path (height 5) and minimum-cycle
(height 6) instances from positive monotone 2-CNF with a budget.

Grid vertices are named "r.c" (row.column, 1-based, rows counted from the
top) so emitted instances are diffable.  Gadgets occupy column ranges in
order; local gadget coordinates [row, col] translate by a column offset.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Dict, List, Optional, Tuple

from ..cnf import CnfFormula
from ..graphs import Graph
from ..instances import CYCLE, PATH, Instance
from ..orders import close_order


@dataclass(frozen=True)
class Gadget:
    name: str            # "S", "X1", "C2", "T"
    col_start: int       # 1-based global column range, inclusive
    col_end: int


@dataclass(frozen=True)
class GridInstance:
    instance: Instance
    width: int
    height: int
    gadgets: Tuple[Gadget, ...]
    reduction: str
    s: str
    t: str
    budget: Optional[int] = None

    def gadget(self, name: str) -> Gadget:
        for gd in self.gadgets:
            if gd.name == name:
                return gd
        raise KeyError(name)

    def cell(self, gadget: Gadget, row: int, col: int) -> str:
        return f"{row}.{gadget.col_start + col - 1}"


def _grid_graph(width: int, height: int) -> Graph:
    names = [f"{r}.{c}" for r in range(1, height + 1) for c in range(1, width + 1)]
    g = Graph(names)
    for r in range(1, height + 1):
        for c in range(1, width + 1):
            if c < width:
                g.add_edge(f"{r}.{c}", f"{r}.{c+1}")
            if r < height:
                g.add_edge(f"{r}.{c}", f"{r+1}.{c}")
    return g


def _layout(widths: List[Tuple[str, int]]) -> Tuple[Gadget, ...]:
    gadgets = []
    col = 1
    for name, w in widths:
        gadgets.append(Gadget(name, col, col + w - 1))
        col += w
    return tuple(gadgets)


class _Builder:
    def __init__(self, widths, height, reduction):
        self.gadgets = _layout(widths)
        self.width = self.gadgets[-1].col_end
        self.height = height
        self.reduction = reduction
        self.graph = _grid_graph(self.width, self.height)
        self.constraints: List[Tuple[str, str]] = []
        self.weights: Dict[Tuple[str, str], int] = {}

    def gadget(self, name):
        for gd in self.gadgets:
            if gd.name == name:
                return gd
        raise KeyError(name)

    def cell(self, gname, row, col) -> str:
        gd = self.gadget(gname)
        assert 1 <= col <= gd.col_end - gd.col_start + 1, (gname, row, col)
        assert 1 <= row <= self.height
        return f"{row}.{gd.col_start + col - 1}"

    def before(self, a, b):
        if a != b:
            self.constraints.append((a, b))

    def weight(self, a, b, w):
        self.weights[(a, b)] = w

    def finish(self, kind, s, t, budget=None) -> GridInstance:
        g = self.graph
        for (a, b), w in self.weights.items():
            key = tuple(sorted((g.idx(a), g.idx(b))))
            assert g.has_edge_idx(*key)
            g._weights[key] = w
        order = close_order(g.n, [(g.idx(a), g.idx(b)) for a, b in self.constraints])
        inst = Instance(g, order, kind)
        return GridInstance(inst, self.width, self.height, self.gadgets,
                            self.reduction, s, t, budget)


def gen_grid7_path(formula: CnfFormula) -> GridInstance:
    """(6n+4m+2) x 7 grid; order-extending Hamiltonian path iff satisfiable."""
    formula.require_three_sat()
    n, m = formula.num_vars, formula.num_clauses
    if n < 1 or m < 1:
        raise ValueError("need at least one variable and one clause")
    widths = [("S", 2)]
    widths += [(f"X{i}", 6) for i in range(1, n + 1)]
    widths += [(f"C{j}", 4) for j in range(1, m + 1)]
    b = _Builder(widths, 7, "grid7-path")
    s = b.cell("X1", 3, 1)
    t = b.cell(f"C{m}", 3, 4)

    for name in b.graph.names:
        if name != s:
            b.before(s, name)
    sgad = b.gadget("S")
    for r in range(1, 8):
        for c in range(sgad.col_start, sgad.col_end + 1):
            b.before(t, f"{r}.{c}")
    for r in (1, 2, 6, 7):
        for c in range(1, b.width + 1):
            v = f"{r}.{c}"
            if v != t:
                b.before(t, v)
    for i in range(1, n + 1):
        for c in (2, 3, 4, 5):
            b.before(t, b.cell(f"X{i}", 4, c))
    for j, clause in enumerate(formula.clauses, start=1):
        for a, lit in enumerate(clause, start=1):
            var = abs(lit)
            if lit > 0:
                sources = [b.cell(f"X{var}", 5, 4), b.cell(f"X{var}", 5, 5)]
            else:
                sources = [b.cell(f"X{var}", 3, 3), b.cell(f"X{var}", 3, 4)]
            targets = [b.cell(f"C{j}", a + 2, 2), b.cell(f"C{j}", a + 2, 3)]
            for u in sources:
                for v in targets:
                    b.before(u, v)
    return b.finish(PATH, s, t)


def gen_grid9_cycle(formula: CnfFormula) -> GridInstance:
    """(8n+6m+4) x 9 grid; order-extending Hamiltonian cycle iff satisfiable.

    The end vertex sits in the right border gadget; its unique approach cell
    T[4,1] is exempt from the after-t constraints so the prefix can reach it.
    The blocked variable-gadget rows are 5 and 7 of the middle columns (the
    rows between and beside the two variable-vertex rows 4 and 6).
    """
    formula.require_three_sat()
    n, m = formula.num_vars, formula.num_clauses
    if n < 1 or m < 1:
        raise ValueError("need at least one variable and one clause")
    widths = [("S", 2)]
    widths += [(f"X{i}", 8) for i in range(1, n + 1)]
    widths += [(f"C{j}", 6) for j in range(1, m + 1)]
    widths += [("T", 2)]
    b = _Builder(widths, 9, "grid9-cycle")
    s = b.cell("X1", 7, 1)
    t = b.cell("T", 4, 2)
    t_approach = b.cell("T", 4, 1)

    for name in b.graph.names:
        if name != s:
            b.before(s, name)
    for gname in ("S", "T"):
        gd = b.gadget(gname)
        for r in range(1, 10):
            for c in range(gd.col_start, gd.col_end + 1):
                v = f"{r}.{c}"
                if v not in (t, t_approach):
                    b.before(t, v)
    for r in (1, 2, 3, 8, 9):
        for c in range(1, b.width + 1):
            b.before(t, f"{r}.{c}")
    for i in range(1, n + 1):
        for r in (5, 7):
            for c in (3, 4, 5, 6):
                v = b.cell(f"X{i}", r, c)
                if v != s:
                    b.before(t, v)
    for j in range(1, m + 1):
        for c in (2, 3):
            b.before(t, b.cell(f"C{j}", 7, c))
    for j, clause in enumerate(formula.clauses, start=1):
        for a, lit in enumerate(clause, start=1):
            var = abs(lit)
            if lit > 0:
                sources = [b.cell(f"X{var}", 6, 4), b.cell(f"X{var}", 6, 5)]
            else:
                sources = [b.cell(f"X{var}", 4, 4), b.cell(f"X{var}", 4, 5)]
            targets = [b.cell(f"C{j}", a + 3, 3), b.cell(f"C{j}", a + 3, 4)]
            for u in sources:
                for v in targets:
                    b.before(u, v)
    return b.finish(CYCLE, s, t)


def gen_grid5_minpath(formula: CnfFormula, budget: int) -> GridInstance:
    """(6n+7m+1) x 5 grid with unit weights below the variable vertices;
    a path of weight <= budget exists iff at most `budget` true variables
    can satisfy the formula."""
    formula.require_monotone_two_sat()
    n, m = formula.num_vars, formula.num_clauses
    if n < 1 or m < 1:
        raise ValueError("need at least one variable and one clause")
    widths = [(f"X{i}", 6) for i in range(1, n + 1)]
    widths += [(f"C{j}", 7) for j in range(1, m + 1)]
    widths += [("T", 1)]
    b = _Builder(widths, 5, "grid5-minpath")
    s = b.cell("X1", 5, 1)
    t = b.cell("T", 5, 1)

    for name in b.graph.names:
        if name != s:
            b.before(s, name)
    for i in range(1, n + 1):
        x = f"X{i}"
        for r in (1, 2):
            for c in range(1, 7):
                b.before(t, b.cell(x, r, c))
        b.before(t, b.cell(x, 3, 2))
        b.before(t, b.cell(x, 4, 2))
    for j in range(1, m + 1):
        for r in (1, 2, 3):
            for c in range(1, 8):
                b.before(t, b.cell(f"C{j}", r, c))
    for j in range(1, m + 1):
        b.before(b.cell(f"C{j}", 4, 3), t)
    for j, clause in enumerate(formula.clauses, start=1):
        for a, lit in enumerate(clause, start=1):
            b.before(b.cell(f"X{lit}", 3, 3), b.cell(f"C{j}", 4, 2 * a))
    for i in range(1, n + 1):
        b.weight(b.cell(f"X{i}", 4, 3), b.cell(f"X{i}", 3, 3), 1)
    return b.finish(PATH, s, t, budget)


def gen_grid6_mincycle(formula: CnfFormula, budget: int) -> GridInstance:
    """(6n+7m+2) x 6 grid, the cycle analogue of the height-5 reduction:
    bottom five rows mirror it one row down with the clause pattern shifted
    one column right; the top row copies the constraints of row 2."""
    formula.require_monotone_two_sat()
    n, m = formula.num_vars, formula.num_clauses
    if n < 1 or m < 1:
        raise ValueError("need at least one variable and one clause")
    widths = [("S", 1)]
    widths += [(f"X{i}", 6) for i in range(1, n + 1)]
    widths += [(f"C{j}", 7) for j in range(1, m + 1)]
    widths += [("T", 1)]
    b = _Builder(widths, 6, "grid6-mincycle")
    s = b.cell("S", 6, 1)
    t = b.cell("T", 6, 1)

    for name in b.graph.names:
        if name != s:
            b.before(s, name)
    for i in range(1, n + 1):
        x = f"X{i}"
        for r in (1, 2, 3):
            for c in range(1, 7):
                b.before(t, b.cell(x, r, c))
        b.before(t, b.cell(x, 4, 2))
        b.before(t, b.cell(x, 5, 2))
    for j in range(1, m + 1):
        for r in (1, 2, 3, 4):
            for c in range(1, 8):
                b.before(t, b.cell(f"C{j}", r, c))
    for j in range(1, m + 1):
        b.before(b.cell(f"C{j}", 5, 4), t)
    for j, clause in enumerate(formula.clauses, start=1):
        for a, lit in enumerate(clause, start=1):
            b.before(b.cell(f"X{lit}", 4, 3), b.cell(f"C{j}", 5, 2 * a + 1))
    for i in range(1, n + 1):
        b.weight(b.cell(f"X{i}", 4, 3), b.cell(f"X{i}", 5, 3), 1)
    return b.finish(CYCLE, s, t, budget)
