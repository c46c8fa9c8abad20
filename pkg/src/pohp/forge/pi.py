"""Proper-interval hardness instances compiled from 3-CNF formulas.

The path variant chains start, variable, clause and end gadgets along a
backbone path forced (by the order) to be traversed after the end gadget's
first vertex; a formula is satisfiable iff the instance has an
order-extending Hamiltonian path.  The cycle variant doubles the backbone
with copied vertices so the traversal can return to the start.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import List, Optional, Tuple

from ..cnf import CnfFormula
from ..graphs import Graph
from ..instances import CYCLE, PATH, Instance
from ..orders import close_order


@dataclass(frozen=True)
class PiConstruction:
    instance: Instance
    ordering: Tuple[str, ...]          # the proper interval ordering
    kind: str


def _clause_vertices(j):
    return (f"a{j}_1", f"a{j}_2", f"l{j}_1", f"l{j}_2", f"l{j}_3",
            f"b{j}_1", f"b{j}_2")


def _build_base(formula: CnfFormula):
    formula.require_three_sat()
    n, m = formula.num_vars, formula.num_clauses
    if n < 1 or m < 1:
        raise ValueError("need at least one variable and one clause")

    names: List[str] = ["s", "sp"]
    for i in range(1, n + 1):
        names += [f"x{i}", f"nx{i}"]
    for j in range(1, m + 1):
        names += list(_clause_vertices(j))
    names += ["t", "tp"]
    backbone = [f"r{i}" for i in range(n + 1)]
    for j in range(1, m + 1):
        backbone += [f"u{j}", f"v{j}", f"w{j}"]
    names += backbone

    edges = set()

    def connect(a, b):
        edges.add((a, b) if a < b else (b, a))

    # gadget-internal edges
    connect("s", "sp")
    connect("t", "tp")
    for i in range(1, n + 1):
        connect(f"x{i}", f"nx{i}")
    for j in range(1, m + 1):
        a1, a2, l1, l2, l3, b1, b2 = _clause_vertices(j)
        connect(a1, a2)
        connect(b1, b2)
        for la, lb in ((l1, l2), (l2, l3), (l1, l3)):
            connect(la, lb)
        for l in (l1, l2, l3):
            connect(a1, l)
            connect(b1, l)
        connect(a2, l2)
        connect(a2, l3)
        connect(b2, l1)
        connect(b2, l3)
    # chained gadget boundaries: exits completely adjacent to next entries
    blocks = [["s", "sp"]]
    for i in range(1, n + 1):
        blocks.append([f"x{i}", f"nx{i}"])
    for j in range(1, m + 1):
        a1, a2, l1, l2, l3, b1, b2 = _clause_vertices(j)
        blocks.append([a1, a2])        # entries; exits handled below
    blocks.append(["t", "tp"])
    exits = [["s", "sp"]]
    for i in range(1, n + 1):
        exits.append([f"x{i}", f"nx{i}"])
    for j in range(1, m + 1):
        exits.append([f"b{j}_1", f"b{j}_2"])
    for k in range(len(exits)):
        for a in exits[k]:
            for b in blocks[k + 1]:
                connect(a, b)
    # backbone path
    for a, b in zip(backbone, backbone[1:]):
        connect(a, b)
    # backbone-to-gadget edges
    connect("r0", "s")
    connect("r0", "sp")
    connect("r0", "x1")
    connect("r0", "nx1")
    for i in range(1, n):
        for v in (f"x{i}", f"nx{i}", f"x{i+1}", f"nx{i+1}"):
            connect(f"r{i}", v)
    for v in (f"x{n}", f"nx{n}", "a1_1", "a1_2"):
        connect(f"r{n}", v)
    for j in range(1, m + 1):
        a1, a2, l1, l2, l3, b1, b2 = _clause_vertices(j)
        for v in (a1, a2, l1, l2, l3):
            connect(f"u{j}", v)
        for v in (l1, l2, l3, b1, b2):
            connect(f"v{j}", v)
        if j < m:
            for v in (b1, b2, f"a{j+1}_1", f"a{j+1}_2"):
                connect(f"w{j}", v)
        else:
            for v in (b1, b2, "t", "tp"):
                connect(f"w{j}", v)

    constraints = []
    for v in names:
        if v != "s":
            constraints.append(("s", v))
    for v in backbone:
        constraints.append(("t", v))
    constraints.append(("t", "sp"))
    constraints.append(("sp", "tp"))
    for j, clause in enumerate(formula.clauses, start=1):
        for a, lit in enumerate(clause, start=1):
            var = abs(lit)
            vertex = f"x{var}" if lit > 0 else f"nx{var}"
            constraints.append((vertex, f"l{j}_{a}"))

    ordering = ["s", "sp", "r0"]
    for i in range(1, n + 1):
        ordering += [f"x{i}", f"nx{i}", f"r{i}"]
    for j in range(1, m + 1):
        a1, a2, l1, l2, l3, b1, b2 = _clause_vertices(j)
        ordering += [a2, a1, f"u{j}", l2, l3, l1, f"v{j}", b1, b2, f"w{j}"]
    ordering += ["t", "tp"]

    return names, edges, constraints, ordering, backbone


def gen_pi_path(formula: CnfFormula) -> PiConstruction:
    names, edges, constraints, ordering, _ = _build_base(formula)
    g = Graph(names)
    for a, b in sorted(edges):
        g.add_edge(a, b)
    order = close_order(g.n, [(g.idx(a), g.idx(b)) for a, b in constraints])
    return PiConstruction(Instance(g, order, PATH), tuple(ordering), "pi-path")


def gen_pi_cycle(formula: CnfFormula) -> PiConstruction:
    names, edges, constraints, ordering, backbone = _build_base(formula)
    prime = {v: v + "p" for v in backbone}
    names = list(names) + [prime[v] for v in backbone]
    edge_set = set(edges)

    def connect(a, b):
        edge_set.add((a, b) if a < b else (b, a))

    def neighbors_in(v, pool):
        out = []
        for a, b in edges:
            if a == v and b in pool:
                out.append(b)
            elif b == v and a in pool:
                out.append(a)
        return out

    non_backbone = set(n for n in names if n not in prime.values()) - set(backbone)
    # the copied backbone is itself a path
    for a, b in zip(backbone, backbone[1:]):
        connect(prime[a], prime[b])
    for idx, v in enumerate(backbone):
        connect(prime[v], v)
        if idx + 1 < len(backbone):
            connect(prime[v], backbone[idx + 1])
        for u in neighbors_in(v, non_backbone):
            connect(prime[v], u)

    constraints = list(constraints)
    for v in backbone:
        constraints.append(("tp", prime[v]))

    # interleave the copies right after their originals in the ordering
    ordering2 = []
    for v in ordering:
        ordering2.append(v)
        if v in prime:
            ordering2.append(prime[v])

    g = Graph(names)
    for a, b in sorted(edge_set):
        g.add_edge(a, b)
    order = close_order(g.n, [(g.idx(a), g.idx(b)) for a, b in constraints])
    return PiConstruction(Instance(g, order, CYCLE), tuple(ordering2), "pi-cycle")


def check_proper_interval_ordering(graph: Graph, ordering):
    """Verify the umbrella property; return ("ok", bandwidth) or a violation.

    For every edge spanning positions i < k, every vertex strictly between
    must be adjacent to both endpoints.
    """
    if sorted(ordering) != sorted(graph.names):
        return ("violation", "ordering is not a permutation of the vertex set")
    pos = {name: i for i, name in enumerate(ordering)}
    bandwidth = 0
    for (ui, vi), _ in graph.edges_idx():
        i, k = pos[graph.names[ui]], pos[graph.names[vi]]
        if i > k:
            i, k = k, i
        bandwidth = max(bandwidth, k - i)
        for j in range(i + 1, k):
            mid = graph.idx(ordering[j])
            lo, hi = graph.idx(ordering[i]), graph.idx(ordering[k])
            if not graph.has_edge_idx(lo, mid) or not graph.has_edge_idx(mid, hi):
                return ("violation",
                        f"edge {ordering[i]}..{ordering[k]} spans non-neighbour {ordering[j]}")
    return ("ok", bandwidth)


def _phase3_literal_order(chosen: int):
    return {1: (2, 3), 2: (3, 1), 3: (2, 1)}[chosen]


def build_pi_witness(formula: CnfFormula, assignment, kind: str) -> Tuple[str, ...]:
    """The constructive order-extending traversal for a satisfying assignment.

    Piecewise: satisfied-literal sweep to the end gadget, backbone return,
    remaining-vertex sweep (and for the cycle variant the copied backbone
    back to the start)."""
    n, m = formula.num_vars, formula.num_clauses
    walk: List[str] = ["s"]
    for i in range(1, n + 1):
        walk.append(f"x{i}" if assignment[i - 1] else f"nx{i}")
    chosen = []
    for j, clause in enumerate(formula.clauses, start=1):
        pick = None
        for a, lit in enumerate(clause, start=1):
            if (lit > 0) == bool(assignment[abs(lit) - 1]):
                pick = a
                break
        if pick is None:
            raise ValueError(f"assignment does not satisfy clause {j}")
        chosen.append(pick)
        walk += [f"a{j}_1", f"l{j}_{pick}", f"b{j}_1"]
    walk.append("t")
    backbone = [f"r{i}" for i in range(n + 1)]
    for j in range(1, m + 1):
        backbone += [f"u{j}", f"v{j}", f"w{j}"]
    walk += backbone[::-1]
    walk.append("sp")
    for i in range(1, n + 1):
        walk.append(f"nx{i}" if assignment[i - 1] else f"x{i}")
    for j in range(1, m + 1):
        first, last = _phase3_literal_order(chosen[j - 1])
        walk += [f"a{j}_2", f"l{j}_{first}", f"l{j}_{last}", f"b{j}_2"]
    walk.append("tp")
    if kind == "pi-cycle":
        walk += [v + "p" for v in backbone[::-1]]
    return tuple(walk)
