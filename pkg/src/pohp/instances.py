"""Problem instances and end-to-end solution validation."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional

from .graphs import Graph
from .orders import PartialOrder

PATH = "path"
CYCLE = "cycle"


@dataclass(frozen=True)
class Instance:
    graph: Graph
    order: PartialOrder
    kind: str                      # "path" | "cycle"
    objective: str = "minimize"    # "decision" | "minimize"

    def __post_init__(self):
        if self.kind not in (PATH, CYCLE):
            raise ValueError(f"bad kind {self.kind!r}")
        if self.order.n != self.graph.n:
            raise ValueError("order and graph disagree on the vertex set")


@dataclass(frozen=True)
class Solution:
    order: tuple                   # vertex names, full permutation
    weight: int
    kind: str


@dataclass(frozen=True)
class ValidationReport:
    valid: bool
    violation: Optional[str] = None
    indices: tuple = field(default_factory=tuple)

    def __bool__(self):
        return self.valid


def solution_from_indices(inst: Instance, seq_idx, kind=None) -> Solution:
    g = inst.graph
    kind = kind or inst.kind
    weight = 0
    for a, b in zip(seq_idx, seq_idx[1:]):
        weight += g.weight_idx(a, b)
    if kind == CYCLE:
        weight += g.weight_idx(seq_idx[-1], seq_idx[0])
    return Solution(tuple(g.names[i] for i in seq_idx), weight, kind)


def validate_solution(inst: Instance, sol: Solution) -> ValidationReport:
    """Check permutation, adjacency, closing edge, linear extension, weight.

    Violations are reported, not raised; the report names the first failed
    condition and the offending positions.
    """
    g = inst.graph
    if sol.kind != inst.kind:
        return ValidationReport(False, "kind mismatch")
    try:
        seq = [g.idx(name) for name in sol.order]
    except Exception:
        return ValidationReport(False, "unknown vertex in solution")
    if len(seq) != g.n or len(set(seq)) != g.n:
        return ValidationReport(False, "not a permutation of the vertex set")
    for pos in range(len(seq) - 1):
        if not g.has_edge_idx(seq[pos], seq[pos + 1]):
            return ValidationReport(False, "consecutive vertices not adjacent", (pos, pos + 1))
    if inst.kind == CYCLE:
        if g.n < 3:
            return ValidationReport(False, "cycle needs at least 3 vertices")
        if not g.has_edge_idx(seq[-1], seq[0]):
            return ValidationReport(False, "first and last vertices not adjacent", (g.n - 1, 0))
    seen = 0
    position = {v: i for i, v in enumerate(seq)}
    for pos, v in enumerate(seq):
        bad = inst.order.succ[v] & seen
        if bad:
            w = (bad & -bad).bit_length() - 1
            return ValidationReport(
                False, "sequence is not a linear extension", (pos, position[w])
            )
        seen |= 1 << v
    weight = 0
    for a, b in zip(seq, seq[1:]):
        weight += g.weight_idx(a, b)
    if inst.kind == CYCLE:
        weight += g.weight_idx(seq[-1], seq[0])
    if weight != sol.weight:
        return ValidationReport(False, f"weight mismatch: stated {sol.weight}, actual {weight}")
    return ValidationReport(True)
