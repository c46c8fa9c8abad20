"""DIMACS CNF parsing and the small brute-force satisfiability helpers the
reduction generators and their tests need."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import List, Optional, Tuple

from .errors import (
    ClauseArityError,
    LiteralOutOfRangeError,
    MalformedHeaderError,
    NotMonotoneError,
)


@dataclass(frozen=True)
class CnfFormula:
    num_vars: int
    clauses: Tuple[Tuple[int, ...], ...]    # nonzero signed 1-based literals
    budget: Optional[int] = None            # for the weighted reductions

    @property
    def num_clauses(self) -> int:
        return len(self.clauses)

    def is_three_sat(self) -> bool:
        return all(len(c) == 3 for c in self.clauses)

    def is_monotone_two_sat(self) -> bool:
        return all(len(c) == 2 and all(l > 0 for l in c) for c in self.clauses)

    def require_three_sat(self):
        for i, c in enumerate(self.clauses):
            if len(c) != 3:
                raise ClauseArityError(f"clause {i + 1} has {len(c)} literals, expected 3")

    def require_monotone_two_sat(self):
        for i, c in enumerate(self.clauses):
            if len(c) != 2:
                raise ClauseArityError(f"clause {i + 1} has {len(c)} literals, expected 2")
            if any(l < 0 for l in c):
                raise NotMonotoneError(f"clause {i + 1} contains a negative literal")

    def satisfied_by(self, assignment) -> bool:
        """assignment: sequence of booleans, index 0 = variable 1."""
        for clause in self.clauses:
            ok = False
            for lit in clause:
                val = assignment[abs(lit) - 1]
                if (lit > 0) == bool(val):
                    ok = True
                    break
            if not ok:
                return False
        return True


def parse_dimacs(text: str, budget: Optional[int] = None) -> CnfFormula:
    num_vars = None
    num_clauses = None
    clauses: List[Tuple[int, ...]] = []
    current: List[int] = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("c") or line.startswith("%"):
            continue
        if line.startswith("p"):
            parts = line.split()
            if len(parts) != 4 or parts[1] != "cnf":
                raise MalformedHeaderError(f"line {lineno}: expected 'p cnf <vars> <clauses>'")
            try:
                num_vars, num_clauses = int(parts[2]), int(parts[3])
            except ValueError:
                raise MalformedHeaderError(f"line {lineno}: non-integer header fields") from None
            if num_vars < 0 or num_clauses < 0:
                raise MalformedHeaderError(f"line {lineno}: negative header fields")
            continue
        if num_vars is None:
            raise MalformedHeaderError(f"line {lineno}: clause before 'p cnf' header")
        for tok in line.split():
            try:
                lit = int(tok)
            except ValueError:
                raise MalformedHeaderError(f"line {lineno}: bad literal {tok!r}") from None
            if lit == 0:
                clauses.append(tuple(current))
                current = []
            else:
                if abs(lit) > num_vars:
                    raise LiteralOutOfRangeError(
                        f"line {lineno}: literal {lit} out of range 1..{num_vars}")
                current.append(lit)
    if current:
        clauses.append(tuple(current))
    if num_vars is None:
        raise MalformedHeaderError("missing 'p cnf' header")
    if num_clauses is not None and len(clauses) != num_clauses:
        raise MalformedHeaderError(
            f"header promises {num_clauses} clauses, found {len(clauses)}")
    return CnfFormula(num_vars, tuple(clauses), budget)


def emit_dimacs(formula: CnfFormula) -> str:
    lines = [f"p cnf {formula.num_vars} {formula.num_clauses}"]
    for clause in formula.clauses:
        lines.append(" ".join(str(l) for l in clause) + " 0")
    return "\n".join(lines) + "\n"


def satisfying_assignments(formula: CnfFormula):
    """All satisfying assignments by exhaustion; fine below ~20 variables."""
    n = formula.num_vars
    if n > 20:
        raise ValueError("brute-force satisfiability capped at 20 variables")
    for bits in range(1 << n):
        assignment = [(bits >> i) & 1 == 1 for i in range(n)]
        if formula.satisfied_by(assignment):
            yield tuple(assignment)


def brute_force_satisfiable(formula: CnfFormula) -> bool:
    for _ in satisfying_assignments(formula):
        return True
    return False


def min_true_assignment(formula: CnfFormula):
    """A satisfying assignment with the fewest true variables, or None."""
    best = None
    for assignment in satisfying_assignments(formula):
        k = sum(assignment)
        if best is None or k < best[0]:
            best = (k, assignment)
    return None if best is None else best[1]
