"""Small complete SAT solver: iterative DPLL with two watched literals.

No clause learning; chronological backtracking with a static branching
order.  Instances here stay below a few hundred variables and some tens
of thousands of clauses, where this is decided in well under a second.
Models are re-verified against every clause before being returned.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Optional, Sequence

__all__ = [
    "CnfFormula",
    "SatResult",
    "parse_dimacs",
    "sat_solve",
]


@dataclass(frozen=True)
class CnfFormula:
    """CNF over variables 1..num_vars; clauses are nonzero signed ids."""

    num_vars: int
    clauses: tuple[tuple[int, ...], ...]

    def __post_init__(self) -> None:
        for clause in self.clauses:
            for lit in clause:
                if lit == 0 or abs(lit) > self.num_vars:
                    raise ValueError(f"literal {lit} out of range in {clause}")

    @property
    def n_clauses(self) -> int:
        return len(self.clauses)

    def to_dimacs(self) -> str:
        """Serialize in DIMACS CNF form, one clause per line, 0-terminated."""
        lines = [f"p cnf {self.num_vars} {len(self.clauses)}"]
        for clause in self.clauses:
            lines.append(" ".join(str(lit) for lit in clause) + " 0")
        return "\n".join(lines) + "\n"


def parse_dimacs(text: str) -> CnfFormula:
    num_vars: Optional[int] = None
    declared = 0
    clauses: list[tuple[int, ...]] = []
    current: list[int] = []
    for raw in text.splitlines():
        line = raw.strip()
        if not line or line.startswith("c"):
            continue
        if line.startswith("p"):
            parts = line.split()
            if len(parts) != 4 or parts[1] != "cnf":
                raise ValueError(f"bad DIMACS header: {line!r}")
            num_vars, declared = int(parts[2]), int(parts[3])
            continue
        for tok in line.split():
            lit = int(tok)
            if lit == 0:
                clauses.append(tuple(current))
                current = []
            else:
                current.append(lit)
    if current:
        raise ValueError("unterminated final clause")
    if num_vars is None:
        raise ValueError("missing DIMACS header")
    if len(clauses) != declared:
        raise ValueError(f"header declares {declared} clauses, found {len(clauses)}")
    return CnfFormula(num_vars=num_vars, clauses=tuple(clauses))


@dataclass(frozen=True)
class SatResult:
    satisfiable: bool
    model: Optional[tuple[int, ...]]

    def __bool__(self) -> bool:
        return self.satisfiable


def check_model(formula: CnfFormula, model: Sequence[int]) -> bool:
    """True when the assignment satisfies every clause."""
    sign = {}
    for lit in model:
        sign[abs(lit)] = lit > 0
    return all(
        any(sign.get(abs(lit), False) == (lit > 0) for lit in clause)
        for clause in formula.clauses
    )


def sat_solve(formula: CnfFormula) -> SatResult:
    """Complete decision procedure; SAT results carry a verified model.

    Branching is static: lowest-index unassigned variable, positive
    phase first.  Deterministic for a fixed input formula.
    """
    n = formula.num_vars
    units: list[int] = []
    clauses: list[list[int]] = []
    for clause in formula.clauses:
        lits = list(dict.fromkeys(clause))
        if any(-lit in clause for lit in lits):
            continue
        if not lits:
            return SatResult(False, None)
        if len(lits) == 1:
            units.append(lits[0])
        else:
            clauses.append(lits)

    # watch[lit] lists clauses currently watching lit; every clause
    # watches its first two positions.
    watch: dict[int, list[int]] = {}
    for ci, c in enumerate(clauses):
        watch.setdefault(c[0], []).append(ci)
        watch.setdefault(c[1], []).append(ci)

    assign = [0] * (n + 1)
    trail: list[int] = []

    def value(lit: int) -> int:
        a = assign[abs(lit)]
        return a if lit > 0 else -a

    def enqueue(lit: int) -> bool:
        v = value(lit)
        if v != 0:
            return v > 0
        assign[abs(lit)] = 1 if lit > 0 else -1
        trail.append(lit)
        return True

    def propagate(head: int) -> bool:
        # Hot path: literal values are computed inline instead of via
        # value() to keep Python call overhead out of the inner loop.
        while head < len(trail):
            false_lit = -trail[head]
            head += 1
            watchers = watch.get(false_lit)
            if not watchers:
                continue
            kept: list[int] = []
            j = 0
            while j < len(watchers):
                ci = watchers[j]
                j += 1
                c = clauses[ci]
                if c[0] == false_lit:
                    c[0], c[1] = c[1], c[0]
                first = c[0]
                a0 = assign[first] if first > 0 else -assign[-first]
                if a0 > 0:
                    kept.append(ci)
                    continue
                for k in range(2, len(c)):
                    lk = c[k]
                    ak = assign[lk] if lk > 0 else -assign[-lk]
                    if ak >= 0:
                        c[1], c[k] = c[k], c[1]
                        watch.setdefault(lk, []).append(ci)
                        break
                else:
                    kept.append(ci)
                    if a0 < 0:
                        kept.extend(watchers[j:])
                        watch[false_lit] = kept
                        return False
                    if first > 0:
                        assign[first] = 1
                    else:
                        assign[-first] = -1
                    trail.append(first)
            watch[false_lit] = kept
        return True

    for u in units:
        if not enqueue(u):
            return SatResult(False, None)
    if not propagate(0):
        return SatResult(False, None)

    # Chronological backtracking: (trail length at decision, var, flipped).
    decisions: list[tuple[int, int, bool]] = []
    next_var = 1
    while True:
        while next_var <= n and assign[next_var] != 0:
            next_var += 1
        if next_var > n:
            model = tuple(v if assign[v] > 0 else -v for v in range(1, n + 1))
            if not check_model(formula, model):
                raise AssertionError("solver produced a non-model")
            return SatResult(True, model)
        decisions.append((len(trail), next_var, False))
        enqueue(next_var)
        while not propagate(len(trail) - 1):
            while decisions:
                mark, var, flipped = decisions.pop()
                for lit in trail[mark:]:
                    assign[abs(lit)] = 0
                del trail[mark:]
                if not flipped:
                    decisions.append((mark, var, True))
                    enqueue(-var)
                    next_var = var + 1
                    break
            else:
                return SatResult(False, None)
        if decisions:
            next_var = decisions[-1][1] + 1
        else:
            next_var = 1
