"""Conflict-driven SAT solving for the pruning loop's inner decisions.

The chronological solver in ``solver`` handles the bundled instances
comfortably, but the minimization loop has to decide hundreds of
intermediate instances, some of which are hard for plain search.  This
engine adds first-UIP clause learning, activity-based branching, phase
saving and Luby restarts.  It is fully deterministic: ties break on
variable index and nothing is randomized.

Results are interchangeable with ``solver.sat_solve`` (models are
self-verified before being returned); only the search strategy differs.
"""

from __future__ import annotations

from .solver import CnfFormula, SatResult, check_model

__all__ = ["sat_solve_cdcl"]

_ACTIVITY_DECAY = 0.95
_RESTART_UNIT = 100


def _luby(i: int) -> int:
    """The Luby restart sequence 1,1,2,1,1,2,4,... (1-indexed)."""
    x = i - 1
    size, seq = 1, 0
    while size < x + 1:
        seq += 1
        size = 2 * size + 1
    while size - 1 != x:
        size = (size - 1) >> 1
        seq -= 1
        x %= size
    return 1 << seq


def sat_solve_cdcl(formula: CnfFormula) -> SatResult:
    n = formula.num_vars
    clauses: list[list[int]] = []
    units: list[int] = []
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

    watch: dict[int, list[int]] = {}

    def add_watches(ci: int) -> None:
        c = clauses[ci]
        watch.setdefault(c[0], []).append(ci)
        watch.setdefault(c[1], []).append(ci)

    for ci in range(len(clauses)):
        add_watches(ci)

    assign = [0] * (n + 1)
    level = [0] * (n + 1)
    reason = [-1] * (n + 1)  # propagating clause index, -1 for decisions
    trail: list[int] = []
    trail_lim: list[int] = []  # trail length at each decision
    activity = [0.0] * (n + 1)
    phase = [True] * (n + 1)
    bump = 1.0

    def enqueue(lit: int, why: int) -> bool:
        var = lit if lit > 0 else -lit
        a = assign[var]
        if a != 0:
            return (a > 0) == (lit > 0)
        assign[var] = 1 if lit > 0 else -1
        level[var] = len(trail_lim)
        reason[var] = why
        trail.append(lit)
        return True

    def propagate(head: int) -> tuple[int, int]:
        """Returns (new head, conflicting clause index or -1)."""
        while head < len(trail):
            false_lit = -trail[head]
            head += 1
            watchers = watch.get(false_lit)
            if not watchers:
                continue
            kept: list[int] = []
            j = 0
            nw = len(watchers)
            while j < nw:
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
                        return head, ci
                    var = first if first > 0 else -first
                    assign[var] = 1 if first > 0 else -1
                    level[var] = len(trail_lim)
                    reason[var] = ci
                    trail.append(first)
            watch[false_lit] = kept
        return head, -1

    def bump_var(var: int) -> None:
        nonlocal bump
        activity[var] += bump
        if activity[var] > 1e100:
            for v in range(1, n + 1):
                activity[v] *= 1e-100
            bump *= 1e-100

    def analyze(conflict_ci: int) -> tuple[list[int], int]:
        """First-UIP learned clause and the level to jump back to."""
        learned: list[int] = []
        seen = [False] * (n + 1)
        counter = 0
        p = 0  # propagated literal being resolved on, 0 on the first pass
        ci = conflict_ci
        idx = len(trail) - 1
        cur = len(trail_lim)
        while True:
            for lit in clauses[ci]:
                if lit == p:
                    continue
                var = lit if lit > 0 else -lit
                if not seen[var] and level[var] > 0:
                    seen[var] = True
                    bump_var(var)
                    if level[var] == cur:
                        counter += 1
                    else:
                        learned.append(lit)
            while not seen[abs(trail[idx])]:
                idx -= 1
            p = trail[idx]
            var = p if p > 0 else -p
            seen[var] = False
            idx -= 1
            counter -= 1
            if counter == 0:
                break
            ci = reason[var]
        learned.insert(0, -p)
        if len(learned) == 1:
            return learned, 0
        back = 0
        pos = 1
        for i in range(1, len(learned)):
            lv = level[abs(learned[i])]
            if lv > back:
                back, pos = lv, i
        # watch a backjump-level literal so the clause wakes up correctly
        learned[1], learned[pos] = learned[pos], learned[1]
        return learned, back

    def backjump(to_level: int) -> None:
        mark = trail_lim[to_level]
        for lit in trail[mark:]:
            var = lit if lit > 0 else -lit
            phase[var] = lit > 0
            assign[var] = 0
            reason[var] = -1
        del trail[mark:]
        del trail_lim[to_level:]

    for u in units:
        if not enqueue(u, -1):
            return SatResult(False, None)
    head, conflict = propagate(0)
    if conflict != -1:
        return SatResult(False, None)

    conflicts_total = 0
    restart_idx = 1
    restart_budget = _luby(1) * _RESTART_UNIT
    while True:
        best, best_act = 0, -1.0
        for v in range(1, n + 1):
            if assign[v] == 0 and activity[v] > best_act:
                best, best_act = v, activity[v]
        if best == 0:
            model = tuple(v if assign[v] > 0 else -v for v in range(1, n + 1))
            if not check_model(formula, model):
                raise AssertionError("solver produced a non-model")
            return SatResult(True, model)
        trail_lim.append(len(trail))
        enqueue(best if phase[best] else -best, -1)
        while True:
            head, conflict = propagate(head)
            if conflict == -1:
                break
            conflicts_total += 1
            if not trail_lim:
                return SatResult(False, None)
            learned, back = analyze(conflict)
            backjump(back)
            head = len(trail)
            if len(learned) == 1:
                if not enqueue(learned[0], -1):
                    return SatResult(False, None)
            else:
                clauses.append(learned)
                add_watches(len(clauses) - 1)
                enqueue(learned[0], len(clauses) - 1)
            bump /= _ACTIVITY_DECAY
            if conflicts_total >= restart_budget:
                restart_idx += 1
                restart_budget = conflicts_total + _luby(restart_idx) * _RESTART_UNIT
                if trail_lim:
                    backjump(0)
                    head = len(trail)
