"""SAT layer: DIMACS round trips and the DPLL decision procedure."""

from __future__ import annotations

import itertools
import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from sphereflow.solver import CnfFormula, SatResult, check_model, parse_dimacs, sat_solve


def brute_force_sat(formula: CnfFormula) -> bool:
    n = formula.num_vars
    for bits in itertools.product((False, True), repeat=n):
        sign = dict(enumerate(bits, start=1))
        if all(
            any(sign[abs(lit)] == (lit > 0) for lit in clause)
            for clause in formula.clauses
        ):
            return True
    return False


def random_formula(rng: random.Random, max_vars: int = 8) -> CnfFormula:
    n = rng.randint(1, max_vars)
    m = rng.randint(0, 4 * n)
    clauses = []
    for _ in range(m):
        width = rng.randint(1, min(3, n))
        vs = rng.sample(range(1, n + 1), width)
        clauses.append(tuple(v if rng.random() < 0.5 else -v for v in vs))
    return CnfFormula(num_vars=n, clauses=tuple(clauses))


def test_trivial_cases():
    empty = CnfFormula(num_vars=0, clauses=())
    assert sat_solve(empty).satisfiable
    one = CnfFormula(num_vars=1, clauses=((1,),))
    res = sat_solve(one)
    assert res.satisfiable and res.model == (1,)
    contradiction = CnfFormula(num_vars=1, clauses=((1,), (-1,)))
    res = sat_solve(contradiction)
    assert not res.satisfiable and res.model is None
    assert not bool(res)


def test_formula_validates_literals():
    with pytest.raises(ValueError):
        CnfFormula(num_vars=2, clauses=((0,),))
    with pytest.raises(ValueError):
        CnfFormula(num_vars=2, clauses=((3,),))


def test_solver_agrees_with_brute_force():
    rng = random.Random(12345)
    for _ in range(300):
        f = random_formula(rng)
        res = sat_solve(f)
        assert res.satisfiable == brute_force_sat(f)
        if res.satisfiable:
            assert check_model(f, res.model)
            assert len(res.model) == f.num_vars
            assert tuple(abs(lit) for lit in res.model) == tuple(
                range(1, f.num_vars + 1)
            )


def test_check_model_rejects_bad_assignment():
    f = CnfFormula(num_vars=2, clauses=((1, 2), (-1, 2)))
    assert check_model(f, (1, 2))
    assert not check_model(f, (1, -2))
    # unassigned variables count as false
    assert not check_model(f, (1,))
    assert check_model(f, (2,))


def test_dimacs_round_trip():
    f = CnfFormula(num_vars=4, clauses=((1, -3), (2, 3, -4), (-1,)))
    text = f.to_dimacs()
    assert text.splitlines()[0] == "p cnf 4 3"
    assert text.endswith("0\n")
    g = parse_dimacs(text)
    assert g == f


def test_dimacs_accepts_comments_and_blank_lines():
    text = "c a comment\n\np cnf 2 1\nc another\n1 -2 0\n"
    f = parse_dimacs(text)
    assert f.num_vars == 2 and f.clauses == ((1, -2),)


def test_dimacs_multiline_clause():
    f = parse_dimacs("p cnf 3 1\n1 2\n3 0\n")
    assert f.clauses == ((1, 2, 3),)


@pytest.mark.parametrize(
    "text",
    [
        "1 2 0\n",  # missing header
        "p cnf 2\n1 0\n",  # short header
        "p sat 2 1\n1 0\n",  # wrong format tag
        "p cnf 2 2\n1 0\n",  # clause count mismatch
        "p cnf 2 1\n1 2\n",  # unterminated clause
        "p cnf 1 1\n2 0\n",  # literal out of range
    ],
)
def test_dimacs_rejects_malformed(text):
    with pytest.raises(ValueError):
        parse_dimacs(text)


@settings(max_examples=80, deadline=None)
@given(st.integers(min_value=0, max_value=2**31 - 1))
def test_solver_vs_brute_property(seed):
    rng = random.Random(seed)
    f = random_formula(rng, max_vars=6)
    res = sat_solve(f)
    assert res.satisfiable == brute_force_sat(f)
    if res.satisfiable:
        assert check_model(f, res.model)


def test_satresult_truthiness():
    assert bool(SatResult(satisfiable=True, model=()))
    assert not bool(SatResult(satisfiable=False, model=None))
