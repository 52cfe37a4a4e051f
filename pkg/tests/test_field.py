"""Exact quartic field arithmetic: axioms, embeddings, square roots."""

from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from sphereflow.field import (
    F1,
    F2,
    FieldElement,
    MixedFieldError,
    QuarticField,
    field_sqrt,
    parse_element,
    rational_sqrt,
    serialize_element,
)


def bisect_root(poly, lo, hi, steps=220):
    """Independent oracle: bisect a sign change of poly with exact rationals."""
    lo, hi = Fraction(lo), Fraction(hi)

    def ev(x):
        acc = Fraction(0)
        for c in reversed(poly):
            acc = acc * x + c
        return acc

    slo = ev(lo)
    assert slo * ev(hi) < 0
    for _ in range(steps):
        mid = (lo + hi) / 2
        v = ev(mid)
        if v == 0:
            return mid
        if (v > 0) == (slo > 0):
            lo = mid
        else:
            hi = mid
    return (lo + hi) / 2


T1_ORACLE = bisect_root([-5, 0, 0, 0, 1], 1, 2)  # 5**(1/4)
T2_ORACLE = bisect_root([-2, 0, 2, 0, 1], Fraction(1, 2), 1)  # sqrt(sqrt(3)-1)


small_rationals = st.fractions(
    min_value=-1000, max_value=1000, max_denominator=50
)


def f1_elements():
    return st.tuples(*(small_rationals,) * 4).map(lambda cs: F1.element(*cs))


def f2_elements():
    return st.tuples(*(small_rationals,) * 4).map(lambda cs: F2.element(*cs))


# -- basic identities -------------------------------------------------------


def test_generator_satisfies_minimal_polynomial():
    t = F1.t
    assert t**4 == F1.from_rational(5)
    u = F2.t
    assert u**4 == F2.from_rational(2) - 2 * u * u


def test_golden_ratio_identity():
    phi = (F1.one + F1.t**2) / 2
    assert phi * phi == phi + 1
    assert abs(phi.to_float() - (1 + 5**0.5) / 2) < 1e-12


def test_sqrt5_and_sqrt3_squares():
    sqrt5 = F1.t**2
    assert sqrt5 * sqrt5 == F1.from_rational(5)
    sqrt3 = F2.t**2 + 1
    assert sqrt3 * sqrt3 == F2.from_rational(3)


def test_to_float_against_bisection_oracle():
    assert abs(F1.t.to_float() - float(T1_ORACLE)) < 1e-15
    assert abs(F2.t.to_float() - float(T2_ORACLE)) < 1e-15


def test_inverse_of_generator():
    # 1/t = t^3/5 in F1
    inv = F1.t.inverse()
    assert inv == F1.element(0, 0, 0, Fraction(1, 5))
    assert inv * F1.t == F1.one


def test_inverse_of_zero_raises():
    with pytest.raises(ZeroDivisionError):
        F1.zero.inverse()


def test_mixed_field_operations_raise():
    with pytest.raises(MixedFieldError):
        F1.t + F2.t
    with pytest.raises(MixedFieldError):
        F1.t * F2.t
    assert F1.one != F2.one


def test_sign_exactness():
    t = F1.t
    sqrt5 = t * t
    # 2 phi - 1 = sqrt5, so this difference is exactly zero
    phi = (F1.one + sqrt5) / 2
    assert (2 * phi - 1 - sqrt5).sign() == 0
    assert (t - Fraction(3, 2)).sign() == -1
    assert (t - Fraction(149, 100)).sign() == 1
    assert (t - Fraction(3, 2)).__abs__().sign() == 1


def test_field_construction_rejects_bad_inputs():
    with pytest.raises(ValueError):
        QuarticField((-4, 0, 0, 0, 1), (1, 2))  # t^4-4 reducible
    with pytest.raises(ValueError):
        QuarticField((-5, 0, 0, 0, 1), (-2, 2))  # two roots inside
    with pytest.raises(ValueError):
        QuarticField((-5, 0, 0, 0, 1), (2, 3))  # no root inside
    with pytest.raises(ValueError):
        QuarticField((Fraction(1, 2), 0, 0, 0, 1), (0, 1))  # non-integer


# -- field axioms (property-based) ------------------------------------------


@given(f1_elements(), f1_elements(), f1_elements())
def test_ring_axioms(a, b, c):
    assert (a + b) + c == a + (b + c)
    assert a + b == b + a
    assert (a * b) * c == a * (b * c)
    assert a * b == b * a
    assert a * (b + c) == a * b + a * c


@given(f2_elements())
def test_additive_inverse(a):
    assert a + (-a) == F2.zero


@given(f1_elements())
def test_multiplicative_inverse(a):
    if not a.is_zero:
        assert a * a.inverse() == F1.one


@given(f1_elements(), f1_elements())
def test_sign_multiplicative(a, b):
    assert (a * b).sign() == a.sign() * b.sign()


@given(f1_elements(), f1_elements())
@settings(max_examples=40)
def test_float_embedding_respects_product(a, b):
    lhs = (a * b).to_float()
    rhs = a.to_float() * b.to_float()
    assert abs(lhs - rhs) <= 1e-9 * max(1.0, abs(lhs))


@given(f2_elements())
def test_serialization_round_trip(a):
    assert parse_element(serialize_element(a), F2) == a


# -- square roots -----------------------------------------------------------


def test_rational_sqrt():
    assert rational_sqrt(Fraction(9, 4)) == Fraction(3, 2)
    assert rational_sqrt(Fraction(2)) is None
    assert rational_sqrt(Fraction(-1)) is None


def test_field_sqrt_known_values():
    # sqrt(5) = t^2 in F1
    assert field_sqrt(F1.from_rational(5)) == F1.t**2
    # sqrt(3) = t^2+1 in F2
    assert field_sqrt(F2.from_rational(3)) == F2.t**2 + 1
    # sqrt(sqrt(3)-1) = t in F2
    assert field_sqrt(F2.t**2) == F2.t
    # (2-sqrt3)/2 = ((sqrt3-1)/2)^2
    sqrt3 = F2.t**2 + 1
    v = (2 - sqrt3) / 2
    assert field_sqrt(v) == (sqrt3 - 1) / 2


def test_field_sqrt_rejects_non_members():
    assert field_sqrt(F2.from_rational(2)) is None  # sqrt2 not in F2
    assert field_sqrt(F2.from_rational(Fraction(1, 2))) is None
    assert field_sqrt(F1.from_rational(-1)) is None
    assert field_sqrt((F2.t**2 + 1) / 2) is None  # sqrt(sqrt3/2) not in F2


@given(f1_elements())
@settings(max_examples=60)
def test_field_sqrt_of_squares(a):
    r = field_sqrt(a * a)
    assert r is not None
    assert r * r == a * a
    assert r.sign() >= 0
