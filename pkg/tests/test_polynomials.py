from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from sl2cohom.polynomials import (
    Polynomial,
    format_rational,
    parse_rational,
)

rationals = st.fractions(min_value=-30, max_value=30, max_denominator=6)
polys = st.lists(rationals, max_size=6).map(Polynomial)


def lagrange_derivative(p: Polynomial, at: Fraction) -> Fraction:
    """Derivative value recovered purely from point evaluations.

    Interpolates p on deg(p) + 1 rational nodes and differentiates the
    Lagrange form; uses only Polynomial.__call__, so it is independent of
    the power-rule implementation under test.
    """
    d = max(p.degree(), 0)
    nodes = [Fraction(j) for j in range(d + 1)]
    values = [p(x) for x in nodes]
    total = Fraction(0)
    for j, xj in enumerate(nodes):
        # derivative of the j-th Lagrange basis at `at`
        basis_deriv = Fraction(0)
        for m, xm in enumerate(nodes):
            if m == j:
                continue
            term = Fraction(1)
            for l, xl in enumerate(nodes):
                if l in (j, m):
                    continue
                term *= (at - xl) / (xj - xl)
            basis_deriv += term / (xj - xm)
        total += values[j] * basis_deriv
    return total


def test_derivative_examples():
    assert Polynomial.monomial(2).derivative() == Polynomial((0, 2))
    assert Polynomial.zero().derivative() == Polynomial.zero()
    p = Polynomial((3, 0, 0, 5))  # 3 + 5x^3
    dp = p.derivative()
    assert dp == Polynomial((0, 0, 15))
    for point in (Fraction(3), Fraction(-1), Fraction(1, 2)):
        assert dp(point) == lagrange_derivative(p, point)


def test_constant_derivative_is_zero():
    assert Polynomial.constant(Fraction(7, 3)).derivative() == Polynomial.zero()


def test_trailing_zeros_are_stripped():
    assert Polynomial((1, 0, 0)).coeffs == (Fraction(1),)
    assert Polynomial((0, 0)).is_zero()
    assert Polynomial((0, 1)).degree() == 1


@given(polys, polys)
@settings(max_examples=60, deadline=None)
def test_sum_rule(p, q):
    assert (p + q).derivative() == p.derivative() + q.derivative()


@given(polys, polys)
@settings(max_examples=60, deadline=None)
def test_product_rule(p, q):
    assert (p * q).derivative() == p.derivative() * q + p * q.derivative()


@given(polys, polys)
@settings(max_examples=40, deadline=None)
def test_degree_of_product(p, q):
    if not p.is_zero() and not q.is_zero():
        assert (p * q).degree() == p.degree() + q.degree()


@given(polys)
@settings(max_examples=40, deadline=None)
def test_antiderivative_inverts_derivative(p):
    assert p.antiderivative().derivative() == p


def test_json_roundtrip():
    p = Polynomial((Fraction(1, 2), 0, Fraction(-3)))
    assert p.to_json() == ["1/2", "0", "-3"]
    assert Polynomial.from_json(p.to_json()) == p
    assert Polynomial.zero().to_json() == []


def test_rational_text_format():
    assert format_rational(Fraction(-1, 2)) == "-1/2"
    assert format_rational(Fraction(4, 2)) == "2"
    assert parse_rational("3/4") == Fraction(3, 4)
    assert parse_rational("-7") == Fraction(-7)
    with pytest.raises(ValueError):
        parse_rational("1.5x")
    with pytest.raises(ZeroDivisionError):
        parse_rational("1/0")


def test_evaluation_and_shift():
    p = Polynomial((1, 2, 1))
    assert p(Fraction(1, 2)) == Fraction(9, 4)
    assert p.shift(2) == Polynomial((0, 0, 1, 2, 1))
    assert str(Polynomial((0, -1, 0, Fraction(1, 3)))) == "-x + 1/3*x^3"
