from fractions import Fraction

import pytest

from sl2cohom.polynomials import Polynomial
from sl2cohom.weights import (
    GENERATORS,
    Weights,
    bracket,
    lie_derivative_density,
)

X1, XX, XX2 = GENERATORS


def test_bracket_table():
    assert bracket(X1, XX) == (Fraction(1), X1)
    assert bracket(X1, XX2) == (Fraction(2), XX)
    assert bracket(XX, XX2) == (Fraction(1), XX2)
    assert bracket(XX, X1) == (Fraction(-1), X1)
    assert bracket(XX2, X1) == (Fraction(-2), XX)
    assert bracket(XX2, XX) == (Fraction(-1), XX2)
    for g in GENERATORS:
        assert bracket(g, g) is None


def test_brackets_match_vector_field_commutator():
    # [X_f, X_g] = X_{f g' - f' g} on the three basis fields
    for a in GENERATORS:
        for b in GENERATORS:
            h = a.h * b.h.derivative() - a.h.derivative() * b.h
            br = bracket(a, b)
            if br is None:
                assert h.is_zero()
            else:
                coeff, gen = br
                assert h == gen.h.scale(coeff)


def test_lie_derivative_examples():
    for mu in (Fraction(0), Fraction(2), Fraction(-1, 2)):
        # field x d/dx on the density x dx^mu: x + mu*x
        assert lie_derivative_density(XX, Polynomial.x(), mu) == \
            Polynomial((0, 1 + mu))
        # constant density along d/dx
        assert lie_derivative_density(X1, Polynomial.constant(5), mu) == \
            Polynomial.zero()
        # field x^2 d/dx on the density 1 dx^mu
        assert lie_derivative_density(XX2, Polynomial.one(), mu) == \
            Polynomial((0, 2 * mu))


def test_weights_delta_and_t_vector():
    w = Weights((Fraction(0), Fraction(-1, 2)), Fraction(2))
    assert w.delta() == Fraction(5, 2)
    assert w.natural_delta() is None
    assert w.has_t_vector()
    assert w.t_vector() == (0, 1)
    assert w.sigma() == 1

    w2 = Weights((Fraction(1, 3),), Fraction(0))
    assert w2.delta() == Fraction(-1, 3)
    assert not w2.has_t_vector()
    with pytest.raises(ValueError):
        w2.t_vector()

    w3 = Weights((Fraction(1),), Fraction(-2))
    assert w3.delta() == Fraction(-3)
    assert w3.natural_delta() is None  # negative integers are not natural


def test_weights_json_roundtrip():
    w = Weights((Fraction(0), Fraction(-1, 2)), Fraction(1))
    data = w.to_json_dict()
    assert data == {"n": 2, "lambdas": ["0", "-1/2"], "mu": "1"}
    assert Weights.from_json_dict(data) == w
    with pytest.raises(ValueError):
        Weights.from_json_dict({"n": 3, "lambdas": ["0"], "mu": "1"})


def test_weights_requires_an_argument():
    with pytest.raises(ValueError):
        Weights((), Fraction(0))
