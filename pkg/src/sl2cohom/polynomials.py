"""Univariate polynomials with exact rational coefficients.

Coefficients are stored ascending by power of x with trailing zeros
stripped, so the zero polynomial has an empty coefficient tuple and the
leading coefficient of a nonzero polynomial is never zero.  All arithmetic
is exact; there is no floating point anywhere in this package.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Sequence, Union

Rational = Fraction

Scalar = Union[Fraction, int]


def parse_rational(text: str) -> Fraction:
    """Parse the canonical text form "p/q" or "p" of an exact rational."""
    return Fraction(text.strip())


def format_rational(value: Scalar) -> str:
    """Canonical text form: "p/q" with q > 0 and gcd(|p|, q) = 1, or "p"."""
    return str(Fraction(value))


class Polynomial:
    """Immutable univariate polynomial over the rationals."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable[Scalar] = ()):
        cs = [Fraction(c) for c in coeffs]
        while cs and cs[-1] == 0:
            cs.pop()
        object.__setattr__(self, "coeffs", tuple(cs))

    def __setattr__(self, name, value):  # pragma: no cover - immutability guard
        raise AttributeError("Polynomial is immutable")

    # -- constructors -------------------------------------------------

    @classmethod
    def _raw(cls, cs: list) -> "Polynomial":
        """Internal fast path: cs must already hold Fraction values."""
        while cs and cs[-1] == 0:
            cs.pop()
        p = object.__new__(cls)
        object.__setattr__(p, "coeffs", tuple(cs))
        return p

    @staticmethod
    def zero() -> "Polynomial":
        return Polynomial(())

    @staticmethod
    def one() -> "Polynomial":
        return Polynomial((1,))

    @staticmethod
    def x() -> "Polynomial":
        return Polynomial((0, 1))

    @staticmethod
    def constant(c: Scalar) -> "Polynomial":
        return Polynomial((c,))

    @staticmethod
    def monomial(power: int, coeff: Scalar = 1) -> "Polynomial":
        if power < 0:
            raise ValueError("negative power")
        return Polynomial((0,) * power + (coeff,))

    # -- structure ----------------------------------------------------

    def is_zero(self) -> bool:
        return not self.coeffs

    def __bool__(self) -> bool:
        return bool(self.coeffs)

    def degree(self) -> int:
        """Degree of the polynomial; -1 for the zero polynomial."""
        return len(self.coeffs) - 1

    def coefficient(self, power: int) -> Fraction:
        if 0 <= power < len(self.coeffs):
            return self.coeffs[power]
        return Fraction(0)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Polynomial):
            return NotImplemented
        return self.coeffs == other.coeffs

    def __hash__(self) -> int:
        return hash(self.coeffs)

    # -- arithmetic ---------------------------------------------------

    def __add__(self, other: "Polynomial") -> "Polynomial":
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, c in enumerate(b):
            out[i] += c
        return Polynomial._raw(out)

    def __neg__(self) -> "Polynomial":
        return Polynomial._raw([-c for c in self.coeffs])

    def __sub__(self, other: "Polynomial") -> "Polynomial":
        return self + (-other)

    def __mul__(self, other: Union["Polynomial", Scalar]) -> "Polynomial":
        if isinstance(other, (Fraction, int)):
            return self.scale(other)
        if not self.coeffs or not other.coeffs:
            return Polynomial(())
        out = [Fraction(0)] * (len(self.coeffs) + len(other.coeffs) - 1)
        sparse = [(j, b) for j, b in enumerate(other.coeffs) if b != 0]
        for i, a in enumerate(self.coeffs):
            if a == 0:
                continue
            for j, b in sparse:
                out[i + j] += a * b
        return Polynomial._raw(out)

    def __rmul__(self, other: Scalar) -> "Polynomial":
        return self.scale(other)

    def scale(self, c: Scalar) -> "Polynomial":
        c = Fraction(c)
        if c == 0:
            return Polynomial(())
        return Polynomial._raw([c * a for a in self.coeffs])

    def shift(self, power: int) -> "Polynomial":
        """Multiply by x**power."""
        if self.is_zero():
            return self
        return Polynomial._raw([Fraction(0)] * power + list(self.coeffs))

    def derivative(self) -> "Polynomial":
        return Polynomial._raw([i * c for i, c in enumerate(self.coeffs) if i])

    def nth_derivative(self, order: int) -> "Polynomial":
        if order == 0:
            return self
        return Polynomial._raw(list(_nth_derivative_coeffs(self.coeffs, order)))

    def antiderivative(self) -> "Polynomial":
        """The primitive with zero constant term."""
        return Polynomial._raw([Fraction(0)] + [
            c / (i + 1) for i, c in enumerate(self.coeffs)])

    def __call__(self, point: Scalar) -> Fraction:
        point = Fraction(point)
        acc = Fraction(0)
        for c in reversed(self.coeffs):
            acc = acc * point + c
        return acc

    # -- serialisation ------------------------------------------------

    def to_json(self) -> list[str]:
        """Ascending coefficient array of canonical rational strings."""
        return [format_rational(c) for c in self.coeffs]

    @staticmethod
    def from_json(data: Sequence[str]) -> "Polynomial":
        return Polynomial(parse_rational(str(c)) for c in data)

    def __repr__(self) -> str:
        return f"Polynomial({list(self.coeffs)!r})"

    def __str__(self) -> str:
        if self.is_zero():
            return "0"
        parts = []
        for i, c in enumerate(self.coeffs):
            if c == 0:
                continue
            if i == 0:
                parts.append(format_rational(c))
            else:
                xpow = "x" if i == 1 else f"x^{i}"
                if c == 1:
                    parts.append(xpow)
                elif c == -1:
                    parts.append(f"-{xpow}")
                else:
                    parts.append(f"{format_rational(c)}*{xpow}")
        return " + ".join(parts).replace("+ -", "- ")


@lru_cache(maxsize=4096)
def _nth_derivative_coeffs(coeffs: tuple[Fraction, ...], order: int) -> tuple[Fraction, ...]:
    if order >= len(coeffs):
        return ()
    out = []
    for i in range(order, len(coeffs)):
        factor = 1
        for j in range(i, i - order, -1):
            factor *= j
        out.append(factor * coeffs[i])
    return tuple(out)


ZERO = Polynomial.zero()
ONE = Polynomial.one()
X = Polynomial.x()
