"""The truncated cochain complex of sl(2) with operator coefficients.

Degree-p cochains are alternating p-linear maps from sl(2) into the module
of n-ary differential operators; with a 3-dimensional source algebra they
are determined by their values on the C(3, p) ascending basis tuples.  The
differential is the standard Lie-algebra coboundary

    (d f)(u_0, ..., u_p) = sum_i (-1)^i u_i . f(..., u_i omitted, ...)
        + sum_{i<j} (-1)^{i+j} f([u_i, u_j], ..., u_i, u_j omitted, ...).

The x d/dx generator acts diagonally on the monomial basis cochains
x^m Omega^alpha (x) (dual p-tuple) with eigenvalue

    m + delta - |alpha| + (#X1 arguments) - (#Xx2 arguments),

the differential preserves this eigenvalue and never increases |alpha|, so
each (eigenvalue, |alpha| <= cap) block is a finite subcomplex over the
rationals.  Brute-force dimensions are computed on the eigenvalue-0 block;
blocks of nonzero eigenvalue are exact (the contraction against x d/dx is
a homotopy), which the tests assert rather than assume.  A result is
reported stable only when three consecutive caps agree.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from typing import Mapping, Optional, Sequence

from .closedform import classify
from .linalg import sparse_rank
from .multiindices import MultiIndex, enumerate_up_to, index_weight
from .operators import DiffOperator, act_on_operator
from .polynomials import Polynomial
from .weights import GENERATORS, SL2Generator, Weights, bracket

ArgTuple = tuple[SL2Generator, ...]

#: Ascending basis tuples of each exterior power of the 3-dim algebra.
BASIS_TUPLES: dict[int, tuple[ArgTuple, ...]] = {
    p: tuple(itertools.combinations(GENERATORS, p)) for p in range(4)
}


def _sort_with_sign(args: Sequence[SL2Generator]) -> Optional[tuple[ArgTuple, int]]:
    """Ascending reordering of args and the permutation sign; None if repeated."""
    if len(set(args)) != len(args):
        return None
    order = sorted(range(len(args)), key=lambda i: args[i])
    sign = 1
    perm = list(order)
    for i in range(len(perm)):
        while perm[i] != i:
            j = perm[i]
            perm[i], perm[j] = perm[j], perm[i]
            sign = -sign
    return tuple(args[i] for i in order), sign


class Cochain:
    """Alternating p-cochain, stored on ascending basis tuples."""

    __slots__ = ("weights", "degree", "components")

    def __init__(self, weights: Weights, degree: int,
                 components: Mapping[ArgTuple, DiffOperator] = ()):
        if degree not in BASIS_TUPLES:
            raise ValueError(f"degree {degree} out of range")
        comps: dict[ArgTuple, DiffOperator] = {}
        items = components.items() if isinstance(components, Mapping) else components
        for key, op in items:
            key = tuple(key)
            if key not in BASIS_TUPLES[degree]:
                raise ValueError(f"{key} is not an ascending basis {degree}-tuple")
            if op.weights != weights:
                raise ValueError("component weights differ from cochain weights")
            if not op.is_zero():
                comps[key] = op
        object.__setattr__(self, "weights", weights)
        object.__setattr__(self, "degree", degree)
        object.__setattr__(self, "components", comps)

    def __setattr__(self, name, value):  # pragma: no cover - immutability guard
        raise AttributeError("Cochain is immutable")

    @staticmethod
    def zero(weights: Weights, degree: int) -> "Cochain":
        return Cochain(weights, degree, {})

    def is_zero(self) -> bool:
        return not self.components

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Cochain):
            return NotImplemented
        return (self.weights, self.degree) == (other.weights, other.degree) and \
            self.components == other.components

    def component(self, key: ArgTuple) -> DiffOperator:
        return self.components.get(tuple(key), DiffOperator.zero(self.weights))

    def evaluate(self, args: Sequence[SL2Generator]) -> DiffOperator:
        """Value on an arbitrary argument tuple, antisymmetry included."""
        if len(args) != self.degree:
            raise ValueError("argument count does not match degree")
        sorted_sign = _sort_with_sign(args)
        if sorted_sign is None:
            return DiffOperator.zero(self.weights)
        key, sign = sorted_sign
        op = self.components.get(key)
        if op is None:
            return DiffOperator.zero(self.weights)
        return op if sign == 1 else -op

    def __add__(self, other: "Cochain") -> "Cochain":
        if (self.weights, self.degree) != (other.weights, other.degree):
            raise ValueError("cochains are not compatible")
        out = dict(self.components)
        for key, op in other.components.items():
            out[key] = out.get(key, DiffOperator.zero(self.weights)) + op
        return Cochain(self.weights, self.degree, out)

    def __neg__(self) -> "Cochain":
        return self.scale(-1)

    def __sub__(self, other: "Cochain") -> "Cochain":
        return self + (-other)

    def scale(self, c) -> "Cochain":
        return Cochain(self.weights, self.degree,
                       {k: op.scale(c) for k, op in self.components.items()})

    def __repr__(self) -> str:
        body = ", ".join(
            f"({','.join(map(str, k))}): {op!r}" for k, op in sorted(self.components.items()))
        return f"Cochain(deg={self.degree}, {{{body}}})"


def coboundary(f: Cochain) -> Cochain:
    """The Lie-algebra coboundary, raising degree by one."""
    if f.degree > 2:
        raise ValueError("coboundary is only defined up to degree 2 here")
    w = f.weights
    out: dict[ArgTuple, DiffOperator] = {}
    for args in BASIS_TUPLES[f.degree + 1]:
        total = DiffOperator.zero(w)
        for i, u in enumerate(args):
            rest = args[:i] + args[i + 1:]
            value = f.evaluate(rest)
            if not value.is_zero():
                acted = act_on_operator(u, value)
                total = total + (acted if i % 2 == 0 else -acted)
        for i, j in itertools.combinations(range(len(args)), 2):
            br = bracket(args[i], args[j])
            if br is None:
                continue
            coeff, gen = br
            rest = tuple(a for t, a in enumerate(args) if t not in (i, j))
            value = f.evaluate((gen,) + rest)
            if value.is_zero():
                continue
            sign = -1 if (i + j) % 2 else 1
            total = total + value.scale(sign * coeff)
        if not total.is_zero():
            out[args] = total
    return Cochain(w, f.degree + 1, out)


def weight_of(m: int, alpha: MultiIndex, args: Sequence[SL2Generator],
              w: Weights) -> Fraction:
    """Diagonal eigenvalue of the x d/dx action on x^m Omega^alpha (x) args-dual."""
    value = Fraction(m) + w.delta() - index_weight(alpha)
    for g in args:
        value += g.weight_contribution
    return value


@dataclass(frozen=True)
class Truncation:
    """Cap on |alpha| and selected eigenvalue block."""

    alpha_max: int
    weight: int = 0

    def __post_init__(self) -> None:
        if self.alpha_max < 0:
            raise ValueError("alpha_max must be nonnegative")


#: One basis cochain of a weight block: (m, alpha, args).
BlockElement = tuple[int, MultiIndex, ArgTuple]


def weight_block_basis(p: int, tr: Truncation, w: Weights) -> list[BlockElement]:
    """Ordered basis of the selected eigenvalue block in degree p.

    For each |alpha| <= alpha_max and each ascending p-tuple, the monomial
    degree m is pinned down by the eigenvalue equation; the element is kept
    when that m is a nonnegative integer.  The list is empty e.g. when the
    shift is not an integer and an integer block is requested.
    """
    out: list[BlockElement] = []
    delta = w.delta()
    for alpha in enumerate_up_to(w.n, tr.alpha_max):
        level = index_weight(alpha)
        for args in BASIS_TUPLES[p]:
            m = Fraction(tr.weight) - delta + level - sum(
                g.weight_contribution for g in args)
            if m.denominator == 1 and m >= 0:
                out.append((int(m), alpha, args))
    return out


def basis_cochain(w: Weights, element: BlockElement) -> Cochain:
    """The cochain x^m Omega^alpha placed on a single basis tuple."""
    m, alpha, args = element
    op = DiffOperator.elementary(w, alpha, Polynomial.monomial(m))
    return Cochain(w, len(args), {args: op})


def _cochain_block_coordinates(f: Cochain, index: Mapping[BlockElement, int]) -> dict[int, Fraction]:
    """Coordinates of a cochain in a block basis; raises if it leaves the block."""
    coords: dict[int, Fraction] = {}
    for args, op in f.components.items():
        for alpha, poly in op.terms.items():
            for m, coeff in enumerate(poly.coeffs):
                if coeff == 0:
                    continue
                key = (m, alpha, args)
                pos = index.get(key)
                if pos is None:
                    raise ValueError(
                        f"image coordinate {key} falls outside the block basis")
                coords[pos] = coeff
    return coords


def block_matrix(p: int, tr: Truncation, w: Weights,
                 source: Optional[list[BlockElement]] = None,
                 target: Optional[list[BlockElement]] = None,
                 ) -> list[dict[int, Fraction]]:
    """Columns of the differential block_p -> block_{p+1} as sparse vectors.

    Raising the degree preserves the eigenvalue and never increases
    |alpha|, so every image coordinate must land in the target basis; a
    coordinate falling outside it is a hard error, not a truncation.
    """
    if source is None:
        source = weight_block_basis(p, tr, w)
    if target is None:
        target = weight_block_basis(p + 1, tr, w)
    index = {elem: i for i, elem in enumerate(target)}
    columns = []
    for elem in source:
        image = coboundary(basis_cochain(w, elem))
        columns.append(_cochain_block_coordinates(image, index))
    return columns


@dataclass(frozen=True)
class CohomResult:
    """A computed dimension with its method and provenance flags."""

    dim: int
    method: str
    weights: Weights
    alpha_max: Optional[int] = None
    stable: Optional[bool] = None
    case: str = ""

    def to_json_dict(self) -> dict:
        return {
            "dim": self.dim,
            "method": self.method,
            "alpha_max": self.alpha_max,
            "stable": self.stable,
            "weights": self.weights.to_json_dict(),
            "case": self.case,
        }


def default_alpha_max(w: Weights) -> int:
    """Cap k + 3 when the shift is a natural number k, else 3."""
    k = w.natural_delta()
    return k + 3 if k is not None else 3


def h2_block_dimension(w: Weights, alpha_max: int, weight: int = 0) -> int:
    """dim ker(d: C2 -> C3) - rank(d: C1 -> C2) on one truncated block."""
    tr = Truncation(alpha_max, weight)
    b1 = weight_block_basis(1, tr, w)
    b2 = weight_block_basis(2, tr, w)
    b3 = weight_block_basis(3, tr, w)
    rank1 = sparse_rank(block_matrix(1, tr, w, b1, b2))
    rank2 = sparse_rank(block_matrix(2, tr, w, b2, b3))
    return len(b2) - rank2 - rank1


def brute_force_h2(w: Weights, alpha_max: Optional[int] = None) -> CohomResult:
    """Brute-force dimension of the degree-2 cohomology on the weight-0 block.

    Recomputes at alpha_max + 1 and alpha_max + 2; the result is flagged
    stable only when the three truncations agree, and an unstable number is
    never reported silently (callers must consult the flag).
    """
    if alpha_max is None:
        alpha_max = default_alpha_max(w)
    if alpha_max < 1:
        raise ValueError("alpha_max must be at least 1")
    dims = [h2_block_dimension(w, alpha_max + extra) for extra in range(3)]
    return CohomResult(
        dim=dims[0],
        method="oracle",
        weights=w,
        alpha_max=alpha_max,
        stable=(dims[0] == dims[1] == dims[2]),
        case=classify(w).describe(),
    )


def weight_block_report(w: Weights, alpha_max: int, weight: int = 0) -> dict:
    """Dimensions and differential ranks of one block, degree by degree."""
    tr = Truncation(alpha_max, weight)
    bases = {p: weight_block_basis(p, tr, w) for p in range(4)}
    ranks = {
        p: sparse_rank(block_matrix(p, tr, w, bases[p], bases[p + 1]))
        for p in range(3)
    }
    dims = {p: len(bases[p]) for p in range(4)}
    kernels = {p: dims[p] - ranks[p] for p in range(3)}
    return {"dims": dims, "ranks": ranks, "kernels": kernels}


def cochain_weight_components(f: Cochain) -> dict[Fraction, Cochain]:
    """Split a cochain into its diagonal eigenvalue components."""
    buckets: dict[Fraction, dict[ArgTuple, dict[MultiIndex, list]]] = {}
    for args, op in f.components.items():
        for alpha, poly in op.terms.items():
            for m, coeff in enumerate(poly.coeffs):
                if coeff == 0:
                    continue
                wt = weight_of(m, alpha, args, f.weights)
                comp = buckets.setdefault(wt, {}).setdefault(args, {})
                coeffs = comp.setdefault(alpha, [])
                while len(coeffs) <= m:
                    coeffs.append(Fraction(0))
                coeffs[m] = coeff
    out = {}
    for wt, comps in buckets.items():
        out[wt] = Cochain(f.weights, f.degree, {
            args: DiffOperator(f.weights, {a: Polynomial(cs) for a, cs in terms.items()})
            for args, terms in comps.items()
        })
    return out
