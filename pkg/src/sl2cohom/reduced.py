"""Structured two-cochains, the coefficient linear system, and rank bookkeeping.

Because the three vector fields 1, x, x^2 d/dx have vanishing third
derivative, every 2-cochain is uniquely of the shape

    f(X_h1, X_h2) = sum_a A_a (h1 h2' - h2 h1') Omega^a
                  + sum_a B_a (h1 h2'' - h2 h1'') Omega^a
                  + sum_a C_a (h1' h2'' - h1'' h2') Omega^a

and every 1-cochain uniquely of the shape

    b(X_h) = sum_a (U_a h + V_a h' + W_a h'') Omega^a,

with polynomial families A, B, C / U, V, W.  In these coordinates the
coboundary of a 1-cochain expands to

    A-part_a = (|a| - delta) U_a + V_a'
    B-part_a = W_a' + 1/2 sum_i (a_i + 1)(a_i + 2 lambda_i) U_(a + e_i)
    C-part_a = (delta - |a| - 1) W_a + 1/2 sum_i (a_i + 1)(a_i + 2 lambda_i) V_(a + e_i)

and a 2-cochain is closed iff for every a

    C_a' + (|a| + 1 - delta) B_a
        - 1/2 sum_i (a_i + 1)(a_i + 2 lambda_i) A_(a + e_i) = 0.

All four formulas are normalised against the generic coboundary of the
cochain complex: converting to a :class:`~sl2cohom.cecomplex.Cochain` and
applying :func:`~sl2cohom.cecomplex.coboundary` agrees exactly, which the
test suite asserts symbolically.

For delta = k a natural number, the closed-coefficient constraint at top
order is the linear system

    sum_i (a_i + 1)(a_i + 2 lambda_i) A_(a + e_i) = 0,   |a| = k - 1,

with one equation per multi-index of weight k - 1 and one unknown per
multi-index of weight k.  The rank-based dimension method reports

    dim = (number of weight-k indices over n-1 slots) + 3 * ell,

where ell is the rank deficiency of that system.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Mapping, Optional

from . import linalg
from .cecomplex import Cochain, CohomResult
from .closedform import classify
from .linalg import RationalMatrix
from .multiindices import (
    MultiIndex,
    add_unit,
    enumerate_multiindices,
    format_multiindex,
    graded_lex_key,
    index_weight,
    multiset_coeff,
)
from .operators import DiffOperator
from .polynomials import Polynomial, X
from .weights import SL2Generator, Weights

FamilyMap = dict[MultiIndex, Polynomial]


def _normalized(weights: Weights, family: Mapping[MultiIndex, Polynomial]) -> FamilyMap:
    out: FamilyMap = {}
    for alpha, poly in family.items():
        alpha = tuple(alpha)
        if len(alpha) != weights.n or any(a < 0 for a in alpha):
            raise ValueError(f"bad multi-index {alpha}")
        if not poly.is_zero():
            out[alpha] = poly
    return out


def _family_add(a: FamilyMap, b: FamilyMap) -> FamilyMap:
    out = dict(a)
    for alpha, poly in b.items():
        merged = out.get(alpha, Polynomial.zero()) + poly
        if merged.is_zero():
            out.pop(alpha, None)
        else:
            out[alpha] = merged
    return out


def _family_to_operator(weights: Weights, family: FamilyMap) -> DiffOperator:
    return DiffOperator(weights, family)


def _coefficient(family: FamilyMap, alpha: MultiIndex) -> Polynomial:
    return family.get(alpha, Polynomial.zero())


def _pair_factor(alpha: MultiIndex, i: int, lambdas: tuple[Fraction, ...]) -> Fraction:
    """(a_i + 1)(a_i + 2 lambda_i), the coefficient tying level |a| to |a| + 1."""
    return (alpha[i] + 1) * (alpha[i] + 2 * lambdas[i])


@dataclass(frozen=True)
class ReducedOneCochain:
    """1-cochain in (U, V, W) coordinates."""

    weights: Weights
    U: FamilyMap
    V: FamilyMap
    W: FamilyMap

    def __post_init__(self) -> None:
        object.__setattr__(self, "U", _normalized(self.weights, self.U))
        object.__setattr__(self, "V", _normalized(self.weights, self.V))
        object.__setattr__(self, "W", _normalized(self.weights, self.W))

    @staticmethod
    def zero(weights: Weights) -> "ReducedOneCochain":
        return ReducedOneCochain(weights, {}, {}, {})

    def is_zero(self) -> bool:
        return not (self.U or self.V or self.W)

    def __add__(self, other: "ReducedOneCochain") -> "ReducedOneCochain":
        if other.weights != self.weights:
            raise ValueError("weight mismatch")
        return ReducedOneCochain(self.weights,
                                 _family_add(self.U, other.U),
                                 _family_add(self.V, other.V),
                                 _family_add(self.W, other.W))

    def to_cochain(self) -> Cochain:
        """Values on the basis fields: U at X1, xU + V at Xx, x^2 U + 2xV + 2W at Xx2."""
        w = self.weights
        u_op = _family_to_operator(w, self.U)
        v_op = _family_to_operator(w, self.V)
        w_op = _family_to_operator(w, self.W)
        x_poly = X
        comps = {
            (SL2Generator.X1,): u_op,
            (SL2Generator.XX,): DiffOperator(
                w, _family_add({a: x_poly * p for a, p in self.U.items()}, self.V)),
            (SL2Generator.XX2,): DiffOperator(w, _family_add(
                _family_add({a: (x_poly * x_poly) * p for a, p in self.U.items()},
                            {a: (2 * x_poly) * p for a, p in self.V.items()}),
                {a: p.scale(2) for a, p in self.W.items()})),
        }
        return Cochain(w, 1, {k: op for k, op in comps.items() if not op.is_zero()})

    def to_json_dict(self) -> dict:
        data = self.weights.to_json_dict()
        for name, fam in (("U", self.U), ("V", self.V), ("W", self.W)):
            data[name] = {format_multiindex(a): p.to_json()
                          for a, p in sorted(fam.items(), key=lambda kv: graded_lex_key(kv[0]))}
        return data


@dataclass(frozen=True)
class ReducedTwoCochain:
    """2-cochain in (A, B, C) coordinates."""

    weights: Weights
    A: FamilyMap
    B: FamilyMap
    C: FamilyMap

    def __post_init__(self) -> None:
        object.__setattr__(self, "A", _normalized(self.weights, self.A))
        object.__setattr__(self, "B", _normalized(self.weights, self.B))
        object.__setattr__(self, "C", _normalized(self.weights, self.C))

    @staticmethod
    def zero(weights: Weights) -> "ReducedTwoCochain":
        return ReducedTwoCochain(weights, {}, {}, {})

    def is_zero(self) -> bool:
        return not (self.A or self.B or self.C)

    def __add__(self, other: "ReducedTwoCochain") -> "ReducedTwoCochain":
        if other.weights != self.weights:
            raise ValueError("weight mismatch")
        return ReducedTwoCochain(self.weights,
                                 _family_add(self.A, other.A),
                                 _family_add(self.B, other.B),
                                 _family_add(self.C, other.C))

    def __sub__(self, other: "ReducedTwoCochain") -> "ReducedTwoCochain":
        return self + other.scale(-1)

    def scale(self, c) -> "ReducedTwoCochain":
        return ReducedTwoCochain(self.weights,
                                 {a: p.scale(c) for a, p in self.A.items()},
                                 {a: p.scale(c) for a, p in self.B.items()},
                                 {a: p.scale(c) for a, p in self.C.items()})

    def to_cochain(self) -> Cochain:
        """Evaluate the three antisymmetric brackets on the basis pairs.

        (h1 h2' - h2 h1', h1 h2'' - h2 h1'', h1' h2'' - h1'' h2') equals
        (1, 0, 0) on (X1, Xx), (2x, 2, 0) on (X1, Xx2) and (x^2, 2x, 2) on
        (Xx, Xx2); the conversion is injective on the stored data.
        """
        w = self.weights
        x_poly = X
        x2 = x_poly * x_poly
        comp_12 = _family_to_operator(w, self.A)
        comp_13 = DiffOperator(w, _family_add(
            {a: (2 * x_poly) * p for a, p in self.A.items()},
            {a: p.scale(2) for a, p in self.B.items()}))
        comp_23 = DiffOperator(w, _family_add(_family_add(
            {a: x2 * p for a, p in self.A.items()},
            {a: (2 * x_poly) * p for a, p in self.B.items()}),
            {a: p.scale(2) for a, p in self.C.items()}))
        comps = {
            (SL2Generator.X1, SL2Generator.XX): comp_12,
            (SL2Generator.X1, SL2Generator.XX2): comp_13,
            (SL2Generator.XX, SL2Generator.XX2): comp_23,
        }
        return Cochain(w, 2, {k: op for k, op in comps.items() if not op.is_zero()})

    def to_json_dict(self) -> dict:
        data = self.weights.to_json_dict()
        for name, fam in (("A", self.A), ("B", self.B), ("C", self.C)):
            data[name] = {format_multiindex(a): p.to_json()
                          for a, p in sorted(fam.items(), key=lambda kv: graded_lex_key(kv[0]))}
        return data

    @staticmethod
    def from_json_dict(data: Mapping) -> "ReducedTwoCochain":
        from .multiindices import parse_multiindex

        w = Weights.from_json_dict(data)
        fams = {}
        for name in ("A", "B", "C"):
            fams[name] = {parse_multiindex(k): Polynomial.from_json(v)
                          for k, v in data.get(name, {}).items()}
        return ReducedTwoCochain(w, fams["A"], fams["B"], fams["C"])


def two_cochain_from_cochain(f: Cochain) -> ReducedTwoCochain:
    """Invert :meth:`ReducedTwoCochain.to_cochain` (the system is triangular)."""
    if f.degree != 2:
        raise ValueError("expected a 2-cochain")
    w = f.weights
    g12 = f.component((SL2Generator.X1, SL2Generator.XX))
    g13 = f.component((SL2Generator.X1, SL2Generator.XX2))
    g23 = f.component((SL2Generator.XX, SL2Generator.XX2))
    x_poly = X
    a_fam = dict(g12.terms)
    b_fam: FamilyMap = {}
    c_fam: FamilyMap = {}
    for alpha in set(g12.terms) | set(g13.terms) | set(g23.terms):
        a = g12.coefficient(alpha)
        b = (g13.coefficient(alpha) - (2 * x_poly) * a).scale(Fraction(1, 2))
        c = (g23.coefficient(alpha) - (x_poly * x_poly) * a - (2 * x_poly) * b)
        c = c.scale(Fraction(1, 2))
        if not b.is_zero():
            b_fam[alpha] = b
        if not c.is_zero():
            c_fam[alpha] = c
    return ReducedTwoCochain(w, a_fam, b_fam, c_fam)


def cocycle_residual(f: ReducedTwoCochain) -> FamilyMap:
    """Per-index obstruction to closedness; f is a cocycle iff all zero.

    The value at a is C_a' + (|a| + 1 - delta) B_a
    - 1/2 sum_i (a_i + 1)(a_i + 2 lambda_i) A_(a + e_i); only nonzero
    residuals are returned.  Scaled so that the generic coboundary of the
    converted cochain, evaluated on (X1, Xx, Xx2), equals twice the residual
    family (asserted in the tests).
    """
    w = f.weights
    delta = w.delta()
    support: set[MultiIndex] = set(f.B) | set(f.C)
    for beta in f.A:
        for i, b_i in enumerate(beta):
            if b_i > 0:
                support.add(beta[:i] + (b_i - 1,) + beta[i + 1:])
    out: FamilyMap = {}
    for alpha in support:
        res = _coefficient(f.C, alpha).derivative()
        res = res + (index_weight(alpha) + 1 - delta) * _coefficient(f.B, alpha)
        for i in range(w.n):
            coeff = _pair_factor(alpha, i, w.lambdas)
            if coeff != 0:
                res = res - Fraction(1, 2) * coeff * _coefficient(f.A, add_unit(alpha, i))
        if not res.is_zero():
            out[alpha] = res
    return out


def coboundary_reduced(b: ReducedOneCochain) -> ReducedTwoCochain:
    """Coboundary of a 1-cochain in reduced coordinates.

    Agrees exactly with the generic complex differential applied to
    ``b.to_cochain()``; the module docstring lists the three coefficient
    families.
    """
    w = b.weights
    delta = w.delta()
    a_fam: FamilyMap = {}
    b_fam: FamilyMap = {}
    c_fam: FamilyMap = {}

    def add_to(fam: FamilyMap, alpha: MultiIndex, poly: Polynomial) -> None:
        if poly.is_zero():
            return
        merged = fam.get(alpha, Polynomial.zero()) + poly
        if merged.is_zero():
            fam.pop(alpha, None)
        else:
            fam[alpha] = merged

    for alpha, u in b.U.items():
        add_to(a_fam, alpha, (index_weight(alpha) - delta) * u)
        for i, a_i in enumerate(alpha):
            if a_i > 0:
                lower = alpha[:i] + (a_i - 1,) + alpha[i + 1:]
                add_to(b_fam, lower,
                       Fraction(1, 2) * _pair_factor(lower, i, w.lambdas) * u)
    for alpha, v in b.V.items():
        add_to(a_fam, alpha, v.derivative())
        for i, a_i in enumerate(alpha):
            if a_i > 0:
                lower = alpha[:i] + (a_i - 1,) + alpha[i + 1:]
                add_to(c_fam, lower,
                       Fraction(1, 2) * _pair_factor(lower, i, w.lambdas) * v)
    for alpha, w_poly in b.W.items():
        add_to(b_fam, alpha, w_poly.derivative())
        add_to(c_fam, alpha, (delta - index_weight(alpha) - 1) * w_poly)
    return ReducedTwoCochain(w, a_fam, b_fam, c_fam)


# ---------------------------------------------------------------------------
# The coefficient linear system and its rank.
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class LinearSystem:
    """Linear constraints on the top-order coefficient family.

    Rows are indexed by multi-indices of weight k - 1 (the equations),
    columns by multi-indices of weight k (the unknowns), both in graded-lex
    order.  The row for a has entry (a_i + 1)(a_i + 2 lambda_i) in the
    column of a + e_i and zero elsewhere.
    """

    n: int
    k: int
    lambdas: tuple[Fraction, ...]
    row_index: tuple[MultiIndex, ...]
    col_index: tuple[MultiIndex, ...]
    matrix: RationalMatrix

    def rank(self) -> int:
        return linalg.rank(self.matrix)

    def kernel_basis(self) -> list[list[Fraction]]:
        return linalg.kernel_basis(self.matrix)

    def rank_deficiency(self) -> int:
        """Row count minus rank; each unit contributes 3 to the dimension."""
        return len(self.row_index) - self.rank()

    def to_csv(self) -> str:
        return self.matrix.to_csv(
            row_labels=[format_multiindex(a) for a in self.row_index],
            col_labels=[format_multiindex(b) for b in self.col_index])

    def with_rows(self, keep: list[int]) -> "LinearSystem":
        rows = [self.matrix.row(i) for i in keep]
        return LinearSystem(
            self.n, self.k, self.lambdas,
            tuple(self.row_index[i] for i in keep),
            self.col_index,
            RationalMatrix(rows, cols=self.matrix.cols))


def build_system(n: int, k: int, lambdas: tuple[Fraction, ...]) -> LinearSystem:
    """The constraint system; empty (zero rows) when k = 0."""
    if len(lambdas) != n:
        raise ValueError("lambda tuple length must equal n")
    lambdas = tuple(Fraction(v) for v in lambdas)
    rows = tuple(enumerate_multiindices(n, k - 1))
    cols = tuple(enumerate_multiindices(n, k))
    col_pos = {c: j for j, c in enumerate(cols)}
    entries = []
    for alpha in rows:
        row = [Fraction(0)] * len(cols)
        for i in range(n):
            row[col_pos[add_unit(alpha, i)]] = _pair_factor(alpha, i, lambdas)
        entries.append(row)
    return LinearSystem(n, k, lambdas, rows, cols,
                        RationalMatrix(entries, cols=len(cols)))


def split_systems(sys: LinearSystem, t1: int) -> tuple[LinearSystem, LinearSystem, LinearSystem]:
    """Row partition by the first entry of the equation index.

    Returns (S1, S2, S1prime): S1 keeps rows with a_1 != t1, S2 the rows
    with a_1 = t1, and S1prime the rows with a_1 = t1 - 1 where additionally
    the i = 1 column term is dropped (only the slots i >= 2 remain).
    Rejects systems whose weights do not have a natural t-vector, or whose
    first entry disagrees with t1.
    """
    minus2 = tuple(-2 * lam for lam in sys.lambdas)
    for v in minus2:
        if v.denominator != 1 or v < 0:
            raise ValueError(f"-2*lambda = {v} is not a natural number")
    if minus2[0] != t1:
        raise ValueError(f"t1 = {t1} does not match -2*lambda_1 = {minus2[0]}")
    s1_rows = [i for i, a in enumerate(sys.row_index) if a[0] != t1]
    s2_rows = [i for i, a in enumerate(sys.row_index) if a[0] == t1]
    s1 = sys.with_rows(s1_rows)
    s2 = sys.with_rows(s2_rows)
    prime_rows = [i for i, a in enumerate(sys.row_index) if a[0] == t1 - 1]
    col_pos = {c: j for j, c in enumerate(sys.col_index)}
    entries = []
    for i in prime_rows:
        row = sys.matrix.row(i)
        alpha = sys.row_index[i]
        row[col_pos[add_unit(alpha, 0)]] = Fraction(0)
        entries.append(row)
    s1prime = LinearSystem(
        sys.n, sys.k, sys.lambdas,
        tuple(sys.row_index[i] for i in prime_rows),
        sys.col_index,
        RationalMatrix(entries, cols=sys.matrix.cols))
    return s1, s2, s1prime


def rank_data(w: Weights) -> Optional[tuple[int, int, int]]:
    """(k, rank, ell) for a natural shift, None otherwise."""
    k = w.natural_delta()
    if k is None:
        return None
    system = build_system(w.n, k, w.lambdas)
    rho = system.rank()
    return (k, rho, multiset_coeff(w.n, k - 1) - rho)


def dim_h2_via_system(w: Weights) -> CohomResult:
    """Rank-based dimension: 0 unless the shift is natural, else base + 3*ell.

    The base is the count of weight-k indices over n - 1 slots; ell is the
    rank deficiency of the constraint system.  Maximal rank (ell = 0)
    reproduces the non-resonant closed form, so no case split is needed.
    """
    tag = classify(w)
    data = rank_data(w)
    if data is None:
        return CohomResult(dim=0, method="system", weights=w, stable=True,
                           case=tag.describe())
    k, _, ell = data
    dim = multiset_coeff(w.n - 1, k) + 3 * ell
    return CohomResult(dim=dim, method="system", weights=w, stable=True,
                       case=tag.describe())


# ---------------------------------------------------------------------------
# Cocycle bases and exact coboundary solving.
# ---------------------------------------------------------------------------


def _column_complement(matrix: RationalMatrix) -> list[int]:
    """Row coordinates completing the column space to the full row space."""
    echelon = linalg.column_space_echelon(matrix)
    covered = {min(row) for row in echelon}
    return [i for i in range(matrix.rows) if i not in covered]


def cocycle_basis(w: Weights) -> list[ReducedTwoCochain]:
    """Spanning set of representatives used by the rank-based count.

    Requires a natural shift k.  Returns, in order: one constant top-order
    family per kernel vector of the constraint system; then, per unit of
    rank deficiency, one constant middle family and one constant bottom
    family at weight k - 1, chosen along coordinates completing the column
    space of the system.  Every element has identically zero residual.
    """
    k = w.natural_delta()
    if k is None:
        raise ValueError("cocycle basis requires a natural shift")
    system = build_system(w.n, k, w.lambdas)
    out: list[ReducedTwoCochain] = []
    for vec in system.kernel_basis():
        fam = {alpha: Polynomial.constant(c)
               for alpha, c in zip(system.col_index, vec) if c != 0}
        out.append(ReducedTwoCochain(w, fam, {}, {}))
    complement = _column_complement(system.matrix)
    for family_name in ("B", "C"):
        for idx in complement:
            alpha = system.row_index[idx]
            fam = {alpha: Polynomial.one()}
            if family_name == "B":
                out.append(ReducedTwoCochain(w, {}, fam, {}))
            else:
                out.append(ReducedTwoCochain(w, {}, {}, fam))
    return out


def _half_system_image(w: Weights, family: FamilyMap, k: int) -> FamilyMap:
    """1/2 sum_i (a_i + 1)(a_i + 2 lambda_i) fam_(a + e_i) over |a| = k - 1."""
    out: FamilyMap = {}
    for alpha in enumerate_multiindices(w.n, k - 1):
        total = Polynomial.zero()
        for i in range(w.n):
            coeff = _pair_factor(alpha, i, w.lambdas)
            if coeff != 0:
                total = total + Fraction(1, 2) * coeff * _coefficient(family, add_unit(alpha, i))
        if not total.is_zero():
            out[alpha] = total
    return out


def solve_coboundary(f: ReducedTwoCochain) -> Optional[ReducedOneCochain]:
    """Exact solution b of (coboundary of b) = f, or None when none exists.

    The decision is exact, with no degree or support truncation:

    1. a non-cocycle is never a coboundary;
    2. away from the critical levels |a| = k (top family) and |a| = k - 1
       (middle/bottom families) the gauge freedoms U and W annihilate f, the
       denominators being the nonzero factors |a| - delta and
       delta - |a| - 1 (every level is non-critical when delta is not a
       natural number, which settles that case);
    3. at the critical levels the middle family is a derivative of a
       bottom-slot gauge W, so it always dies, while the top family A and
       bottom family C die together iff the constant vector
       C - (image of the antiderivative of A under the half-system map)
       lies in the image of the half-system on constants.  The certificate
       is a plain exact linear solve.

    Every returned witness is verified by recomputing its coboundary.
    """
    w = f.weights
    delta = w.delta()
    if cocycle_residual(f):
        return None

    k = w.natural_delta()
    u_fam: FamilyMap = {}
    w_fam: FamilyMap = {}
    for alpha, a_poly in f.A.items():
        level = index_weight(alpha)
        if k is None or level != k:
            u_fam[alpha] = a_poly.scale(Fraction(1) / (level - delta))
    for alpha, c_poly in f.C.items():
        level = index_weight(alpha)
        if k is None or level != k - 1:
            w_fam[alpha] = c_poly.scale(Fraction(1) / (delta - level - 1))
    b1 = ReducedOneCochain(w, u_fam, {}, w_fam)
    f1 = f - coboundary_reduced(b1)

    if k is None:
        residue = f1
        if not residue.is_zero():
            raise AssertionError("gauge reduction failed on a non-natural shift")
        _verify_witness(b1, f)
        return b1

    # Middle family: at level k - 1 it is exactly a derivative of a W-slot.
    if any(index_weight(a) != k - 1 for a in f1.B):
        raise AssertionError("closed cochain kept a middle family off-level")
    b2 = ReducedOneCochain(w, {}, {}, {a: p.antiderivative() for a, p in f1.B.items()})
    f2 = f1 - coboundary_reduced(b2)

    # Remaining data: top family at level k, bottom family at level k - 1,
    # coupled through the V gauge slot.
    v0 = {a: p.antiderivative() for a, p in f2.A.items()}
    reach = _half_system_image(w, v0, k)
    obstruction: FamilyMap = {}
    for alpha in set(f2.C) | set(reach):
        d_poly = _coefficient(f2.C, alpha) - _coefficient(reach, alpha)
        if not d_poly.is_zero():
            obstruction[alpha] = d_poly
    for poly in obstruction.values():
        if not poly.derivative().is_zero():
            raise AssertionError("coboundary obstruction is not constant")

    system = build_system(w.n, k, w.lambdas)
    rhs = [2 * _coefficient(obstruction, alpha).coefficient(0)
           for alpha in system.row_index]
    solution = linalg.solve(system.matrix, rhs)
    if solution is None:
        return None
    v_fam = dict(v0)
    for alpha, c in zip(system.col_index, solution):
        if c != 0:
            v_fam[alpha] = _coefficient(v_fam, alpha) + Polynomial.constant(c)
    b3 = ReducedOneCochain(w, {}, v_fam, {})
    witness = b1 + b2 + b3
    _verify_witness(witness, f)
    return witness


def _verify_witness(b: ReducedOneCochain, f: ReducedTwoCochain) -> None:
    if (coboundary_reduced(b) - f).is_zero():
        return
    raise AssertionError("coboundary witness failed verification")
