"""Operator fields with polynomial entries and their Nijenhuis machinery.

The entry convention is entries[k][i] = R^k_i (row k = upper index), matching
matrix action on column vectors.  The torsion is computed in any dimension;
the cofactor identity and the determinant-driven constructor are
two-dimensional.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from typing import Sequence

from . import linalg
from .field import Coeff, demote
from .lsa import LSA, coordinate_names
from .poly import Poly


@dataclass(frozen=True)
class OperatorField:
    entries: tuple[tuple[Poly, ...], ...]

    def __post_init__(self):
        n = len(self.entries)
        vars = self.entries[0][0].vars
        if len(vars) != n or any(len(row) != n for row in self.entries):
            raise ValueError("operator must be n x n over n variables")
        for row in self.entries:
            for p in row:
                if p.vars != vars:
                    raise ValueError("operator entries disagree on variables")

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence[Poly]]) -> "OperatorField":
        return cls(tuple(tuple(row) for row in rows))

    @classmethod
    def zero(cls, vars: Sequence[str]) -> "OperatorField":
        z = Poly.zero(vars)
        n = len(tuple(vars))
        return cls(tuple((z,) * n for _ in range(n)))

    @classmethod
    def scalar(cls, vars: Sequence[str], lam) -> "OperatorField":
        vars = tuple(vars)
        n = len(vars)
        return cls(tuple(tuple(Poly.const(vars, lam if i == k else 0)
                               for i in range(n)) for k in range(n)))

    @property
    def dim(self) -> int:
        return len(self.entries)

    @property
    def vars(self) -> tuple[str, ...]:
        return self.entries[0][0].vars

    def __getitem__(self, ki: tuple[int, int]) -> Poly:
        return self.entries[ki[0]][ki[1]]

    def trace(self) -> Poly:
        return sum((self.entries[k][k] for k in range(self.dim)),
                   Poly.zero(self.vars))

    def det(self) -> Poly:
        return linalg.det([list(row) for row in self.entries])

    def map_entries(self, f) -> "OperatorField":
        return OperatorField(tuple(tuple(f(p) for p in row) for row in self.entries))

    def __eq__(self, other):
        return isinstance(other, OperatorField) and self.entries == other.entries

    def __add__(self, other: "OperatorField") -> "OperatorField":
        return OperatorField(tuple(tuple(a + b for a, b in zip(ra, rb))
                                   for ra, rb in zip(self.entries, other.entries)))

    def __sub__(self, other: "OperatorField") -> "OperatorField":
        return OperatorField(tuple(tuple(a - b for a, b in zip(ra, rb))
                                   for ra, rb in zip(self.entries, other.entries)))

    def is_zero(self) -> bool:
        return all(p.is_zero() for row in self.entries for p in row)


@dataclass(frozen=True)
class TorsionTensor:
    """Components N^k_{ij} for i < j; N^k_{ji} = -N^k_{ij} by antisymmetry."""

    dim: int
    components: dict

    def get(self, i: int, j: int, k: int) -> Poly:
        if i == j:
            raise ValueError("torsion is alternating: need i != j")
        if i < j:
            return self.components[(i, j, k)]
        return -self.components[(j, i, k)]

    def is_zero(self) -> bool:
        return all(p.is_zero() for p in self.components.values())


def torsion(R: OperatorField) -> TorsionTensor:
    """Nijenhuis torsion in coordinates:

    N^k_{ij} = dR^k_j/dx^r R^r_i - dR^k_i/dx^r R^r_j
             - dR^r_j/dx^i R^k_r + dR^r_i/dx^j R^k_r  (sum over r).
    """
    n = R.dim
    E = R.entries
    dE = [[[E[k][i].diff(r) for r in range(n)] for i in range(n)] for k in range(n)]
    comps = {}
    for i, j in combinations(range(n), 2):
        for k in range(n):
            acc = Poly.zero(R.vars)
            for r in range(n):
                acc = acc + (dE[k][j][r] * E[r][i] - dE[k][i][r] * E[r][j]
                             - dE[r][j][i] * E[k][r] + dE[r][i][j] * E[k][r])
            comps[(i, j, k)] = acc
    return TorsionTensor(n, comps)


def is_nijenhuis(R: OperatorField) -> bool:
    return torsion(R).is_zero()


def cofactor_residual(R: OperatorField) -> tuple[Poly, Poly]:
    """Components of d(det R) - cof(R) d(tr R); both vanish iff R is Nijenhuis.

    Two-dimensional only; cof(R) = [[R22, -R21], [-R12, R11]].
    """
    if R.dim != 2:
        raise ValueError("cofactor identity is two-dimensional")
    tr, dt = R.trace(), R.det()
    E = R.entries
    r1 = dt.diff(0) - (E[1][1] * tr.diff(0) - E[1][0] * tr.diff(1))
    r2 = dt.diff(1) - (-E[0][1] * tr.diff(0) + E[0][0] * tr.diff(1))
    return r1, r2


def is_scalar_point(R: OperatorField, point: Sequence) -> tuple[bool, Coeff | None]:
    """Evaluate at a rational point; scalar means R(P) = lambda * Id."""
    vals = [[p.eval(point) for p in row] for row in R.entries]
    lam = vals[0][0]
    for k in range(R.dim):
        for i in range(R.dim):
            want = lam if i == k else 0
            if vals[k][i] != want:
                return False, None
    return True, lam


class NotScalarPointError(ValueError):
    """The supplied point is not of scalar type for this operator."""


def isotropy_algebra(R: OperatorField, point: Sequence) -> LSA:
    """Structure constants a^k_{ij} = dR^k_i/dx^j at a scalar-type point."""
    ok, _ = is_scalar_point(R, point)
    if not ok:
        raise NotScalarPointError(f"operator is not scalar at {tuple(point)}")
    n = R.dim
    arr = [[[R.entries[k][i].diff(j).eval(point) for j in range(n)]
            for i in range(n)] for k in range(n)]
    return LSA.from_array(arr)


def taylor_parts(R: OperatorField, point: Sequence, maxdeg: int) -> list[OperatorField]:
    """Homogeneous parts of R recentred at the point, degrees 0..maxdeg."""
    n = R.dim
    vars = R.vars
    shift = [Poly.variable(vars, i) + Poly.const(vars, point[i]) for i in range(n)]
    recentred = R.map_entries(lambda p: p.subst(shift))
    return [recentred.map_entries(lambda p: p.homogeneous_part(d))
            for d in range(maxdeg + 1)]


def shift(R: OperatorField, lam) -> OperatorField:
    """R - lam * Id (preserves the Nijenhuis property)."""
    return R - OperatorField.scalar(R.vars, lam)


@dataclass(frozen=True)
class NotUnique:
    """Underdetermined reconstruction: R12 is a free function.

    The other three entries are pinned; instantiate() fills the free slot.
    """

    alpha: Fraction
    fixed: OperatorField

    def instantiate(self, r12: Poly) -> OperatorField:
        E = self.fixed.entries
        return OperatorField.from_rows([[E[0][0], r12], [E[1][0], E[1][1]]])


@dataclass(frozen=True)
class NotPolynomial:
    """The implicit condition does not divide exactly: no polynomial solution."""

    numerator: Poly
    divisor: Poly


class InconsistentDeterminantError(ValueError):
    """D_x vanishes identically but the implicit condition fails."""


def from_determinant(alpha, D: Poly):
    """Nijenhuis operator with tr R = alpha*y and det R = D, when one exists.

    Solves R11 = D_y/alpha, R21 = -D_x/alpha, R22 = alpha*y - R11 and recovers
    R12 by exact division from the implicit condition
    (1/a) D_y (a y - D_y/a) + (1/a) D_x R12 - D = 0.

    Returns an OperatorField, or NotUnique when D_x == 0 and the condition
    holds identically (R12 free), or NotPolynomial when the division fails.
    """
    alpha = Fraction(alpha)
    if alpha == 0:
        raise ValueError("alpha must be nonzero")
    if D.nvars != 2:
        raise ValueError("determinant must be a polynomial in two variables")
    vars = D.vars
    y = Poly.variable(vars, 1)
    Dx, Dy = D.diff(0), D.diff(1)
    r11 = Dy * (1 / alpha)
    r21 = -Dx * (1 / alpha)
    r22 = y * alpha - r11
    if Dx.is_zero():
        residue = r11 * r22 - D
        if residue.is_zero():
            fixed = OperatorField.from_rows(
                [[r11, Poly.zero(vars)], [r21, r22]])
            return NotUnique(alpha, fixed)
        raise InconsistentDeterminantError(
            "D_x == 0 but (a y - D_y/a) D_y - a D != 0")
    numerator = D * alpha - Dy * (y * alpha - Dy * (1 / alpha))
    r12 = numerator.exact_div(Dx)
    if r12 is None:
        return NotPolynomial(numerator, Dx)
    R = OperatorField.from_rows([[r11, r12], [r21, r22]])
    assert is_nijenhuis(R), "constructed operator failed the torsion check"
    return R


def eigenfunction_residual(R: OperatorField, mu: Poly) -> tuple[Poly, Poly]:
    """Components of R* d(mu) - mu d(mu); zero iff mu is an eigenfunction."""
    if R.dim != 2:
        raise ValueError("eigenfunction identity implemented for dimension 2")
    mux, muy = mu.diff(0), mu.diff(1)
    E = R.entries
    c1 = mux * E[0][0] + muy * E[1][0] - mu * mux
    c2 = mux * E[0][1] + muy * E[1][1] - mu * muy
    return c1, c2


def operator_from_linear_part(a: LSA) -> OperatorField:
    return a.linear_operator_field()
