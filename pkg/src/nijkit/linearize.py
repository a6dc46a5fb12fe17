"""Degree-by-degree formal linearization of operator jets.

A coordinate change phi = id + psi conjugates R to its linear part R1 exactly
when (I + Dpsi) R(x) = R1(x + psi) (I + Dpsi).  Collecting the degree-k part
of this identity gives the homological equation

    H(psi_k) = Dpsi_k R1(x) - R1(x) Dpsi_k - R1(psi_k) = K_k,

a finite linear system over the exact coefficient field, solved here by
Gaussian elimination with free unknowns pinned to zero.  An inconsistent
degree yields a resonance obstruction: a monomial direction provably outside
the image of the homological operator.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations_with_replacement

from . import linalg
from .field import Coeff, demote
from .jets import Jet, JetMap, series_inverse
from .operators import OperatorField, is_scalar_point, isotropy_algebra, shift, torsion
from .poly import Poly, grlex_key


class NotNijenhuisToOrderError(ValueError):
    """The input jet has nonvanishing torsion at some degree <= maxdeg."""


class LinearPartNotLeftSymmetricError(ValueError):
    """The degree-1 part is not a linear Nijenhuis operator."""


def monomials_of_degree(nvars: int, k: int) -> list[tuple[int, ...]]:
    """Degree-k exponent tuples in canonical (grlex descending) order."""
    out = set()
    for combo in combinations_with_replacement(range(nvars), k):
        e = [0] * nvars
        for i in combo:
            e[i] += 1
        out.add(tuple(e))
    return sorted(out, key=grlex_key, reverse=True)


def matrix_series_inverse(M: list[list[Poly]], deg: int) -> list[list[Poly]]:
    """Inverse of a matrix of series whose constant part is invertible."""
    n = len(M)
    vars = M[0][0].vars
    C = [[p.constant_term() for p in row] for row in M]
    Cinv = linalg.inverse(C)
    CinvP = [[Poly.const(vars, c) for c in row] for row in Cinv]
    N = [[(M[i][j] - C[i][j]).truncated(deg) for j in range(n)] for i in range(n)]
    # (C + N)^-1 = sum_k (-Cinv N)^k Cinv
    T = linalg.mat_mul(CinvP, N)
    T = [[(-p).truncated(deg) for p in row] for row in T]
    out = [row[:] for row in CinvP]
    power = [row[:] for row in CinvP]
    for _ in range(deg):
        power = linalg.mat_mul(T, power)
        power = [[p.truncated(deg) for p in row] for row in power]
        if all(p.is_zero() for row in power for p in row):
            break
        out = [[a + b for a, b in zip(ra, rb)] for ra, rb in zip(out, power)]
    return [[p.truncated(deg) for p in row] for row in out]


def pushforward(R: OperatorField, phi: JetMap) -> OperatorField:
    """The operator in the coordinates x~ = phi(x), truncated at phi.degree.

    Transformation law: R~ = (J R J^-1) o phi^-1, with J the Jacobian of phi.
    """
    deg = phi.degree
    n = R.dim
    J = phi.jacobian()
    Jinv = matrix_series_inverse(J, deg)
    Rt = [[p.truncated(deg) for p in row] for row in R.entries]
    M = linalg.mat_mul(linalg.mat_mul(J, Rt), Jinv)
    M = [[p.truncated(deg) for p in row] for row in M]
    inv = phi.invert().as_polys()
    return OperatorField.from_rows(
        [[M[k][i].subst(inv).truncated(deg) for i in range(n)] for k in range(n)])


def vf_pushforward(v: list[Poly], phi: JetMap) -> list[Poly]:
    """Vector field in the coordinates x~ = phi(x): (J v) o phi^-1, truncated."""
    deg = phi.degree
    J = phi.jacobian()
    w = [sum((J[i][j] * v[j] for j in range(len(v))), Poly.zero(phi.vars))
         for i in range(len(v))]
    inv = phi.invert().as_polys()
    return [p.truncated(deg).subst(inv).truncated(deg) for p in w]


@dataclass(frozen=True)
class ResonanceObstruction:
    """A direction the homological operator provably cannot reach.

    component is the 1-based row index of the operator entry carrying the
    blocked monomial; the residual coefficient is nonzero.  column pins the
    exact entry for the internal soundness re-check.
    """

    degree: int
    component: int
    monomial: tuple[int, ...]
    coefficient: Coeff
    column: int = 1


@dataclass(frozen=True)
class LinearizeResult:
    status: str  # "linearized" | "obstructed"
    maxdeg: int
    scalar_shift: Coeff
    linear_part: OperatorField
    map: JetMap | None = None
    obstruction: ResonanceObstruction | None = None
    certified: bool = False


def _conjugation_residual(R: OperatorField, R1: OperatorField,
                          psi: list[Poly], maxdeg: int) -> list[list[Poly]]:
    """(I + Dpsi) R(x) - R1(x + psi) (I + Dpsi), truncated entrywise."""
    n = R.dim
    vars = R.vars
    J = [[psi[i].diff(j) + (1 if i == j else 0) for j in range(n)] for i in range(n)]
    shifted = [Poly.variable(vars, i) + psi[i] for i in range(n)]
    R1_shift = [[R1.entries[k][i].subst(shifted).truncated(maxdeg)
                 for i in range(n)] for k in range(n)]
    Rt = [[p.truncated(maxdeg) for p in row] for row in R.entries]
    lhs = linalg.mat_mul(J, Rt)
    rhs = linalg.mat_mul(R1_shift, J)
    return [[(a - b).truncated(maxdeg) for a, b in zip(ra, rb)]
            for ra, rb in zip(lhs, rhs)]


def _homological_image(R1: OperatorField, comp: int, mono: tuple[int, ...]):
    """H applied to the basis map psi = x^mono in component comp."""
    n = R1.dim
    vars = R1.vars
    zero = Poly.zero(vars)
    basis = Poly(vars, {mono: Fraction(1)})
    Dpsi = [[basis.diff(j) if i == comp else zero for j in range(n)]
            for i in range(n)]
    psi_vec = [basis if i == comp else zero for i in range(n)]
    R1x = [list(row) for row in R1.entries]
    term1 = linalg.mat_mul(Dpsi, R1x)
    term2 = linalg.mat_mul(R1x, Dpsi)
    term3 = [[R1.entries[k][i].subst(psi_vec) for i in range(n)] for k in range(n)]
    return [[term1[k][i] - term2[k][i] - term3[k][i] for i in range(n)]
            for k in range(n)]


def _solve_degree(R1: OperatorField, K: list[list[Poly]], k: int):
    """Solve H(psi_k) = K for homogeneous psi_k of degree k.

    Returns (psi_k components, None) on success, else (None, obstruction).
    """
    n = R1.dim
    monos = monomials_of_degree(n, k)
    unknowns = [(c, m) for c in range(n) for m in monos]
    rows_index = [(p, q, m) for p in range(n) for q in range(n) for m in monos]
    A: list[list[Coeff]] = []
    b: list[Coeff] = []
    columns = []
    for c, m in unknowns:
        H = _homological_image(R1, c, m)
        columns.append(H)
    for (p, q, m) in rows_index:
        A.append([demote(columns[u][p][q].coeff(m)) for u in range(len(unknowns))])
        b.append(demote(K[p][q].coeff(m)))
    x, residual = linalg.solve_with_residual(A, b)
    if all(r == 0 for r in residual):
        vars = R1.vars
        psi = [Poly.zero(vars) for _ in range(n)]
        for (c, m), coeff in zip(unknowns, x):
            if coeff != 0:
                psi[c] = psi[c] + Poly(vars, {m: coeff})
        return psi, None
    # pick the first residual coordinate whose unit direction is outside Im H;
    # one must exist, else the residual itself would lie in the image
    for idx, (p, q, m) in enumerate(rows_index):
        if residual[idx] == 0:
            continue
        unit = [Fraction(0)] * len(rows_index)
        unit[idx] = Fraction(1)
        if not linalg.in_column_span(A, unit):
            return None, ResonanceObstruction(k, p + 1, m, residual[idx], q + 1)
    raise AssertionError("inconsistent system with residual inside the image")


def formal_linearize(R: OperatorField, maxdeg: int) -> LinearizeResult:
    """Seek phi = id + psi_2 + ... + psi_maxdeg conjugating R to its linear part.

    The input must be scalar at the origin, Nijenhuis to order maxdeg, with a
    left-symmetric linear part.  On success the returned map carries an exact
    certificate: pushforward(R - lam Id, phi) equals the linear part modulo
    degree > maxdeg.  On failure the first blocked degree is reported as a
    ResonanceObstruction, re-verified by a rank computation.
    """
    if maxdeg < 1:
        raise ValueError("maxdeg must be >= 1")
    vars = R.vars
    n = R.dim
    origin = [Fraction(0)] * n
    ok, lam = is_scalar_point(R, origin)
    if not ok:
        raise ValueError("operator is not scalar at the origin")
    R0 = shift(R, lam) if lam != 0 else R
    tor = torsion(R0)
    for p in tor.components.values():
        if not p.truncated(maxdeg).is_zero():
            raise NotNijenhuisToOrderError(
                "torsion does not vanish up to the requested degree")
    if not isotropy_algebra(R0, origin).is_left_symmetric():
        raise LinearPartNotLeftSymmetricError(
            "linear part is not a linear Nijenhuis operator")
    R1 = R0.map_entries(lambda p: p.homogeneous_part(1))

    psi = [Poly.zero(vars) for _ in range(n)]
    for k in range(2, maxdeg + 1):
        res = _conjugation_residual(R0, R1, psi, maxdeg)
        K = [[(-p).homogeneous_part(k) for p in row] for row in res]
        if all(p.is_zero() for row in K for p in row):
            continue
        psi_k, obstruction = _solve_degree(R1, K, k)
        if obstruction is not None:
            return LinearizeResult("obstructed", maxdeg, lam, R1,
                                   obstruction=obstruction)
        psi = [a + b for a, b in zip(psi, psi_k)]

    phi = JetMap.from_polys(
        [Poly.variable(vars, i) + psi[i] for i in range(n)], maxdeg)
    delta = pushforward(R0, phi) - R1
    certified = all(p.truncated(maxdeg).is_zero()
                    for row in delta.entries for p in row)
    if not certified:
        raise AssertionError("linearization certificate failed")
    return LinearizeResult("linearized", maxdeg, lam, R1, map=phi,
                           certified=True)


def obstruction_is_sound(R1: OperatorField, obs: ResonanceObstruction) -> bool:
    """Re-verify that the reported direction is outside the image of H."""
    n = R1.dim
    monos = monomials_of_degree(n, obs.degree)
    unknowns = [(c, m) for c in range(n) for m in monos]
    rows_index = [(p, q, m) for p in range(n) for q in range(n) for m in monos]
    A = []
    columns = [_homological_image(R1, c, m) for c, m in unknowns]
    for (p, q, m) in rows_index:
        A.append([demote(columns[u][p][q].coeff(m)) for u in range(len(unknowns))])
    target = [Fraction(0)] * len(rows_index)
    for idx, (p, q, m) in enumerate(rows_index):
        if p + 1 == obs.component and q + 1 == obs.column and m == obs.monomial:
            target[idx] = Fraction(1)
    return not linalg.in_column_span(A, target)
