"""Poincare-Dulac reduction of planar vector-field jets with diagonal linear part.

A monomial x^i y^j in component c survives reduction exactly when
i*lam1 + j*lam2 = lam_c; everything else is removed degree by degree.  The
outcome is classified by the eigenvalue ratio: no resonance, resonant node
(integer ratio >= 2, single resonant term a*y^r), or resonant saddle
(negative rational ratio, resonant terms along powers of x^p y^q).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from . import linalg
from .jets import JetMap
from .linearize import monomials_of_degree, vf_pushforward
from .operators import OperatorField
from .poly import Poly


@dataclass(frozen=True)
class Table5Row:
    kind: str  # "no_resonance" | "resonant_node" | "resonant_saddle"
    r: int | None = None            # node ratio
    a: Fraction | None = None       # node coefficient (after normalization)
    a_normalized: bool = False
    p: int | None = None            # saddle ratio -p/q
    q: int | None = None


@dataclass(frozen=True)
class VfNormalFormResult:
    normal: list[Poly]
    change: JetMap
    row: Table5Row


def _linear_diag(v: list[Poly]) -> tuple[Fraction, Fraction]:
    vars = v[0].vars
    lam1 = v[0].coeff((1, 0))
    lam2 = v[1].coeff((0, 1))
    if v[0].coeff((0, 1)) != 0 or v[1].coeff((1, 0)) != 0:
        raise ValueError("linear part must be diagonal")
    if lam1 == 0 or lam2 == 0:
        raise ValueError("eigenvalues must be nonzero")
    if any(not p.homogeneous_part(0).is_zero() for p in v):
        raise ValueError("vector field must vanish at the origin")
    return Fraction(lam1), Fraction(lam2)


def _nth_root_fraction(x: Fraction, n: int) -> Fraction | None:
    """Exact positive n-th root of a positive rational, if rational."""
    if x <= 0:
        raise ValueError("need a positive rational")

    def iroot(m: int) -> int | None:
        if m == 0:
            return 0
        lo, hi = 1, 1
        while hi ** n < m:
            hi *= 2
        while lo < hi:
            mid = (lo + hi) // 2
            if mid ** n < m:
                lo = mid + 1
            else:
                hi = mid
        return lo if lo ** n == m else None

    a, b = iroot(x.numerator), iroot(x.denominator)
    if a is None or b is None:
        return None
    return Fraction(a, b)


def vf_normal_form(v: list[Poly], maxdeg: int) -> VfNormalFormResult:
    """Remove all non-resonant monomials up to maxdeg; classify the outcome.

    For a resonant node the surviving coefficient is rescaled to +-1 by a
    uniform rational dilation whenever |a|^(1/(r-1)) is rational; otherwise
    the raw coefficient is kept and reported unnormalized.
    """
    vars = v[0].vars
    if len(v) != 2 or len(vars) != 2:
        raise ValueError("planar vector fields only")
    lam1, lam2 = _linear_diag(v)
    lam = (lam1, lam2)

    cur = [p.truncated(maxdeg) for p in v]
    total = JetMap.identity(vars, maxdeg)
    for k in range(2, maxdeg + 1):
        phi_terms = [Poly.zero(vars), Poly.zero(vars)]
        changed = False
        for c in range(2):
            part = cur[c].homogeneous_part(k)
            for m, coeff in part.terms.items():
                weight = m[0] * lam1 + m[1] * lam2 - lam[c]
                if weight != 0:
                    phi_terms[c] = phi_terms[c] - Poly(vars, {m: coeff / weight})
                    changed = True
        if not changed:
            continue
        step = JetMap.from_polys(
            [Poly.variable(vars, i) + phi_terms[i] for i in range(2)], maxdeg)
        cur = vf_pushforward(cur, step)
        total = step.compose(total)

    # classify by the eigenvalue pair
    ratio = lam1 / lam2
    row: Table5Row
    if lam1 == lam2:
        row = Table5Row("no_resonance")
    elif ratio < 0:
        pq = -ratio
        row = Table5Row("resonant_saddle", p=pq.numerator, q=pq.denominator)
    else:
        big = ratio if ratio >= 1 else 1 / ratio
        if big.denominator == 1 and big >= 2:
            r = int(big)
            node_comp, node_mono = (0, (0, r)) if ratio >= 1 else (1, (r, 0))
            a = Fraction(cur[node_comp].coeff(node_mono))
            normalized = False
            if a != 0:
                c = _nth_root_fraction(abs(a), r - 1)
                if c is not None:
                    dil = JetMap.from_polys(
                        [Poly.variable(vars, 0) * c, Poly.variable(vars, 1) * c],
                        maxdeg)
                    cur = vf_pushforward(cur, dil)
                    total = dil.compose(total)
                    a = Fraction(cur[node_comp].coeff(node_mono))
                    normalized = True
            else:
                normalized = True
            row = Table5Row("resonant_node", r=r, a=a, a_normalized=normalized)
        else:
            row = Table5Row("no_resonance")
    return VfNormalFormResult(cur, total, row)


class TriangularShapeError(ValueError):
    """Operator is not in the [[0, f], [0, alpha*y]] triangular shape."""


def tridiagonal_reduce(R: OperatorField) -> tuple[list[Poly], Fraction]:
    """The planar vector field (f, alpha*y) attached to a triangular operator.

    R must be [[0, f], [0, alpha*y]] with f having linear part x.  The same
    jet map of the shape (g(x, y), y) linearizes the operator and the vector
    field, so linearization questions transfer both ways.
    """
    if R.dim != 2:
        raise TriangularShapeError("triangular reduction is two-dimensional")
    E = R.entries
    vars = R.vars
    if not (E[0][0].is_zero() and E[1][0].is_zero()):
        raise TriangularShapeError("first column must vanish")
    f = E[0][1]
    ylin = E[1][1]
    alpha = ylin.coeff((0, 1))
    if ylin != Poly.variable(vars, 1) * alpha or alpha == 0:
        raise TriangularShapeError("lower-right entry must be alpha*y, alpha != 0")
    if f.coeff((1, 0)) != 1 or f.coeff((0, 1)) != 0 or f.constant_term() != 0:
        raise TriangularShapeError("upper-right entry must have linear part x")
    return [f, ylin], Fraction(alpha)


def tridiagonal_unreduce(v: list[Poly]) -> OperatorField:
    """Inverse of tridiagonal_reduce: (f, alpha*y) -> [[0, f], [0, alpha*y]]."""
    vars = v[0].vars
    zero = Poly.zero(vars)
    R = OperatorField.from_rows([[zero, v[0]], [zero, v[1]]])
    tridiagonal_reduce(R)  # validates the shape
    return R


def eigenfunction_kernel(v: list[Poly], lam: Fraction, maxdeg: int) -> list[Poly]:
    """Basis of {h : v(h) = lam*h modulo degree > maxdeg}, h a jet.

    v(h) is the derivative of h along the field; the constraint is one exact
    linear system on all coefficients of h up to degree maxdeg.
    """
    vars = v[0].vars
    n = len(vars)
    monos: list[tuple[int, ...]] = []
    for k in range(maxdeg + 1):
        monos.extend(monomials_of_degree(n, k))
    cols: list[Poly] = []
    for m in monos:
        h = Poly(vars, {m: Fraction(1)})
        img = sum((h.diff(i) * v[i] for i in range(n)), Poly.zero(vars))
        cols.append((img - h * lam).truncated(maxdeg))
    A = [[cols[u].coeff(m) for u in range(len(monos))] for m in monos]
    kernel = []
    for vec in linalg.nullspace(A):
        p = Poly.zero(vars)
        for m, c in zip(monos, vec):
            if c != 0:
                p = p + Poly(vars, {m: c})
        kernel.append(p)
    return kernel
