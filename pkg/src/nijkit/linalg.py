"""Exact dense linear algebra over Q or Q(sqrt d).

Matrices are lists of lists of Fraction/QuadExt entries.  Everything is
fraction-free in spirit: pivoting picks the first nonzero entry, which is
always safe in exact arithmetic and keeps results deterministic.
"""

from __future__ import annotations

from fractions import Fraction
from itertools import permutations
from typing import Sequence

from .field import Coeff, demote

Matrix = list[list[Coeff]]
Vector = list[Coeff]


def identity(n: int) -> Matrix:
    return [[Fraction(int(i == j)) for j in range(n)] for i in range(n)]


def mat_mul(A: Sequence[Sequence], B: Sequence[Sequence]):
    n, m, p = len(A), len(B), len(B[0])
    if len(A[0]) != m:
        raise ValueError("matrix dimension mismatch")
    return [[sum((A[i][k] * B[k][j] for k in range(m)), Fraction(0))
             for j in range(p)] for i in range(n)]


def mat_vec(A: Sequence[Sequence], v: Sequence) -> Vector:
    return [sum((A[i][k] * v[k] for k in range(len(v))), Fraction(0))
            for i in range(len(A))]


def mat_sub(A, B):
    return [[a - b for a, b in zip(ra, rb)] for ra, rb in zip(A, B)]


def transpose(A):
    return [list(col) for col in zip(*A)]


def _sign(perm: tuple[int, ...]) -> int:
    s = 1
    seen = [False] * len(perm)
    for i in range(len(perm)):
        if seen[i]:
            continue
        cycle = 0
        j = i
        while not seen[j]:
            seen[j] = True
            j = perm[j]
            cycle += 1
        if cycle % 2 == 0:
            s = -s
    return s


def det(A: Sequence[Sequence]):
    """Determinant by permutation expansion (fine for n <= 4, any ring)."""
    n = len(A)
    total = None
    for perm in permutations(range(n)):
        term = A[0][perm[0]]
        for i in range(1, n):
            term = term * A[i][perm[i]]
        term = term * _sign(perm)
        total = term if total is None else total + term
    return demote(total)


def _rref(rows: list[list[Coeff]], ncols: int) -> tuple[list[list[Coeff]], list[int]]:
    """In-place reduced row echelon form on the first ncols columns."""
    pivots: list[int] = []
    r = 0
    for c in range(ncols):
        pivot = next((i for i in range(r, len(rows)) if rows[i][c] != 0), None)
        if pivot is None:
            continue
        rows[r], rows[pivot] = rows[pivot], rows[r]
        pv = rows[r][c]
        rows[r] = [demote(x / pv) for x in rows[r]]
        for i in range(len(rows)):
            if i != r and rows[i][c] != 0:
                f = rows[i][c]
                rows[i] = [demote(a - f * b) for a, b in zip(rows[i], rows[r])]
        pivots.append(c)
        r += 1
        if r == len(rows):
            break
    return rows, pivots


def rref(A: Sequence[Sequence]) -> tuple[Matrix, list[int]]:
    rows = [list(r) for r in A]
    return _rref(rows, len(rows[0]) if rows else 0)


def rank(A: Sequence[Sequence]) -> int:
    if not A:
        return 0
    return len(rref(A)[1])


def inverse(A: Sequence[Sequence]) -> Matrix:
    n = len(A)
    rows = [list(A[i]) + identity(n)[i] for i in range(n)]
    rows, pivots = _rref(rows, n)
    if len(pivots) != n:
        raise ValueError("matrix is singular")
    return [r[n:] for r in rows]


def solve(A: Sequence[Sequence], b: Sequence) -> Vector | None:
    """One exact solution of A x = b with free variables set to zero.

    Returns None when the system is inconsistent.
    """
    x, residual = solve_with_residual(A, b)
    return None if any(r != 0 for r in residual) else x


def solve_with_residual(A: Sequence[Sequence], b: Sequence) -> tuple[Vector, Vector]:
    """Best-effort solve: returns (x, A x - b).

    x satisfies the maximal consistent subsystem found by elimination (free
    variables zero); the residual is exactly zero iff the system is solvable.
    """
    m = len(A)
    n = len(A[0]) if m else 0
    rows = [list(A[i]) + [b[i]] for i in range(m)]
    rows, pivots = _rref(rows, n)
    x: Vector = [Fraction(0)] * n
    for r, c in enumerate(pivots):
        x[c] = rows[r][n]
    residual = [demote(sum((A[i][j] * x[j] for j in range(n)), Fraction(0)) - b[i])
                for i in range(m)]
    return x, residual


def nullspace(A: Sequence[Sequence]) -> list[Vector]:
    """Basis of the kernel, each vector normalized to a leading 1."""
    m = len(A)
    n = len(A[0]) if m else 0
    R, pivots = rref(A)
    free = [c for c in range(n) if c not in pivots]
    basis: list[Vector] = []
    for fc in free:
        v: Vector = [Fraction(0)] * n
        v[fc] = Fraction(1)
        for r, c in enumerate(pivots):
            v[c] = demote(-R[r][fc])
        basis.append(v)
    return basis


def in_column_span(A: Sequence[Sequence], v: Sequence) -> bool:
    """Whether v lies in the column space of A."""
    if not A:
        return all(x == 0 for x in v)
    augmented = [list(row) + [v[i]] for i, row in enumerate(A)]
    return rank(A) == rank(augmented)
