"""Finite-dimensional real algebras given by structure constants.

An LSA value stores the constants a[k][i][j] of a bilinear multiplication
xi_i * xi_j = a[k][i][j] xi_k (0-based indices internally).  Left-symmetry,
the associated Lie structure, the multiplication operator fields L_xi / R_xi,
their invariant polynomials, basis changes, and the matching operator field
with linear entries are all derived on demand; nothing is cached, values are
plain immutable data.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import product
from typing import Sequence

from . import linalg
from .field import Coeff, QuadExt, coeff_sign, demote, sqrt_fraction
from .poly import Poly


def coordinate_names(n: int) -> tuple[str, ...]:
    if n == 2:
        return ("x", "y")
    if n == 3:
        return ("x", "y", "z")
    return tuple(f"x{i + 1}" for i in range(n))


class MalformedConstantsError(ValueError):
    """Structure-constant array is ragged or holds non-rational entries."""


@dataclass(frozen=True)
class LSA:
    """Structure constants a[k][i][j]: coefficient of xi_k in xi_i * xi_j."""

    dim: int
    a: tuple[tuple[tuple[Coeff, ...], ...], ...]

    @classmethod
    def from_array(cls, arr: Sequence[Sequence[Sequence]]) -> "LSA":
        n = len(arr)
        rows = []
        for k in range(n):
            if len(arr[k]) != n:
                raise MalformedConstantsError("ragged structure-constant array")
            plane = []
            for i in range(n):
                if len(arr[k][i]) != n:
                    raise MalformedConstantsError("ragged structure-constant array")
                row = []
                for j in range(n):
                    c = arr[k][i][j]
                    if isinstance(c, int):
                        c = Fraction(c)
                    elif not isinstance(c, (Fraction, QuadExt)):
                        raise MalformedConstantsError(
                            f"entry a[{k}][{i}][{j}] is not an exact scalar")
                    row.append(demote(c))
                plane.append(tuple(row))
            rows.append(tuple(plane))
        return cls(n, tuple(rows))

    @classmethod
    def zero(cls, n: int) -> "LSA":
        z = Fraction(0)
        return cls(n, tuple(tuple((z,) * n for _ in range(n)) for _ in range(n)))

    @classmethod
    def from_relations(cls, n: int, relations: dict[tuple[int, int], dict[int, Coeff]]) -> "LSA":
        """Build from 1-based relations {(i, j): {k: coeff}} for xi_i*xi_j."""
        arr = [[[Fraction(0)] * n for _ in range(n)] for _ in range(n)]
        for (i, j), parts in relations.items():
            for k, c in parts.items():
                arr[k - 1][i - 1][j - 1] = Fraction(c) if isinstance(c, int) else c
        return cls.from_array(arr)

    # -- multiplication ------------------------------------------------------

    def multiply(self, x: Sequence[Coeff], y: Sequence[Coeff]) -> list[Coeff]:
        """Product of two coordinate vectors."""
        n = self.dim
        if len(x) != n or len(y) != n:
            raise ValueError("vector dimension mismatch")
        return [demote(sum((self.a[k][i][j] * x[i] * y[j]
                            for i in range(n) for j in range(n)), Fraction(0)))
                for k in range(n)]

    def associator(self, x, y, z) -> list[Coeff]:
        """(x*y)*z - x*(y*z)."""
        xy_z = self.multiply(self.multiply(x, y), z)
        x_yz = self.multiply(x, self.multiply(y, z))
        return [demote(p - q) for p, q in zip(xy_z, x_yz)]

    def is_left_symmetric(self) -> bool:
        """Associator symmetric in the first two slots, checked on all indices."""
        n, a = self.dim, self.a
        for i, j, s, k in product(range(n), repeat=4):
            acc = Fraction(0)
            for r in range(n):
                acc = acc + (a[r][i][j] * a[k][r][s] - a[k][i][r] * a[r][j][s]
                             - a[r][j][i] * a[k][r][s] + a[k][j][r] * a[r][i][s])
            if acc != 0:
                return False
        return True

    # -- associated Lie algebra ------------------------------------------------

    def commutator_constants(self) -> tuple:
        """c[k][i][j] of [xi_i, xi_j] = xi_i*xi_j - xi_j*xi_i."""
        n = self.dim
        return tuple(tuple(tuple(demote(self.a[k][i][j] - self.a[k][j][i])
                                 for j in range(n)) for i in range(n))
                     for k in range(n))

    def lie_structure(self) -> "LieStructure":
        c = self.commutator_constants()
        n = self.dim
        commutative = all(c[k][i][j] == 0
                          for k, i, j in product(range(n), repeat=3))
        jacobi = True
        for i, j, k, l in product(range(n), repeat=4):
            acc = Fraction(0)
            for m in range(n):
                acc = acc + (c[m][i][j] * c[l][m][k] + c[m][j][k] * c[l][m][i]
                             + c[m][k][i] * c[l][m][j])
            if acc != 0:
                jacobi = False
                break
        return LieStructure(c, commutative, jacobi)

    def is_commutative(self) -> bool:
        return all(self.a[k][i][j] == self.a[k][j][i]
                   for k, i, j in product(range(self.dim), repeat=3))

    # -- multiplication operators ----------------------------------------------

    def left_matrix(self, xi: Sequence[Coeff]) -> linalg.Matrix:
        """Matrix of L_xi (eta -> xi*eta)."""
        n = self.dim
        return [[demote(sum((self.a[k][s][j] * xi[s] for s in range(n)), Fraction(0)))
                 for j in range(n)] for k in range(n)]

    def right_matrix(self, xi: Sequence[Coeff]) -> linalg.Matrix:
        """Matrix of R_xi (eta -> eta*xi)."""
        n = self.dim
        return [[demote(sum((self.a[k][i][s] * xi[s] for s in range(n)), Fraction(0)))
                 for i in range(n)] for k in range(n)]

    def mult_matrices(self) -> tuple[list[list[Poly]], list[list[Poly]]]:
        """(L, R) as matrices of linear polynomials in the coordinates of xi.

        (L_xi)^k_j = a^k_{sj} x^s and (R_xi)^k_i = a^k_{is} x^s.
        """
        n = self.dim
        names = coordinate_names(n)
        unit = [Poly.variable(names, s) for s in range(n)]
        L = [[sum((unit[s] * self.a[k][s][j] for s in range(n)), Poly.zero(names))
              for j in range(n)] for k in range(n)]
        R = [[sum((unit[s] * self.a[k][i][s] for s in range(n)), Poly.zero(names))
              for i in range(n)] for k in range(n)]
        return L, R

    def invariant_polys(self) -> dict[str, Poly]:
        """Traces and determinants of L_xi and R_xi as polynomials in xi."""
        L, R = self.mult_matrices()
        names = L[0][0].vars
        zero = Poly.zero(names)
        return {
            "trL": sum((L[k][k] for k in range(self.dim)), zero),
            "detL": linalg.det(L),
            "trR": sum((R[k][k] for k in range(self.dim)), zero),
            "detR": linalg.det(R),
        }

    def linear_operator_field(self):
        """The operator field R_xi with linear entries (Prop. of the bijection)."""
        from .operators import OperatorField
        _, R = self.mult_matrices()
        return OperatorField(tuple(tuple(row) for row in R))

    # -- basis change ------------------------------------------------------------

    def change_basis(self, C: Sequence[Sequence[Coeff]]) -> "LSA":
        """Constants of the same multiplication in the basis xi'_i = C^s_i xi_s.

        Columns of C are the new basis vectors in old coordinates.
        """
        n = self.dim
        Cinv = linalg.inverse([list(r) for r in C])
        a = self.a
        new = [[[Fraction(0)] * n for _ in range(n)] for _ in range(n)]
        for i in range(n):
            for j in range(n):
                # product of new basis vectors, in old coordinates
                prod = self.multiply([C[s][i] for s in range(n)],
                                     [C[t][j] for t in range(n)])
                back = linalg.mat_vec(Cinv, prod)
                for k in range(n):
                    new[k][i][j] = demote(back[k])
        return LSA.from_array(new)

    # -- 2D non-semisimple pencil test ---------------------------------------------

    def property_s(self, side: str) -> bool:
        """Whether Im L (or Im R) contains a non-semisimple element (n = 2 only).

        Decided exactly from the discriminant quadratic form of the pencil
        x*M_1 + y*M_2: a non-semisimple element is a zero of the form that is
        not a scalar matrix.
        """
        if self.dim != 2:
            raise ValueError("property S decision implemented for dimension 2 only")
        if side not in ("left", "right"):
            raise ValueError("side must be 'left' or 'right'")
        basis = ([1, 0], [0, 1])
        mk = self.left_matrix if side == "left" else self.right_matrix
        M1, M2 = mk(basis[0]), mk(basis[1])

        def is_scalar(M) -> bool:
            return M[0][1] == 0 and M[1][0] == 0 and M[0][0] == M[1][1]

        def disc(M) -> Coeff:
            tr = M[0][0] + M[1][1]
            dt = M[0][0] * M[1][1] - M[0][1] * M[1][0]
            return demote(tr * tr - 4 * dt)

        def pencil(u: Coeff, v: Coeff):
            return [[demote(M1[r][c] * u + M2[r][c] * v) for c in range(2)]
                    for r in range(2)]

        # disc(x*M1 + y*M2) = A x^2 + B xy + C y^2
        A = disc(M1)
        C = disc(M2)
        B = demote(disc(pencil(Fraction(1), Fraction(1))) - A - C)
        if A == 0 and B == 0 and C == 0:
            # every element is a zero of the form; need any non-scalar one
            return not (is_scalar(M1) and is_scalar(M2))
        # root directions of the binary quadratic form
        directions: list[tuple[Coeff, Coeff]] = []
        if A == 0:
            directions.append((Fraction(1), Fraction(0)))
            if C == 0:
                directions.append((Fraction(0), Fraction(1)))
            elif B != 0:
                directions.append((demote(-C / B), Fraction(1)))
        else:
            q = B * B - 4 * A * C
            sgn = coeff_sign(q)
            if sgn < 0:
                return False  # definite form: only the zero matrix
            root = sqrt_fraction(Fraction(q)) if isinstance(q, Fraction) else None
            if root is None:
                raise ValueError("irrational pencil discriminant outside Q")
            for pm in (1, -1):
                directions.append((demote((-B + pm * root) / (2 * A)), Fraction(1)))
        return any(not is_scalar(pencil(u, v)) for u, v in directions)


@dataclass(frozen=True)
class LieStructure:
    commutator: tuple
    is_commutative: bool
    jacobi_ok: bool
