"""Truncated power series (jets) and origin-preserving jet coordinate changes.

A Jet is a polynomial together with a truncation degree; arithmetic
re-truncates eagerly, so jets form the quotient ring of series modulo
monomials of degree > truncation.  A JetMap is a tuple of jets, one per
variable, with no constant terms and an invertible linear part: the data of a
coordinate change fixing the origin, known up to the truncation degree.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from . import linalg
from .field import Coeff
from .poly import Poly


@dataclass(frozen=True)
class Jet:
    poly: Poly
    degree: int

    def __post_init__(self):
        if self.degree < 0:
            raise ValueError("truncation degree must be non-negative")
        object.__setattr__(self, "poly", self.poly.truncated(self.degree))

    @property
    def vars(self) -> tuple[str, ...]:
        return self.poly.vars

    def _check(self, other: "Jet") -> None:
        if self.degree != other.degree or self.vars != other.vars:
            raise ValueError("jet truncation degrees or variables disagree")

    def __add__(self, other):
        if isinstance(other, Jet):
            self._check(other)
            return Jet(self.poly + other.poly, self.degree)
        return Jet(self.poly + other, self.degree)

    __radd__ = __add__

    def __neg__(self):
        return Jet(-self.poly, self.degree)

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, Jet):
            self._check(other)
            return Jet((self.poly * other.poly).truncated(self.degree), self.degree)
        return Jet(self.poly * other, self.degree)

    __rmul__ = __mul__

    def is_zero(self) -> bool:
        return self.poly.is_zero()

    def __str__(self):
        return f"{self.poly} + O(deg>{self.degree})"


def jet_truncate(p: Poly, deg: int) -> Jet:
    """The deg-jet of a polynomial at the origin."""
    return Jet(p, deg)


def _coeff_inverse(c: Coeff) -> Coeff:
    return 1 / c if isinstance(c, Fraction) else c.inverse()


def series_inverse(p: Poly, deg: int) -> Poly:
    """1/p modulo degree > deg, for p with nonzero constant term."""
    c0 = p.constant_term()
    if c0 == 0:
        raise ZeroDivisionError("series has no constant term")
    # p = c0*(1 + w); 1/p = (1/c0) * sum (-w)^k
    w = (p.truncated(deg) * _coeff_inverse(c0) - 1).truncated(deg)
    out = Poly.const(p.vars, 1)
    acc = Poly.const(p.vars, 1)
    for _ in range(deg):
        acc = (acc * (-w)).truncated(deg)
        if acc.is_zero():
            break
        out = out + acc
    return (out * _coeff_inverse(c0)).truncated(deg)


def series_sqrt(p: Poly, deg: int, root_of_constant: Coeff) -> Poly:
    """Square root of p modulo degree > deg.

    root_of_constant must square to p's constant term; the branch with that
    constant term is returned.
    """
    c0 = p.constant_term()
    if c0 == 0 or root_of_constant * root_of_constant != c0:
        raise ValueError("constant term and its supplied root disagree")
    w = (p * _coeff_inverse(c0) - 1).truncated(deg)
    # (1+w)^(1/2) via the binomial series
    out = Poly.const(p.vars, 1)
    coeff = Fraction(1)
    wk = Poly.const(p.vars, 1)
    for k in range(1, deg + 1):
        coeff = coeff * (Fraction(1, 2) - (k - 1)) / k
        wk = (wk * w).truncated(deg)
        if wk.is_zero():
            break
        out = out + wk * coeff
    return (out * root_of_constant).truncated(deg)


class SingularLinearPartError(ValueError):
    """A jet map's Jacobian at the origin is not invertible."""


@dataclass(frozen=True)
class JetMap:
    """Coordinate change x -> f(x) fixing the origin, modulo degree > degree."""

    components: tuple[Jet, ...]

    def __post_init__(self):
        if not self.components:
            raise ValueError("empty jet map")
        deg = self.components[0].degree
        vars = self.components[0].vars
        for c in self.components:
            if c.degree != deg or c.vars != vars:
                raise ValueError("jet map components disagree")
        if len(self.components) != len(vars):
            raise ValueError("jet map must have one component per variable")
        for c in self.components:
            if c.poly.constant_term() != 0:
                raise ValueError("jet map must fix the origin")
        if linalg.det(self.linear_part()) == 0:
            raise SingularLinearPartError("linear part is singular")

    @property
    def degree(self) -> int:
        return self.components[0].degree

    @property
    def vars(self) -> tuple[str, ...]:
        return self.components[0].vars

    @property
    def nvars(self) -> int:
        return len(self.components)

    @classmethod
    def identity(cls, vars: Sequence[str], degree: int) -> "JetMap":
        vars = tuple(vars)
        return cls(tuple(Jet(Poly.variable(vars, i), degree) for i in range(len(vars))))

    @classmethod
    def from_polys(cls, polys: Sequence[Poly], degree: int) -> "JetMap":
        return cls(tuple(Jet(p, degree) for p in polys))

    def as_polys(self) -> list[Poly]:
        return [c.poly for c in self.components]

    def linear_part(self) -> list[list[Coeff]]:
        """Jacobian at the origin: matrix J[i][j] = d f_i / d x_j (0)."""
        n = self.nvars
        J = []
        for i in range(n):
            p = self.components[i].poly
            row = []
            for j in range(n):
                e = [0] * n
                e[j] = 1
                row.append(p.coeff(tuple(e)))
            J.append(row)
        return J

    def jacobian(self) -> list[list[Poly]]:
        n = self.nvars
        return [[self.components[i].poly.diff(j) for j in range(n)] for i in range(n)]

    def compose(self, other: "JetMap") -> "JetMap":
        """self after other: x -> self(other(x)), truncated."""
        if self.degree != other.degree or self.vars != other.vars:
            raise ValueError("jet maps disagree on degree or variables")
        images = other.as_polys()
        return JetMap(tuple(
            Jet(c.poly.subst(images), self.degree) for c in self.components))

    def invert(self) -> "JetMap":
        """The jet map g with self(g(x)) = x modulo degree > degree."""
        n, deg, vars = self.nvars, self.degree, self.vars
        C = self.linear_part()
        Cinv = linalg.inverse(C)
        ident = [Poly.variable(vars, i) for i in range(n)]
        # start with the inverse linear map, correct degree by degree
        g = [sum((Poly.variable(vars, j) * Cinv[i][j] for j in range(n)),
                 Poly.zero(vars)) for i in range(n)]
        for _ in range(2, deg + 1):
            err = [self.components[i].poly.subst(g).truncated(deg) - ident[i]
                   for i in range(n)]
            if all(e.is_zero() for e in err):
                break
            g = [g[i] - sum((err[j] * Cinv[i][j] for j in range(n)),
                            Poly.zero(vars)).truncated(deg)
                 for i in range(n)]
        return JetMap.from_polys(g, deg)

    def __str__(self):
        return "(" + ", ".join(str(c.poly) for c in self.components) + ")"
