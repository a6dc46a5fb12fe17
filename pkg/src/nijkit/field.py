"""Scalar coefficients: exact rationals, optionally extended by one square root.

Plain coefficients are ``fractions.Fraction``.  When a computation needs a
single irrational square root (basis normalizations, jet-level square
completion), coefficients live in Q(sqrt(d)) for one fixed square-free d > 1,
represented by :class:`QuadExt` values a + b*sqrt(d).  Arithmetic never mixes
two different radicals; attempting to do so raises
:class:`IncompatibleRadicalsError`.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Union

Coeff = Union[Fraction, "QuadExt"]


class IncompatibleRadicalsError(ValueError):
    """Arithmetic attempted between Q(sqrt(d1)) and Q(sqrt(d2)) with d1 != d2."""


def squarefree_decompose(n: int) -> tuple[int, int]:
    """Write n >= 0 as s*s*d with d square-free; returns (s, d)."""
    if n < 0:
        raise ValueError("negative argument")
    if n == 0:
        return 0, 0
    s, d = 1, 1
    p = 2
    m = n
    while p * p <= m:
        if m % p == 0:
            e = 0
            while m % p == 0:
                m //= p
                e += 1
            s *= p ** (e // 2)
            if e % 2:
                d *= p
        p += 1 if p == 2 else 2
    d *= m
    return s, d


class QuadExt:
    """Element a + b*sqrt(d) of a real quadratic extension of Q.

    d is square-free and non-negative; d == 0 encodes a plain rational
    (then b == 0).  Values are immutable.
    """

    __slots__ = ("a", "b", "d")

    def __init__(self, a, b=0, d=0):
        a = Fraction(a)
        b = Fraction(b)
        d = int(d)
        if d < 0:
            raise ValueError("radicand must be non-negative")
        if d in (0, 1):
            a, b, d = a + b * (d == 1), Fraction(0), 0
        elif b == 0:
            d = 0
        else:
            s, d0 = squarefree_decompose(d)
            if d0 in (0, 1):
                a, b, d = a + b * s, Fraction(0), 0
            else:
                b, d = b * s, d0
        object.__setattr__(self, "a", a)
        object.__setattr__(self, "b", b)
        object.__setattr__(self, "d", d)

    def __setattr__(self, name, value):
        raise AttributeError("QuadExt is immutable")

    # -- predicates ---------------------------------------------------------

    @property
    def is_rational(self) -> bool:
        return self.b == 0

    def __bool__(self) -> bool:
        return bool(self.a) or bool(self.b)

    def sign(self) -> int:
        """Exact sign of the real number a + b*sqrt(d)."""
        if self.b == 0:
            return (self.a > 0) - (self.a < 0)
        if self.a == 0:
            return 1 if self.b > 0 else -1
        sa = 1 if self.a > 0 else -1
        sb = 1 if self.b > 0 else -1
        if sa == sb:
            return sa
        # opposite signs: compare a^2 with d*b^2
        lhs, rhs = self.a * self.a, self.b * self.b * self.d
        if lhs == rhs:
            return 0
        return sa if lhs > rhs else sb

    # -- arithmetic ---------------------------------------------------------

    @staticmethod
    def _coerce(x) -> "QuadExt":
        if isinstance(x, QuadExt):
            return x
        if isinstance(x, (int, Fraction)):
            return QuadExt(x)
        return NotImplemented  # type: ignore[return-value]

    def _common_d(self, other: "QuadExt") -> int:
        if self.d == 0:
            return other.d
        if other.d == 0 or other.d == self.d:
            return self.d
        raise IncompatibleRadicalsError(
            f"cannot mix sqrt({self.d}) with sqrt({other.d})")

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        d = self._common_d(other)
        return QuadExt(self.a + other.a, self.b + other.b, d)

    __radd__ = __add__

    def __neg__(self):
        return QuadExt(-self.a, -self.b, self.d)

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return other + (-self)

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        d = self._common_d(other)
        return QuadExt(self.a * other.a + d * self.b * other.b,
                       self.a * other.b + self.b * other.a, d)

    __rmul__ = __mul__

    def inverse(self) -> "QuadExt":
        if not self:
            raise ZeroDivisionError("inverse of zero")
        norm = self.a * self.a - self.d * self.b * self.b
        return QuadExt(self.a / norm, -self.b / norm, self.d)

    def __truediv__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self * other.inverse()

    def __rtruediv__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return other * self.inverse()

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.b == 0 and self.a == other
        if isinstance(other, QuadExt):
            return (self.a == other.a and self.b == other.b
                    and (self.b == 0 or self.d == other.d))
        return NotImplemented

    def __hash__(self):
        if self.b == 0:
            return hash(self.a)
        return hash((self.a, self.b, self.d))

    def __float__(self) -> float:
        return float(self.a) + float(self.b) * float(self.d) ** 0.5

    def __repr__(self):
        return f"QuadExt({self.a!r}, {self.b!r}, {self.d})"

    def __str__(self):
        if self.b == 0:
            return str(self.a)
        bpart = f"sqrt({self.d})" if self.b == 1 else (
            f"-sqrt({self.d})" if self.b == -1 else f"{self.b}*sqrt({self.d})")
        if self.a == 0:
            return bpart
        sep = "+" if self.b > 0 else ""
        return f"{self.a}{sep}{bpart}"


def demote(c: Coeff) -> Coeff:
    """Collapse a rational-valued QuadExt back to a plain Fraction."""
    if isinstance(c, QuadExt) and c.b == 0:
        return c.a
    return c


def coeff_sign(c: Coeff) -> int:
    if isinstance(c, QuadExt):
        return c.sign()
    return (c > 0) - (c < 0)


def sqrt_fraction(r: Fraction) -> Coeff:
    """Exact square root of a non-negative rational, as Fraction or QuadExt."""
    r = Fraction(r)
    if r < 0:
        raise ValueError("square root of a negative rational")
    if r == 0:
        return Fraction(0)
    # sqrt(n/m) = sqrt(n*m)/m
    n, m = r.numerator, r.denominator
    s, d = squarefree_decompose(n * m)
    if d == 1:
        return Fraction(s, m)
    return QuadExt(0, Fraction(s, m), d)


def radical_of(c: Coeff) -> int:
    """The square-free d with c in Q(sqrt(d)); 0 for rationals."""
    return c.d if isinstance(c, QuadExt) else 0


def common_radical(*cs: Coeff) -> int:
    """The single d shared by all given coefficients (0 if all rational)."""
    d = 0
    for c in cs:
        dc = radical_of(c)
        if dc == 0:
            continue
        if d == 0:
            d = dc
        elif d != dc:
            raise IncompatibleRadicalsError(
                f"cannot mix sqrt({d}) with sqrt({dc})")
    return d
