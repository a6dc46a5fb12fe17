"""Sparse exact multivariate polynomials over the rationals (or Q(sqrt d)).

A polynomial carries an ordered tuple of variable names and a dict mapping
exponent tuples to nonzero coefficients.  Coefficients are Fractions, demoted
from QuadExt whenever the irrational part cancels, so purely rational
computations never pay for the extension field.

Canonical term order is graded lexicographic: higher total degree first, ties
broken lexicographically on the exponent tuple (so x^2 > x*y > y^2).
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Mapping, Sequence

from .field import Coeff, QuadExt, demote

Exponent = tuple[int, ...]


class VariableMismatchError(ValueError):
    """Operands do not share the same ordered variable set."""


def grlex_key(e: Exponent) -> tuple:
    return (sum(e), e)


class Poly:
    """Immutable sparse polynomial in named variables."""

    __slots__ = ("vars", "terms")

    def __init__(self, vars: Sequence[str], terms: Mapping[Exponent, Coeff] | None = None):
        vars = tuple(vars)
        clean: dict[Exponent, Coeff] = {}
        if terms:
            for e, c in terms.items():
                e = tuple(e)
                if len(e) != len(vars) or any(k < 0 for k in e):
                    raise ValueError(f"bad exponent {e} for variables {vars}")
                c = demote(c)
                if isinstance(c, int):
                    c = Fraction(c)
                if c != 0:
                    clean[e] = c
        object.__setattr__(self, "vars", vars)
        object.__setattr__(self, "terms", clean)

    def __setattr__(self, name, value):
        raise AttributeError("Poly is immutable")

    # -- constructors -------------------------------------------------------

    @classmethod
    def zero(cls, vars: Sequence[str]) -> "Poly":
        return cls(vars, {})

    @classmethod
    def const(cls, vars: Sequence[str], c) -> "Poly":
        return cls(vars, {(0,) * len(vars): Fraction(c) if isinstance(c, int) else c})

    @classmethod
    def variable(cls, vars: Sequence[str], which: int | str) -> "Poly":
        vars = tuple(vars)
        i = vars.index(which) if isinstance(which, str) else which
        if not 0 <= i < len(vars):
            raise ValueError(f"variable index {which} out of range")
        e = [0] * len(vars)
        e[i] = 1
        return cls(vars, {tuple(e): Fraction(1)})

    # -- basic queries -------------------------------------------------------

    @property
    def nvars(self) -> int:
        return len(self.vars)

    def is_zero(self) -> bool:
        return not self.terms

    def degree(self) -> int:
        """Total degree; -1 for the zero polynomial."""
        return max((sum(e) for e in self.terms), default=-1)

    def coeff(self, e: Exponent) -> Coeff:
        return self.terms.get(tuple(e), Fraction(0))

    def constant_term(self) -> Coeff:
        return self.terms.get((0,) * self.nvars, Fraction(0))

    def leading(self) -> tuple[Exponent, Coeff]:
        """Leading (exponent, coefficient) in graded-lex order."""
        if not self.terms:
            raise ValueError("zero polynomial has no leading term")
        e = max(self.terms, key=grlex_key)
        return e, self.terms[e]

    def sorted_terms(self) -> list[tuple[Exponent, Coeff]]:
        return sorted(self.terms.items(), key=lambda t: grlex_key(t[0]), reverse=True)

    def _check_vars(self, other: "Poly") -> None:
        if self.vars != other.vars:
            raise VariableMismatchError(f"{self.vars} vs {other.vars}")

    # -- ring operations -----------------------------------------------------

    def __add__(self, other):
        if isinstance(other, (int, Fraction, QuadExt)):
            other = Poly.const(self.vars, other)
        if not isinstance(other, Poly):
            return NotImplemented
        self._check_vars(other)
        acc = dict(self.terms)
        for e, c in other.terms.items():
            acc[e] = acc.get(e, Fraction(0)) + c
        return Poly(self.vars, acc)

    __radd__ = __add__

    def __neg__(self):
        return Poly(self.vars, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other):
        if isinstance(other, (int, Fraction, QuadExt)):
            other = Poly.const(self.vars, other)
        if not isinstance(other, Poly):
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction, QuadExt)):
            if other == 0:
                return Poly.zero(self.vars)
            return Poly(self.vars, {e: c * other for e, c in self.terms.items()})
        if not isinstance(other, Poly):
            return NotImplemented
        self._check_vars(other)
        acc: dict[Exponent, Coeff] = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                acc[e] = acc.get(e, Fraction(0)) + c1 * c2
        return Poly(self.vars, acc)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if k < 0:
            raise ValueError("negative power")
        result = Poly.const(self.vars, 1)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base if k > 1 else base
            k >>= 1
        return result

    def __eq__(self, other):
        if isinstance(other, (int, Fraction, QuadExt)):
            other = Poly.const(self.vars, other)
        if not isinstance(other, Poly):
            return NotImplemented
        return self.vars == other.vars and self.terms == other.terms

    def __hash__(self):
        return hash((self.vars, frozenset(self.terms.items())))

    # -- calculus and substitution -------------------------------------------

    def diff(self, which: int | str) -> "Poly":
        """Exact partial derivative with respect to one variable."""
        i = self.vars.index(which) if isinstance(which, str) else which
        if not 0 <= i < self.nvars:
            raise ValueError(f"variable index {which} out of range")
        acc: dict[Exponent, Coeff] = {}
        for e, c in self.terms.items():
            if e[i] == 0:
                continue
            e2 = list(e)
            e2[i] -= 1
            acc[tuple(e2)] = c * e[i]
        return Poly(self.vars, acc)

    def subst(self, images: Sequence["Poly"]) -> "Poly":
        """Compose: substitute images[i] for the i-th variable.

        All images must share one variable set, which becomes the result's.
        """
        if len(images) != self.nvars:
            raise ValueError(
                f"need {self.nvars} substitution targets, got {len(images)}")
        if not images:
            raise ValueError("cannot substitute in a polynomial with no variables")
        tvars = images[0].vars
        for q in images:
            if q.vars != tvars:
                raise VariableMismatchError("substitution targets disagree on variables")
        # cache powers of each image
        powers: list[list[Poly]] = [[Poly.const(tvars, 1)] for _ in images]
        for i, q in enumerate(images):
            m = max((e[i] for e in self.terms), default=0)
            for _ in range(m):
                powers[i].append(powers[i][-1] * q)
        out = Poly.zero(tvars)
        for e, c in self.terms.items():
            term = Poly.const(tvars, c)
            for i, k in enumerate(e):
                if k:
                    term = term * powers[i][k]
            out = out + term
        return out

    def eval(self, point: Sequence) -> Coeff:
        """Exact value at a point with Fraction/QuadExt coordinates."""
        if len(point) != self.nvars:
            raise ValueError("point dimension mismatch")
        total: Coeff = Fraction(0)
        for e, c in self.terms.items():
            v = c
            for i, k in enumerate(e):
                for _ in range(k):
                    v = v * point[i]
            total = total + v
        return demote(total)

    def exact_div(self, q: "Poly") -> "Poly | None":
        """Return r with q*r == self exactly, or None when not divisible."""
        self._check_vars(q)
        if q.is_zero():
            raise ZeroDivisionError("division by the zero polynomial")
        if self.is_zero():
            return Poly.zero(self.vars)
        qe, qc = q.leading()
        rem = self
        quot: dict[Exponent, Coeff] = {}
        while not rem.is_zero():
            re, rc = rem.leading()
            e = tuple(a - b for a, b in zip(re, qe))
            if any(k < 0 for k in e):
                return None
            c = rc / qc
            quot[e] = c
            rem = rem - q * Poly(self.vars, {e: c})
        return Poly(self.vars, quot)

    # -- degree filtering ------------------------------------------------------

    def homogeneous_part(self, k: int) -> "Poly":
        return Poly(self.vars, {e: c for e, c in self.terms.items() if sum(e) == k})

    def truncated(self, deg: int) -> "Poly":
        """Drop all monomials of total degree greater than deg."""
        return Poly(self.vars, {e: c for e, c in self.terms.items() if sum(e) <= deg})

    # -- printing --------------------------------------------------------------

    def __str__(self):
        return format_poly(self)

    def __repr__(self):
        return f"Poly({self.vars!r}, {format_poly(self)!r})"


def _format_coeff(c: Coeff) -> str:
    if isinstance(c, QuadExt):
        return f"({c})"
    return str(c)


def _format_mono(vars: tuple[str, ...], e: Exponent) -> str:
    parts = []
    for name, k in zip(vars, e):
        if k == 1:
            parts.append(name)
        elif k > 1:
            parts.append(f"{name}^{k}")
    return "*".join(parts)


def format_poly(p: Poly) -> str:
    """Canonical string: graded-lex descending terms, explicit signs."""
    if p.is_zero():
        return "0"
    chunks: list[str] = []
    for e, c in p.sorted_terms():
        mono = _format_mono(p.vars, e)
        neg = (isinstance(c, QuadExt) and c.sign() < 0) or \
              (isinstance(c, Fraction) and c < 0)
        mag = -c if neg else c
        if mono and mag == 1:
            body = mono
        elif mono:
            body = f"{_format_coeff(mag)}*{mono}"
        else:
            body = _format_coeff(mag)
        if not chunks:
            chunks.append(f"-{body}" if neg else body)
        else:
            chunks.append(f" - {body}" if neg else f" + {body}")
    return "".join(chunks)
