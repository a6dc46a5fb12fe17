"""Exceptional parameter sets, continued fractions, and the Brjuno test.

The sets over the rationals:

  Sigma0 = {0}                     Sigma1 = integers r >= 3
  Sigma2 = all negatives           Sigma2hat = negative rationals
  Sigma3 = {1/r : r >= 2}          Sigma_sm = S0 | S1 | S2 | S3
                                   Sigma_an = S0 | S1 | S2hat | S3

Irrational parameters enter only through continued-fraction data.  An
eventually periodic expansion has bounded partial quotients, so the Brjuno
series is dominated by a convergent geometric series and the answer is a
certified yes; a bare aperiodic prefix can never certify divergence, so the
verdict stays Undetermined and carries the partial sum.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

SIGMA_TAGS = ("Sigma0", "Sigma1", "Sigma2", "Sigma2hat", "Sigma3",
              "Sigma_sm", "Sigma_an")


def sigma_membership(alpha: Fraction) -> frozenset[str]:
    """All Sigma tags an exact rational belongs to."""
    alpha = Fraction(alpha)
    tags = set()
    if alpha == 0:
        tags.add("Sigma0")
    if alpha.denominator == 1 and alpha >= 3:
        tags.add("Sigma1")
    if alpha < 0:
        tags.add("Sigma2")
        tags.add("Sigma2hat")
    if alpha.numerator == 1 and alpha.denominator >= 2:
        tags.add("Sigma3")
    if tags & {"Sigma0", "Sigma1", "Sigma2", "Sigma3"}:
        tags.add("Sigma_sm")
    if tags & {"Sigma0", "Sigma1", "Sigma2hat", "Sigma3"}:
        tags.add("Sigma_an")
    return frozenset(tags)


@dataclass(frozen=True)
class CFrac:
    """Continued fraction [a0; a1, a2, ...].

    quotients holds the known partial quotients after a0 (each >= 1).  An
    eventually periodic expansion declares a nonempty period repeating after
    the quotients; exact=True with no period marks a complete finite
    expansion (a rational number).  Otherwise the data is a mere prefix of an
    unknown irrational.
    """

    a0: int
    quotients: tuple[int, ...] = ()
    period: tuple[int, ...] = ()
    exact: bool = False

    def __post_init__(self):
        if any(q < 1 for q in self.quotients) or any(q < 1 for q in self.period):
            raise ValueError("partial quotients after a0 must be >= 1")

    def is_negative(self) -> bool:
        # the value lies in (a0, a0 + 1); integers are exact
        if self.exact and not self.quotients and not self.period:
            return self.a0 < 0
        return self.a0 < 0

    def is_rational(self) -> bool:
        return self.exact and not self.period

    def quotient_stream(self, count: int) -> list[int]:
        """First `count` partial quotients a1, a2, ... (unrolling the period)."""
        out = list(self.quotients[:count])
        while len(out) < count and self.period:
            out.extend(self.period)
        return out[:count]

    def value(self) -> Fraction:
        """Exact value, defined only for complete finite expansions."""
        if not self.is_rational():
            raise ValueError("only a finite expansion has an exact rational value")
        v = Fraction(0)
        for q in reversed(self.quotients):
            v = 1 / (q + v)
        return self.a0 + v


@dataclass(frozen=True)
class BrjunoResult:
    status: str  # "BrjunoYes" | "Undetermined" | "NotIrrational"
    partial_sum: float
    depth: int
    denominators: tuple[int, ...] = ()
    note: str = ""


def brjuno(cf: CFrac, depth: int) -> BrjunoResult:
    """Evaluate the Brjuno series sum log(q_{n+1})/q_n on convergent denominators.

    q_0 = 1, q_1 = a_1, q_{n+1} = a_{n+1} q_n + q_{n-1}.  Eventually periodic
    input certifies convergence (BrjunoYes); a complete finite expansion is
    rational (NotIrrational); a plain prefix yields Undetermined with the
    partial sum, since no finite segment can certify divergence.
    """
    if depth < 1:
        raise ValueError("depth must be >= 1")
    if cf.is_rational():
        return BrjunoResult("NotIrrational", 0.0, 0,
                            note="complete finite expansion: a rational number")
    quots = cf.quotient_stream(depth + 1)
    if not quots:
        return BrjunoResult("Undetermined", 0.0, 0,
                            note="no partial quotients supplied")
    qs = [1, quots[0]]
    for a in quots[1:]:
        qs.append(a * qs[-1] + qs[-2])
    n_terms = min(depth, len(qs) - 1)
    total = 0.0
    for n in range(n_terms):
        total += math.log(qs[n + 1]) / qs[n]
    if cf.period:
        bound = max(cf.period + cf.quotients)
        return BrjunoResult(
            "BrjunoYes", total, n_terms, tuple(qs[:n_terms + 1]),
            note=(f"eventually periodic: quotients bounded by {bound}, "
                  "denominators grow at least like Fibonacci numbers, so the "
                  "tail is dominated by a convergent geometric series"))
    return BrjunoResult("Undetermined", total, n_terms, tuple(qs[:n_terms + 1]),
                        note="aperiodic prefix: divergence is not certifiable "
                             "from finite data")


def brjuno_partial_sums(cf: CFrac, depth: int) -> list[float]:
    """Partial sums of the Brjuno series up to each n <= depth (monotone)."""
    quots = cf.quotient_stream(depth + 1)
    qs = [1] + ([quots[0]] if quots else [])
    for a in quots[1:]:
        qs.append(a * qs[-1] + qs[-2])
    sums, total = [], 0.0
    for n in range(min(depth, len(qs) - 1)):
        total += math.log(qs[n + 1]) / qs[n]
        sums.append(total)
    return sums
