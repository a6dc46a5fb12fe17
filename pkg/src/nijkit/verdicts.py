"""Degeneracy verdicts for the twelve normal forms, smooth and analytic.

Ten of the twelve answers are unconditional; only the b1 family depends on
its parameter.  A rational parameter is decided by exact Sigma-set
membership.  An irrational parameter enters as continued-fraction data: a
positive irrational is never exceptional; a negative one is decided by the
Brjuno test, which from finite data can certify yes (eventually periodic)
but never no, so the remaining analytic cases are reported Unknown, matching
the open column of the classification.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .classify import NormalForm
from .sigma import CFrac, brjuno, sigma_membership

CATEGORIES = ("smooth", "analytic")

_ALWAYS_DEGENERATE = ("c1", "c2", "c3", "c4", "b4", "b3")
_ALWAYS_NONDEGENERATE = ("b5+", "b5-", "c5+", "c5-", "b2")


@dataclass(frozen=True)
class Verdict:
    value: str  # "Degenerate" | "NonDegenerate" | "Unknown"
    justification: str


def verdict(form: NormalForm, category: str, *, alpha_cf: CFrac | None = None,
            brjuno_depth: int = 40) -> Verdict:
    """Degeneracy verdict for a normal form in the given category."""
    if category not in CATEGORIES:
        raise ValueError(f"category must be one of {CATEGORIES}")
    if form.label in _ALWAYS_DEGENERATE:
        return Verdict("Degenerate", f"{form.label} row of the verdict table")
    if form.label in _ALWAYS_NONDEGENERATE:
        return Verdict("NonDegenerate", f"{form.label} row of the verdict table")
    assert form.label == "b1"
    if alpha_cf is None:
        return _b1_rational(form.alpha, category)
    return _b1_cfrac(alpha_cf, category, brjuno_depth)


def _b1_rational(alpha: Fraction, category: str) -> Verdict:
    tags = sigma_membership(alpha)
    key = "Sigma_sm" if category == "smooth" else "Sigma_an"
    if key in tags:
        reason = next(t for t in ("Sigma0", "Sigma1",
                                  "Sigma2" if category == "smooth" else "Sigma2hat",
                                  "Sigma3") if t in tags)
        return Verdict("Degenerate", reason)
    return Verdict("NonDegenerate", f"alpha = {alpha} lies outside {key}")


def _b1_cfrac(cf: CFrac, category: str, depth: int) -> Verdict:
    if cf.is_rational():
        raise ValueError("rational parameter: pass it exactly instead of as a "
                         "continued fraction")
    if not cf.is_negative():
        return Verdict("NonDegenerate",
                       "positive irrational: outside every exceptional set")
    if category == "smooth":
        return Verdict("Degenerate", "Sigma2")
    res = brjuno(cf, depth)
    if res.status == "BrjunoYes":
        return Verdict("NonDegenerate", "negative Brjuno number (certified "
                                        "from the periodic expansion)")
    return Verdict("Unknown", "negative irrational with uncertified Brjuno "
                              "series: the open case")
