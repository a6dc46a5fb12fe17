"""Constructive classification of two-dimensional real left-symmetric algebras.

Twelve normal forms: two continuous families b1 (parameter alpha) and b3
(parameter alpha != 0) and ten exceptional algebras.  classify() walks the
constructive case analysis -- rank of the left-multiplication map, commutator
tests, identity-element extraction, nilpotent-generator splitting -- and
always finishes with an exact conjugation check of the returned basis-change
witness; a verification failure is a bug, never a silent wrong answer.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import product

from . import linalg
from .field import (Coeff, IncompatibleRadicalsError, coeff_sign,
                    common_radical, demote, sqrt_fraction)
from .lsa import LSA
from .poly import Poly

LABELS = ("c1", "c2", "c3", "c4", "c5+", "c5-",
          "b1", "b2", "b3", "b4", "b5+", "b5-")

PARAMETRIC_LABELS = ("b1", "b3")


@dataclass(frozen=True)
class NormalForm:
    label: str
    alpha: Fraction | None = None

    def __post_init__(self):
        if self.label not in LABELS:
            raise ValueError(f"unknown label {self.label!r}")
        if self.label in PARAMETRIC_LABELS:
            if self.alpha is None:
                raise ValueError(f"{self.label} needs a parameter alpha")
            object.__setattr__(self, "alpha", Fraction(self.alpha))
            if self.label == "b3" and self.alpha == 0:
                raise ValueError("b3 requires alpha != 0")
        elif self.alpha is not None:
            raise ValueError(f"{self.label} takes no parameter")

    def __str__(self):
        if self.alpha is None:
            return self.label
        return f"{self.label}[{self.alpha}]"


def normal_form(form: NormalForm) -> LSA:
    """Exact structure constants of a normal form (1-based relations)."""
    al = form.alpha
    rel: dict[tuple[int, int], dict[int, Coeff]]
    if form.label == "c1":
        rel = {}
    elif form.label == "c2":
        rel = {(2, 2): {2: 1}}
    elif form.label == "c3":
        rel = {(2, 2): {1: 1}}
    elif form.label == "c4":
        rel = {(2, 2): {2: 1}, (2, 1): {1: 1}, (1, 2): {1: 1}}
    elif form.label in ("c5+", "c5-"):
        s = 1 if form.label == "c5+" else -1
        rel = {(2, 2): {2: 1}, (2, 1): {1: 1}, (1, 2): {1: 1}, (1, 1): {2: s}}
    elif form.label == "b1":
        rel = {(2, 1): {1: 1}, (2, 2): {2: al}}
    elif form.label == "b2":
        rel = {(2, 1): {1: 1}, (2, 2): {1: 1, 2: 1}}
    elif form.label == "b3":
        rel = {(1, 2): {1: 1}, (2, 1): {1: 1 - 1 / al}, (2, 2): {2: 1}}
    elif form.label == "b4":
        rel = {(1, 2): {1: 1}, (2, 2): {1: 1, 2: 1}}
    elif form.label in ("b5+", "b5-"):
        s = 1 if form.label == "b5+" else -1
        rel = {(1, 1): {2: s}, (2, 1): {1: -1}, (2, 2): {2: -2}}
    else:  # pragma: no cover
        raise AssertionError(form.label)
    return LSA.from_relations(2, rel)


Matrix = tuple[tuple[Coeff, Coeff], tuple[Coeff, Coeff]]


@dataclass(frozen=True)
class ClassificationResult:
    form: NormalForm
    witness: Matrix
    verified: bool

    @property
    def witness_radical(self) -> int:
        return common_radical(*(c for row in self.witness for c in row))


class VerificationError(RuntimeError):
    """The derived witness failed the exact conjugation check (a bug)."""


class NotLeftSymmetricError(ValueError):
    pass


def _tupmat(M) -> Matrix:
    return tuple(tuple(demote(c) for c in row) for row in M)  # type: ignore[return-value]


def _colmat(v1, v2) -> list[list[Coeff]]:
    """Matrix with the given vectors as columns."""
    return [[v1[0], v2[0]], [v1[1], v2[1]]]


def _normalize_leading(v: list[Coeff]) -> list[Coeff]:
    lead = next(c for c in v if c != 0)
    return [demote(c / lead) for c in v]


def _complement(v: list[Coeff]) -> list[Coeff]:
    """First standard basis vector independent of v (deterministic)."""
    for e in ([Fraction(1), Fraction(0)], [Fraction(0), Fraction(1)]):
        if linalg.det(_colmat(v, e)) != 0:
            return e
    raise AssertionError("no complement for the zero vector")


def _proportionality(p: Poly, q: Poly) -> Coeff | None:
    """lambda with p == lambda * q, if one exists (q != 0)."""
    if q.is_zero():
        raise ValueError("reference polynomial is zero")
    if p.is_zero():
        return Fraction(0)
    _, pc = p.leading()
    _, qc = q.leading()
    lam = demote(pc / qc)
    return lam if p == q * lam else None


def _alpha_from_invariants(a: LSA, label: str) -> Fraction:
    """Recover the family parameter from invariant-polynomial ratios."""
    inv = a.invariant_polys()
    if label == "b1":
        # trR^2 = alpha * detL when alpha != 0; alpha = 0 iff trR == 0
        if inv["detL"].is_zero():
            if not inv["trR"].is_zero():
                raise VerificationError("b1 invariants inconsistent")
            return Fraction(0)
        lam = _proportionality(inv["trR"] * inv["trR"], inv["detL"])
        if lam is None:
            raise VerificationError("b1 invariant ratio is not constant")
        return Fraction(lam)
    if label == "b3":
        # detL = (1 - 1/alpha) * detR and detR != 0 on the b3 family
        lam = _proportionality(inv["detL"], inv["detR"])
        if lam is None or lam == 1:
            raise VerificationError("b3 invariant ratio is not constant")
        return 1 / (1 - Fraction(lam))
    raise ValueError(label)


_SIGN_FLIPS = tuple(
    ((Fraction(s1), Fraction(0)), (Fraction(0), Fraction(s2)))
    for s1, s2 in ((1, 1), (1, -1), (-1, 1), (-1, -1)))


def classify(a: LSA) -> ClassificationResult:
    """Normal form, verified basis-change witness, for a 2D left-symmetric algebra."""
    if a.dim != 2:
        raise ValueError("classification implemented for dimension 2")
    if not a.is_left_symmetric():
        raise NotLeftSymmetricError("input algebra is not left-symmetric")

    e1, e2 = [Fraction(1), Fraction(0)], [Fraction(0), Fraction(1)]
    L1, L2 = a.left_matrix(e1), a.left_matrix(e2)
    pencil = [[L1[r][c], L2[r][c]] for r in range(2) for c in range(2)]
    imdim = linalg.rank(pencil)

    steps: list[list[list[Coeff]]] = []
    cur = a

    def push(C: list[list[Coeff]]) -> LSA:
        nonlocal cur
        steps.append(C)
        cur = cur.change_basis(C)
        return cur

    form: NormalForm

    if imdim == 0:
        form = NormalForm("c1")

    elif imdim == 1:
        eta1 = _normalize_leading(linalg.nullspace(pencil)[0])
        push(_colmat(eta1, _complement(eta1)))
        comm = [demote(cur.a[k][0][1] - cur.a[k][1][0]) for k in range(2)]
        if comm == [0, 0]:
            aa, bb = cur.a[1][1][1], cur.a[0][1][1]
            if aa == bb == 0:
                raise VerificationError("rank-1 algebra with trivial square")
            if aa != 0:
                push([[Fraction(1), demote(bb / (aa * aa))],
                      [Fraction(0), demote(1 / aa)]])
                form = NormalForm("c2")
            else:
                push([[bb, Fraction(0)], [Fraction(0), Fraction(1)]])
                form = NormalForm("c3")
        else:
            if comm[1] != 0:
                raise VerificationError("commutator escapes the kernel line")
            c = comm[0]
            push([[Fraction(1), Fraction(0)], [Fraction(0), demote(1 / c)]])
            aa, bb = cur.a[1][1][1], cur.a[0][1][1]
            if aa != -1:
                push([[Fraction(1), demote(bb / (1 + aa))],
                      [Fraction(0), Fraction(1)]])
                push([[Fraction(1), Fraction(0)], [Fraction(0), Fraction(-1)]])
                alpha = _alpha_from_invariants(a, "b1")
                if alpha != -aa:
                    raise VerificationError("b1 parameter mismatch")
                form = NormalForm("b1", alpha)
            elif bb == 0:
                push([[Fraction(1), Fraction(0)], [Fraction(0), Fraction(-1)]])
                alpha = _alpha_from_invariants(a, "b1")
                if alpha != 1:
                    raise VerificationError("b1 parameter mismatch")
                form = NormalForm("b1", alpha)
            else:
                push([[bb, Fraction(0)], [Fraction(0), Fraction(-1)]])
                form = NormalForm("b2")

    else:
        if cur.is_commutative():
            # identity element of the image: solve x*L1 + y*L2 = Id
            rhs = [Fraction(int(r == c)) for r in range(2) for c in range(2)]
            sol = linalg.solve(pencil, rhs)
            if sol is None:
                raise VerificationError("commutative image misses the identity")
            eta2 = [demote(sol[0]), demote(sol[1])]
            push(_colmat(_complement(eta2), eta2))
            aa, bb = cur.a[0][0][0], cur.a[1][0][0]
            disc = demote(aa * aa / 4 + bb)
            if disc == 0:
                push([[Fraction(1), Fraction(0)],
                      [demote(-aa / 2), Fraction(1)]])
                form = NormalForm("c4")
            else:
                rt = sqrt_fraction(abs(Fraction(disc)))
                inv_rt = demote(1 / rt if isinstance(rt, Fraction) else rt.inverse())
                push([[inv_rt, Fraction(0)],
                      [demote(-aa / 2 * inv_rt), Fraction(1)]])
                form = NormalForm("c5+" if disc > 0 else "c5-")
        else:
            comm = [demote(a.a[k][0][1] - a.a[k][1][0]) for k in range(2)]
            eta1 = _normalize_leading(comm)
            zeta = _complement(eta1)
            bracket = [demote(p - q) for p, q in
                       zip(a.multiply(eta1, zeta), a.multiply(zeta, eta1))]
            kappa = None
            for i in range(2):
                if eta1[i] != 0:
                    kappa = demote(bracket[i] / eta1[i])
            if kappa == 0 or any(demote(bracket[i] - kappa * eta1[i]) != 0
                                 for i in range(2)):
                raise VerificationError("derived line is not an eigenline")
            eta2 = [demote(z / kappa) for z in zeta]
            push(_colmat(eta1, eta2))
            square = [cur.a[0][0][0], cur.a[1][0][0]]  # e1*e1
            if square == [0, 0]:
                # image of L_{e1} is the kernel line spanned by e1
                aa = cur.a[0][0][1]
                if cur.a[1][0][1] != 0 or aa == 0:
                    raise VerificationError("nilpotent generator misbehaves")
                if cur.a[1][1][1] != aa:
                    raise VerificationError("inconsistent diagonal coefficient")
                bb = cur.a[0][1][1]
                if aa == 1 and bb != 0:
                    push([[bb, Fraction(0)], [Fraction(0), Fraction(1)]])
                    form = NormalForm("b4")
                elif aa == 1:
                    form = NormalForm("b3", Fraction(1))
                else:
                    shift = demote(bb / (aa * (1 - aa)))
                    push([[Fraction(1), shift],
                          [Fraction(0), demote(1 / aa)]])
                    alpha = _alpha_from_invariants(a, "b3")
                    if alpha != aa:
                        raise VerificationError("b3 parameter mismatch")
                    form = NormalForm("b3", alpha)
            else:
                bcoef = square[1]
                if bcoef == 0:
                    raise VerificationError("square of the generator lies on the kernel line")
                acoef = demote(square[0] / bcoef)
                rt = sqrt_fraction(abs(Fraction(bcoef)))
                inv_rt = demote(1 / rt if isinstance(rt, Fraction) else rt.inverse())
                push([[inv_rt, acoef], [Fraction(0), Fraction(1)]])
                form = NormalForm("b5+" if coeff_sign(bcoef) > 0 else "b5-")

    witness = linalg.identity(2)
    for C in steps:
        witness = linalg.mat_mul(witness, C)

    target = normal_form(form)
    for flip in _SIGN_FLIPS:
        W = linalg.mat_mul(witness, [list(r) for r in flip])
        if a.change_basis(W) == target:
            return ClassificationResult(form, _tupmat(W), True)
    raise VerificationError(f"witness verification failed for {form}")


@dataclass(frozen=True)
class IsomorphismResult:
    isomorphic: bool
    witness: Matrix | None


def is_isomorphic(a: LSA, b: LSA) -> IsomorphismResult:
    """Two left-symmetric algebras are isomorphic iff they classify alike.

    The witness W satisfies change_basis(a, W) == b; it is omitted when the
    two classification witnesses live over incompatible radicals.
    """
    ra, rb = classify(a), classify(b)
    if ra.form != rb.form:
        return IsomorphismResult(False, None)
    try:
        W = linalg.mat_mul([list(r) for r in ra.witness],
                           linalg.inverse([list(r) for r in rb.witness]))
        if a.change_basis(W) != b:
            raise VerificationError("isomorphism witness failed verification")
        return IsomorphismResult(True, _tupmat(W))
    except IncompatibleRadicalsError:
        return IsomorphismResult(True, None)


# -- separating invariants -----------------------------------------------------


def _vanishes(p: Poly) -> bool:
    return p.is_zero()


def _quadratic_form_psd(p: Poly) -> bool:
    """Whether a quadratic form in two variables is >= 0 everywhere."""
    A = p.coeff((2, 0))
    B = p.coeff((1, 1))
    C = p.coeff((0, 2))
    return (coeff_sign(A) >= 0 and coeff_sign(C) >= 0
            and coeff_sign(demote(4 * A * C - B * B)) >= 0)


def separation_certificate(f1: NormalForm, f2: NormalForm) -> str:
    """Name of an invariant separating two distinct normal forms.

    Drawn from the same menu the case analysis uses: vanishing of the four
    invariant polynomials and the pencil discriminants, family-parameter
    ratios, positivity indicators T(.), commutativity, and property S.
    """
    if f1 == f2:
        raise ValueError("forms are equal")
    A, B = normal_form(f1), normal_form(f2)
    ia, ib = A.invariant_polys(), B.invariant_polys()
    if A.is_commutative() != B.is_commutative():
        return "commutativity of the associated Lie algebra"
    for name in ("trL", "trR", "detL", "detR"):
        if _vanishes(ia[name]) != _vanishes(ib[name]):
            return f"vanishing of {name}"
    qa = ia["trR"] * ia["trR"] - 4 * ia["detR"]
    qb = ib["trR"] * ib["trR"] - 4 * ib["detR"]
    if _vanishes(qa) != _vanishes(qb):
        return "vanishing of trR^2 - 4 detR"
    qla = ia["trL"] * ia["trL"] - 4 * ia["detL"]
    qlb = ib["trL"] * ib["trL"] - 4 * ib["detL"]
    if _vanishes(qla) != _vanishes(qlb):
        return "vanishing of trL^2 - 4 detL"
    if f1.label == f2.label == "b1":
        for beta, other in ((f1.alpha, ib), (f2.alpha, ia)):
            probe = other["detL"] * beta - other["trR"] * other["trR"]
            if not _vanishes(probe):
                return "b1 parameter invariant beta*detL - trR^2"
    if f1.label == f2.label == "b3":
        beta = 1 - 1 / f1.alpha
        probe = ib["detR"] * beta - ib["detL"]
        if not _vanishes(probe):
            return "b3 parameter invariant (1-1/beta)*detR - detL"
    if _quadratic_form_psd(ia["detR"]) != _quadratic_form_psd(ib["detR"]):
        return "sign indicator T(detR)"
    if _quadratic_form_psd(qa) != _quadratic_form_psd(qb):
        return "sign indicator T(trR^2 - 4 detR)"
    for side in ("left", "right"):
        if A.property_s(side) != B.property_s(side):
            return f"property S ({side})"
    raise LookupError(f"no separating invariant found for {f1} vs {f2}")
