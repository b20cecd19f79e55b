"""Kottwitz and Newton invariants of sigma-conjugacy classes in W~.

>>> from adlv.rootdatum import TwistedRootDatum
>>> D = TwistedRootDatum("A1")
>>> A = affine(D)
>>> tau = A.elem((1,), D.simple_reflections[0])
>>> inv = invariants_of(D, tau)
>>> inv.nu
(Fraction(0, 1),)
>>> nonempty(D, (1,), A.one)
False
>>> hn_irreducible(D, (1,), tau)
True
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .affine import ExtAffineWeylElem, affine
from .errors import DomainError, InternalConsistencyError
from .rootdatum import TwistedRootDatum


@dataclass(frozen=True)
class ClassInvariants:
    kappa: tuple[int, ...]  # canonical representative in pi_1(G)_sigma
    nu: tuple[Fraction, ...]  # dominant Newton point

    def to_json(self) -> dict:
        return {"kappa": list(self.kappa), "nu": [frac_str(v) for v in self.nu]}


def frac_str(q) -> str:
    q = Fraction(q)
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


def invariants_of(D: TwistedRootDatum, b: ExtAffineWeylElem) -> ClassInvariants:
    A = affine(D)
    nubar = A.newton(b)[1]
    if D.sigma_coweight(nubar) != nubar:
        raise InternalConsistencyError("dominant Newton point is not sigma-fixed")
    return ClassInvariants(tuple(A.pi1.coinv_normal(b.mu)), nubar)


def is_basic(D: TwistedRootDatum, b: ExtAffineWeylElem) -> bool:
    nu = invariants_of(D, b).nu
    return all(D.pairing(a, nu) == 0 for a in D.positive_roots)


def is_superbasic_omega(D: TwistedRootDatum, tau: ExtAffineWeylElem) -> bool:
    return affine(D).is_superbasic_omega(tau)


def coroot_gap(D: TwistedRootDatum, lam: Sequence[int], b: ExtAffineWeylElem) -> tuple[Fraction, ...]:
    """Simple-coroot coefficients of lam^diamond - nu_[b]."""
    nu = invariants_of(D, b).nu
    diff = [a - c for a, c in zip(D.diamond(lam), nu)]
    return tuple(Fraction(v) for v in D.coroot_coeffs(diff))


def kappa_match(D: TwistedRootDatum, lam: Sequence[int], b: ExtAffineWeylElem) -> bool:
    return affine(D).pi1.coinv_equal(lam, b.mu)


def nonempty_report(D: TwistedRootDatum, lam: Sequence[int], b: ExtAffineWeylElem) -> dict:
    """Both halves of the nonemptiness criterion, with the failing one named."""
    if not D.is_dominant(lam):
        raise DomainError("lambda must be dominant", {"lambda": list(lam)})
    kap = kappa_match(D, lam, b)
    coeffs = coroot_gap(D, lam, b)
    cone = all(c >= 0 for c in coeffs)
    criterion = None
    if not kap:
        criterion = "kappa mismatch"
    elif not cone:
        criterion = "newton point not below lambda"
    return {"nonempty": kap and cone, "kappa_match": kap, "coefficients": coeffs, "criterion": criterion}


def nonempty(D: TwistedRootDatum, lam: Sequence[int], b: ExtAffineWeylElem) -> bool:
    return nonempty_report(D, lam, b)["nonempty"]


def hn_irreducible(D: TwistedRootDatum, lam: Sequence[int], b: ExtAffineWeylElem) -> bool:
    rep = nonempty_report(D, lam, b)
    if not rep["nonempty"]:
        raise DomainError("variety is empty", {"criterion": rep["criterion"]})
    return all(c > 0 for c in rep["coefficients"])
