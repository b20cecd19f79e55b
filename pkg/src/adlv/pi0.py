"""The component set of a closed affine Deligne-Lusztig variety as a fiber in pi_1(G).

>>> from adlv.catalog import named
>>> from adlv.affine import ExtAffineWeylElem
>>> D = named("pgl2")
>>> r = pi0(D, (2,), ExtAffineWeylElem((0,), D.identity))
>>> r.size, r.fiber
(2, [(0,), (1,)])
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

from .affine import ExtAffineWeylElem
from .chains import gen_span_check, kernel_consistency
from .errors import DomainError
from .invariants import hn_irreducible, nonempty_report
from .levi import choose_J, kernel_to_G
from .rootdatum import Cocharacter, TwistedRootDatum

NOT_ASSERTED = "formula applies only under HN-irreducibility"


@dataclass
class Pi0Result:
    fiber: list[Cocharacter]
    size: int
    hn_irreducible: bool
    fixed_size: int
    certificate: dict = field(default_factory=dict)
    label: str | None = None

    def to_json(self) -> dict:
        return {"fiber": [list(x) for x in self.fiber], "size": self.size,
                "hn_irreducible": self.hn_irreducible, "fixed_subgroup_order": self.fixed_size,
                "label": self.label, "certificate": self.certificate}


def pi1_rep(D: TwistedRootDatum, x: Sequence[int]) -> Cocharacter:
    """Stable representative of the class of x in pi_1(G)."""
    return D.minuscule_rep(x, range(D.n))


def fiber(D: TwistedRootDatum, lam: Sequence[int], b: ExtAffineWeylElem) -> list[Cocharacter]:
    """All x in pi_1(G) with (sigma - 1) x = eta(t^lam) - eta(b)."""
    pi = D.pi1_group()
    c = tuple(a - m for a, m in zip(lam, b.mu))
    x0 = pi.solve_sigma_minus_one(c)
    if x0 is None:
        return []
    out = {pi1_rep(D, tuple(a + k for a, k in zip(x0, f))) for f in pi.fixed_elements()}
    return sorted(out)


def certificate(D: TwistedRootDatum, lam: Sequence[int], b: ExtAffineWeylElem, seed: int = 0) -> dict:
    choice = choose_J(D, lam, b, seed=seed)
    J = frozenset(choice.J)
    ker = kernel_to_G(D, J)
    spans = {}
    for x in choice.ibar:
        spans[",".join(map(str, x))] = gen_span_check(D, lam, J, x)
    kc = kernel_consistency(D, lam, J, choice.ibar)
    ok = (all(choice.checks.values()) and all(s["ok"] for s in spans.values()) and kc["equal"])
    return {"levi": choice.to_json(), "kernel": ker, "gen_span": spans, "kernel_consistency": kc, "ok": ok}


def pi0(D: TwistedRootDatum, lam: Sequence[int], b: ExtAffineWeylElem, seed: int = 0,
        with_certificate: bool = True) -> Pi0Result:
    lam = tuple(lam)
    rep = nonempty_report(D, lam, b)
    if not rep["nonempty"]:
        raise DomainError("variety is empty", {"criterion": rep["criterion"]})
    fib = fiber(D, lam, b)
    fixed = len(D.pi1_group().fixed_elements())
    hn = hn_irreducible(D, lam, b)
    res = Pi0Result(fib, len(fib), hn, fixed)
    if not hn:
        res.label = NOT_ASSERTED
    elif with_certificate:
        res.certificate = certificate(D, lam, b, seed)
    return res


__all__ = ["Pi0Result", "pi0", "fiber", "certificate", "pi1_rep", "NOT_ASSERTED"]
