"""Levi subdata, admissible pairs, the index set I-bar and the choice of J.

>>> from adlv.rootdatum import TwistedRootDatum
>>> D = TwistedRootDatum("A2")
>>> bx = make_bx(D, [0, 1], (1, 0))
>>> bx.mu, str(bx.w)
((1, 0), 's1 s2')
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from itertools import product
from typing import Iterable, Sequence

from .affine import ExtAffineWeylElem, affine
from .errors import DomainError, InternalConsistencyError
from .invariants import invariants_of, nonempty_report
from .lattice import Lattice, integer_kernel, quotient_invariants
from .rootdatum import Cocharacter, TwistedRootDatum, WeylElem, saturated_set


def _J(D: TwistedRootDatum, J: Iterable[int]) -> frozenset[int]:
    J = frozenset(int(j) for j in J)
    if not J <= set(range(D.n)):
        raise DomainError("J is not a subset of the simple roots", {"J": sorted(J)})
    if not D.sigma_stable(J):
        raise DomainError("sigma(J) != J", {"J": sorted(J)})
    return J


def make_bx(D: TwistedRootDatum, J: Iterable[int], x: Sequence[int]) -> ExtAffineWeylElem:
    """b_x = t^{mu_x} u_x w_J, the length-zero element of the J-Levi in the class of x."""
    J = _J(D, J)
    A = affine(D)
    mu = D.minuscule_rep(x, J)
    bx = A.omega_element(mu, J)
    if A.length_J(bx, J) != 0:
        raise InternalConsistencyError("b_x has nonzero length in the Levi", {"x": list(x)})
    return bx


def nu_of_bx(D: TwistedRootDatum, J: Iterable[int], x: Sequence[int]) -> tuple[Fraction, ...]:
    return affine(D).newton(make_bx(D, J, x))[0]


def _search_radius(D: TwistedRootDatum, nu: Sequence[Fraction]) -> int:
    # nu_{b_x} is the sigma- and W_J-average of mu_x, so a representative of a
    # witnessing class can be found within N * |nu| plus one fundamental box
    N = D.order_of_sigma
    top = max((abs(v) for v in nu), default=Fraction(0))
    return int(N * top) + 2


def admissible_witnesses(D: TwistedRootDatum, J: Iterable[int], b: ExtAffineWeylElem,
                         radius: int | None = None) -> list[Cocharacter]:
    """All minuscule representatives mu_x (x found in the window) witnessing condition (b)."""
    J = _J(D, J)
    A = affine(D)
    inv = invariants_of(D, b)
    R = _search_radius(D, inv.nu) if radius is None else radius
    pi_J = D.pi1_group(J)
    seen: set = set()
    found = []
    pts = sorted(product(range(-R, R + 1), repeat=D.n), key=lambda v: (max(map(abs, v), default=0), v))
    for v in pts:
        cls = pi_J.normal(v)
        if cls in seen:
            continue
        seen.add(cls)
        if not A.pi1.coinv_equal(v, b.mu):
            continue
        mu = D.minuscule_rep(v, J)
        if nu_of_bx(D, J, mu) == inv.nu:
            found.append(mu)
    return sorted(set(found))


def is_admissible(D: TwistedRootDatum, J: Iterable[int], b: ExtAffineWeylElem,
                  radius: int | None = None) -> tuple[bool, Cocharacter | None]:
    """(admissible?, a witnessing mu_x)."""
    J = _J(D, J)
    nu = invariants_of(D, b).nu
    if any(D.pairing(a, nu) != 0 for a in D.roots_J(J, True)):
        return False, None
    wit = admissible_witnesses(D, J, b, radius)
    return (True, wit[0]) if wit else (False, None)


def kappa_J_of(D: TwistedRootDatum, J: Iterable[int], b: ExtAffineWeylElem) -> tuple[int, ...]:
    """kappa_J of the class [b]_{J,dom}, as a canonical coinvariant representative."""
    J = _J(D, J)
    ok, x0 = is_admissible(D, J, b)
    if not ok:
        raise DomainError("(J, b) is not admissible", {"J": sorted(J), "b": str(b)})
    return D.pi1_group(J).coinv_normal(x0)


def ibar(D: TwistedRootDatum, lam: Sequence[int], J: Iterable[int], b: ExtAffineWeylElem) -> list[Cocharacter]:
    """J-dominant J-minuscule mu below lam whose kappa_J matches [b]_{J,dom}."""
    J = _J(D, J)
    kap = kappa_J_of(D, J, b)
    pi_J = D.pi1_group(J)
    out = []
    for mu in saturated_set(D, lam):
        if D.is_dominant(mu, J) and D.is_J_minuscule(mu, J) and pi_J.coinv_normal(mu) == kap:
            out.append(mu)
    return sorted(out)


def ibar_from_kappa(D: TwistedRootDatum, lam: Sequence[int], J: Iterable[int], mu0: Sequence[int]) -> list[Cocharacter]:
    """Same as ibar, with kappa_J given by a representative mu0."""
    J = _J(D, J)
    pi_J = D.pi1_group(J)
    kap = pi_J.coinv_normal(mu0)
    return sorted(mu for mu in saturated_set(D, lam)
                  if D.is_dominant(mu, J) and D.is_J_minuscule(mu, J) and pi_J.coinv_normal(mu) == kap)


# ------------------------------------------------------------------ choose J
def _linear_matrix(D: TwistedRootDatum, w: WeylElem) -> list[list[int]]:
    """Matrix of v -> w sigma(v) on coweight coordinates."""
    cols = [D.act(w, D.sigma_coweight(tuple(int(i == k) for i in range(D.n)))) for k in range(D.n)]
    return [[cols[k][i] for k in range(D.n)] for i in range(D.n)]


def fixed_space_basis(D: TwistedRootDatum, w: WeylElem) -> list[tuple[int, ...]]:
    M = _linear_matrix(D, w)
    A = [[M[i][k] - int(i == k) for k in range(D.n)] for i in range(D.n)]
    return integer_kernel(A, D.n)


@dataclass
class LeviChoice:
    J: tuple[int, ...]
    straight: ExtAffineWeylElem
    z: WeylElem
    diamond_elem: ExtAffineWeylElem
    v0: tuple[Fraction, ...]
    z0: WeylElem
    w0: ExtAffineWeylElem
    nu: tuple[Fraction, ...]
    chi0: Cocharacter
    ibar: list[Cocharacter]
    checks: dict

    def to_json(self) -> dict:
        from .serialize import elem_json, frac_list
        return {"J": list(self.J), "straight": elem_json(self.straight), "z": str(self.z),
                "w_diamond": elem_json(self.diamond_elem), "v0": frac_list(self.v0),
                "z0": str(self.z0), "w0": elem_json(self.w0), "nu": frac_list(self.nu),
                "chi0": list(self.chi0), "ibar": [list(m) for m in self.ibar], "checks": self.checks}


def find_straight(D: TwistedRootDatum, lam: Sequence[int], b: ExtAffineWeylElem) -> ExtAffineWeylElem:
    inv = invariants_of(D, b)
    for x, kap, nubar in affine(D).straight_classes_below(lam):
        if kap == inv.kappa and nubar == inv.nu:
            return x
    raise DomainError("nonemptiness/straightness mismatch: no straight element with the invariants of b",
                      {"b": str(b), "lambda": list(lam)})


def generic_point(D: TwistedRootDatum, nubar: Sequence[Fraction], basis: Sequence[Sequence[int]],
                  rng: random.Random, tries: int = 200) -> tuple[Fraction, ...]:
    """A point of V' near nubar whose vanishing roots vanish on all of V'."""
    n = D.n
    if not basis:
        return tuple(Fraction(v) for v in nubar)
    for _ in range(tries):
        c = [rng.randint(-7, 7) for _ in basis]
        u = [sum(ci * bv[i] for ci, bv in zip(c, basis)) for i in range(n)]
        if not any(u):
            continue
        eps = Fraction(1)
        for a in D.roots:
            p = D.pairing(a, nubar)
            if p != 0:
                eps = min(eps, abs(p) / (2 * (1 + abs(D.pairing(a, u)))))
        v0 = tuple(Fraction(nv) + eps * ui for nv, ui in zip(nubar, u))
        if certify_generic(D, v0, basis):
            return v0
    raise InternalConsistencyError("no generic point found in V'", {"basis": [list(b) for b in basis]})


def certify_generic(D: TwistedRootDatum, v0: Sequence, basis: Sequence[Sequence[int]]) -> bool:
    for a in D.roots:
        if D.pairing(a, v0) == 0 and any(D.pairing(a, bv) != 0 for bv in basis):
            return False
    return True


def choose_J(D: TwistedRootDatum, lam: Sequence[int], b: ExtAffineWeylElem, seed: int = 0) -> LeviChoice:
    rep = nonempty_report(D, lam, b)
    if not rep["nonempty"]:
        raise DomainError("variety is empty", {"criterion": rep["criterion"]})
    A = affine(D)
    w = find_straight(D, lam, b)
    nu_w, nubar = A.newton(w)
    Jnu = frozenset(i for i in range(D.n) if nubar[i] == 0)
    _, z = D.dominant_rep(nu_w)
    zt = A.elem((0,) * D.n, z)
    wd = A.sigma_conj(zt, w)
    chi = wd.mu
    checks: dict[str, bool] = {}
    checks["diamond_sigma_stable"] = D.sigma_stable(Jnu)
    checks["diamond_in_Omega_J"] = (set(wd.w.word) <= Jnu) and A.length_J(wd, Jnu) == 0
    checks["diamond_chi_weakly_dominant"] = D.is_weakly_dominant(chi)
    basis = fixed_space_basis(D, wd.w)
    rng = random.Random(seed)
    v0 = generic_point(D, nubar, basis, rng)
    checks["v0_in_fixed_space"] = tuple(D.act(wd.w, D.sigma_coweight(v0))) == v0
    checks["v0_generic"] = certify_generic(D, v0, basis)
    v0bar, z0 = D.dominant_rep(v0)
    J = frozenset(i for i in range(D.n) if v0bar[i] == 0)
    checks["z0_in_W_Jnu"] = set(z0.word) <= Jnu
    w0 = A.sigma_conj(A.elem((0,) * D.n, z0), wd)
    chi0 = w0.mu
    checks["sigma_J_eq_J"] = D.sigma_stable(J)
    in_omega = (set(w0.w.word) <= J) and A.length_J(w0, J) == 0
    checks["w0_in_Omega_J"] = in_omega
    checks["superbasic"] = in_omega and A.is_superbasic_omega(w0, J)
    checks["nu_match"] = A.newton(w0)[0] == nubar and nubar == invariants_of(D, b).nu
    checks["chi0_weakly_dominant"] = D.is_weakly_dominant(chi0)
    ok_adm, _ = is_admissible(D, J, b) if checks["sigma_J_eq_J"] else (False, None)
    checks["admissible"] = ok_adm
    ib = ibar(D, lam, J, b) if ok_adm else []
    checks["chi0_in_ibar"] = tuple(chi0) in ib
    return LeviChoice(tuple(sorted(J)), w, z, wd, v0, z0, w0, nubar, chi0, ib, checks)


# ------------------------------------------------------------------ kernel
def kernel_preimage(D: TwistedRootDatum, J: Iterable[int]) -> Lattice:
    """{y in Z Phi^vee : (sigma - 1) y in Z Phi_J^vee}, the preimage of the kernel."""
    J = _J(D, J)
    return D.pi1_group(J).invariants_lattice.intersect(D.coroot_lattice())


def kernel_to_G(D: TwistedRootDatum, J: Iterable[int]) -> dict:
    """Kernel of pi_1(M_J)^sigma -> pi_1(G)^sigma with the y_alpha spanning check."""
    J = _J(D, J)
    pre = kernel_preimage(D, J)
    rel = D.coroot_lattice(J)
    gens = {D.y_alpha(a) for a in D.roots}
    span = Lattice.from_generators(list(rel.basis) + sorted(gens), D.n)
    return {"J": sorted(J), "invariant_factors": quotient_invariants(pre, rel),
            "preimage_basis": [list(v) for v in pre.basis],
            "y_alpha_span_ok": span == pre,
            "generators": [list(g) for g in sorted(gens)]}
