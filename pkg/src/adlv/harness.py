"""Named verification sweeps with replayable reports.

Each registered check walks a finite window of a catalog datum, runs the
engine, and compares against an independent brute-force test of the
statement.  Reports serialize deterministically; wall time is kept on the
report object but left out of the canonical JSON.

>>> rep = verify("minus", {"data": ["pgl3"], "bound": 2})
>>> rep.status, rep.cases_run > 0
('PASS', True)
"""

from __future__ import annotations

import random
import time
from dataclasses import dataclass, field
from functools import lru_cache
from itertools import combinations, product
from typing import Callable, Iterable

from . import chains as ch
from .affine import affine
from .catalog import resolve as named
from .checkers import verify_conv_chain
from .errors import DomainError
from .invariants import hn_irreducible, invariants_of, nonempty
from .levi import choose_J, ibar, is_admissible, make_bx, nu_of_bx
from .rootdatum import (TwistedRootDatum, box, dominant_coweights_up_to_height, saturated_set)
from .serialize import dumps, elem_json

MAX_FAILURES = 20

PROFILES = {
    "quick": {"data": ["pgl2", "pgl3", "pgl3-flip", "b2", "g2", "a1xa1-swap"],
              "bound": 3, "height": 8, "config_height": 4, "length": 6, "samples": 200, "seed": 0},
    "full": {"data": ["pgl2", "pgl3", "pgl3-flip", "b2", "g2", "a1xa1-swap",
                      "a3", "a3-flip", "d4", "d4-triality", "a4-flip", "a2xa2-swap"],
             "bound": 3, "height": 10, "config_height": 6, "length": 8, "samples": 1000, "seed": 0},
}

DEFAULTS = {"bound": 4, "height": 12, "config_height": 4, "length": 8, "samples": 1000, "seed": 0}

OPTIONAL_NOTE = ("optional check of a cited statement; a FAIL indicts the formalization "
                 "of its hypotheses here, not the source")


@dataclass
class LemmaReport:
    lemma_id: str
    config: dict
    cases_run: int = 0
    failures: list = field(default_factory=list)
    failure_count: int = 0
    vacuous: bool = False
    note: str | None = None
    wall_time: float = 0.0

    @property
    def status(self) -> str:
        if self.failure_count:
            return "FAIL"
        if self.vacuous or self.cases_run == 0:
            return "VACUOUS"
        return "PASS"

    def fail(self, payload: dict) -> None:
        self.failure_count += 1
        if len(self.failures) < MAX_FAILURES:
            self.failures.append(payload)

    def to_json(self, timing: bool = False) -> dict:
        doc = {"lemma_id": self.lemma_id, "status": self.status, "config": self.config,
               "cases_run": self.cases_run, "failure_count": self.failure_count,
               "failures": self.failures, "note": self.note}
        if timing:
            doc["wall_time"] = round(self.wall_time, 3)
        return doc


# --------------------------------------------------------------- windows
def _v(x) -> list:
    return list(x)


def window_lambdas(D: TwistedRootDatum, height: int) -> list[tuple]:
    return dominant_coweights_up_to_height(D, height)


def window_pairs(D: TwistedRootDatum, height: int, bound: int):
    """(lam, mu, mu') with mu != mu' below lam and all coordinates within bound."""
    for lam in window_lambdas(D, height):
        S = [m for m in saturated_set(D, lam) if max(map(abs, m), default=0) <= bound]
        for mu in S:
            for mp in S:
                if mu != mp:
                    yield lam, mu, mp


def weakly_dominant_below(D: TwistedRootDatum, lam) -> list[tuple]:
    """All weakly dominant mu <= lam, by a box bounded through <2 rho, .>."""
    unit = [D.rho2_pairing(tuple(int(i == k) for i in range(D.n))) for k in range(D.n)]
    cap = D.rho2_pairing(lam) + sum(unit)
    ranges = [range(-1, int(cap // u) + 1) for u in unit]
    return [mu for mu in product(*ranges) if D.is_weakly_dominant(mu) and D.leq(mu, lam)]


def config_height(D: TwistedRootDatum, height: int) -> int:
    """Never smaller than twice the least fundamental height, so every datum gets nonzero lambdas."""
    unit = min(D.rho2_pairing(tuple(int(i == k) for i in range(D.n))) for k in range(D.n))
    return max(height, 2 * unit)


@lru_cache(maxsize=None)
def levi_configs(name: str, height: int) -> tuple:
    """(lam, b, LeviChoice) for every nonempty pair, one straight representative per class.

    choose_J sees b only through (kappa, nu-bar), so further representatives repeat the same choice.
    """
    D = named(name)
    A = affine(D)
    out = []
    for lam in window_lambdas(D, config_height(D, height)):
        seen = set()
        for x, kap, nubar in A.straight_classes_below(lam):
            if (kap, nubar) in seen or not nonempty(D, lam, x):
                continue
            seen.add((kap, nubar))
            out.append((lam, x, choose_J(D, lam, x)))
    return tuple(out)


def sigma_stable_subsets(D: TwistedRootDatum) -> list[frozenset]:
    out = []
    for k in range(D.n + 1):
        for J in combinations(range(D.n), k):
            if D.sigma_stable(J):
                out.append(frozenset(J))
    return out


@lru_cache(maxsize=None)
def bx_configs(name: str, height: int) -> tuple:
    """(lam, J, b_x, I-bar) over sigma-stable J and J-minuscule classes x below lam.

    Keeps only admissible, HN-irreducible pairs; one b per kappa_J class.
    """
    D = named(name)
    out = []
    for J in sigma_stable_subsets(D):
        pi = D.pi1_group(J)
        for lam in window_lambdas(D, config_height(D, height)):
            seen = set()
            for mu in saturated_set(D, lam):
                if not (D.is_dominant(mu, J) and D.is_J_minuscule(mu, J)):
                    continue
                key = pi.coinv_normal(mu)
                if key in seen:
                    continue
                seen.add(key)
                b = make_bx(D, J, mu)
                if not nonempty(D, lam, b) or not hn_irreducible(D, lam, b):
                    continue
                if not is_admissible(D, J, b)[0]:
                    continue
                out.append((lam, J, b, tuple(ibar(D, lam, J, b))))
    return tuple(out)


# ----------------------------------------------------------------- checks
def chk_gashi(D, cfg, rep):
    for lam in window_lambdas(D, cfg["height"]):
        for mu in weakly_dominant_below(D, lam):
            rep.cases_run += 1
            if not D.order_check(mu, lam)["preceq_J"]:
                rep.fail({"lambda": _v(lam), "mu": _v(mu)})


def chk_minus(D, cfg, rep):
    for mu in box(D, cfg["bound"]):
        if not D.is_weakly_dominant(mu):
            continue
        for i, a in enumerate(D.simple_roots):
            p = mu[i]
            if p >= 1 or p == -1:
                rep.cases_run += 1
                cvv = D.coroot(a)
                nxt = tuple(m - c for m, c in zip(mu, cvv)) if p >= 1 else tuple(m + c for m, c in zip(mu, cvv))
                if not D.is_weakly_dominant(nxt):
                    rep.fail({"mu": _v(mu), "alpha": _v(a)})


def chk_con(D, cfg, rep):
    W = D.subgroup(range(D.n))
    simple_refl = [D.reflection(a) for a in D.simple_roots]
    for lam, mu, mp in window_pairs(D, cfg["height"], cfg["bound"]):
        rep.cases_run += 1
        th, xi, _ = ch.theta_sets(D, mu, mp, lam)
        th2, _, _ = ch.theta_sets(D, mp, mu, lam)
        bad = []
        if not th:
            bad.append("theta empty")
        if not set(xi) <= set(th):
            bad.append("xi not in theta")
        if set(th2) != {D.neg(a) for a in th}:
            bad.append("antisymmetry")
        for s in simple_refl:
            ths, _, _ = ch.theta_sets(D, D.act(s, mu), D.act(s, mp), lam)
            if set(ths) != {D.act_root(s, a) for a in th}:
                bad.append("equivariance")
                break
        if not xi and not any(D.is_dominant(D.act(w, mu)) and D.is_dominant(D.act(w, mp)) for w in W):
            bad.append("no common dominant chamber")
        if bad:
            rep.fail({"lambda": _v(lam), "mu": _v(mu), "mu'": _v(mp), "problems": bad})


def chk_contraction(D, cfg, rep):
    rng = random.Random(cfg["seed"])
    n = D.n
    for _ in range(cfg["samples"]):
        c1 = [rng.randint(0, 3) for _ in range(n)]
        c2 = [rng.randint(0, 3) for _ in range(n)]
        d = tuple(sum(c1[j] * D.cartan[i][j] for j in range(n)) for i in range(n))
        dp = tuple(sum(c2[j] * D.cartan[i][j] for j in range(n)) for i in range(n))
        rep.cases_run += 1
        g = ch.contraction(D, d, dp)
        bad = ch.check_contraction(D, d, dp, g)
        if bad:
            rep.fail({"delta": c1, "delta'": c2, "problems": bad})


def chk_key(D, cfg, rep):
    for lam in window_lambdas(D, cfg["height"]):
        for mu in box(D, cfg["bound"]):
            for a in D.roots:
                mu0 = tuple(m + c for m, c in zip(mu, D.coroot(a)))
                if not D.leq(mu0, lam) or D.preceq(mu0, lam):
                    continue
                rep.cases_run += 1
                cert = ch.key_gamma(D, mu, a, lam)
                if not all(cert.checks.values()):
                    rep.fail({"lambda": _v(lam), "mu": _v(mu), "alpha": _v(a), "checks": cert.checks})


def chk_weak(D, cfg, rep):
    if not D.simply_laced:
        return
    for mu in box(D, cfg["bound"]):
        if D.is_weakly_dominant(mu):
            rep.cases_run += 1
            bad = ch.check_orthogonal_D(D, mu, ch.weak_orthogonal_D(D, mu))
            if bad:
                rep.fail({"mu": _v(mu), "problems": bad})


def chk_orth(D, cfg, rep):
    if not D.simply_laced:
        return
    for lam, mu, mp in window_pairs(D, cfg["height"], cfg["bound"]):
        th, _, xi1 = ch.theta_sets(D, mu, mp, lam)
        if set(th) != set(xi1):
            continue
        rep.cases_run += 1
        if D.dominant(mu) != D.dominant(mp):
            rep.fail({"lambda": _v(lam), "mu": _v(mu), "upsilon": _v(mp), "problems": ["not conjugate"]})
            continue
        De = ch.orth_delta(D, mu, mp)
        bad = []
        if not set(De) <= set(xi1):
            bad.append("not in Xi_1")
        if any(D.root_pairing(a, b) for a in De for b in De if a != b):
            bad.append("not orthogonal")
        if tuple(sum(D.coroot(g)[i] for g in De) for i in range(D.n)) != tuple(a - b for a, b in zip(mu, mp)):
            bad.append("sum")
        if bad:
            rep.fail({"lambda": _v(lam), "mu": _v(mu), "upsilon": _v(mp), "problems": bad})


def chk_graph(D, cfg, rep):
    h = D.components
    even_A = D.label.startswith("A") and (D.rank_per_component % 2 == 0)
    for a in D.roots:
        orb = D.orbit(a)
        for b, g in combinations(orb, 2):
            rep.cases_run += 1
            p = D.root_pairing(b, g)
            if p > 0 or (p != 0 and not even_A):
                rep.fail({"alpha": _v(a), "beta": _v(b), "gamma": _v(g), "pairing": p})
    special = [a for a in D.roots if D.root_pairing(D.sigma_root(a, h), a) == -1]
    for a, b in combinations(special, 2):
        if D.component_of_root(a) != D.component_of_root(b):
            continue
        rep.cases_run += 1
        if D.root_pairing(a, b) == 0:
            rep.fail({"alpha": _v(a), "beta": _v(b), "part": "ii"})


def _twisted_pairs(D, cfg):
    for lam, mu, mp in window_pairs(D, cfg["height"], cfg["bound"]):
        if ch.in_one_minus_sigma_Y(D, tuple(a - b for a, b in zip(mu, mp))):
            yield lam, mu, mp


def chk_conv(D, cfg, rep):
    for lam, mu, mp in _twisted_pairs(D, cfg):
        rep.cases_run += 1
        a, r, side, case = ch.conv_lemma_step(D, mu, mp, lam)
        bad = []
        if D.sigma_root(a, r) == a:
            bad.append("a")
        if r not in ch.r_range(D, a):
            bad.append("range")
        if side is None:
            bad.append("b")
        diff = tuple(x - y for x, y in zip(mu, mp))
        new = tuple(d + c - s for d, c, s in zip(diff, D.coroot(a), ch.scv(D, a, r)))
        if not D.prec(new, diff):
            bad.append("c")
        if bad:
            rep.fail({"lambda": _v(lam), "mu": _v(mu), "upsilon": _v(mp), "case": case, "problems": bad})


def chk_conv_chain(D, cfg, rep):
    for lam, mu, mp in _twisted_pairs(D, cfg):
        rep.cases_run += 1
        steps, _ = ch.conv_chain(D, mu, mp, lam)
        bad = verify_conv_chain(D, steps, mu, mp, lam)
        if bad:
            rep.fail({"lambda": _v(lam), "mu": _v(mu), "upsilon": _v(mp), "problems": bad})


def chk_convv(D, cfg, rep):
    for lam, b, choice in levi_configs(cfg["_name"], cfg["config_height"]):
        J = frozenset(choice.J)
        for x, xp in combinations(choice.ibar, 2):
            for s, t in ((x, xp), (xp, x)):
                rep.cases_run += 1
                chain = ch.convv_chain(D, lam, J, s, t, choice.ibar)
                bad = ch.check_convv(D, lam, J, s, t, choice.ibar, chain)
                for st in chain:
                    tails = ch.refine_to_tail(D, lam, J, st.x, st.xp, st.alpha, st.r)
                    lhs = ch.orbit_coroot_sum(D, st.alpha, st.r)
                    rhs = tuple(sum(ch.orbit_coroot_sum(D, u.alpha, u.r)[k] for u in tails) for k in range(D.n))
                    if lhs != rhs:
                        bad.append("tail coroot sum")
                    if not all(ch.step_tail(D, lam, J, u.x, u.xp, u.alpha, u.r) for u in tails):
                        bad.append("tail relation")
                if bad:
                    rep.fail({"lambda": _v(lam), "b": elem_json(b), "J": sorted(J), "x": _v(s), "x'": _v(t),
                              "problems": sorted(set(bad))})


def chk_minu(D, cfg, rep):
    lams = window_lambdas(D, min(cfg["height"], 6))
    for k in range(D.n):
        for J in combinations(range(D.n), k):
            mus = [m for m in box(D, min(cfg["bound"], 2)) if D.is_dominant(m, J) and D.is_J_minuscule(m, J)]
            for beta in D.roots:
                if D.in_Phi_J(beta, J):
                    continue
                bJ = ch.beta_J(D, beta, J)
                for lam in lams:
                    for mu in mus:
                        if D.preceq(tuple(a + c for a, c in zip(mu, D.coroot(beta))), lam):
                            rep.cases_run += 1
                            if not D.preceq(tuple(a + c for a, c in zip(mu, D.coroot(bJ))), lam):
                                rep.fail({"J": list(J), "beta": _v(beta), "mu": _v(mu), "lambda": _v(lam)})


def _levi_check(keys):
    def run(D, cfg, rep):
        for lam, b, choice in levi_configs(cfg["_name"], cfg["config_height"]):
            rep.cases_run += 1
            bad = [k for k in keys if not choice.checks.get(k, False)]
            if bad:
                rep.fail({"lambda": _v(lam), "b": elem_json(b), "problems": bad})
    return run


chk_diamond = _levi_check(["diamond_sigma_stable", "diamond_in_Omega_J", "diamond_chi_weakly_dominant"])
chk_exist = _levi_check(["v0_in_fixed_space", "v0_generic", "z0_in_W_Jnu", "sigma_J_eq_J", "w0_in_Omega_J",
                         "superbasic", "nu_match", "chi0_weakly_dominant"])
chk_ideal = _levi_check(["sigma_J_eq_J", "admissible", "superbasic", "chi0_in_ibar", "chi0_weakly_dominant"])


def chk_dominant(D, cfg, rep):
    for lam, b, choice in levi_configs(cfg["_name"], cfg["config_height"]):
        nu = invariants_of(D, b).nu
        for x in choice.ibar:
            rep.cases_run += 1
            if tuple(nu_of_bx(D, choice.J, x)) != tuple(nu):
                rep.fail({"lambda": _v(lam), "b": elem_json(b), "x": _v(x)})


def _affine_window(D, cfg):
    if D.n > 2:
        return []
    return affine(D).enumerate_up_to_length(cfg["length"])


def chk_min(D, cfg, rep):
    A = affine(D)
    for x in _affine_window(D, cfg):
        rep.cases_run += 1
        y, _ = A.reduce_to_min(x)
        m = A.class_min_length(x)
        if A.length(y) != m:
            rep.fail({"x": elem_json(x), "reached": A.length(y), "minimum": m})


def chk_fundamental_ac(D, cfg, rep):
    A = affine(D)
    for x in _affine_window(D, cfg):
        rep.cases_run += 1
        nu, _ = A.newton(x)
        if A.is_fundamental(x, nu) != A.is_straight(x):
            rep.fail({"x": elem_json(x)})


def chk_gen(D, cfg, rep):
    for lam, b, choice in levi_configs(cfg["_name"], cfg["config_height"]):
        if not hn_irreducible(D, lam, b):
            continue
        for x in choice.ibar:
            rep.cases_run += 1
            cert = ch.gen_span_check(D, lam, choice.J, x)
            if not cert["ok"]:
                rep.fail({"lambda": _v(lam), "b": elem_json(b), "J": list(choice.J), "x": _v(x)})


def chk_mod(D, cfg, rep):
    if D.label != "G2":
        return
    for lam, J, b, ib in bx_configs(cfg["_name"], cfg["config_height"]):
        if not ch.g2_modified(D, J):
            continue
        for x in ib:
            rep.cases_run += 1
            cert = ch.gen_span_check(D, lam, J, x)
            if not cert["ok"]:
                rep.fail({"lambda": _v(lam), "J": sorted(J), "b": elem_json(b), "x": _v(x)})


def chk_k2_consistency(D, cfg, rep):
    for lam, b, choice in levi_configs(cfg["_name"], cfg["config_height"]):
        if not hn_irreducible(D, lam, b):
            continue
        rep.cases_run += 1
        kc = ch.kernel_consistency(D, lam, choice.J, choice.ibar)
        if not kc["equal"]:
            rep.fail({"lambda": _v(lam), "b": elem_json(b), "J": list(choice.J),
                      "missing": kc["missing"], "outside_kernel": kc["outside_kernel"]})


def _orthogonal_subsets(D, cands):
    out = [()]
    for g in cands:
        out += [s + (g,) for s in out if all(D.root_pairing(g, t) == 0 for t in s)]
    return out


def chk_lattice(D, cfg, rep):
    h = D.components
    if not D.simply_laced or D.order_of_sigma > 2 * h or (2 * h) % D.order_of_sigma:
        return
    for lam, J, b, ib in bx_configs(cfg["_name"], cfg["config_height"]):
        Cset = set()
        for x in ib:
            Cset |= set(ch.c_set(D, lam, J, x)[0])
        for J0 in sigma_stable_subsets(D):
            if not J <= J0:
                continue
            for mu in ib:
                if not D.is_weakly_dominant(mu):
                    continue
                for th in D.positive_roots:
                    if D.in_Phi_J(th, J0) or D.sigma_root(th, h) != th:
                        continue
                    thv = D.coroot(th)
                    cands = [g for g in D.roots_J(J0, True)
                             if ch._pair(g, mu) == -1 and D.root_pairing(g, th) == -1]
                    for Dset in _orthogonal_subsets(D, cands):
                        tot = tuple(mu[i] + thv[i] + sum(D.coroot(g)[i] for g in Dset) for i in range(D.n))
                        if not D.preceq(tot, lam):
                            continue
                        rep.cases_run += 1
                        if not _lattice_conclusion(D, lam, J, J0, ib, th, Cset):
                            rep.fail({"lambda": _v(lam), "J": sorted(J), "J0": sorted(J0), "b": elem_json(b),
                                      "mu": _v(mu), "theta": _v(th), "D": [list(g) for g in Dset]})


def _lattice_conclusion(D, lam, J, J0, ib, th, Cset) -> bool:
    h = D.components
    for vt in D.positive_roots:
        if D.sigma_root(vt, h) != vt:
            continue
        if not D.in_coroot_lattice(tuple(a - c for a, c in zip(D.coroot(vt), D.coroot(th))), J0):
            continue
        if vt in Cset:
            return True
        for a in D.roots_J(J0):
            at = tuple(p + q for p, q in zip(a, vt))
            if at not in D.root_index:
                continue
            for x in ib:
                tgt = tuple(m + c - s for m, c, s in zip(x, D.coroot(a), ch.scv(D, a, h)))
                if ch.step_arrow(D, lam, J, x, tgt, a, h) and ch.step_arrow(D, lam, J, x, tgt, at, h):
                    return True
    return False


def _w_x(D, mu, J):
    return affine(D).omega_element(mu, J).w


def _J_minuscule_classes(D, bound):
    for k in range(D.n):
        for J in combinations(range(D.n), k):
            for mu in box(D, bound):
                if D.is_dominant(mu, J) and D.is_J_minuscule(mu, J):
                    yield frozenset(J), mu


def chk_central_prime(D, cfg, rep):
    for J, mu in _J_minuscule_classes(D, min(cfg["bound"], 2)):
        wx = _w_x(D, mu, J)
        WJ = D.subgroup(J)
        comps = _J_components(D, J)
        for beta in D.roots:
            if D.in_Phi_J(beta, J) or not D.is_J_antidominant(D.coroot(beta), J):
                continue
            rep.cases_run += 1
            top = ch._pair(D.act_root(wx, beta), mu)
            orbit = {D.act_root(w, beta) for w in WJ}
            bad = []
            if any(ch._pair(g, mu) > top for g in orbit):
                bad.append("a")
            level = [g for g in orbit if ch._pair(g, mu) == top]
            wb = D.act_root(wx, beta)
            if any(not all(v >= 0 for v in (p - q for p, q in zip(g, wb))) for g in level):
                bad.append("b")
            if ch._pair(beta, mu) == top:
                if wb != beta:
                    bad.append("d")
                for K in comps:
                    if any(D.coroot(beta)[j] for j in K) and any(mu[j] for j in K):
                        bad.append("c")
            if bad:
                rep.fail({"J": sorted(J), "mu_x": _v(mu), "beta": _v(beta), "problems": bad})


def _J_components(D, J):
    J = sorted(J)
    comps, seen = [], set()
    for j in J:
        if j in seen:
            continue
        comp, stack = {j}, [j]
        while stack:
            i = stack.pop()
            for k in J:
                if k not in comp and D.cartan[i][k]:
                    comp.add(k)
                    stack.append(k)
        seen |= comp
        comps.append(sorted(comp))
    return comps


def chk_minuscule_cited(D, cfg, rep):
    for J, mu in _J_minuscule_classes(D, min(cfg["bound"], 1)):
        wx = _w_x(D, mu, J)
        deltas = [d for d in box(D, 1) if D.is_J_antidominant(d, J) and D.is_J_minuscule(d, J)]
        for d in deltas:
            for dp in deltas:
                rep.cases_run += 1
                wdp = D.act(wx, dp)
                outs = [tuple(a + b for a, b in zip(mu, d)), tuple(a - b for a, b in zip(mu, wdp)),
                        tuple(a + b - c for a, b, c in zip(mu, d, wdp))]
                if not all(D.is_J_minuscule(v, J) for v in outs):
                    rep.fail({"J": sorted(J), "mu_x": _v(mu), "delta": _v(d), "delta'": _v(dp)})


def chk_central(D, cfg, rep):
    if D.components < 2:
        return
    for lam in window_lambdas(D, min(cfg["height"], 4)):
        for J, mu in _J_minuscule_classes(D, 1):
            if not D.preceq(mu, lam):
                continue
            WJ = D.subgroup(J)
            plus = [b for b in D.roots if D.preceq(D.minuscule_rep(_addv(mu, D.coroot(b)), J), lam)]
            minus = [g for g in D.roots if D.preceq(D.minuscule_rep(_subv(mu, D.coroot(g)), J), lam)]
            for a in D.roots:
                if D.in_Phi_J(a, J):
                    continue
                ca = D.component_of_root(a)
                for b in plus:
                    if D.component_of_root(b) == ca:
                        continue
                    if D.preceq(D.minuscule_rep(_subv(_addv(mu, D.coroot(b)), D.coroot(a)), J), lam):
                        continue
                    for g in minus:
                        if D.component_of_root(g) == ca:
                            continue
                        if D.preceq(D.minuscule_rep(_subv(_addv(mu, D.coroot(a)), D.coroot(g)), J), lam):
                            continue
                        rep.cases_run += 1
                        if any(ch._pair(D.act_root(w, a), mu) != 0 for w in WJ):
                            rep.fail({"lambda": _v(lam), "J": sorted(J), "mu_x": _v(mu), "alpha": _v(a),
                                      "beta": _v(b), "gamma": _v(g)})


def _addv(a, b):
    return tuple(x + y for x, y in zip(a, b))


def _subv(a, b):
    return tuple(x - y for x, y in zip(a, b))


def chk_central_pp(D, cfg, rep):
    h = D.components
    for lam, b, choice in levi_configs(cfg["_name"], cfg["config_height"]):
        J = frozenset(choice.J)
        for x in choice.ibar:
            wx = _w_x(D, x, J)
            for xp in choice.ibar:
                for a in D.roots:
                    if D.in_Phi_J(a, J):
                        continue
                    for r in range(1, 3 * h + 1):
                        if not ch.step_tail(D, lam, J, x, xp, a, r):
                            continue
                        rep.cases_run += 1
                        for i in range(1, r):
                            if i % h == 0 or (i - r) % h == 0:
                                continue
                            si = D.sigma_root(a, i)
                            if D.act_root(wx, si) != si or ch._pair(si, x) != 0:
                                rep.fail({"lambda": _v(lam), "J": sorted(J), "x": _v(x), "x'": _v(xp),
                                          "alpha": _v(a), "r": r, "i": i})
                                break


REGISTRY: dict[str, Callable] = {
    "gashi": chk_gashi, "minus": chk_minus, "con": chk_con, "contraction": chk_contraction,
    "key": chk_key, "weak": chk_weak, "orth": chk_orth, "graph": chk_graph, "conv": chk_conv,
    "conv_chain": chk_conv_chain, "convv": chk_convv, "minu": chk_minu, "diamond": chk_diamond,
    "exist": chk_exist, "ideal": chk_ideal, "dominant": chk_dominant, "min": chk_min,
    "fundamental_ac": chk_fundamental_ac, "gen": chk_gen, "mod": chk_mod, "lattice": chk_lattice,
    "k2_consistency": chk_k2_consistency,
}

OPTIONAL: dict[str, Callable] = {
    "central_prime": chk_central_prime, "minuscule_cited": chk_minuscule_cited,
    "central": chk_central, "central_pp": chk_central_pp,
}


def _normalize(config: dict | None) -> dict:
    cfg = dict(DEFAULTS)
    cfg["data"] = ["pgl3"]
    if config:
        unknown = set(config) - set(cfg)
        if unknown:
            raise DomainError("unknown config keys", {"keys": sorted(unknown)})
        cfg.update(config)
    cfg["data"] = list(cfg["data"])
    return cfg


def verify(lemma_id: str, config: dict | None = None) -> LemmaReport:
    fn = REGISTRY.get(lemma_id) or OPTIONAL.get(lemma_id)
    if fn is None:
        raise DomainError("unknown lemma id", {"lemma_id": lemma_id,
                                               "known": sorted(REGISTRY) + sorted(OPTIONAL)})
    cfg = _normalize(config)
    rep = LemmaReport(lemma_id, cfg)
    if lemma_id in OPTIONAL:
        rep.note = OPTIONAL_NOTE
    t0 = time.perf_counter()
    for name in cfg["data"]:
        D = named(name)
        before = rep.failure_count
        fn(D, dict(cfg, _name=name), rep)
        for f in rep.failures[before:]:
            f.setdefault("datum", name)
    rep.wall_time = time.perf_counter() - t0
    return rep


def verify_all(profile: str = "quick", seed: int | None = None,
               include_optional: bool = False) -> list[LemmaReport]:
    if profile not in PROFILES:
        raise DomainError("unknown profile", {"profile": profile})
    cfg = dict(PROFILES[profile])
    if seed is not None:
        cfg["seed"] = seed
    ids = list(REGISTRY) + (list(OPTIONAL) if include_optional else [])
    return [verify(k, cfg) for k in ids]


def reports_json(reports: Iterable[LemmaReport], timing: bool = False) -> str:
    return dumps({"reports": [r.to_json(timing) for r in reports]})


def summary_tsv(reports: Iterable[LemmaReport], timing: bool = False) -> str:
    head = ["lemma_id", "status", "cases_run", "failures"] + (["wall_time"] if timing else [])
    lines = ["\t".join(head)]
    for r in reports:
        row = [r.lemma_id, r.status, str(r.cases_run), str(r.failure_count)]
        if timing:
            row.append(f"{r.wall_time:.3f}")
        lines.append("\t".join(row))
    return "\n".join(lines) + "\n"
