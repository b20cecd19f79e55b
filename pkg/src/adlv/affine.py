"""The extended affine Weyl group Y x| W0 with its sigma-action.

An element ``ExtAffineWeylElem(mu, w)`` stands for ``t^mu w``.  Affine roots
are pairs ``(alpha, k)`` with the affine function ``v -> -<alpha, v> + k``;
they are positive when ``k >= 1`` or ``k == 0`` and ``alpha`` is negative.

>>> from adlv.rootdatum import TwistedRootDatum
>>> A = AffineWeyl(TwistedRootDatum("A1"))
>>> tau = A.elem((1,), A.D.simple_reflections[0])
>>> A.length(tau)
0
>>> A.newton(tau)[0]
(Fraction(0, 1),)
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

from .errors import DomainError, InternalConsistencyError
from .rootdatum import Cocharacter, Root, TwistedRootDatum, WeylElem, saturated_set


@dataclass(frozen=True)
class ExtAffineWeylElem:
    mu: Cocharacter
    w: WeylElem

    def __str__(self) -> str:
        return f"t{list(self.mu)};{self.w}"


AffineRoot = tuple[Root, int]


class AffineWeyl:
    """Operations on the extended affine Weyl group of a twisted datum."""

    def __init__(self, D: TwistedRootDatum):
        self.D = D
        n = D.n
        self.one = ExtAffineWeylElem((0,) * n, D.identity)
        simple = [ExtAffineWeylElem((0,) * n, s) for s in D.simple_reflections]
        aff = [ExtAffineWeylElem(D.coroot(th), D.reflection(th)) for th in D.highest_roots]
        self.simple_affine: tuple[ExtAffineWeylElem, ...] = tuple(simple + aff)
        self.affine_node_names = tuple([f"s{i + 1}" for i in range(n)] +
                                       (["s0"] if len(aff) == 1 else [f"s0.{c}" for c in range(len(aff))]))
        # sigma permutes the affine simple reflections
        perm = []
        for k, s in enumerate(self.simple_affine):
            perm.append(self.simple_affine.index(self.sigma(s)))
        self.sigma_on_Sa = tuple(perm)
        self._len_cache: dict = {}
        self._bruhat_cache: dict = {}
        self._straight_cache: dict = {}
        self.pi1 = D.pi1_group()
        self._omega: dict = {}
        for x in self.pi1.group.elements():
            mu = D.minuscule_rep(x, range(n))
            tau = self.omega_element(mu, range(n))
            if self.length(tau) != 0:
                raise InternalConsistencyError("Omega element of nonzero length")
            self._omega[self.pi1.normal(mu)] = tau
        for s in self.simple_affine:
            if self.length(s) != 1:
                raise InternalConsistencyError("simple affine reflection of length != 1")

    # ------------------------------------------------------------ group law
    def elem(self, mu: Sequence[int], w: WeylElem | None = None) -> ExtAffineWeylElem:
        return ExtAffineWeylElem(tuple(mu), self.D.identity if w is None else w)

    def mul(self, *xs: ExtAffineWeylElem) -> ExtAffineWeylElem:
        D = self.D
        mu, w = self.one.mu, self.one.w
        for x in xs:
            wm = D.act(w, x.mu)
            mu = tuple(a + b for a, b in zip(mu, wm))
            w = D.mul(w, x.w)
        return ExtAffineWeylElem(mu, w)

    def inv(self, x: ExtAffineWeylElem) -> ExtAffineWeylElem:
        wi = self.D.inverse(x.w)
        return ExtAffineWeylElem(tuple(-v for v in self.D.act(wi, x.mu)), wi)

    def sigma(self, x: ExtAffineWeylElem, power: int = 1) -> ExtAffineWeylElem:
        return ExtAffineWeylElem(self.D.sigma_coweight(x.mu, power), self.D.sigma_weyl(x.w, power))

    def act(self, x: ExtAffineWeylElem, v: Sequence) -> tuple:
        wv = self.D.act(x.w, v)
        return tuple(a + b for a, b in zip(x.mu, wv))

    def sigma_conj(self, y: ExtAffineWeylElem, x: ExtAffineWeylElem) -> ExtAffineWeylElem:
        """y x sigma(y)^-1."""
        return self.mul(y, x, self.inv(self.sigma(y)))

    # ---------------------------------------------------------- affine roots
    def act_affine_root(self, x: ExtAffineWeylElem, a: AffineRoot) -> AffineRoot:
        alpha, k = a
        wa = self.D.act_root(x.w, alpha)
        return wa, k + sum(p * q for p, q in zip(wa, x.mu))

    def sigma_affine_root(self, a: AffineRoot) -> AffineRoot:
        return self.D.sigma_root(a[0]), a[1]

    @staticmethod
    def is_positive_affine(a: AffineRoot) -> bool:
        alpha, k = a
        return k >= 1 or (k == 0 and any(v < 0 for v in alpha))

    # --------------------------------------------------------------- length
    def length(self, x: ExtAffineWeylElem) -> int:
        """Iwahori-Matsumoto formula."""
        key = (x.mu, x.w.idx)
        hit = self._len_cache.get(key)
        if hit is not None:
            return hit
        D = self.D
        winv = D._perms[D._inv[x.w.idx]]
        npos = D.npos
        tot = 0
        for r, alpha in enumerate(D.positive_roots):
            p = sum(a * m for a, m in zip(alpha, x.mu))
            tot += abs(p) if winv[r] < npos else abs(p - 1)
        if len(self._len_cache) < 2_000_000:
            self._len_cache[key] = tot
        return tot

    def length_J(self, x: ExtAffineWeylElem, J: Iterable[int]) -> int:
        """Length in the extended affine Weyl group of the Levi M_J (w must lie in W_J)."""
        D = self.D
        winv = D.inverse(x.w)
        tot = 0
        for alpha in D.roots_J(J, True):
            p = sum(a * m for a, m in zip(alpha, x.mu))
            tot += abs(p) if D.is_positive(D.act_root(winv, alpha)) else abs(p - 1)
        return tot

    def length_by_inversions(self, x: ExtAffineWeylElem) -> int:
        """|{a > 0 : x(a) < 0}| counted over the finitely many relevant levels."""
        D = self.D
        K = max((abs(sum(a * m for a, m in zip(alpha, x.mu))) for alpha in D.roots), default=0)
        tot = 0
        for alpha in D.roots:
            for k in range(0, K + 2):
                a = (alpha, k)
                if self.is_positive_affine(a) and not self.is_positive_affine(self.act_affine_root(x, a)):
                    tot += 1
        return tot

    # ---------------------------------------------------------------- Omega
    def omega_element(self, mu: Sequence[int], J: Iterable[int]) -> ExtAffineWeylElem:
        """t^mu u_mu w_J for a J-dominant J-minuscule mu (length 0 in the J-Levi)."""
        D = self.D
        J = sorted(set(J))
        stab = [j for j in J if mu[j] == 0]
        w = D.mul(D.longest(stab), D.longest(J))
        return ExtAffineWeylElem(tuple(mu), w)

    def pi1_class(self, x: ExtAffineWeylElem):
        return self.pi1.normal(x.mu)

    def omega_of_class(self, cls: Sequence[int]) -> ExtAffineWeylElem:
        return self._omega[self.pi1.normal(cls)]

    def omega_elements(self) -> list[ExtAffineWeylElem]:
        return [self._omega[k] for k in sorted(self._omega)]

    def omega_decompose(self, x: ExtAffineWeylElem) -> tuple[tuple[int, ...], ExtAffineWeylElem]:
        """(reduced word in S^a of u, tau) with x = u tau and tau in Omega."""
        tau = self.omega_of_class(x.mu)
        u = self.mul(x, self.inv(tau))
        word = []
        while self.length(u) > 0:
            for k, s in enumerate(self.simple_affine):
                su = self.mul(s, u)
                if self.length(su) < self.length(u):
                    word.append(k)
                    u = su
                    break
            else:
                raise InternalConsistencyError("no left descent found")
        if u != self.one:
            raise InternalConsistencyError("W^a part did not reduce to identity")
        return tuple(word), tau

    def from_affine_word(self, word: Iterable[int], tau: ExtAffineWeylElem | None = None) -> ExtAffineWeylElem:
        x = self.one
        for k in word:
            x = self.mul(x, self.simple_affine[k])
        return self.mul(x, tau) if tau is not None else x

    def word_string(self, word: Sequence[int]) -> str:
        return " ".join(self.affine_node_names[k] for k in word) or "e"

    # --------------------------------------------------------------- Bruhat
    def bruhat_leq(self, x: ExtAffineWeylElem, y: ExtAffineWeylElem) -> bool:
        if not self.pi1.equal(x.mu, y.mu):
            return False
        return self._bruhat(x, y)

    def _bruhat(self, x: ExtAffineWeylElem, y: ExtAffineWeylElem) -> bool:
        key = (x, y)
        hit = self._bruhat_cache.get(key)
        if hit is not None:
            return hit
        lx, ly = self.length(x), self.length(y)
        if lx > ly:
            res = False
        elif ly == 0:
            res = x == y
        else:
            for s in self.simple_affine:
                sy = self.mul(s, y)
                if self.length(sy) < ly:
                    break
            else:
                raise InternalConsistencyError("element of positive length without descent")
            sx = self.mul(s, x)
            res = self._bruhat(sx, sy) if self.length(sx) < lx else self._bruhat(x, sy)
        self._bruhat_cache[key] = res
        return res

    # --------------------------------------------------------------- Newton
    def newton(self, x: ExtAffineWeylElem) -> tuple[tuple[Fraction, ...], tuple[Fraction, ...]]:
        """(nu_x, dominant representative of nu_x)."""
        D = self.D
        N = D.order_of_sigma
        P = self.one
        k = 0
        cap = N * len(D.weyl_elements) + N
        while True:
            P = self.mul(P, self.sigma(x, k))
            k += 1
            if k % N == 0 and P.w == D.identity:
                nu = tuple(Fraction(v, k) for v in P.mu)
                return nu, tuple(Fraction(v) for v in D.dominant(nu))
            if k > cap:
                raise InternalConsistencyError("Newton point iteration did not close")

    def rho2(self, v: Sequence) -> Fraction:
        return Fraction(self.D.rho2_pairing(v))

    def is_straight(self, x: ExtAffineWeylElem) -> bool:
        return self.length(x) == self.rho2(self.newton(x)[1])

    # ------------------------------------------------- alcove / fundamental
    def _level_bound(self, x: ExtAffineWeylElem) -> int:
        return max((abs(sum(a * m for a, m in zip(al, x.mu))) for al in self.D.roots), default=0) + 1

    def _fixes(self, x: ExtAffineWeylElem, v: Sequence) -> bool:
        return tuple(self.D.act(x.w, self.D.sigma_coweight(v))) == tuple(v)

    def is_alcove_elem(self, x: ExtAffineWeylElem, v: Sequence) -> bool:
        if not self._fixes(x, v):
            return False
        K = self._level_bound(x)
        for alpha in self.D.roots:
            if sum(a * b for a, b in zip(alpha, v)) <= 0:
                continue
            for k in range(0, K + 1):
                a = (alpha, k)
                if self.is_positive_affine(a):
                    img = self.act_affine_root(x, self.sigma_affine_root(a))
                    if not self.is_positive_affine(img):
                        return False
        return True

    def is_fundamental(self, x: ExtAffineWeylElem, v: Sequence) -> bool:
        if not self.is_alcove_elem(x, v):
            return False
        D = self.D
        xinv = self.inv(x)
        K = self._level_bound(x)
        for alpha in D.roots:
            if sum(a * b for a, b in zip(alpha, v)) != 0:
                continue
            for k in range(0, K + 1):
                a = (alpha, k)
                if not self.is_positive_affine(a):
                    continue
                fwd = self.act_affine_root(x, self.sigma_affine_root(a))
                back = self.act_affine_root(xinv, a)
                back = (D.sigma_root(back[0], -1), back[1])
                if not (self.is_positive_affine(fwd) and self.is_positive_affine(back)):
                    return False
        return True

    # ------------------------------------------------------ sigma-conjugacy
    def conj_step(self, x: ExtAffineWeylElem, k: int) -> ExtAffineWeylElem:
        s = self.simple_affine[k]
        return self.mul(s, x, self.simple_affine[self.sigma_on_Sa[k]])

    def reduce_to_min(self, x: ExtAffineWeylElem, budget: int | None = None):
        """Reduce along ->_sigma to an element of minimal length in its class.

        Returns (element, trace) with trace a list of simple affine indices.
        Raises InternalConsistencyError if a plateau exceeds the budget.
        """
        if budget is None:
            budget = 10 * len(self.simple_affine)
        cur = x
        trace: list[int] = []
        while True:
            lc = self.length(cur)
            moved = False
            for k in range(len(self.simple_affine)):
                y = self.conj_step(cur, k)
                if self.length(y) < lc:
                    cur = y
                    trace.append(k)
                    moved = True
                    break
            if moved:
                continue
            # breadth-first search of the length plateau
            parent: dict = {cur: None}
            queue = deque([cur])
            found = None
            while queue and found is None:
                y = queue.popleft()
                for k in range(len(self.simple_affine)):
                    z = self.conj_step(y, k)
                    lz = self.length(z)
                    if lz < lc:
                        found = (y, k, z)
                        break
                    if lz == lc and z not in parent:
                        parent[z] = (y, k)
                        if len(parent) > budget:
                            raise InternalConsistencyError(
                                f"reduce_to_min plateau budget {budget} exhausted at length {lc}")
                        queue.append(z)
            if found is None:
                return cur, trace
            y, k, z = found
            path = []
            node = y
            while parent[node] is not None:
                node, step = parent[node]
                path.append(step)
            trace.extend(reversed(path))
            trace.append(k)
            cur = z

    def class_min_length(self, x: ExtAffineWeylElem, slack: int = 2, cap: int = 200_000) -> int:
        """Minimal length found in a bounded closure of the sigma-class of x.

        Explores all simple-reflection conjugations and Omega-conjugations with
        length at most l(x) + slack.  Used as an oracle in tests.
        """
        top = self.length(x) + slack
        gens = list(range(len(self.simple_affine)))
        omegas = self.omega_elements()
        seen = {x}
        queue = deque([x])
        best = self.length(x)
        while queue:
            y = queue.popleft()
            nbrs = [self.conj_step(y, k) for k in gens] + [self.sigma_conj(t, y) for t in omegas]
            for z in nbrs:
                if z in seen:
                    continue
                lz = self.length(z)
                if lz <= top:
                    seen.add(z)
                    best = min(best, lz)
                    queue.append(z)
            if len(seen) > cap:
                raise InternalConsistencyError("class closure too large")
        return best

    # ---------------------------------------------------------- enumeration
    def enumerate_up_to_length(self, L: int) -> list[ExtAffineWeylElem]:
        """All elements of length <= L, sorted by (length, mu, word)."""
        layer = list(self.omega_elements())
        seen = set(layer)
        out = list(layer)
        for ell in range(1, L + 1):
            nxt = []
            for y in layer:
                for s in self.simple_affine:
                    z = self.mul(s, y)
                    if z not in seen and self.length(z) == ell:
                        seen.add(z)
                        nxt.append(z)
            out.extend(nxt)
            layer = nxt
        return sorted(out, key=self.sort_key)

    def sort_key(self, x: ExtAffineWeylElem):
        return (self.length(x), x.mu, x.w.word)

    def straight_classes_below(self, lam: Sequence[int]) -> list[tuple[ExtAffineWeylElem, tuple, tuple]]:
        """Straight elements t^mu w with mu in the saturated set of lam.

        Returns (element, kappa, nu_bar) sorted by (kappa, nu_bar, sort key).
        """
        D = self.D
        lam = tuple(lam)
        if not D.is_dominant(lam):
            raise DomainError("lambda must be dominant", {"lambda": list(lam)})
        hit = self._straight_cache.get(lam)
        if hit is not None:
            return list(hit)
        out = []
        for mu in saturated_set(D, lam):
            # nu_bar is an average of conjugates of mu, so <2rho, nu_bar> <= <2rho, mu_bar>
            top = self.rho2(D.dominant(mu))
            for w in D.weyl_elements:
                x = ExtAffineWeylElem(mu, w)
                if self.length(x) > top:
                    continue
                nu, nubar = self.newton(x)
                if self.length(x) == self.rho2(nubar):
                    out.append((x, self.pi1.coinv_normal(mu), nubar))
        out.sort(key=lambda t: (t[1], t[2], self.sort_key(t[0])))
        self._straight_cache[lam] = tuple(out)
        return out

    # ---------------------------------------------------------- superbasic
    def is_superbasic_omega(self, tau: ExtAffineWeylElem, J: Iterable[int] | None = None) -> bool:
        """Orbit test for tau in Omega_J on the affine Dynkin diagram of S_J^a."""
        J = sorted(range(self.D.n)) if J is None else sorted(set(J))
        if self.length_J(tau, J) != 0:
            raise DomainError("superbasic test needs a length-zero element", {"element": str(tau)})
        nodes = self.affine_simple_J(J)
        if not nodes:
            return True
        index = {s: k for k, s in enumerate(nodes)}
        tinv = self.inv(tau)
        act = []
        for s in nodes:
            img = self.mul(tau, self.sigma(s), tinv)
            if img not in index:
                raise InternalConsistencyError("tau sigma does not normalize S_J^a")
            act.append(index[img])
        # connected components: s, t adjacent iff they do not commute
        m = len(nodes)
        adj = [[i != j and self.mul(nodes[i], nodes[j]) != self.mul(nodes[j], nodes[i]) for j in range(m)]
               for i in range(m)]
        comp = list(range(m))

        def find(i):
            while comp[i] != i:
                comp[i] = comp[comp[i]]
                i = comp[i]
            return i

        for i in range(m):
            for j in range(m):
                if adj[i][j]:
                    comp[find(i)] = find(j)
        comp_nodes: dict[int, set[int]] = {}
        for i in range(m):
            comp_nodes.setdefault(find(i), set()).add(i)
        seen: set[int] = set()
        for i in range(m):
            if i in seen:
                continue
            orb = {i}
            j = act[i]
            while j != i:
                orb.add(j)
                j = act[j]
            seen |= orb
            union = set()
            for k in orb:
                union |= comp_nodes[find(k)]
            if union != orb:
                return False
        return True

    def affine_simple_J(self, J: Sequence[int]) -> list[ExtAffineWeylElem]:
        """S_J^a: simple reflections of J plus one affine reflection per component of Phi_J."""
        D = self.D
        J = sorted(set(J))
        comps: list[list[int]] = []
        left = set(J)
        while left:
            start = min(left)
            comp = {start}
            stack = [start]
            while stack:
                i = stack.pop()
                for j in list(left):
                    if j not in comp and D.cartan[i][j] != 0:
                        comp.add(j)
                        stack.append(j)
            left -= comp
            comps.append(sorted(comp))
        out = [ExtAffineWeylElem((0,) * D.n, D.simple_reflections[j]) for j in J]
        for comp in comps:
            th = max(D.roots_J(comp, True), key=sum)
            out.append(ExtAffineWeylElem(D.coroot(th), D.reflection(th)))
        return out


_CACHE: dict[int, AffineWeyl] = {}


def affine(D: TwistedRootDatum) -> AffineWeyl:
    """Shared AffineWeyl instance for a datum."""
    A = getattr(D, "_affine", None)
    if A is None:
        A = AffineWeyl(D)
        D._affine = A
    return A
