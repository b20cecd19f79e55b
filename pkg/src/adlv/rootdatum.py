"""Adjoint root data with a diagram automorphism.

Conventions
-----------
* Coweights (elements of Y) are tuples in fundamental-coweight coordinates,
  so ``mu[i] == <alpha_i, mu>``.
* Roots are tuples of simple-root coefficients, so
  ``<beta, mu> = sum(beta[i] * mu[i])``.
* ``cartan[i][j] == <alpha_i, alpha_j^vee>``; the coroot ``alpha_j^vee``
  has coweight coordinates given by column ``j``.
* Simple roots are numbered per component following Bourbaki, component
  ``c`` owning indices ``c*r, ..., c*r + r - 1``.

>>> D = TwistedRootDatum("A2")
>>> D.dominant_rep((2, -1))[0]
(1, 1)
>>> len(D.roots)
6
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import product
from typing import Iterable, Sequence

from .errors import DomainError, InternalConsistencyError
from .lattice import FGAbelianGroup, GroupHom, Lattice, mat_vec

Root = tuple[int, ...]
Cocharacter = tuple[int, ...]
RationalCovector = tuple[Fraction, ...]


@dataclass(frozen=True)
class WeylElem:
    """An element of W0, identified by its index in the datum's enumeration."""

    idx: int
    word: tuple[int, ...] = field(compare=False)

    def __len__(self) -> int:
        return len(self.word)

    def __str__(self) -> str:
        return "e" if not self.word else " ".join(f"s{i + 1}" for i in self.word)


def cartan_matrix(label: str) -> list[list[int]]:
    """Cartan matrix ``C[i][j] = <alpha_i, alpha_j^vee>`` in Bourbaki numbering."""
    kind, rank = label[0].upper(), int(label[1:])
    edges: list[tuple[int, int, int]] = []  # (long, short, ratio); ratio 1 if simply laced
    if kind == "A" and rank >= 1:
        edges = [(i, i + 1, 1) for i in range(rank - 1)]
    elif kind == "B" and rank >= 2:
        edges = [(i, i + 1, 1) for i in range(rank - 2)] + [(rank - 2, rank - 1, 2)]
    elif kind == "C" and rank >= 2:
        edges = [(i, i + 1, 1) for i in range(rank - 2)] + [(rank - 1, rank - 2, 2)]
    elif kind == "D" and rank >= 4:
        edges = [(i, i + 1, 1) for i in range(rank - 2)] + [(rank - 3, rank - 1, 1)]
    elif kind == "E" and rank in (6, 7, 8):
        edges = [(0, 2, 1), (1, 3, 1)] + [(i, i + 1, 1) for i in range(2, rank - 1)]
    elif kind == "F" and rank == 4:
        edges = [(0, 1, 1), (1, 2, 2), (2, 3, 1)]
    elif kind == "G" and rank == 2:
        edges = [(1, 0, 3)]
    else:
        raise DomainError(f"unsupported Cartan type {label!r}")
    C = [[2 if i == j else 0 for j in range(rank)] for i in range(rank)]
    for lng, sht, k in edges:
        C[lng][sht] = -k
        C[sht][lng] = -1
    return C


def parse_cycles(text: str | Sequence, n: int) -> tuple[int, ...]:
    """Permutation of range(n) from cycle notation like "(0 1)(2 3)" or [[0, 1]]."""
    perm = list(range(n))
    if isinstance(text, str):
        cycles = []
        body = text.strip()
        if body in ("", "e", "id", "()"):
            return tuple(perm)
        for chunk in body.replace(")", ")|").split("|"):
            chunk = chunk.strip()
            if not chunk:
                continue
            if not (chunk.startswith("(") and chunk.endswith(")")):
                raise DomainError(f"bad cycle notation {text!r}")
            cycles.append([int(t) for t in chunk[1:-1].replace(",", " ").split()])
    else:
        cycles = [list(c) for c in text]
    seen: set[int] = set()
    for cyc in cycles:
        for k, a in enumerate(cyc):
            if not 0 <= a < n or a in seen:
                raise DomainError(f"bad cycle notation {text!r}")
            seen.add(a)
            perm[a] = cyc[(k + 1) % len(cyc)]
    return tuple(perm)


def _det(M: list[list[Fraction]]) -> Fraction:
    M = [row[:] for row in M]
    n = len(M)
    det = Fraction(1)
    for c in range(n):
        p = next((r for r in range(c, n) if M[r][c] != 0), None)
        if p is None:
            return Fraction(0)
        if p != c:
            M[c], M[p] = M[p], M[c]
            det = -det
        det *= M[c][c]
        for r in range(c + 1, n):
            f = M[r][c] / M[c][c]
            if f:
                M[r] = [a - f * b for a, b in zip(M[r], M[c])]
    return det


def _inverse(M: list[list[int]]) -> list[list[Fraction]]:
    n = len(M)
    A = [[Fraction(v) for v in row] + [Fraction(int(i == j)) for j in range(n)] for i, row in enumerate(M)]
    for c in range(n):
        p = next(r for r in range(c, n) if A[r][c] != 0)
        A[c], A[p] = A[p], A[c]
        piv = A[c][c]
        A[c] = [v / piv for v in A[c]]
        for r in range(n):
            if r != c and A[r][c] != 0:
                f = A[r][c]
                A[r] = [a - f * b for a, b in zip(A[r], A[c])]
    return [row[n:] for row in A]


class TwistedRootDatum:
    """Adjoint root datum (Y = coweight lattice) with a diagram automorphism sigma."""

    def __init__(self, cartan_type: str, components: int = 1, sigma: Sequence[int] | str | None = None,
                 require_transitive: bool = True):
        if components < 1:
            raise DomainError("components must be positive")
        self.label = cartan_type.upper()
        self.components = components
        block = cartan_matrix(self.label)
        self.rank_per_component = r = len(block)
        n = self.n = r * components
        C = [[0] * n for _ in range(n)]
        for c in range(components):
            for i in range(r):
                for j in range(r):
                    C[c * r + i][c * r + j] = block[i][j]
        self.cartan: tuple[tuple[int, ...], ...] = tuple(tuple(row) for row in C)
        if sigma is None:
            perm = tuple(range(n))
        elif isinstance(sigma, str):
            perm = parse_cycles(sigma, n)
        else:
            perm = tuple(int(v) for v in sigma)
        if sorted(perm) != list(range(n)):
            raise DomainError("sigma is not a permutation of the simple roots")
        for i in range(n):
            for j in range(n):
                if C[perm[i]][perm[j]] != C[i][j]:
                    raise DomainError("sigma does not preserve the Cartan matrix")
        self.sigma = perm
        self.sigma_inv = tuple(perm.index(i) for i in range(n))
        N, q = 1, perm
        while q != tuple(range(n)):
            q = tuple(perm[v] for v in q)
            N += 1
        self.order_of_sigma = N
        self.component_of = tuple(i // r for i in range(n))
        comp_orbit = {0}
        frontier = [0]
        while frontier:
            c = frontier.pop()
            d = self.component_of[perm[c * r]]
            if d not in comp_orbit:
                comp_orbit.add(d)
                frontier.append(d)
        self.sigma_transitive = len(comp_orbit) == components
        if require_transitive and not self.sigma_transitive:
            raise DomainError("sigma does not act transitively on the components")
        self._rootsJ_cache: dict = {}
        self._build_roots()
        self._build_weyl()
        self._build_lengths()
        self._cinv = _inverse(C)
        det = _det([[Fraction(v) for v in row] for row in C])
        self._det = int(det)
        self._adj = [[int(v * det) for v in row] for row in self._cinv]
        self._dom_cache: dict = {}
        self._minus_cache: dict = {}
        self._long_cache: dict = {}
        self._pi1_cache: dict = {}

    # ------------------------------------------------------------------ roots
    def _build_roots(self) -> None:
        n, C = self.n, self.cartan
        simple = [tuple(int(i == k) for k in range(n)) for i in range(n)]
        coroot = {s: tuple(C[k][i] for k in range(n)) for i, s in enumerate(simple)}
        frontier = list(simple)
        while frontier:
            nxt = []
            for beta in frontier:
                bv = coroot[beta]
                for i in range(n):
                    p = sum(beta[k] * C[k][i] for k in range(n))  # <beta, alpha_i^vee>
                    q = bv[i]  # <alpha_i, beta^vee>
                    new = tuple(beta[k] - p * (k == i) for k in range(n))
                    newv = tuple(bv[k] - q * C[k][i] for k in range(n))
                    if new not in coroot:
                        coroot[new] = newv
                        nxt.append(new)
            frontier = nxt
        pos = sorted((b for b in coroot if all(v >= 0 for v in b)), key=lambda b: (sum(b), tuple(-v for v in b)))
        neg = [tuple(-v for v in b) for b in pos]
        for b in coroot:
            if not (all(v >= 0 for v in b) or all(v <= 0 for v in b)):
                raise InternalConsistencyError("root with mixed signs")
        self.positive_roots: tuple[Root, ...] = tuple(pos)
        self.roots: tuple[Root, ...] = tuple(pos + neg)
        self.root_index = {b: k for k, b in enumerate(self.roots)}
        self.simple_roots: tuple[Root, ...] = tuple(simple)
        self._coroot = coroot
        self.npos = len(pos)
        # root lengths through the symmetrizer (alpha_i, alpha_j) = C[i][j] e_j
        e = [Fraction(0)] * n
        for c in range(self.components):
            base = c * self.rank_per_component
            e[base] = Fraction(1)
            stack = [base]
            while stack:
                i = stack.pop()
                for j in range(base, base + self.rank_per_component):
                    if C[i][j] and e[j] == 0 and i != j:
                        e[j] = C[j][i] * e[i] / C[i][j]
                        stack.append(j)
        self._symm = e
        norms = {}
        for b in self.roots:
            norms[b] = sum(b[i] * b[j] * C[i][j] * e[j] for i in range(n) for j in range(n))
        self._norm = norms
        self._long = {}
        for b in self.roots:
            comp = self.component_of[next(i for i, v in enumerate(b) if v)]
            mx = max(norms[g] for g in self.roots if self.component_of[next(i for i, v in enumerate(g) if v)] == comp)
            self._long[b] = norms[b] == mx
        self.simply_laced = all(self._long.values())
        self.highest_roots = []
        for c in range(self.components):
            comp_pos = [b for b in pos if any(b[c * self.rank_per_component + k] for k in range(self.rank_per_component))]
            self.highest_roots.append(max(comp_pos, key=sum))
        self.highest_roots = tuple(self.highest_roots)
        self._root_sigma = tuple(self.root_index[self.sigma_root(b)] for b in self.roots)

    def check_root(self, alpha: Root) -> int:
        k = self.root_index.get(tuple(alpha))
        if k is None:
            raise DomainError(f"{tuple(alpha)} is not a root", {"root": list(alpha)})
        return k

    def coroot(self, alpha: Root) -> Cocharacter:
        """Coroot of alpha in coweight coordinates."""
        self.check_root(alpha)
        return self._coroot[tuple(alpha)]

    def coroot_coeffs(self, v: Sequence) -> tuple:
        """Coefficients of v in the simple-coroot basis (exact)."""
        out = []
        for row in self._adj:
            num = sum(a * b for a, b in zip(row, v))
            q = Fraction(num, self._det) if not isinstance(num, Fraction) else num / self._det
            out.append(int(q) if q.denominator == 1 else q)
        return tuple(out)

    def is_long(self, alpha: Root) -> bool:
        self.check_root(alpha)
        return self._long[tuple(alpha)]

    def is_positive(self, alpha: Root) -> bool:
        return any(v > 0 for v in alpha)

    def neg(self, alpha: Root) -> Root:
        return tuple(-v for v in alpha)

    def pairing(self, alpha: Root, mu: Sequence) -> int | Fraction:
        """<alpha, mu>."""
        self.check_root(alpha)
        return sum(a * m for a, m in zip(alpha, mu))

    def root_pairing(self, beta: Root, gamma: Root):
        """<beta, gamma^vee>."""
        return sum(a * m for a, m in zip(beta, self.coroot(gamma)))

    def roots_J(self, J: Iterable[int], positive: bool = False) -> list[Root]:
        Jset = frozenset(J)
        key = (Jset, positive)
        hit = self._rootsJ_cache.get(key)
        if hit is None:
            src = self.positive_roots if positive else self.roots
            hit = [b for b in src if all(v == 0 or i in Jset for i, v in enumerate(b))]
            self._rootsJ_cache[key] = hit
        return list(hit)

    def in_Phi_J(self, alpha: Root, J: Iterable[int]) -> bool:
        Jset = set(J)
        return all(v == 0 or i in Jset for i, v in enumerate(alpha))

    def component_of_root(self, alpha: Root) -> int:
        return self.component_of[next(i for i, v in enumerate(alpha) if v)]

    def rho2_pairing(self, v: Sequence):
        """<2 rho, v>."""
        return sum(sum(b[i] * v[i] for i in range(self.n)) for b in self.positive_roots)

    # ------------------------------------------------------------ Weyl group
    def _build_weyl(self) -> None:
        n, C = self.n, self.cartan
        R = len(self.roots)
        simple_perm = []
        simple_mat = []
        for j in range(n):
            perm = []
            for b in self.roots:
                p = sum(b[k] * C[k][j] for k in range(n))
                perm.append(self.root_index[tuple(b[k] - p * (k == j) for k in range(n))])
            simple_perm.append(tuple(perm))
            simple_mat.append(tuple(tuple(int(i == k) - int(k == j) * C[i][j] for k in range(n)) for i in range(n)))
        self._simple_perm = simple_perm
        simple_idx = list(range(n))  # simple roots sit at positions 0..n-1 among positives
        for i in range(n):
            if self.roots[i] != self.simple_roots[i]:
                raise InternalConsistencyError("simple roots not first in order")
        ident = tuple(range(R))
        identity_mat = tuple(tuple(int(i == k) for k in range(n)) for i in range(n))
        perms = [ident]
        mats = [identity_mat]
        words: list[tuple[int, ...]] = [()]
        lookup = {tuple(ident[s] for s in simple_idx): 0}
        frontier = [0]
        while frontier:
            nxt = []
            for w in frontier:
                for j in range(n):
                    p = perms[w]
                    q = tuple(p[x] for x in simple_perm[j])
                    key = tuple(q[s] for s in simple_idx)
                    if key not in lookup:
                        lookup[key] = len(perms)
                        perms.append(q)
                        m = mats[w]
                        sm = simple_mat[j]
                        mats.append(tuple(tuple(sum(m[i][k] * sm[k][l] for k in range(n)) for l in range(n))
                                          for i in range(n)))
                        words.append(words[w] + (j,))
                        nxt.append(lookup[key])
            frontier = nxt
        self._perms = perms
        self._mats = mats
        self._wlookup = lookup
        self.weyl_elements: tuple[WeylElem, ...] = tuple(WeylElem(i, words[i]) for i in range(len(perms)))
        self.identity = self.weyl_elements[0]
        self.simple_reflections = tuple(self.weyl_elements[lookup[tuple(simple_perm[j][s] for s in simple_idx)]]
                                        for j in range(n))
        self._mul_cache: dict[tuple[int, int], int] = {}
        self._inv = []
        for p in perms:
            inv = [0] * R
            for a, b in enumerate(p):
                inv[b] = a
            self._inv.append(lookup[tuple(inv[s] for s in simple_idx)])
        self._sigma_w = []
        for w in self.weyl_elements:
            self._sigma_w.append(self.from_word([self.sigma[i] for i in w.word]).idx)
        self._refl = {}
        for k, b in enumerate(self.roots):
            bv = self._coroot[b]
            perm = []
            for g in self.roots:
                p = sum(g[i] * bv[i] for i in range(n))
                perm.append(self.root_index[tuple(g[i] - p * b[i] for i in range(n))])
            self._refl[b] = self.weyl_elements[lookup[tuple(perm[s] for s in simple_idx)]]

    def _build_lengths(self) -> None:
        npos = self.npos
        self._wlen = [sum(1 for r in range(npos) if p[r] >= npos) for p in self._perms]
        for w in self.weyl_elements:
            if self._wlen[w.idx] != len(w.word):
                raise InternalConsistencyError("non-reduced word in Weyl enumeration")

    def weyl_length(self, w: WeylElem) -> int:
        return self._wlen[w.idx]

    def from_word(self, word: Iterable[int]) -> WeylElem:
        w = 0
        for j in word:
            if not 0 <= j < self.n:
                raise DomainError(f"simple reflection index {j} out of range")
            w = self._mul_idx(w, self.simple_reflections[j].idx)
        return self.weyl_elements[w]

    def _mul_idx(self, a: int, b: int) -> int:
        key = (a, b)
        r = self._mul_cache.get(key)
        if r is None:
            pa, pb = self._perms[a], self._perms[b]
            r = self._wlookup[tuple(pa[pb[s]] for s in range(self.n))]
            self._mul_cache[key] = r
        return r

    def mul(self, *ws: WeylElem) -> WeylElem:
        out = 0
        for w in ws:
            out = self._mul_idx(out, w.idx)
        return self.weyl_elements[out]

    def inverse(self, w: WeylElem) -> WeylElem:
        return self.weyl_elements[self._inv[w.idx]]

    def act(self, w: WeylElem, mu: Sequence) -> tuple:
        """w(mu) for mu in Y or Y_Q."""
        m = self._mats[w.idx]
        return tuple(sum(row[k] * mu[k] for k in range(self.n)) for row in m)

    def act_root(self, w: WeylElem, alpha: Root) -> Root:
        return self.roots[self._perms[w.idx][self.check_root(alpha)]]

    def reflection(self, alpha: Root) -> WeylElem:
        self.check_root(alpha)
        return self._refl[tuple(alpha)]

    def reflect(self, alpha: Root, mu: Sequence) -> tuple:
        """s_alpha(mu) = mu - <alpha, mu> alpha^vee."""
        p = self.pairing(alpha, mu)
        cv = self._coroot[tuple(alpha)]
        return tuple(m - p * c for m, c in zip(mu, cv))

    def weyl_matrix(self, w: WeylElem):
        return self._mats[w.idx]

    def subgroup(self, J: Iterable[int]) -> list[WeylElem]:
        """All elements of the parabolic subgroup W_J."""
        J = sorted(set(J))
        seen = {0}
        frontier = [0]
        while frontier:
            nxt = []
            for w in frontier:
                for j in J:
                    v = self._mul_idx(w, self.simple_reflections[j].idx)
                    if v not in seen:
                        seen.add(v)
                        nxt.append(v)
            frontier = nxt
        return [self.weyl_elements[i] for i in sorted(seen, key=lambda i: (self._wlen[i], i))]

    def longest(self, J: Iterable[int]) -> WeylElem:
        """Longest element of W_J."""
        key = frozenset(J)
        if key in self._long_cache:
            return self._long_cache[key]
        w = 0
        while True:
            for j in sorted(key):
                if self._perms[w][j] < self.npos:  # w(alpha_j) > 0
                    w = self._mul_idx(w, self.simple_reflections[j].idx)
                    break
            else:
                break
        self._long_cache[key] = self.weyl_elements[w]
        return self.weyl_elements[w]

    # ----------------------------------------------------------------- sigma
    def sigma_coweight(self, mu: Sequence, power: int = 1) -> tuple:
        out = tuple(mu)
        for _ in range(power % self.order_of_sigma):
            out = tuple(out[self.sigma_inv[k]] for k in range(self.n))
        return out

    def sigma_root(self, alpha: Root, power: int = 1) -> Root:
        out = tuple(alpha)
        for _ in range(power % self.order_of_sigma):
            out = tuple(out[self.sigma_inv[k]] for k in range(self.n))
        return out

    def sigma_weyl(self, w: WeylElem, power: int = 1) -> WeylElem:
        i = w.idx
        for _ in range(power % self.order_of_sigma):
            i = self._sigma_w[i]
        return self.weyl_elements[i]

    def sigma_apply(self, obj, power: int = 1):
        if isinstance(obj, WeylElem):
            return self.sigma_weyl(obj, power)
        return self.sigma_coweight(obj, power)

    def sigma_stable(self, J: Iterable[int]) -> bool:
        J = set(J)
        return {self.sigma[j] for j in J} == J

    def orbit(self, alpha: Root) -> list[Root]:
        """The sigma-orbit of a root, starting at alpha."""
        out = [tuple(alpha)]
        while True:
            nxt = self.sigma_root(out[-1])
            if nxt == out[0]:
                return out
            out.append(nxt)

    def y_alpha(self, alpha: Root) -> Cocharacter:
        """Sum of the coroots over the sigma-orbit of alpha."""
        tot = [0] * self.n
        for b in self.orbit(alpha):
            for k, v in enumerate(self._coroot[b]):
                tot[k] += v
        return tuple(tot)

    def diamond(self, lam: Sequence) -> RationalCovector:
        """Average of the sigma-conjugates of lam."""
        N = self.order_of_sigma
        tot = [Fraction(0)] * self.n
        v = tuple(lam)
        for _ in range(N):
            tot = [a + b for a, b in zip(tot, v)]
            v = self.sigma_coweight(v)
        return tuple(t / N for t in tot)

    # ------------------------------------------------------------ dominance
    def dominant_rep(self, mu: Sequence, J: Iterable[int] | None = None) -> tuple[tuple, WeylElem]:
        """(mu_bar, w) with w in W_J of minimal length and w(mu) J-dominant."""
        Jkey = frozenset(range(self.n)) if J is None else frozenset(J)
        mu = tuple(mu)
        key = (mu, Jkey)
        hit = self._dom_cache.get(key)
        if hit is not None:
            return hit
        order = sorted(Jkey)
        cur = mu
        w = 0
        C = self.cartan
        while True:
            for j in order:
                if cur[j] < 0:
                    cj = cur[j]
                    cur = tuple(cur[i] - cj * C[i][j] for i in range(self.n))
                    w = self._mul_idx(self.simple_reflections[j].idx, w)
                    break
            else:
                break
        res = (cur, self.weyl_elements[w])
        # int and Fraction tuples hash alike; only cache integral input
        if len(self._dom_cache) < 2_000_000 and all(type(v) is int for v in mu):
            self._dom_cache[key] = res
        return res

    def dominant(self, mu: Sequence, J: Iterable[int] | None = None) -> tuple:
        return self.dominant_rep(mu, J)[0]

    def is_dominant(self, mu: Sequence, J: Iterable[int] | None = None) -> bool:
        idx = range(self.n) if J is None else J
        return all(mu[j] >= 0 for j in idx)

    def leq(self, mu: Sequence, lam: Sequence, J: Iterable[int] | None = None) -> bool:
        """lam - mu is a nonnegative integer combination of simple coroots in J."""
        d = [a - b for a, b in zip(lam, mu)]
        Jset = None if J is None else set(J)
        for i, row in enumerate(self._adj):
            num = sum(a * b for a, b in zip(row, d))
            if Jset is not None and i not in Jset:
                if num != 0:
                    return False
                continue
            if num < 0 or num % self._det:
                return False
        return True

    def preceq(self, mu: Sequence, lam: Sequence, J: Iterable[int] | None = None) -> bool:
        return self.leq(self.dominant(mu, J), self.dominant(lam, J), J)

    def prec(self, mu: Sequence, lam: Sequence) -> bool:
        """Strict version of preceq on dominant representatives."""
        a, b = self.dominant(mu), self.dominant(lam)
        return a != b and self.leq(a, b)

    def order_check(self, mu: Sequence, lam: Sequence, J: Iterable[int] | None = None) -> dict[str, bool]:
        return {"leq_J": self.leq(mu, lam, J), "preceq_J": self.preceq(mu, lam, J)}

    def is_weakly_dominant(self, mu: Sequence) -> bool:
        return all(sum(b[i] * mu[i] for i in range(self.n)) >= -1 for b in self.positive_roots)

    def is_J_minuscule(self, mu: Sequence, J: Iterable[int]) -> bool:
        return all(abs(sum(b[i] * mu[i] for i in range(self.n))) <= 1 for b in self.roots_J(J, True))

    def is_J_antidominant(self, mu: Sequence, J: Iterable[int]) -> bool:
        return all(mu[j] <= 0 for j in J)

    def minuscule_rep(self, mu: Sequence, J: Iterable[int]) -> Cocharacter:
        """The J-dominant J-minuscule representative of mu modulo Z Phi_J^vee."""
        Jkey = frozenset(J)
        key = (tuple(mu), Jkey)
        hit = self._minus_cache.get(key)
        if hit is not None:
            return hit
        posJ = self.roots_J(Jkey, True)
        cur = self.dominant(mu, Jkey)
        steps = 0
        while True:
            big = next((b for b in posJ if sum(b[i] * cur[i] for i in range(self.n)) >= 2), None)
            if big is None:
                break
            cv = self._coroot[big]
            cur = self.dominant(tuple(a - c for a, c in zip(cur, cv)), Jkey)
            steps += 1
            if steps > 10_000:
                raise InternalConsistencyError("minuscule reduction did not terminate")
        if len(self._minus_cache) < 2_000_000:
            self._minus_cache[key] = cur
        return cur

    def in_coroot_lattice(self, v: Sequence, J: Iterable[int] | None = None) -> bool:
        """v lies in Z Phi_J^vee."""
        c = self.coroot_coeffs(v)
        Jset = set(range(self.n)) if J is None else set(J)
        return all(isinstance(x, int) and (x == 0 or i in Jset) for i, x in enumerate(c))

    # ------------------------------------------------------------------- pi1
    def coroot_lattice(self, J: Iterable[int] | None = None) -> Lattice:
        Jset = range(self.n) if J is None else J
        return Lattice.from_generators([[self.cartan[i][j] for i in range(self.n)] for j in Jset], self.n)

    def sigma_matrix(self, power: int = 1) -> list[list[int]]:
        cols = [self.sigma_coweight(tuple(int(i == k) for i in range(self.n)), power) for k in range(self.n)]
        return [[cols[k][i] for k in range(self.n)] for i in range(self.n)]

    def pi1_group(self, J: Iterable[int] | None = None) -> "Pi1":
        Jkey = frozenset(range(self.n)) if J is None else frozenset(J)
        if not self.sigma_stable(Jkey):
            raise DomainError("sigma(J) != J", {"J": sorted(Jkey)})
        if Jkey not in self._pi1_cache:
            self._pi1_cache[Jkey] = Pi1(self, Jkey)
        return self._pi1_cache[Jkey]

    def describe(self) -> dict:
        return {"type": self.label, "components": self.components,
                "sigma": cycle_string(self.sigma)}

    def __repr__(self) -> str:
        return f"TwistedRootDatum({self.label!r}, components={self.components}, sigma={cycle_string(self.sigma)!r})"


def cycle_string(perm: Sequence[int]) -> str:
    seen: set[int] = set()
    parts = []
    for a in range(len(perm)):
        if a in seen or perm[a] == a:
            continue
        cyc = [a]
        seen.add(a)
        b = perm[a]
        while b != a:
            cyc.append(b)
            seen.add(b)
            b = perm[b]
        parts.append("(" + " ".join(map(str, cyc)) + ")")
    return "".join(parts) or "()"


class Pi1:
    """pi_1(M_J) = Y / Z Phi_J^vee with its sigma-action."""

    def __init__(self, datum: TwistedRootDatum, J: frozenset[int]):
        self.datum = datum
        self.J = J
        n = datum.n
        self.group = FGAbelianGroup(n, datum.coroot_lattice(J))
        self.sigma_matrix = datum.sigma_matrix()
        self.sigma = GroupHom(self.group, self.group, self.sigma_matrix)
        self.one_minus_sigma = [[int(i == k) - self.sigma_matrix[i][k] for k in range(n)] for i in range(n)]
        self.sigma_minus_one = [[-v for v in row] for row in self.one_minus_sigma]
        self.image_one_minus_sigma = (
            Lattice.from_generators([[self.one_minus_sigma[i][k] for i in range(n)] for k in range(n)], n)
            + self.group.relations)
        self.coinvariants = FGAbelianGroup(n, self.image_one_minus_sigma)
        # preimage in Y of the sigma-fixed subgroup
        self.invariants_lattice = self.group.relations.preimage(self.one_minus_sigma, n)

    def normal(self, mu: Sequence[int]):
        return self.group.normal(mu)

    def equal(self, a: Sequence[int], b: Sequence[int]) -> bool:
        return self.group.equal(a, b)

    def coinv_equal(self, a: Sequence[int], b: Sequence[int]) -> bool:
        return self.coinvariants.equal(a, b)

    def coinv_normal(self, a: Sequence[int]):
        return self.coinvariants.normal(a)

    def is_fixed(self, a: Sequence[int]) -> bool:
        return self.invariants_lattice.contains(a)

    def fixed_elements(self) -> list[tuple[int, ...]]:
        """Canonical representatives of pi_1^sigma (finite case only)."""
        return self.group.subgroup_elements(self.invariants_lattice)

    def solve_sigma_minus_one(self, c: Sequence[int]):
        """Some x with (sigma - 1) x = c in the group, or None."""
        hom = GroupHom(self.group, self.group, self.sigma_minus_one)
        return hom.solve(self.group.normal(c))

    def invariant_factors(self) -> list[int]:
        return self.group.invariant_factors()


def dominant_below(D: TwistedRootDatum, lam: Sequence[int]) -> list[Cocharacter]:
    """All dominant xi with xi <= lam (lam dominant), sorted."""
    cap = D.coroot_coeffs(lam)
    ranges = []
    for v in cap:
        ranges.append(range(0, int(v // 1) + 1 if v >= 0 else 0))
    out = []
    C = D.cartan
    for c in product(*ranges):
        xi = tuple(lam[i] - sum(C[i][j] * c[j] for j in range(D.n)) for i in range(D.n))
        if all(v >= 0 for v in xi):
            out.append(xi)
    return sorted(out)


def weyl_orbit(D: TwistedRootDatum, mu: Sequence[int]) -> list[Cocharacter]:
    seen = {tuple(mu)}
    frontier = [tuple(mu)]
    C = D.cartan
    while frontier:
        nxt = []
        for v in frontier:
            for j in range(D.n):
                if v[j]:
                    w = tuple(v[i] - v[j] * C[i][j] for i in range(D.n))
                    if w not in seen:
                        seen.add(w)
                        nxt.append(w)
        frontier = nxt
    return sorted(seen)


def saturated_set(D: TwistedRootDatum, lam: Sequence[int]) -> list[Cocharacter]:
    """All mu with mu preceq lam."""
    out: list[Cocharacter] = []
    for xi in dominant_below(D, D.dominant(lam)):
        out.extend(weyl_orbit(D, xi))
    return sorted(out)


def dominant_coweights_up_to_height(D: TwistedRootDatum, height: int) -> list[Cocharacter]:
    """Dominant lam with <2 rho, lam> <= height, sorted by (height, coords)."""
    unit = [D.rho2_pairing(tuple(int(i == k) for i in range(D.n))) for k in range(D.n)]
    out = [()]
    for k in range(D.n):
        out = [v + (m,) for v in out for m in range(height // unit[k] + 1)]
    res = [v for v in out if sum(a * b for a, b in zip(unit, v)) <= height]
    return sorted(res, key=lambda v: (sum(a * b for a, b in zip(unit, v)), v))


def box(D: TwistedRootDatum, bound: int) -> list[Cocharacter]:
    """Cocharacters with every coordinate in [-bound, bound]."""
    return [tuple(v) for v in product(range(-bound, bound + 1), repeat=D.n)]
