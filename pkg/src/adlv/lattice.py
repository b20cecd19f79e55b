"""Integer lattices and finitely generated abelian groups.

Everything here works on small dense integer matrices stored as lists of
rows.  Hermite normal form gives canonical bases and coset
representatives; Smith normal form gives invariant factors.

>>> L = Lattice.from_generators([[2, 0], [0, 3]], 2)
>>> L.contains([4, -3])
True
>>> FGAbelianGroup(2, L).invariant_factors()
[6]
"""

from __future__ import annotations

from dataclasses import dataclass
from math import gcd
from typing import Iterable, Sequence

IntVec = tuple[int, ...]


def _echelon(rows: list[list[int]], ncols: int) -> tuple[list[list[int]], list[int]]:
    """Row-reduce over Z on the first ``ncols`` columns.

    Returns the reduced rows (zero rows dropped only if the whole row is
    zero) and the list of pivot columns.  Row operations are unimodular, so
    any trailing columns act as a transformation record.
    """
    rows = [list(r) for r in rows]
    pivots: list[int] = []
    top = 0
    for col in range(ncols):
        while True:
            nz = [i for i in range(top, len(rows)) if rows[i][col] != 0]
            if not nz:
                break
            best = min(nz, key=lambda i: abs(rows[i][col]))
            rows[top], rows[best] = rows[best], rows[top]
            done = True
            p = rows[top][col]
            for i in range(top + 1, len(rows)):
                if rows[i][col]:
                    q = rows[i][col] // p
                    if q:
                        rows[i] = [a - q * b for a, b in zip(rows[i], rows[top])]
                    if rows[i][col]:
                        done = False
            if done:
                break
        if top < len(rows) and rows[top][col] != 0:
            if rows[top][col] < 0:
                rows[top] = [-a for a in rows[top]]
            # reduce entries above the pivot into [0, pivot)
            p = rows[top][col]
            for i in range(top):
                q = rows[i][col] // p
                if q:
                    rows[i] = [a - q * b for a, b in zip(rows[i], rows[top])]
            pivots.append(col)
            top += 1
    return rows, pivots


def hnf(gens: Iterable[Sequence[int]], dim: int) -> list[IntVec]:
    """Canonical (row) Hermite normal form basis of the lattice spanned by gens."""
    rows = [list(g) for g in gens if any(g)]
    if not rows:
        return []
    red, piv = _echelon(rows, dim)
    return [tuple(r) for r in red[: len(piv)]]


def integer_kernel(matrix: Sequence[Sequence[int]], ncols: int) -> list[IntVec]:
    """Basis of {x in Z^ncols : matrix @ x = 0}."""
    m = len(matrix)
    rows = []
    for j in range(ncols):
        col = [matrix[i][j] for i in range(m)]
        rows.append(col + [1 if k == j else 0 for k in range(ncols)])
    red, piv = _echelon(rows, m)
    basis = [tuple(r[m:]) for r in red[len(piv):]]
    return hnf(basis, ncols)


def solve_integer(matrix: Sequence[Sequence[int]], ncols: int, rhs: Sequence[int]) -> IntVec | None:
    """One integer solution of matrix @ x = rhs, or None."""
    m = len(matrix)
    rows = []
    for j in range(ncols):
        col = [matrix[i][j] for i in range(m)]
        rows.append(col + [1 if k == j else 0 for k in range(ncols)])
    red, piv = _echelon(rows, m)
    target = list(rhs)
    x = [0] * ncols
    for r, c in zip(red, piv):
        if target[c] % r[c]:
            return None
        q = target[c] // r[c]
        if q:
            target = [a - q * b for a, b in zip(target, r[:m])]
            x = [a + q * b for a, b in zip(x, r[m:])]
    if any(target):
        return None
    return tuple(x)


def smith_invariants(matrix: Sequence[Sequence[int]]) -> list[int]:
    """Nonzero invariant factors d1 | d2 | ... of an integer matrix."""
    a = [list(r) for r in matrix]
    if not a or not a[0]:
        return []
    m, n = len(a), len(a[0])
    diag: list[int] = []
    t = 0
    while t < min(m, n):
        entries = [(abs(a[i][j]), i, j) for i in range(t, m) for j in range(t, n) if a[i][j]]
        if not entries:
            break
        _, pi, pj = min(entries)
        a[t], a[pi] = a[pi], a[t]
        for row in a:
            row[t], row[pj] = row[pj], row[t]
        while True:
            changed = False
            p = a[t][t]
            for i in range(t + 1, m):
                if a[i][t]:
                    q = a[i][t] // p
                    a[i] = [x - q * y for x, y in zip(a[i], a[t])]
                    if a[i][t]:
                        changed = True
            for j in range(t + 1, n):
                if a[t][j]:
                    q = a[t][j] // p
                    for row in a:
                        row[j] -= q * row[t]
                    if a[t][j]:
                        changed = True
            if not changed:
                # pivot must divide the remaining block
                bad = [(i, j) for i in range(t + 1, m) for j in range(t + 1, n) if a[i][j] % p]
                if not bad:
                    break
                i, _ = bad[0]
                a[t] = [x + y for x, y in zip(a[t], a[i])]
                changed = True
            if changed:
                entries = [(abs(a[i][j]), i, j) for i in range(t, m) for j in range(t, n)
                           if a[i][j] and (i == t or j == t)]
                _, pi, pj = min(entries)
                a[t], a[pi] = a[pi], a[t]
                for row in a:
                    row[t], row[pj] = row[pj], row[t]
        diag.append(abs(a[t][t]))
        t += 1
    return diag


@dataclass(frozen=True)
class Lattice:
    """A sublattice of Z^dim, stored by its canonical HNF basis."""

    dim: int
    basis: tuple[IntVec, ...]

    @classmethod
    def from_generators(cls, gens: Iterable[Sequence[int]], dim: int) -> "Lattice":
        return cls(dim, tuple(hnf(gens, dim)))

    @classmethod
    def full(cls, dim: int) -> "Lattice":
        return cls.from_generators([[1 if i == j else 0 for j in range(dim)] for i in range(dim)], dim)

    @property
    def rank(self) -> int:
        return len(self.basis)

    def pivots(self) -> list[int]:
        out = []
        for row in self.basis:
            out.append(next(i for i, v in enumerate(row) if v))
        return out

    def reduce(self, v: Sequence[int]) -> IntVec:
        """Canonical representative of v modulo the lattice."""
        w = list(v)
        for row, c in zip(self.basis, self.pivots()):
            q = w[c] // row[c]
            if q:
                w = [a - q * b for a, b in zip(w, row)]
        return tuple(w)

    def contains(self, v: Sequence[int]) -> bool:
        return not any(self.reduce(v))

    def __add__(self, other: "Lattice") -> "Lattice":
        return Lattice.from_generators(list(self.basis) + list(other.basis), self.dim)

    def contains_lattice(self, other: "Lattice") -> bool:
        return all(self.contains(b) for b in other.basis)

    def intersect(self, other: "Lattice") -> "Lattice":
        # x = A^T a = B^T b  <=>  (a, b) in ker [A^T | -B^T]
        A, B = self.basis, other.basis
        if not A or not B:
            return Lattice(self.dim, ())
        mat = [[A[k][i] for k in range(len(A))] + [-B[k][i] for k in range(len(B))]
               for i in range(self.dim)]
        ker = integer_kernel(mat, len(A) + len(B))
        gens = []
        for vec in ker:
            gens.append([sum(vec[k] * A[k][i] for k in range(len(A))) for i in range(self.dim)])
        return Lattice.from_generators(gens, self.dim)

    def preimage(self, matrix: Sequence[Sequence[int]], src_dim: int) -> "Lattice":
        """{v in Z^src_dim : matrix @ v in self}."""
        B = self.basis
        mat = [list(matrix[i]) + [-B[k][i] for k in range(len(B))] for i in range(self.dim)]
        ker = integer_kernel(mat, src_dim + len(B))
        return Lattice.from_generators([v[:src_dim] for v in ker], src_dim)

    def index_in(self, other: "Lattice") -> int | None:
        """[other : self] when self is a full-rank sublattice of other, else None."""
        if not other.contains_lattice(self) or self.rank != other.rank or self.rank != self.dim:
            return None
        return FGAbelianGroup.order_of_full(self) // FGAbelianGroup.order_of_full(other)


def mat_vec(matrix: Sequence[Sequence[int]], v: Sequence[int]) -> IntVec:
    return tuple(sum(a * b for a, b in zip(row, v)) for row in matrix)


class FGAbelianGroup:
    """The quotient Z^dim / relations."""

    def __init__(self, dim: int, relations: Lattice):
        self.dim = dim
        self.relations = relations

    def normal(self, v: Sequence[int]) -> IntVec:
        return self.relations.reduce(v)

    def equal(self, u: Sequence[int], v: Sequence[int]) -> bool:
        return self.relations.contains([a - b for a, b in zip(u, v)])

    def is_finite(self) -> bool:
        return self.relations.rank == self.dim

    def invariant_factors(self) -> list[int]:
        """Torsion invariant factors > 1, followed by 0 for each free summand."""
        d = smith_invariants([list(r) for r in self.relations.basis]) if self.relations.basis else []
        out = [x for x in d if x != 1]
        return out + [0] * (self.dim - self.relations.rank)

    def order(self) -> int | None:
        if not self.is_finite():
            return None
        return self.order_of_full(self.relations)

    @staticmethod
    def order_of_full(lat: Lattice) -> int:
        prod = 1
        for row, c in zip(lat.basis, lat.pivots()):
            prod *= row[c]
        return prod

    def elements(self) -> list[IntVec]:
        """All canonical representatives (finite groups only)."""
        if not self.is_finite():
            raise ValueError("group is infinite")
        bounds = [0] * self.dim
        for row, c in zip(self.relations.basis, self.relations.pivots()):
            bounds[c] = row[c]
        out: list[IntVec] = [()]
        for b in bounds:
            out = [v + (k,) for v in out for k in range(b)]
        return sorted({self.normal(v) for v in out})

    def subgroup_elements(self, sub: Lattice) -> list[IntVec]:
        """Canonical reps of sub / relations (sub must contain relations, finite index)."""
        quotient = FGAbelianGroup(self.dim, self.relations)
        seen = {quotient.normal([0] * self.dim)}
        frontier = list(seen)
        gens = list(sub.basis)
        while frontier:
            nxt = []
            for v in frontier:
                for g in gens:
                    for sgn in (1, -1):
                        w = quotient.normal([a + sgn * b for a, b in zip(v, g)])
                        if w not in seen:
                            seen.add(w)
                            nxt.append(w)
            frontier = nxt
        return sorted(seen)


class GroupHom:
    """Homomorphism Z^n/L_src -> Z^m/L_dst induced by an integer matrix."""

    def __init__(self, src: FGAbelianGroup, dst: FGAbelianGroup, matrix: Sequence[Sequence[int]]):
        self.src = src
        self.dst = dst
        self.matrix = [list(r) for r in matrix]
        for b in src.relations.basis:
            if not dst.relations.contains(mat_vec(self.matrix, b)):
                raise ValueError("matrix does not respect relations")

    def __call__(self, v: Sequence[int]) -> IntVec:
        return self.dst.normal(mat_vec(self.matrix, v))

    def kernel_lattice(self) -> Lattice:
        """Preimage in Z^n of the kernel (contains src relations)."""
        return self.dst.relations.preimage(self.matrix, self.src.dim)

    def image_lattice(self) -> Lattice:
        cols = [[self.matrix[i][j] for i in range(self.dst.dim)] for j in range(self.src.dim)]
        return Lattice.from_generators(cols, self.dst.dim) + self.dst.relations

    def solve(self, target: Sequence[int]) -> IntVec | None:
        """Some v with self(v) = target, or None."""
        rel = self.dst.relations.basis
        n = self.src.dim
        mat = [self.matrix[i] + [r[i] for r in rel] for i in range(self.dst.dim)]
        sol = solve_integer(mat, n + len(rel), target)
        if sol is None:
            return None
        return self.src.normal(sol[:n])


def quotient_invariants(big: Lattice, small: Lattice) -> list[int]:
    """Invariant factors of big / small (small must lie in big).

    Torsion factors > 1 first, then a 0 for each free summand.

    >>> big = Lattice.full(1)
    >>> quotient_invariants(big, Lattice.from_generators([[2]], 1))
    [2]
    """
    k = big.rank
    if not big.contains_lattice(small):
        raise ValueError("small is not contained in big")
    mat = [[big.basis[r][i] for r in range(k)] for i in range(big.dim)]
    coords = []
    for v in small.basis:
        c = solve_integer(mat, k, v)
        if c is None:
            raise ValueError("small is not contained in big")
        coords.append(list(c))
    d = smith_invariants(coords) if coords else []
    return [x for x in d if x != 1] + [0] * (k - len(d))
