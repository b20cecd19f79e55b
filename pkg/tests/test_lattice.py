from functools import reduce
from itertools import combinations, product
from math import gcd

from hypothesis import given, settings
from hypothesis import strategies as st

from adlv.lattice import (FGAbelianGroup, GroupHom, Lattice, hnf, integer_kernel, quotient_invariants,
                          smith_invariants, solve_integer)

small = st.integers(-6, 6)


def matrices(rows, cols):
    return st.lists(st.lists(small, min_size=cols, max_size=cols), min_size=rows, max_size=rows)


def _det(M):
    if len(M) == 1:
        return M[0][0]
    return sum((-1) ** j * M[0][j] * _det([r[:j] + r[j + 1:] for r in M[1:]]) for j in range(len(M)))


def _minor_gcd(M, k):
    m, n = len(M), len(M[0])
    vals = [_det([[M[i][j] for j in cs] for i in rs])
            for rs in combinations(range(m), k) for cs in combinations(range(n), k)]
    return reduce(gcd, (abs(v) for v in vals), 0)


@settings(max_examples=150, deadline=None)
@given(st.integers(1, 3).flatmap(lambda m: st.integers(1, 3).flatmap(lambda n: matrices(m, n))))
def test_smith_matches_determinantal_divisors(M):
    d = smith_invariants(M)
    # d_1 ... d_k equals the gcd of k x k minors
    prod = 1
    for k, v in enumerate(d, start=1):
        prod *= v
        assert prod == _minor_gcd(M, k)
    for a, b in zip(d, d[1:]):
        assert b % a == 0
    assert len(d) < min(len(M), len(M[0])) + 1
    if len(d) < min(len(M), len(M[0])):
        assert _minor_gcd(M, len(d) + 1) == 0


def test_smith_examples():
    assert smith_invariants([[2, 0], [0, 3]]) == [1, 6]
    assert smith_invariants([[2, -1], [-1, 2]]) == [1, 3]
    assert smith_invariants([[0, 0]]) == []


@settings(max_examples=150, deadline=None)
@given(matrices(3, 2), st.lists(st.integers(-3, 3), min_size=3, max_size=3))
def test_lattice_membership_and_reduction(gens, coeffs):
    L = Lattice.from_generators(gens, 2)
    v = [sum(c * g[i] for c, g in zip(coeffs, gens)) for i in range(2)]
    assert L.contains(v)
    w = [v[0] + 1, v[1]]
    assert L.reduce(w) == L.reduce([1, 0])
    # hnf of the hnf is itself
    assert tuple(hnf(L.basis, 2)) == L.basis


def test_lattice_brute_force_membership():
    gens = [[2, 1], [0, 3]]
    L = Lattice.from_generators(gens, 2)
    span = {(a * 2, a + 3 * b) for a, b in product(range(-10, 11), repeat=2)}
    for v in product(range(-4, 5), repeat=2):
        assert L.contains(v) == (v in span)


@settings(max_examples=100, deadline=None)
@given(matrices(2, 3))
def test_integer_kernel(M):
    K = integer_kernel(M, 3)
    for v in K:
        assert all(sum(a * b for a, b in zip(row, v)) == 0 for row in M)
    # every small kernel vector lies in the span
    L = Lattice.from_generators(K, 3)
    for v in product(range(-2, 3), repeat=3):
        if all(sum(a * b for a, b in zip(row, v)) == 0 for row in M):
            assert L.contains(v)


@settings(max_examples=100, deadline=None)
@given(matrices(2, 2), st.lists(st.integers(-3, 3), min_size=2, max_size=2))
def test_solve_integer_roundtrip(M, x):
    rhs = [sum(a * b for a, b in zip(row, x)) for row in M]
    sol = solve_integer(M, 2, rhs)
    assert sol is not None
    assert [sum(a * b for a, b in zip(row, sol)) for row in M] == rhs


def test_solve_integer_none():
    assert solve_integer([[2, 0], [0, 2]], 2, [1, 0]) is None


def test_group_orders_and_elements():
    G = FGAbelianGroup(2, Lattice.from_generators([[2, -1], [-1, 2]], 2))
    assert G.order() == 3
    assert len(G.elements()) == 3
    assert G.invariant_factors() == [3]
    assert FGAbelianGroup(2, Lattice.from_generators([[2, 0]], 2)).invariant_factors() == [2, 0]


def test_quotient_and_intersection():
    big = Lattice.full(2)
    small = Lattice.from_generators([[2, 0], [0, 2]], 2)
    assert quotient_invariants(big, small) == [2, 2]
    A = Lattice.from_generators([[2, 0], [0, 1]], 2)
    B = Lattice.from_generators([[1, 0], [0, 3]], 2)
    I = A.intersect(B)
    assert I == Lattice.from_generators([[2, 0], [0, 3]], 2)
    assert small.index_in(big) == 4


def test_group_hom_solve_and_kernel():
    G = FGAbelianGroup(1, Lattice.from_generators([[4]], 1))
    h = GroupHom(G, G, [[2]])
    assert h.solve([2]) is not None
    assert h.solve([1]) is None
    K = h.kernel_lattice()
    assert K.contains([2]) and not K.contains([1])
