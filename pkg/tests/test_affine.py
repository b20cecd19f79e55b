from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from adlv import DomainError
from adlv.affine import ExtAffineWeylElem, affine
from adlv.catalog import named

PGL2 = named("pgl2")
A1 = affine(PGL2)
S1 = PGL2.simple_reflections[0]
TAU = A1.elem((1,), S1)
# in coweight coordinates the coroot alpha^vee of PGL2 is (2,)
T_ALPHA = A1.elem((2,))


def test_length_examples():
    assert A1.length(A1.one) == 0
    assert A1.length(T_ALPHA) == 2
    assert A1.length(TAU) == 0


def test_omega_decompose_examples():
    word, tau = A1.omega_decompose(A1.from_affine_word([0, 1]))
    assert word == (0, 1) and tau == A1.one
    word, tau = A1.omega_decompose(TAU)
    assert word == () and tau == TAU
    word, tau = A1.omega_decompose(T_ALPHA)
    assert len(word) == 2 and tau == A1.one
    assert A1.from_affine_word(word) == T_ALPHA


def test_omega_bijects_with_pi1():
    for name in ["pgl2", "pgl3", "b2", "d4", "g2"]:
        A = affine(named(name))
        om = A.omega_elements()
        assert all(A.length(t) == 0 for t in om)
        classes = {A.pi1_class(t) for t in om}
        assert len(classes) == len(om) == len(A.pi1.group.elements())


def test_bruhat_examples():
    s1, s0 = A1.simple_affine
    assert A1.bruhat_leq(T_ALPHA, T_ALPHA)
    assert A1.bruhat_leq(s0, A1.mul(s1, s0))
    assert not A1.bruhat_leq(A1.mul(s1, s0), s0)
    assert not A1.bruhat_leq(TAU, T_ALPHA)
    assert A1.bruhat_leq(A1.one, T_ALPHA)


def test_newton_examples():
    assert A1.newton(A1.elem((3,)))[0] == (Fraction(3),)
    assert A1.newton(A1.elem((2,), S1))[0] == (Fraction(0),)
    assert A1.newton(TAU)[0] == (Fraction(0),)
    nu, nubar = A1.newton(A1.elem((-2,)))
    assert nu == (Fraction(-2),) and nubar == (Fraction(2),)


def test_newton_twisted():
    F = named("pgl3-flip")
    A = affine(F)
    nu, nubar = A.newton(A.elem((1, 0)))
    assert nu == (Fraction(1, 2), Fraction(1, 2)) == nubar


def test_reduce_to_min_examples():
    s1, s0 = A1.simple_affine
    x = A1.mul(s0, s1, s0)
    y, trace = A1.reduce_to_min(x)
    assert A1.length(x) == 3 and A1.length(y) == 1
    assert y == s1 and trace == [1]
    assert A1.reduce_to_min(s1) == (s1, [])
    assert A1.reduce_to_min(TAU) == (TAU, [])


def test_straight_examples():
    assert A1.is_straight(A1.elem((3,)))
    assert not A1.is_straight(A1.elem((0,), S1))
    assert A1.is_straight(TAU)


def test_alcove_and_fundamental_examples():
    assert A1.is_alcove_elem(A1.one, (0,)) and A1.is_fundamental(A1.one, (0,))
    A = affine(named("pgl3"))
    assert A.is_alcove_elem(A.elem((1, 1)), (1, 1))
    s = A1.elem((0,), S1)
    assert not A1.is_fundamental(s, (0,))
    assert A1.is_straight(s) == A1.is_fundamental(s, A1.newton(s)[0])


def test_straight_classes_below_examples():
    rows = A1.straight_classes_below((0,))
    assert [(str(x), k) for x, k, _ in rows] == [("t[0];e", (0,))]
    rows = A1.straight_classes_below((2,))
    found = {(x, k, nb) for x, k, nb in rows}
    assert (T_ALPHA, (0,), (Fraction(2),)) in found
    assert (A1.one, (0,), (Fraction(0),)) in found
    rows = A1.straight_classes_below((1,))
    assert (TAU, (1,), (Fraction(0),)) in {(x, k, nb) for x, k, nb in rows}
    with pytest.raises(DomainError):
        A1.straight_classes_below((-1,))


def test_superbasic_examples():
    assert not A1.is_superbasic_omega(A1.one)
    assert A1.is_superbasic_omega(TAU)
    with pytest.raises(DomainError):
        A1.is_superbasic_omega(T_ALPHA)


def test_enumeration_is_sorted_and_complete():
    els = A1.enumerate_up_to_length(4)
    assert els == sorted(els, key=A1.sort_key)
    # W~ of PGL2 has 2 elements of each length (times |Omega| = 2)
    counts = {}
    for x in els:
        counts[A1.length(x)] = counts.get(A1.length(x), 0) + 1
    assert counts == {0: 2, 1: 4, 2: 4, 3: 4, 4: 4}


# ----------------------------------------------------------- properties
NAMES = ["pgl2", "pgl3", "pgl3-flip", "b2", "g2"]


@st.composite
def elements(draw, names=NAMES, bound=3):
    D = named(draw(st.sampled_from(names)))
    A = affine(D)
    mu = tuple(draw(st.integers(-bound, bound)) for _ in range(D.n))
    w = draw(st.sampled_from(D.weyl_elements))
    return A, ExtAffineWeylElem(mu, w)


@settings(max_examples=200, deadline=None)
@given(elements())
def test_length_formula_matches_inversion_count(arg):
    A, x = arg
    assert A.length(x) == A.length_by_inversions(x)


@settings(max_examples=100, deadline=None)
@given(st.data())
def test_group_law(data):
    A, x = data.draw(elements())
    y = ExtAffineWeylElem(tuple(data.draw(st.integers(-2, 2)) for _ in range(A.D.n)),
                          data.draw(st.sampled_from(A.D.weyl_elements)))
    z = ExtAffineWeylElem(tuple(data.draw(st.integers(-2, 2)) for _ in range(A.D.n)),
                          data.draw(st.sampled_from(A.D.weyl_elements)))
    assert A.mul(A.mul(x, y), z) == A.mul(x, A.mul(y, z))
    assert A.mul(x, A.inv(x)) == A.one
    assert A.sigma(A.mul(x, y)) == A.mul(A.sigma(x), A.sigma(y))


@settings(max_examples=150, deadline=None)
@given(elements(), st.data())
def test_newton_is_conjugation_invariant(arg, data):
    A, x = arg
    k = data.draw(st.integers(0, len(A.simple_affine) - 1))
    y = A.conj_step(x, k)
    assert A.newton(x)[1] == A.newton(y)[1]
    assert A.pi1.coinv_equal(x.mu, y.mu)


@settings(max_examples=150, deadline=None)
@given(elements())
def test_omega_decompose_roundtrip(arg):
    A, x = arg
    word, tau = A.omega_decompose(x)
    assert A.length(tau) == 0
    assert len(word) == A.length(x)
    assert A.from_affine_word(word, tau) == x


@settings(max_examples=60, deadline=None)
@given(elements(bound=2), st.data())
def test_bruhat_subword_property(arg, data):
    A, y = arg
    word, tau = A.omega_decompose(y)
    keep = [data.draw(st.booleans()) for _ in word]
    x = A.from_affine_word([s for s, k in zip(word, keep) if k], tau)
    assert A.bruhat_leq(x, y)
