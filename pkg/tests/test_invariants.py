from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from adlv import DomainError
from adlv.affine import ExtAffineWeylElem, affine
from adlv.catalog import named
from adlv.invariants import (hn_irreducible, invariants_of, is_basic, is_superbasic_omega, nonempty,
                             nonempty_report)

PGL2 = named("pgl2")
A1 = affine(PGL2)
TAU = A1.elem((1,), PGL2.simple_reflections[0])


def test_invariants_examples():
    inv = invariants_of(PGL2, A1.one)
    assert inv.kappa == (0,) and inv.nu == (0,)
    inv = invariants_of(PGL2, TAU)
    assert inv.kappa == (1,) and inv.nu == (Fraction(0),)
    P = named("pgl3")
    inv = invariants_of(P, affine(P).elem((2, 1)))
    assert inv.nu == (2, 1)
    assert P.pi1_group().equal(inv.kappa, (2, 1))
    assert inv.to_json() == {"kappa": list(inv.kappa), "nu": ["2", "1"]}


def test_basic_and_superbasic_examples():
    assert is_basic(PGL2, A1.one)
    assert not is_superbasic_omega(PGL2, A1.one)
    assert is_superbasic_omega(PGL2, TAU)
    assert not is_basic(PGL2, A1.elem((2,)))
    with pytest.raises(DomainError):
        is_superbasic_omega(PGL2, A1.elem((2,)))


def test_nonempty_examples():
    assert nonempty(PGL2, (2,), A1.one)
    assert not nonempty(PGL2, (1,), A1.one)
    assert nonempty(PGL2, (0,), A1.one)
    assert nonempty_report(PGL2, (1,), A1.one)["criterion"] == "kappa mismatch"
    # right kappa but Newton point too large
    rep = nonempty_report(PGL2, (2,), A1.elem((4,)))
    assert rep["criterion"] == "newton point not below lambda"
    with pytest.raises(DomainError):
        nonempty(PGL2, (-2,), A1.one)


def test_hn_irreducible_examples():
    assert hn_irreducible(PGL2, (2,), A1.one)
    assert not hn_irreducible(PGL2, (0,), A1.one)
    assert hn_irreducible(PGL2, (1,), TAU)
    assert nonempty_report(PGL2, (1,), TAU)["coefficients"] == (Fraction(1, 2),)
    with pytest.raises(DomainError):
        hn_irreducible(PGL2, (1,), A1.one)


def test_twisted_nonempty():
    F = named("pgl3-flip")
    A = affine(F)
    # every class of Y is trivial in the coinvariants of the flip... only modulo (1 - sigma)
    assert nonempty(F, (1, 1), A.one)
    assert nonempty(F, (1, 0), A.one) == A.pi1.coinv_equal((1, 0), (0, 0))


# ------------------------------------------------------------ properties
NAMES = ["pgl2", "pgl3", "pgl3-flip", "b2", "g2", "a1xa1-swap"]


@st.composite
def elems(draw):
    D = named(draw(st.sampled_from(NAMES)))
    mu = tuple(draw(st.integers(-3, 3)) for _ in range(D.n))
    return D, ExtAffineWeylElem(mu, draw(st.sampled_from(D.weyl_elements)))


@settings(max_examples=200, deadline=None)
@given(elems(), st.data())
def test_invariants_constant_on_classes(arg, data):
    D, b = arg
    A = affine(D)
    k = data.draw(st.integers(0, len(A.simple_affine) - 1))
    assert invariants_of(D, A.conj_step(b, k)) == invariants_of(D, b)
    t = data.draw(st.sampled_from(A.omega_elements()))
    assert invariants_of(D, A.sigma_conj(t, b)) == invariants_of(D, b)


@settings(max_examples=200, deadline=None)
@given(elems())
def test_basic_means_zero_newton_point(arg):
    D, b = arg
    inv = invariants_of(D, b)
    assert D.sigma_coweight(inv.nu) == inv.nu
    assert D.is_dominant(inv.nu)
    if is_basic(D, b):
        assert all(v == 0 for v in inv.nu)


@settings(max_examples=200, deadline=None)
@given(elems(), st.data())
def test_nonempty_monotone(arg, data):
    D, b = arg
    lam1 = tuple(data.draw(st.integers(0, 3)) for _ in range(D.n))
    # lam2 = lam1 + a nonnegative sum of simple coroots, kept dominant
    extra = [data.draw(st.integers(0, 2)) for _ in range(D.n)]
    lam2 = tuple(lam1[i] + sum(extra[j] * D.cartan[i][j] for j in range(D.n)) for i in range(D.n))
    if not D.is_dominant(lam2):
        return
    assert D.preceq(lam1, lam2)
    if nonempty(D, lam1, b):
        assert nonempty(D, lam2, b)
