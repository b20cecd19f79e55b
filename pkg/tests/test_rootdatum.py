from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

import oracles as O
from adlv import DomainError, SchemaError
from adlv.catalog import CATALOG, datum_from_json, named, resolve
from adlv.rootdatum import TwistedRootDatum, saturated_set, weyl_orbit

A2 = TwistedRootDatum("A2")


# ---------------------------------------------------------------- pairings
def test_pairing_examples():
    a1, a2 = A2.simple_roots
    assert A2.pairing(a1, A2.coroot(a1)) == 2
    assert A2.pairing(a1, A2.coroot(a2)) == -1
    theta = (1, 1)
    assert A2.coroot(theta) == (1, 1)
    assert A2.pairing(theta, (1, 1)) == 2


def test_pairing_rejects_non_root():
    with pytest.raises(DomainError):
        A2.pairing((2, 1), (0, 0))


@pytest.mark.parametrize("label,count", [("A1", 2), ("A2", 6), ("B2", 8), ("G2", 12), ("A3", 12), ("D4", 24)])
def test_root_counts(label, count):
    D = TwistedRootDatum(label)
    assert len(D.roots) == count
    assert len(D.positive_roots) == count // 2


def test_g2_long_and_short():
    G = TwistedRootDatum("G2")
    # Bourbaki numbering: alpha_1 short, alpha_2 long
    assert not G.is_long((1, 0)) and G.is_long((0, 1))
    assert max(G.positive_roots, key=sum) == (3, 2)


# ------------------------------------------------------ dominant reps, orders
def test_dominant_rep_examples():
    A1 = TwistedRootDatum("A1")
    mu, w = A1.dominant_rep((-1,))
    assert mu == (1,) and str(w) == "s1"
    mu, w = A2.dominant_rep((2, -1))
    assert mu == (1, 1) and str(w) == "s2"
    assert A2.act(w, (2, -1)) == (1, 1)
    mu, w = A2.dominant_rep((1, 1))
    assert mu == (1, 1) and w == A2.identity


def test_order_check_examples():
    assert A2.order_check((1, 1), (1, 1)) == {"leq_J": True, "preceq_J": True}
    assert A2.order_check((0, 0), (1, 1)) == {"leq_J": True, "preceq_J": True}
    assert A2.order_check((3, 0), (1, 1)) == {"leq_J": False, "preceq_J": False}


def test_weakly_dominant_examples():
    assert A2.is_weakly_dominant((0, 0))
    assert A2.is_weakly_dominant((1, -1))
    assert not A2.is_weakly_dominant((-2, 1))


def test_minuscule_rep_examples():
    assert A2.minuscule_rep((0, 0), [0, 1]) == (0, 0)
    assert A2.minuscule_rep((1, 0), [0, 1]) == (1, 0)
    assert A2.minuscule_rep((0, 1), [0]) == (0, 1)
    # the class of theta^vee is trivial
    assert A2.minuscule_rep((1, 1), [0, 1]) == (0, 0)


@pytest.mark.parametrize("label,factors", [("A2", [3]), ("D4", [2, 2]), ("G2", []), ("A1", [2]), ("B2", [2])])
def test_pi1_examples(label, factors):
    assert TwistedRootDatum(label).pi1_group().invariant_factors() == factors


def test_pi1_levi_free_part():
    # pi_1 of the torus is Y itself; of M_{s1} in A2 it is Z
    assert A2.pi1_group([]).invariant_factors() == [0, 0]
    assert A2.pi1_group([0]).invariant_factors() == [0]


def test_pi1_requires_sigma_stable_J():
    F = named("pgl3-flip")
    with pytest.raises(DomainError):
        F.pi1_group([0])


# ----------------------------------------------------------------- sigma
def test_sigma_examples():
    F = named("pgl3-flip")
    assert F.sigma_coweight((1, 0)) == (0, 1)
    assert F.sigma_root((1, 0)) == (0, 1)
    assert A2.sigma_coweight((3, -1)) == (3, -1)


def test_diamond_examples():
    F = named("pgl3-flip")
    assert F.diamond((1, 0)) == (Fraction(1, 2), Fraction(1, 2))
    S = named("a1xa1-swap")
    assert S.diamond((1, 0)) == (Fraction(1, 2), Fraction(1, 2))
    assert A2.diamond((2, 1)) == (2, 1)


def test_triality_orbits():
    T = named("d4-triality")
    assert T.order_of_sigma == 3
    assert len(T.orbit((1, 0, 0, 0))) == 3
    assert T.orbit((0, 1, 0, 0)) == [(0, 1, 0, 0)]


# ------------------------------------------------------------- catalog / json
def test_catalog_entries_build():
    for name in CATALOG:
        D = named(name)
        assert D.sigma_stable(range(D.n))


def test_datum_from_json_errors():
    with pytest.raises(SchemaError):
        datum_from_json({"type": "A2", "bogus": 1})
    with pytest.raises(SchemaError):
        datum_from_json({"type": "Q7"})
    with pytest.raises(SchemaError):
        datum_from_json({"components": 1})


def test_resolve():
    assert resolve("a2").label == "A2"
    assert resolve("pgl3-flip").sigma == (1, 0)
    with pytest.raises(SchemaError):
        resolve("nonsense")


def test_datum_two_components():
    D = datum_from_json({"type": "A2", "components": 2, "sigma": "(0 2)(1 3)"})
    assert D.n == 4 and D.components == 2
    assert D.sigma_root((1, 1, 0, 0)) == (0, 0, 1, 1)


# ------------------------------------------------------------- properties
LABELS = ["A1", "A2", "B2", "G2", "A3"]
data = {k: TwistedRootDatum(k) for k in LABELS}


@st.composite
def datum_and_vector(draw, lo=-4, hi=4):
    label = draw(st.sampled_from(LABELS))
    D = data[label]
    mu = tuple(draw(st.integers(lo, hi)) for _ in range(D.n))
    return D, mu


@settings(max_examples=200, deadline=None)
@given(datum_and_vector())
def test_dominant_rep_agrees_with_oracle(arg):
    D, mu = arg
    rep, w = D.dominant_rep(mu)
    assert rep == O.dominant(D.cartan, mu)
    assert D.act(w, mu) == rep
    assert rep in weyl_orbit(D, mu)


@settings(max_examples=200, deadline=None)
@given(datum_and_vector(), datum_and_vector())
def test_order_check_agrees_with_oracle(a, b):
    D, mu = a
    if b[0] is not D:
        return
    lam = D.dominant(b[1])
    oc = D.order_check(mu, lam)
    assert oc["leq_J"] == O.leq(D.cartan, mu, lam)
    assert oc["preceq_J"] == O.preceq(D.cartan, mu, lam)
    # leq on a dominant pair implies preceq
    if D.is_dominant(mu) and oc["leq_J"]:
        assert oc["preceq_J"]


@settings(max_examples=200, deadline=None)
@given(datum_and_vector())
def test_weyl_action_preserves_pairings(arg):
    D, mu = arg
    for w in D.subgroup(range(D.n))[:12]:
        for a in D.positive_roots:
            assert D.pairing(D.act_root(w, a), D.act(w, mu)) == D.pairing(a, mu)


@settings(max_examples=150, deadline=None)
@given(datum_and_vector(-3, 3), st.data())
def test_minuscule_rep_is_canonical(arg, draw):
    D, mu = arg
    J = [j for j in range(D.n) if draw.draw(st.booleans())]
    rep = D.minuscule_rep(mu, J)
    assert D.pi1_group(J).equal(rep, mu)
    assert D.is_dominant(rep, J) and D.is_J_minuscule(rep, J)
    # shifting by a coroot of the Levi does not change the representative
    for j in J:
        shifted = tuple(m + c for m, c in zip(mu, D.coroot(D.simple_roots[j])))
        assert D.minuscule_rep(shifted, J) == rep


@settings(max_examples=100, deadline=None)
@given(datum_and_vector(0, 3))
def test_saturated_set_is_w_stable(arg):
    D, lam = arg
    S = set(saturated_set(D, lam))
    for mu in list(S)[:30]:
        for j in range(D.n):
            assert O.reflect(D.cartan, mu, j) in S
        assert O.preceq(D.cartan, mu, lam)


def test_pi1_exactness():
    for name in ["pgl3", "d4-triality", "a2xa2-swap", "b2"]:
        D = named(name)
        for J in ([], list(range(D.n))):
            if not D.sigma_stable(J):
                continue
            pi = D.pi1_group(J)
            for j in J:
                assert pi.equal(D.coroot(D.simple_roots[j]), (0,) * D.n)
            for x in [(1,) + (0,) * (D.n - 1), (0,) * (D.n - 1) + (1,)]:
                y = tuple(a + c for a, c in zip(x, D.coroot(D.simple_roots[0])))
                if 0 in J:
                    assert pi.normal(D.sigma_coweight(x)) == pi.normal(D.sigma_coweight(y))
