import random

import pytest
from hypothesis import given, settings, strategies as st

from catalog import P2, P3, CUBIC_LIMIT, TWISTED_CUBIC, theorem_catalog
from oracles import GradedMembership, in_ideal_linear_algebra, monomials, random_poly, s_pairs_reduce_to_zero
from segreclass.groebner import (BUDGET_ENV, GroebnerBasis, ResourceError, buchberger, ideal_membership,
                                 is_groebner, normal_form)
from segreclass.polyring import GREVLEX, LEX, Poly, Ring, RingMismatch, block_order


def polys(ring, texts):
    return [ring.parse(t) for t in texts]


def assert_reduced(G: GroebnerBasis):
    lms = G.leading_monomials
    for g, lm in zip(G.generators, lms):
        assert g.coeffs[lm] == 1
        for m in g.coeffs:
            assert not any(all(a <= b for a, b in zip(l, m)) for l in lms if l != lm)


def test_linear_case():
    ring = Ring(32003, ("x", "y"))
    G = buchberger(polys(ring, ["x + y", "y"]))
    assert G.generators == (ring.var("y"), ring.var("x"))


def test_empty_input():
    assert buchberger([]).generators == ()


def test_mixed_rings_rejected():
    with pytest.raises(RingMismatch):
        buchberger([P2.var(0), P3.var(0)])


def test_twisted_cubic_basis_is_its_generators():
    gens = polys(P3, TWISTED_CUBIC)
    G = buchberger(gens)
    assert len(G) == 3
    assert {g.monic() for g in gens} == set(G.generators)
    assert s_pairs_reduce_to_zero(list(G.generators), GREVLEX.key)
    assert_reduced(G)


def test_cubic_limit_contains_z_cubed():
    G = buchberger(polys(P3, CUBIC_LIMIT))
    assert normal_form(P3.parse("z^3"), G).is_zero()
    assert s_pairs_reduce_to_zero(list(G.generators), GREVLEX.key)
    assert_reduced(G)
    assert is_groebner(G)


def test_cubic_limit_membership_against_linear_algebra():
    gens = polys(P3, CUBIC_LIMIT)
    f = P3.parse("x*z*w - y^2*z")
    assert ideal_membership(f, gens) == in_ideal_linear_algebra(f, gens)
    g = P3.parse("y^2*w - x^3")
    assert ideal_membership(g, gens) == in_ideal_linear_algebra(g, gens) is False


def test_normal_form_single_step():
    G = buchberger(polys(P3, ["x^2 - z^2"]))
    assert normal_form(P3.parse("x^2*y"), G) == P3.parse("z^2*y")


def test_normal_form_trivial_cases():
    G = buchberger(polys(P3, TWISTED_CUBIC))
    for g in G.generators:
        assert normal_form(g, G).is_zero()
    assert normal_form(P3.one(), G) == P3.one()


def test_membership_trivial_cases():
    ring = Ring(32003, ("x", "y"))
    gens = polys(ring, ["x^2", "x*y"])
    assert ideal_membership(ring.zero(), gens)
    assert not ideal_membership(ring.var("x"), gens)


def test_unit_ideal():
    G = buchberger(polys(P2, ["x0", "x0 + 1"]))
    assert G.is_unit()


@pytest.mark.parametrize("order", [GREVLEX, LEX, block_order(1)], ids=str)
def test_uniqueness_under_permutation_and_scaling(order):
    gens = polys(P3, CUBIC_LIMIT) + [P3.parse("x*z + y*z + z^2")]
    reference = buchberger(gens, order)
    rng = random.Random(11)
    for _ in range(50):
        shuffled = gens[:]
        rng.shuffle(shuffled)
        shuffled = [g.scale(rng.randrange(1, 32003)) for g in shuffled]
        assert buchberger(shuffled, order).generators == reference.generators


def test_weights_do_not_change_result():
    gens = polys(P3, TWISTED_CUBIC)
    assert buchberger(gens, weights=(3, 1, 2, 1)).generators == buchberger(gens).generators


@settings(max_examples=25, deadline=None)
@given(st.integers(min_value=0, max_value=10 ** 6))
def test_random_bases_pass_buchberger_criterion(seed):
    rng = random.Random(seed)
    ring = P2 if rng.random() < 0.5 else P3
    gens = [random_poly(ring, rng, rng.randint(1, 3), rng.randint(1, 3)) for _ in range(rng.randint(1, 3))]
    gens = [g for g in gens if not g.is_zero()]
    if not gens:
        return
    G = buchberger(gens)
    assert s_pairs_reduce_to_zero(list(G.generators), GREVLEX.key)
    assert_reduced(G)
    # homogeneous input stays homogeneous
    assert all(g.is_homogeneous() for g in G.generators)
    for g in gens:
        assert normal_form(g, G).is_zero()


def _membership_probes(ring, gens, rng, bound):
    """Random members, random non-members and perturbed members in degrees up to ``bound``."""
    probes = []
    for d in range(1, bound + 1):
        ms = monomials(ring.nvars, d)
        probes.append(Poly(ring, {ms[rng.randrange(len(ms))]: 1}))
        probes.append(random_poly(ring, rng, d, 4))
        member = ring.zero()
        for g in gens:
            if g.degree <= d:
                member = member + random_poly(ring, rng, d - g.degree, 3) * g
        probes.append(member)
        probes.append(member + Poly(ring, {ms[rng.randrange(len(ms))]: 1}))
    return [f for f in probes if not f.is_zero()]


MEMBERSHIP_CATALOG = {k: v for k, v in theorem_catalog().items() if v.max_degree <= 3}


@pytest.mark.parametrize("name", sorted(MEMBERSHIP_CATALOG))
def test_membership_agrees_with_linear_algebra(name):
    I = MEMBERSHIP_CATALOG[name]
    gens = list(I.gens)
    oracle = GradedMembership(gens)
    G = buchberger(gens)
    rng = random.Random(name)
    probes = _membership_probes(I.ring, gens, rng, 8)
    outcomes = set()
    for f in probes:
        expected = oracle.contains(f)
        outcomes.add(expected)
        assert normal_form(f, G).is_zero() == expected, str(f)
    assert outcomes == {True, False}


def test_budget_exhaustion(monkeypatch):
    gens = polys(P3, CUBIC_LIMIT)
    with pytest.raises(ResourceError):
        buchberger(gens, budget=1)
    monkeypatch.setenv(BUDGET_ENV, "1")
    with pytest.raises(ResourceError):
        buchberger(gens)


def test_degree_cap():
    with pytest.raises(ResourceError):
        buchberger(polys(P3, TWISTED_CUBIC), max_degree=2)
