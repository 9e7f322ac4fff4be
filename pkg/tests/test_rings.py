import math

import pytest
from hypothesis import given, strategies as st

from conftest import SMALL_SPECS
from twistfact.rings import (
    APair,
    APairError,
    RingSpecError,
    apair_compose,
    apair_conj,
    apair_enumerate,
    apair_inverse,
    apair_make,
    apair_scale,
    apair_star,
    apair_zero,
    is_admissible,
    ring_parse,
    subset_members,
)

rings = st.sampled_from(SMALL_SPECS).map(ring_parse)


@st.composite
def ring_and_elements(draw, k=3):
    R = draw(rings)
    return (R, *[draw(st.integers(0, R.size - 1)) for _ in range(k)])


@st.composite
def ring_and_pairs(draw, k=3):
    R = draw(rings)
    pairs = apair_enumerate(R)
    return (R, *[pairs[draw(st.integers(0, len(pairs) - 1))] for _ in range(k)])


def test_gf4_structure(gf4):
    g = gf4.parse("g")
    assert gf4.size == 4 and gf4.char == 2
    assert gf4.mul(g, g) == gf4.add(g, gf4.one)
    assert all(gf4.theta(x) == gf4.mul(x, x) for x in gf4.elements())


def test_sizes():
    assert ring_parse("zi(5)").size == 25
    assert ring_parse("dual(gf(9))").size == 81
    assert ring_parse("prodc(gf(4),gf(9))").size == 36


@pytest.mark.parametrize("spec", SMALL_SPECS)
def test_literals_round_trip(spec):
    R = ring_parse(spec)
    assert [R.parse(R.fmt(x)) for x in R.elements()] == list(R.elements())


@pytest.mark.parametrize("bad", ["gf(6)", "gf(3)", "zi(1)", "gf(5", "foo(3)", "prodc(gf(4))"])
def test_bad_specs(bad):
    with pytest.raises(RingSpecError):
        ring_parse(bad)


@given(ring_and_elements())
def test_commutative_ring_axioms(data):
    R, a, b, c = data
    assert R.add(a, b) == R.add(b, a) and R.mul(a, b) == R.mul(b, a)
    assert R.mul(a, R.add(b, c)) == R.add(R.mul(a, b), R.mul(a, c))
    assert R.mul(R.mul(a, b), c) == R.mul(a, R.mul(b, c))
    assert R.add(a, R.neg(a)) == 0 and R.mul(R.one, a) == a


@given(ring_and_elements(2))
def test_involution_is_ring_automorphism_of_order_two(data):
    R, a, b = data
    th = R.theta
    assert th(th(a)) == a
    assert th(R.add(a, b)) == R.add(th(a), th(b))
    assert th(R.mul(a, b)) == R.mul(th(a), th(b))


@given(ring_and_elements(1))
def test_inverse(data):
    R, a = data
    if R.is_unit(a):
        assert R.mul(a, R.inv(a)) == R.one
    else:
        assert R.inv_or_none(a) is None


@pytest.mark.parametrize("n", [3, 4, 5, 9])
def test_gaussian_unit_count_matches_norm_oracle(n):
    # a + b i is a unit mod n exactly when its norm a^2 + b^2 is prime to n
    R = ring_parse(f"zi({n})")
    expected = sum(1 for a in range(n) for b in range(n) if math.gcd(a * a + b * b, n) == 1)
    assert len(subset_members(R, "units")) == expected


def test_zi5_has_sixteen_units(zi5):
    # Z[i]/(5) is F5 x F5, so 4 * 4 units
    assert len(subset_members(zi5, "units")) == 16


def test_gf4_fixed_and_skew(gf4):
    assert subset_members(gf4, "fixed") == [0, 1]
    assert subset_members(gf4, "skew") == [0, 1]


def test_pair_examples(gf4, zi5):
    g = gf4.parse("g")
    p = apair_make(gf4, 1, g)
    assert is_admissible(gf4, 0, 1)
    assert apair_compose(p, p) == APair(gf4, 0, 1)
    assert apair_inverse(p) == APair(gf4, 1, gf4.parse("g+1"))
    assert apair_scale(g, p) == APair(gf4, g, g)
    q = apair_make(zi5, zi5.parse("1+i"), zi5.one)
    assert apair_inverse(q) == APair(zi5, zi5.parse("-1-i"), zi5.one)
    with pytest.raises(APairError):
        apair_make(gf4, 1, 0)


def test_pair_counts(gf4, gf9):
    assert len(apair_enumerate(gf4)) == 8
    assert len(apair_enumerate(gf9)) == 27


@pytest.mark.parametrize("spec", ["gf(9)", "zi(5)", "zi(9)"])
def test_two_two_is_admissible_when_two_is_a_unit(spec):
    R = ring_parse(spec)
    two = R.from_int(2)
    assert APair(R, two, two) in apair_star(R)


@given(ring_and_pairs())
def test_pair_group_laws(data):
    R, p, q, r = data
    z = apair_zero(R)
    assert apair_compose(apair_compose(p, q), r) == apair_compose(p, apair_compose(q, r))
    assert apair_compose(p, z) == p == apair_compose(z, p)
    assert apair_compose(p, apair_inverse(p)) == z == apair_compose(apair_inverse(p), p)
    s = apair_compose(p, q)
    assert is_admissible(R, s.t, s.u)


@given(ring_and_pairs(2), st.integers(0, 10**6), st.integers(0, 10**6))
def test_pair_action_laws(data, i, j):
    R, p, q = data
    a, b = i % R.size, j % R.size
    assert apair_scale(a, apair_scale(b, p)) == apair_scale(R.mul(a, b), p)
    assert apair_scale(a, apair_compose(p, q)) == apair_compose(apair_scale(a, p), apair_scale(a, q))
    assert apair_scale(R.one, p) == p and apair_scale(0, p) == apair_zero(R)
    c = apair_conj(p)
    assert is_admissible(R, c.t, c.u)


def test_pair_enumeration_matches_brute_force(gf9):
    brute = [(t, u) for t in gf9.elements() for u in gf9.elements()
             if gf9.mul(t, gf9.theta(t)) == gf9.add(u, gf9.theta(u))]
    assert [(p.t, p.u) for p in apair_enumerate(gf9)] == brute
