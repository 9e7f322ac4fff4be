import itertools
import random

import pytest
from hypothesis import given, strategies as st

from twistfact import su3
from twistfact import twisted as T
from twistfact.matrices import (
    Mat,
    identity,
    is_lower_unitriangular,
    is_sigma_fixed,
    is_upper_unitriangular,
    sigma_inverse,
)
from twistfact.rings import APair, apair_enumerate, ring_parse


def roots_of(rs, name):
    return set(rs[name].roots)


def test_root_system_shapes():
    rs3 = T.build_root_system(3)
    assert [(c.name, c.type_tag) for c in rs3.classes if c.sign > 0] == [("a1", "A2")]
    assert roots_of(rs3, "a1") == {(1, 2), (2, 3), (1, 3)}
    rs4 = T.build_root_system(4)
    assert [(c.name, c.type_tag) for c in rs4.simple] == [("a1", "A1^2"), ("a2", "A1")]
    assert roots_of(rs4, "a1") == {(1, 2), (3, 4)} and roots_of(rs4, "a2") == {(2, 3)}
    rs5 = T.build_root_system(5)
    assert [(c.name, c.type_tag) for c in rs5.simple] == [("a1", "A1^2"), ("a2", "A2")]
    assert roots_of(rs5, "a2") == {(2, 3), (3, 4), (2, 4)}
    assert sorted(c.name for c in rs4.classes if c.sign > 0) == ["2a1+a2", "a1", "a1+a2", "a2"]
    assert sorted(c.name for c in rs5.classes if c.sign > 0) == ["a1", "a1+2a2", "a1+a2", "a2"]
    with pytest.raises(ValueError):
        T.build_root_system(6)


@pytest.mark.parametrize("n", T.SUPPORTED_N)
def test_class_invariants(n):
    rs = T.build_root_system(n)
    every = set()
    for c in rs.classes:
        orbit = set(c.roots)
        assert {T.rho(n, a) for a in orbit} == orbit
        assert len(orbit) == {"A1": 1, "A1^2": 2, "A2": 3}[c.type_tag]
        assert all(m >= 0 for m in c.coords) or all(m <= 0 for m in c.coords)
        assert rs.negative(rs.negative(c)) == c
        every |= orbit
    assert len(every) == n * (n - 1)


@pytest.mark.parametrize("n", T.SUPPORTED_N)
def test_frozen_signs_are_the_solver_output(n):
    for c in T.build_root_system(n).classes:
        assert T.solve_signs(n, c.name) == T.signs_for(n, c)


@pytest.mark.parametrize("n", T.SUPPORTED_N)
def test_other_lawful_signs_give_the_same_root_subgroups(n):
    R = ring_parse("gf(9)")
    for c in T.build_root_system(n).classes:
        dom = T.param_domain(R, c)
        frozen = {T._raw_generator(R, n, c, T.signs_for(n, c), p) for p in dom}
        for signs in itertools.product((1, -1), repeat=T._n_signs(c)):
            if T._law_holds(R, n, c, signs):
                assert {T._raw_generator(R, n, c, signs, p) for p in dom} == frozen


@pytest.mark.parametrize("n", T.SUPPORTED_N)
def test_class_law_exhaustive_gf4(gf4, n):
    for c in T.build_root_system(n).classes:
        dom = T.param_domain(gf4, c)
        assert T.class_generator(gf4, n, c, T.zero_param(gf4, c)).is_identity()
        for p in dom:
            assert is_sigma_fixed(T.class_generator(gf4, n, c, p))
        for p, q in itertools.product(dom, repeat=2):
            lhs = T.class_generator(gf4, n, c, p) @ T.class_generator(gf4, n, c, q)
            if c.type_tag == "A2":
                s = APair(gf4, gf4.add(q.t, p.t), gf4.add(gf4.add(q.u, p.u), gf4.mul(gf4.theta(q.t), p.t)))
            else:
                s = gf4.add(p, q)
            assert lhs == T.class_generator(gf4, n, c, s)


def test_rank_one_matches_su3(gf9):
    for p in apair_enumerate(gf9):
        assert T.class_generator(gf9, 3, "a1", p) == su3.x_plus(p)
        assert T.class_generator(gf9, 3, "-a1", p) == su3.x_minus(p)


def test_a1_square_generator_for_n5(gf4):
    g = gf4.parse("g")
    M = T.class_generator(gf4, 5, "a1", g)
    assert M[0, 1] == g and M[3, 4] == gf4.theta(g)
    assert is_sigma_fixed(M)


def test_bad_parameters(gf4):
    with pytest.raises(ValueError):
        T.class_generator(gf4, 4, "a2", gf4.parse("g"))
    with pytest.raises(ValueError):
        T.class_generator(gf4, 5, "a2", APair(gf4, 1, 0))


def test_word_eval(gf4):
    assert T.word_eval(T.GeneratorWord(gf4, 4, [])).is_identity()
    rs = T.build_root_system(3)
    p, q = apair_enumerate(gf4)[3], apair_enumerate(gf4)[5]
    w = T.GeneratorWord(gf4, 3, [(rs["a1"], p), (rs["-a1"], q)])
    assert T.word_eval(w) == su3.x_plus(p) @ su3.x_minus(q)
    w1 = T.GeneratorWord(gf4, 4, [(T.build_root_system(4)["a1"], 2)])
    assert T.word_eval(w1) == T.class_generator(gf4, 4, "a1", 2)


@pytest.mark.parametrize("n", [4, 5])
@pytest.mark.parametrize("i", [1, 2])
def test_closed_sets_and_ideals(n, i):
    rs = T.build_root_system(n)
    split = T.levi_split(n, i)
    S = T.s_set(rs, i)
    assert T.is_closed(rs, S)
    assert T.is_ideal(rs, split.sigma, S)
    assert T.is_closed(rs, split.phi)
    names = {c.name for c in split.phi}
    assert all(rs.negative(c).name in names for c in split.phi)
    assert not any(rs.negative(c).name in {d.name for d in split.sigma} for c in split.sigma)
    assert sorted(c.name for c in S) == sorted(c.name for c in split.phi + split.sigma)


def test_a1_square_pair_sums_into_a2_class():
    # a1 + (a1+2a2) hits the fixed root e1 - e5; the half-sum hits its class vector
    rs = T.build_root_system(5)
    a, b = rs["a1"], rs["a1+2a2"]
    assert [c.name for c in T._sums(rs, a, b)] == ["a1+a2", "a1+a2"]
    assert not T.is_closed(rs, [a, b])
    rs4 = T.build_root_system(4)
    assert len(T._sums(rs4, rs4["a1"], rs4["a1+a2"])) == 1


def test_levi_blocks():
    assert T.levi_split(4, 1).blocks == [[0], [1, 2], [3]]
    assert T.levi_split(4, 2).blocks == [[0, 1], [2, 3]]
    assert T.levi_split(5, 1).blocks == [[0], [1, 2, 3], [4]]
    assert T.levi_split(5, 2).blocks == [[0, 1], [2], [3, 4]]


def test_levi_split_examples(gf4):
    split = T.levi_split(5, 1)
    assert T.levi_split_word(identity(gf4, 5), split) == (identity(gf4, 5), identity(gf4, 5))
    p = apair_enumerate(gf4)[5]
    U = T.class_generator(gf4, 5, "a1", gf4.parse("g")) @ T.class_generator(gf4, 5, "a2", p)
    phi, sig = T.levi_split_word(U, split)
    assert phi == T.class_generator(gf4, 5, "a2", p)
    assert phi @ sig == U and is_sigma_fixed(phi) and is_sigma_fixed(sig)
    V = T.class_generator(gf4, 4, "a1+a2", 2)
    assert T.levi_split_word(V, T.levi_split(4, 1)) == (identity(gf4, 4), V)
    with pytest.raises(T.NotUnitriangular):
        T.levi_split_word(T.class_generator(gf4, 4, "a1", 1) @ T.class_generator(gf4, 4, "-a1", 1),
                          T.levi_split(4, 1))


def _levi_group(R, n, name):
    rs = T.build_root_system(n)
    c = rs[name]
    gens = []
    for cls in (c, rs.negative(c)):
        gens += [T.class_generator(R, n, cls, p) for p in T.param_domain(R, cls)]
    return su3.closure(gens, 10_000)


@pytest.mark.parametrize("n,i", [(4, 1), (4, 2), (5, 1), (5, 2)])
def test_radical_is_normalized_by_levi(gf4, n, i):
    split = T.levi_split(n, i)
    levi = [T.class_generator(gf4, n, c, p) for c in split.phi for p in T.param_domain(gf4, c)]
    rad = [T.class_generator(gf4, n, c, p) for c in split.sigma for p in T.param_domain(gf4, c)]
    for L in levi:
        for U in rad:
            V = L @ U @ sigma_inverse(L)
            assert T.levi_split_word(V, split)[0].is_identity()


@pytest.mark.parametrize("n,name,order", [(4, "a1", 60), (4, "a2", 6), (5, "a1", 60), (5, "a2", 216)])
def test_base_factor_exhaustive(gf4, n, name, order):
    cls = T.build_root_system(n)[name]
    group = _levi_group(gf4, n, name)
    assert len(group) == order
    for M in group:
        head, fs = T.base_factor(M, cls, "unitri", T.target_shape(n, "unitri"))
        assert head is None and "".join(f.sign for f in fs) == T.target_shape(n, "unitri")
        assert T._prod([f.mat for f in fs], gf4, n) == M
        head, fs = T.base_factor(M, cls, "tri", "+-+")
        assert head @ T._prod([f.mat for f in fs], gf4, n) == M
        assert all(is_upper_unitriangular(f.mat) if f.sign == "+" else is_lower_unitriangular(f.mat) for f in fs)


def test_sl2_formulas(gf4):
    S = list(gf4.elements())
    R = gf4
    for a, b, c, d in itertools.product(S, repeat=4):
        if R.sub(R.mul(a, d), R.mul(b, c)) != R.one:
            continue
        g = Mat(R, [[a, b], [c, d]])
        up = lambda t: Mat(R, [[R.one, t], [0, R.one]])
        lo = lambda t: Mat(R, [[R.one, 0], [t, R.one]])
        M = Mat(R, [[R.one, 0], [0, R.one]])
        for s, t in T.sl2_unitri(R, S, g.rows):
            M = M @ (up(t) if s == "+" else lo(t))
        assert M == g
        lam, ops = T.sl2_tri(R, S, g.rows)
        M = Mat(R, [[lam, 0], [0, R.inv(lam)]])
        for s, t in ops:
            M = M @ (up(t) if s == "+" else lo(t))
        assert M == g


def test_empty_word_gives_empty_form(gf4):
    for n in (4, 5):
        for mode in ("tri", "unitri"):
            form = T.tavgen_factor(T.GeneratorWord(gf4, n, []), mode)
            assert form.factors == []
            assert form.product.is_identity()


def test_non_simple_letters_are_rejected(gf4):
    rs = T.build_root_system(4)
    w = T.GeneratorWord(gf4, 4, [(rs["a1+a2"], 1)])
    with pytest.raises(ValueError):
        T.tavgen_factor(w)


words = st.tuples(
    st.sampled_from(["gf(4)", "gf(9)", "zi(5)"]),
    st.sampled_from([3, 4, 5]),
    st.integers(0, 12),
    st.integers(0, 2**32),
    st.sampled_from(["tri", "unitri"]),
)


@given(words)
def test_tavgen_round_trip_and_shape(data):
    spec, n, length, seed, mode = data
    R = ring_parse(spec)
    w = T.random_word(R, n, length, random.Random(seed))
    form = T.tavgen_factor(w, mode, check=True)
    assert form.product == T.word_eval(w)
    assert T.shape_ok(form, n, mode)
    assert form.is_alternating()
    if mode == "tri" and form.head is not None:
        assert all(form.head[i, j] == 0 for i in range(n) for j in range(n) if i != j)


def test_untrimmed_tavgen_keeps_target_shape(gf4):
    rng = random.Random(5)
    for n in (4, 5):
        w = T.random_word(gf4, n, 10, rng)
        assert T.tavgen_factor(w, "unitri", trim=False).shape == T.target_shape(n, "unitri")
        assert T.tavgen_factor(w, "tri", trim=False).shape == "+-+"
