import pytest

from oqkit.kl import CacheError, KLEngine, cache_load, cache_stats, cache_store, engine_for
from oqkit.klpoly import KLPolynomial
from oqkit.rootdata import build_root_datum
from oqkit.weyl import affine_weyl, finite_weyl

A1 = build_root_datum("A", 1)
A2 = build_root_datum("A", 2)
A3 = build_root_datum("A", 3)
B2 = build_root_datum("B", 2)


def test_polynomial_arithmetic():
    one = KLPolynomial.one()
    q = KLPolynomial.q()
    p = one + q
    assert str(p) == "1 + q"
    assert str(p * p) == "1 + 2q + q^2"
    assert (p - p).is_zero()
    assert p.at_one() == 2
    assert p.shift(2).coeffs == (0, 0, 1, 1)
    assert str(KLPolynomial.zero()) == "0"
    assert str(one - q.scale(2)) == "1 - 2q"


def test_rank_two_all_trivial():
    for datum in (A2, B2):
        group = finite_weyl(datum)
        engine = engine_for(group)
        for w in group.elements():
            for y in group.elements():
                p = engine.polynomial(y, w)
                if group.bruhat_leq(y, w):
                    assert p == KLPolynomial.one()
                else:
                    assert p.is_zero()


def test_a3_nontrivial_example():
    group = finite_weyl(A3)
    engine = engine_for(group)
    y = group.parse_word("2")
    w = group.parse_word("2 1 3 2")
    p = engine.polynomial(y, w)
    assert p == KLPolynomial((1, 1))
    assert p.degree <= (group.length(w) - group.length(y) - 1) // 2
    assert engine.mu(y, w) == 1


def test_mu_cover_and_parity():
    group = finite_weyl(A2)
    engine = engine_for(group)
    s1 = group.generators[1]
    s1s2 = group.parse_word("1 2")
    assert engine.mu(s1, s1s2) == 1  # covering pair
    assert engine.mu(group.identity, s1s2) == 0  # even length difference


def test_monotone_vanishing_a3():
    group = finite_weyl(A3)
    engine = engine_for(group)
    for w in group.elements():
        for y in group.elements():
            if not group.bruhat_leq(y, w):
                assert engine.polynomial(y, w).is_zero()


def test_word_independence():
    # recursion result must not depend on the descent chosen at each step
    for group in (finite_weyl(A3), affine_weyl(A1)):
        emin = KLEngine(group, descent_choice="min")
        emax = KLEngine(group, descent_choice="max")
        if group.affine:
            elements = group.length_ball(6)
        else:
            elements = group.elements()
        for w in elements:
            for y in elements:
                assert emin.polynomial(y, w) == emax.polynomial(y, w)


def test_inverse_diagonal_and_affine_a1():
    group = affine_weyl(A1)
    engine = engine_for(group)
    ball = group.length_ball(8)
    for w in ball:
        assert engine.inverse_polynomial(w, w) == KLPolynomial.one()
        for z in ball:
            q = engine.inverse_polynomial(z, w)
            if group.bruhat_leq(z, w):
                assert q == KLPolynomial.one()
            else:
                assert q.is_zero()


def test_inverse_equals_w0_twisted_kl():
    # finite groups: Q_{z,w} = P_{w0 w, w0 z}
    for datum in (A2, A3):
        group = finite_weyl(datum)
        engine = engine_for(group)
        w0 = group.longest_element()
        for w in group.elements():
            for z in group.elements():
                lhs = engine.inverse_polynomial(z, w)
                rhs = engine.polynomial(group.multiply(w0, w), group.multiply(w0, z))
                assert lhs == rhs


def _delta_check(group, engine, y, w):
    acc = KLPolynomial.zero()
    for z in group.bruhat_interval(y, w):
        sign = -1 if (group.length(z) - group.length(y)) % 2 else 1
        acc = acc + (engine.polynomial(y, z) * engine.inverse_polynomial(z, w)).scale(sign)
    expected = KLPolynomial.one() if y == w else KLPolynomial.zero()
    assert acc == expected, (y, w)


def test_delta_identity_samples():
    group = finite_weyl(B2)
    engine = engine_for(group)
    for w in group.elements():
        for y in group.bruhat_lowerset(w):
            _delta_check(group, engine, y, w)


def test_cache_round_trip(tmp_path):
    group = finite_weyl(A3)
    engine = KLEngine(group)
    engine.fill_finite_table()
    path = tmp_path / "a3.jsonl"
    n = cache_store(engine, path)
    assert n == len(engine._p)
    fresh = KLEngine(group)
    assert cache_load(fresh, path) == n
    assert fresh._p == engine._p
    # bit-identical re-store
    path2 = tmp_path / "a3-again.jsonl"
    cache_store(fresh, path2)
    assert path.read_bytes() == path2.read_bytes()
    info = cache_stats(path)
    assert info["entries"] == n
    assert info["header"]["series"] == "A" and info["header"]["rank"] == 3


def test_cache_group_mismatch(tmp_path):
    engine = KLEngine(finite_weyl(A2))
    engine.fill_finite_table()
    path = tmp_path / "a2.jsonl"
    cache_store(engine, path)
    with pytest.raises(CacheError, match="mismatch"):
        cache_load(KLEngine(finite_weyl(A3)), path)
    with pytest.raises(CacheError, match="mismatch"):
        cache_load(KLEngine(affine_weyl(A2)), path)


def test_cache_corrupt_rejected(tmp_path):
    engine = KLEngine(finite_weyl(A2))
    engine.fill_finite_table()
    path = tmp_path / "a2.jsonl"
    cache_store(engine, path)
    text = path.read_text()
    truncated = tmp_path / "broken.jsonl"
    truncated.write_text(text[: len(text) // 2].rsplit("\n", 1)[0] + '\n{"y": "1", "w":')
    with pytest.raises(CacheError, match="parse"):
        cache_load(KLEngine(finite_weyl(A2)), truncated)
    empty = tmp_path / "empty.jsonl"
    empty.write_text("")
    with pytest.raises(CacheError, match="empty"):
        cache_load(KLEngine(finite_weyl(A2)), empty)
    with pytest.raises(CacheError, match="cannot read"):
        cache_stats(tmp_path / "missing.jsonl")
