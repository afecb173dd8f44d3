import random

import pytest

from oqkit.rootdata import (
    build_root_datum,
    dominance_leq,
    l_adic_decompose,
    pairing,
    parse_type,
    weight_predicates,
    wt_add,
    wt_scale,
)

A1 = build_root_datum("A", 1)
A2 = build_root_datum("A", 2)


def test_cartan_tables():
    assert A1.num_positive == 1 and A1.cartan == ((2,),)
    assert A2.num_positive == 3 and A2.cartan == ((2, -1), (-1, 2))
    g2 = build_root_datum("G", 2)
    assert g2.num_positive == 6
    assert g2.cartan == ((2, -3), (-1, 2))
    assert g2.symmetrizers == (1, 3)
    b2 = build_root_datum("B", 2)
    assert b2.cartan == ((2, -1), (-2, 2))
    assert b2.symmetrizers == (2, 1)


def test_known_root_counts():
    for series, rank, count in [
        ("A", 3, 6),
        ("B", 3, 9),
        ("C", 3, 9),
        ("D", 4, 12),
        ("F", 4, 24),
    ]:
        assert build_root_datum(series, rank).num_positive == count


def test_invalid_types_rejected():
    for series, rank in [("Q", 1), ("A", 0), ("B", 1), ("E", 5), ("G", 3), ("F", 3)]:
        with pytest.raises(ValueError):
            build_root_datum(series, rank)
    with pytest.raises(ValueError):
        parse_type("A")
    with pytest.raises(ValueError):
        parse_type("AX")


def test_pairing_examples():
    assert pairing(A1, (3,), A1.positive_roots[0]) == 3
    highest = max(A2.positive_roots, key=lambda r: r.height)
    assert pairing(A2, (1, 1), highest) == 2
    alpha2 = A2.simple_root(2)
    assert pairing(A2, (2, 0), alpha2) == 0


def test_pairing_linear():
    rng = random.Random(0)
    for _ in range(50):
        lam = tuple(rng.randint(-5, 5) for _ in range(2))
        mu = tuple(rng.randint(-5, 5) for _ in range(2))
        for r in A2.positive_roots:
            assert pairing(A2, wt_add(lam, mu), r) == pairing(A2, lam, r) + pairing(A2, mu, r)


def test_dominance_examples():
    assert dominance_leq(A1, (-2,), (0,))
    assert not dominance_leq(A1, (-1,), (0,))
    assert dominance_leq(A2, (0, 0), (1, 1))


def test_dominance_partial_order():
    rng = random.Random(1)
    pts = [tuple(rng.randint(-4, 4) for _ in range(2)) for _ in range(40)]
    for a in pts:
        assert dominance_leq(A2, a, a)
    for _ in range(300):
        a, b, c = rng.choice(pts), rng.choice(pts), rng.choice(pts)
        if dominance_leq(A2, a, b) and dominance_leq(A2, b, a):
            assert a == b
        if dominance_leq(A2, a, b) and dominance_leq(A2, b, c):
            assert dominance_leq(A2, a, c)


def test_l_adic_examples():
    pair = l_adic_decompose(A1, (7,), 3)
    assert (pair.lambda0, pair.lambda1) == ((1,), (2,))
    pair = l_adic_decompose(A1, (-2,), 3)
    assert (pair.lambda0, pair.lambda1) == ((1,), (-1,))
    pair = l_adic_decompose(A1, (-1,), 3)
    assert (pair.lambda0, pair.lambda1) == ((2,), (-1,))


def test_l_adic_round_trip():
    rng = random.Random(2)
    for datum in (A1, A2):
        n = datum.rank
        for l in (3, 5, 7):
            for _ in range(40):
                lam = tuple(rng.randint(-12, 12) for _ in range(n))
                pair = l_adic_decompose(datum, lam, l)
                assert all(0 <= x < l for x in pair.lambda0)
                assert wt_add(pair.lambda0, wt_scale(l, pair.lambda1)) == lam


def test_invalid_l_rejected():
    for bad in (2, 1, 4, -3, 0):
        with pytest.raises(ValueError):
            l_adic_decompose(A1, (0,), bad)
    with pytest.raises(ValueError):
        l_adic_decompose(build_root_datum("G", 2), (0, 0), 9)


def test_weight_predicates_paper_cases():
    p = weight_predicates(A1, (-1,), 3)
    assert p.antidominant and p.special and not p.regular and not p.l_regular
    p = weight_predicates(A1, (2,), 3)
    assert p.steinberg and p.special
    p = weight_predicates(A1, (4,), 3)
    assert p.l_regular and p.dominant


def test_special_iff_l_divides_shifted():
    # special <=> lambda + rho divisible by l coordinate-wise <=> lambda0 = (l-1)rho
    rng = random.Random(3)
    for l in (3, 5):
        for _ in range(60):
            lam = tuple(rng.randint(-10, 10) for _ in range(2))
            p = weight_predicates(A2, lam, l)
            divisible = all((x + 1) % l == 0 for x in lam)
            assert p.special == divisible
