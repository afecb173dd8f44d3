import random

import pytest

from oqkit.chars import (
    TruncatedCharacter,
    Window,
    admissible_set,
    agree_on,
    baby_verma_character,
    char_sum,
    frobenius_twist,
    multiply,
    restrict,
    restricted_simple_character,
    simple_character,
    steinberg_character,
    unit_character,
    verma_character,
    weyl_character,
)
from oqkit.rootdata import build_root_datum, wt_add, wt_scale

A1 = build_root_datum("A", 1)
A2 = build_root_datum("A", 2)


def test_verma_character_examples():
    ch = verma_character(A1, (0,), Window.below((0,), 3))
    assert ch.values == {(0,): 1, (-2,): 1, (-4,): 1, (-6,): 1}
    ch = verma_character(A2, (0, 0), Window.below((0, 0), 2))
    assert ch.values[(-1, -1)] == 2  # alpha1+alpha2 and {alpha1, alpha2}


def test_verma_translation_identity():
    rng = random.Random(4)
    for _ in range(10):
        lam = (rng.randint(-4, 4),)
        mu = (rng.randint(-4, 4),)
        win = Window.below(wt_add(lam, mu), 8)
        lhs = verma_character(A1, lam, Window.below(lam, 8)).shift(mu)
        rhs = verma_character(A1, wt_add(lam, mu), win)
        assert agree_on(lhs, rhs, win)


def test_baby_verma_examples():
    ch = baby_verma_character(A1, (1,), 3)
    assert ch.values == {(1,): 1, (-1,): 1, (-3,): 1}
    assert ch.dimension() == 3
    st = steinberg_character(A1, 3)
    assert st.values == {(2,): 1, (0,): 1, (-2,): 1}
    assert baby_verma_character(A2, (0, 0), 3).dimension() == 27


def test_baby_verma_translation():
    lhs = baby_verma_character(A1, (1,), 3).shift((6,))
    rhs = baby_verma_character(A1, (7,), 3)
    assert lhs.values == rhs.values


def test_weyl_character_examples():
    assert weyl_character(A1, (2,)).values == {(2,): 1, (0,): 1, (-2,): 1}
    assert weyl_character(A1, (-1,)).values == {}
    neg = weyl_character(A1, (-4,))
    assert neg.values == {(2,): -1, (0,): -1, (-2,): -1}
    adj = weyl_character(A2, (1, 1))
    assert adj.dimension() == 8 and adj.values[(0, 0)] == 2


def test_frobenius_twist():
    ch = unit_character(A1, (0,))
    assert frobenius_twist(ch, 3).values == {(0,): 1}
    src = TruncatedCharacter(A1, Window.below((-1,), 2), {(-1,): 1, (-3,): 1})
    tw = frobenius_twist(src, 3)
    assert tw.values == {(-3,): 1, (-9,): 1}
    assert tw.window.depth == 6


def test_multiply_by_unit():
    win = Window.below((0,), 6)
    ch = verma_character(A1, (0,), win)
    prod = multiply(ch, unit_character(A1, (0,)))
    assert agree_on(prod, ch, win)


def test_eq14a_identity():
    rng = random.Random(7)
    for datum in (A1, A2):
        n = datum.rank
        for l in (3, 5):
            for _ in range(4):
                nu = tuple(rng.randint(-3, 3) for _ in range(n))
                eta = tuple(rng.randint(-l, l) for _ in range(n))
                target = wt_add(wt_scale(l, nu), eta)
                win = Window.below(target, 8)
                lhs = multiply(
                    frobenius_twist(verma_character(datum, nu, Window.below(nu, 10)), l),
                    baby_verma_character(datum, eta, l),
                )
                assert agree_on(lhs, verma_character(datum, target, win), win)


def test_steinberg_factorization():
    # ch Delta_q(l lam + (l-1)rho) = (ch Delta_C(lam))^[l] . ch St_l
    for l in (3, 5):
        lam = (1,)
        target = wt_add(wt_scale(l, lam), wt_scale(l - 1, A1.rho))
        win = Window.below(target, 10)
        lhs = multiply(
            frobenius_twist(verma_character(A1, lam, Window.below(lam, 12)), l),
            steinberg_character(A1, l),
        )
        assert agree_on(lhs, verma_character(A1, target, win), win)


def test_restricted_simple_characters():
    assert restricted_simple_character(A1, (1,), 3).values == {(1,): 1, (-1,): 1}
    assert restricted_simple_character(A1, (2,), 3).values == {
        (2,): 1,
        (0,): 1,
        (-2,): 1,
    }
    assert restricted_simple_character(A1, (0,), 3).values == {(0,): 1}
    with pytest.raises(ValueError):
        restricted_simple_character(A1, (3,), 3)
    # A2 at l=3: the restricted simple at (1,1) is the 7-dimensional module
    ch = restricted_simple_character(A2, (1, 1), 3)
    assert ch.dimension() == 7 and ch.values[(0, 0)] == 1
    # theta-wall singular weight stays a full Weyl character
    ch = restricted_simple_character(A2, (0, 1), 3)
    assert ch.dimension() == 3


def test_simple_character_examples():
    ch = simple_character(A1, (0,), 3, Window.below((0,), 12))
    assert ch.values == {(0,): 1}
    ch = simple_character(A1, (-2,), 3, Window.below((-2,), 4))
    assert ch.values == {(-2,): 1, (-4,): 1, (-8,): 1, (-10,): 1}
    ch = simple_character(A1, (3,), 3, Window.below((3,), 6))
    assert ch.values == {(3,): 1, (-3,): 1}


def test_simple_character_invariants():
    rng = random.Random(9)
    for l in (3, 5):
        for _ in range(6):
            lam = (rng.randint(-6, 6),)
            win = Window.below(lam, 8)
            ch = simple_character(A1, lam, l, win)
            assert all(v > 0 for v in ch.values.values())
            assert ch.values.get(lam) == 1


def test_multiply_window_bookkeeping():
    # windowed x windowed: single tops shrink to the smaller depth
    a = verma_character(A1, (0,), Window.below((0,), 5))
    b = verma_character(A1, (0,), Window.below((0,), 9))
    prod = multiply(a, b)
    assert prod.window.depth == 5
    assert prod.window.tops == ((0,),)
    # complete x windowed keeps the windowed depth
    fin = baby_verma_character(A1, (2,), 3)
    prod = multiply(fin, b)
    assert prod.window.depth == 9
    # the product values are the true convolution on the window
    check = verma_character(A1, (0,), Window.below((0,), 20))
    manual = {}
    for wa, ca in fin.values.items():
        for wb, cb in check.values.items():
            k = wt_add(wa, wb)
            manual[k] = manual.get(k, 0) + ca * cb
    for mu in admissible_set(A1, prod.window):
        assert prod.values.get(mu, 0) == manual.get(mu, 0)


def test_restrict_and_char_sum():
    win = Window.below((0,), 4)
    ch = verma_character(A1, (0,), Window.below((0,), 10))
    small = restrict(ch, win)
    assert set(small.values) <= admissible_set(A1, win)
    with pytest.raises(ValueError):
        restrict(small, Window.below((0,), 10))
    total = char_sum(A1, [small, small], win)
    assert total.values[(0,)] == 2
