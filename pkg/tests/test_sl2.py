import pytest

from oqkit import oq, sl2
from oqkit.rootdata import build_root_datum

A1 = build_root_datum("A", 1)
A2 = build_root_datum("A", 2)


def test_rejects_other_types():
    with pytest.raises(ValueError):
        sl2.sl2_verma_factors(A2, 0, 3)
    with pytest.raises(ValueError):
        sl2.sl2_tilting_factors(A2, 0, 3)
    with pytest.raises(ValueError):
        sl2.sl2_verma_factors(A1, 0, 4)


def test_classification():
    case = sl2.classify(-1, 3)
    assert case.classification == "singular-neg"
    case = sl2.classify(4, 3)
    assert case.classification == "regular-pos" and (case.lam0, case.lam1) == (1, 1)
    for lam in range(-12, 13):
        case = sl2.classify(lam, 5)
        assert (case.classification.startswith("singular")) == ((lam + 1) % 5 == 0)


def test_verma_factor_examples():
    assert sl2.sl2_verma_factors(A1, -1, 3) == {-1: 1}
    assert sl2.sl2_verma_factors(A1, 4, 3) == {4: 1, 0: 1, -6: 1, -8: 1}
    assert sl2.sl2_verma_factors(A1, -2, 3) == {-2: 1, -6: 1}
    assert sl2.sl2_verma_factors(A1, 1, 3) == {1: 1, -3: 1, -5: 1}  # lam1=0 coincidence


def test_tilting_factor_examples():
    assert sl2.sl2_tilting_factors(A1, 4, 3) == {4: 1, 0: 1, -6: 1, -2: 1}
    assert sl2.sl2_tilting_factors(A1, 5, 3) == {5: 1, -7: 1}
    assert sl2.sl2_tilting_factors(A1, 1, 3) == {1: 1, -3: 1}
    assert sl2.sl2_tilting_factors(A1, -1, 3) == {-1: 1}


def test_simple_character_examples():
    assert sl2.sl2_simple_character(A1, 0, 3, 6) == {0: 1}
    assert sl2.sl2_simple_character(A1, 2, 3, 6) == {2: 1, 0: 1, -2: 1}
    got = sl2.sl2_simple_character(A1, -2, 3, 4)
    assert got == {-2: 1, -4: 1, -8: 1, -10: 1}


def test_oracle_matches_pipelines_small_grid():
    for l in (3, 5):
        for lam in range(-6, 7):
            assert sl2.sl2_verma_factors(A1, lam, l) == {
                w[0]: m for w, m in oq.quantum_verma_factor_table(A1, (lam,), l).nonzero().items()
            }
            assert sl2.sl2_tilting_factors(A1, lam, l) == {
                w[0]: m for w, m in oq.tilting_verma_table(A1, (lam,), l).nonzero().items()
            }


def test_character_balance_against_oracle():
    # ch Delta_q(lam) = sum of oracle factors times oracle simple characters
    depth = 20
    for l in (3, 5):
        for lam in range(-6, 7):
            floor = lam - 2 * depth
            total = {}
            for mu, mult in sl2.sl2_verma_factors(A1, lam, l).items():
                piece = sl2.sl2_simple_character(A1, mu, l, (mu - floor) // 2)
                for w, c in piece.items():
                    if w >= floor:
                        total[w] = total.get(w, 0) + mult * c
            expected = {lam - 2 * k: 1 for k in range(depth + 1)}
            assert total == expected, (l, lam)
