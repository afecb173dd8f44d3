"""Closed-form sl2 (type A1) ground truth used by the acceptance suite.

Hand-coded case analysis, deliberately sharing no machinery with the general
pipelines: weights are plain integers, characters plain dicts.  For odd l,
an integer weight lam is l-singular when lam = -1 (mod l); otherwise write
lam = lam0 + l*lam1 with 0 <= lam0 < l-1.

Verma composition factors:
  singular, lam <  0:  L(lam)
  singular, lam >= 0:  L(lam), L(-lam-2)
  regular,  lam <  0:  L(lam), L(-lam0-2+l*lam1)
  regular,  lam >= 0:  L(lam), L(-lam0-2+l*lam1), L(-lam-2), L(lam0+l(-lam1-2)),
                       where the middle two coincide when lam1 = 0.

Tilting Verma-filtration factors:
  singular, lam <  0:  Delta(lam)
  singular, lam >= 0:  Delta(lam), Delta(-lam-2)
  regular,  lam <  0:  Delta(lam), Delta(-lam0-2+l*lam1)
  regular,  lam >= 0:  Delta(lam), Delta(-lam0-2+l*lam1), Delta(-lam-2),
                       Delta(lam0-l*lam1); for lam1 = 0 the first/last and the
                       middle two coincide, leaving two factors.
"""

from __future__ import annotations

from dataclasses import dataclass

from .rootdata import RootDatum


def _require_a1(datum: RootDatum) -> None:
    if (datum.series, datum.rank) != ("A", 1):
        raise ValueError("the sl2 oracle only accepts type A1")


def _require_l(l: int) -> None:
    if l < 3 or l % 2 == 0:
        raise ValueError(f"l must be odd and >= 3, got {l}")


@dataclass(frozen=True)
class Sl2Case:
    l: int
    lam: int
    classification: str  # singular-neg | singular-pos | regular-neg | regular-pos
    lam0: int
    lam1: int


def classify(lam: int, l: int) -> Sl2Case:
    _require_l(l)
    singular = (lam + 1) % l == 0
    if singular:
        kind = "singular-neg" if lam < 0 else "singular-pos"
        lam0 = l - 1
        lam1 = (lam - lam0) // l
    else:
        kind = "regular-neg" if lam < 0 else "regular-pos"
        lam0 = lam % l
        lam1 = (lam - lam0) // l
        assert 0 <= lam0 < l - 1
    return Sl2Case(l=l, lam=lam, classification=kind, lam0=lam0, lam1=lam1)


def sl2_verma_factors(datum: RootDatum, lam: int, l: int) -> dict[int, int]:
    """Multiset of composition factors of the quantum Verma at lam."""
    _require_a1(datum)
    case = classify(lam, l)
    if case.classification == "singular-neg":
        return {lam: 1}
    if case.classification == "singular-pos":
        return {lam: 1, -lam - 2: 1}
    mid = -case.lam0 - 2 + l * case.lam1
    if case.classification == "regular-neg":
        return {lam: 1, mid: 1}
    factors = {lam, mid, -lam - 2, case.lam0 + l * (-case.lam1 - 2)}
    return {w: 1 for w in factors}


def sl2_tilting_factors(datum: RootDatum, lam: int, l: int) -> dict[int, int]:
    """Multiset of Verma filtration factors of the indecomposable tilting at lam."""
    _require_a1(datum)
    case = classify(lam, l)
    if case.classification == "singular-neg":
        return {lam: 1}
    if case.classification == "singular-pos":
        return {lam: 1, -lam - 2: 1}
    mid = -case.lam0 - 2 + l * case.lam1
    if case.classification == "regular-neg":
        return {lam: 1, mid: 1}
    factors = {lam, mid, -lam - 2, case.lam0 - l * case.lam1}
    return {w: 1 for w in factors}


def sl2_simple_character(datum: RootDatum, lam: int, l: int, depth: int) -> dict[int, int]:
    """ch L_q(lam) down to lam - 2*depth, from the tensor factorization.

    The restricted factor is the string lam0, lam0-2, ..., -lam0; the
    classical factor is the full string for dominant lam1 and the (truncated)
    Verma string for antidominant lam1.
    """
    _require_a1(datum)
    _require_l(l)
    lam0 = lam % l
    lam1 = (lam - lam0) // l
    restr = list(range(lam0, -lam0 - 1, -2))
    if lam1 >= 0:
        cls = list(range(lam1, -lam1 - 1, -2))
    else:
        cls = [lam1 - 2 * k for k in range(depth + 1)]
    out: dict[int, int] = {}
    floor = lam - 2 * depth
    for a in cls:
        for b in restr:
            w = l * a + b
            if w >= floor:
                out[w] = out.get(w, 0) + 1
    return out
