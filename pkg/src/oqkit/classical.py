"""Classical integral category-O combinatorics from finite Weyl-group KL data.

For a dot-orbit with antidominant base, the expansion of simple characters
into Verma characters is the signed KL-value matrix at minimal coset
representatives; Verma composition multiplicities are its inverse, computed
by exact unitriangular inversion.  Classical tilting multiplicities come from
the inversion duality (T(kappa):Delta(nu)) = [Delta(-nu-2rho):L(-kappa-2rho)],
which in regular blocks reduces to KL values at 1 (checked in the tests).
"""

from __future__ import annotations

from .kl import engine_for
from .rootdata import RootDatum, Weight, wt_scale, wt_sub
from .weyl import finite_weyl

_BLOCKS: dict[tuple, dict] = {}


def _block(datum: RootDatum, lam: Weight) -> dict:
    """Orbit data for the dot-orbit of lam: minimal reps and both matrices."""
    group = finite_weyl(datum)
    _, base = group.min_to_antidominant(lam)
    key = (datum.series, datum.rank, base)
    cached = _BLOCKS.get(key)
    if cached is not None:
        return cached
    engine = engine_for(group)
    orbit = group.dot_orbit(base)
    reps = {}
    for mu in orbit:
        w, b = group.min_to_antidominant(mu)
        assert b == base
        reps[mu] = w
    order = sorted(orbit, key=lambda m: group.length(reps[m]))
    index = {mu: i for i, mu in enumerate(order)}
    size = len(order)
    # p[i][j]: coefficient of ch Delta(order[i]) in ch L(order[j])
    p = [[0] * size for _ in range(size)]
    for j, muj in enumerate(order):
        wj = reps[muj]
        for i, mui in enumerate(order):
            yi = reps[mui]
            if not group.bruhat_leq(yi, wj):
                continue
            sign = -1 if (group.length(yi) + group.length(wj)) % 2 else 1
            p[i][j] = sign * engine.value_at_one(yi, wj)
    # mult[i][j] = [Delta(order[i]) : L(order[j])]; the matrices are mutually
    # inverse: sum_j mult[v][j] * p[y][j] = delta_{v,y}
    mult = [[0] * size for _ in range(size)]
    for v in range(size):
        mult[v][v] = 1
        # order is sorted by length, so indices j < v have shorter reps
        for j in range(v - 1, -1, -1):
            acc = 0
            for k in range(j + 1, v + 1):
                acc += mult[v][k] * p[j][k]
            mult[v][j] = -acc
    block = {"base": base, "order": order, "index": index, "p": p, "mult": mult}
    _BLOCKS[key] = block
    return block


def in_same_block(datum: RootDatum, lam: Weight, mu: Weight) -> bool:
    group = finite_weyl(datum)
    return group.min_to_antidominant(lam)[1] == group.min_to_antidominant(mu)[1]


def verma_simple_mult(datum: RootDatum, lam: Weight, mu: Weight) -> int:
    """[Delta_C(lam) : L_C(mu)], exact, any integral weights."""
    if not in_same_block(datum, lam, mu):
        return 0
    block = _block(datum, lam)
    return block["mult"][block["index"][tuple(lam)]][block["index"][tuple(mu)]]


def p_coeff(datum: RootDatum, mu: Weight, lam: Weight) -> int:
    """Coefficient of ch Delta_C(mu) in ch L_C(lam) (signed, may be negative)."""
    if not in_same_block(datum, lam, mu):
        return 0
    block = _block(datum, lam)
    return block["p"][block["index"][tuple(mu)]][block["index"][tuple(lam)]]


def simple_into_vermas(datum: RootDatum, lam: Weight) -> dict[Weight, int]:
    """Nonzero coefficients of ch L_C(lam) on the Verma basis."""
    block = _block(datum, lam)
    j = block["index"][tuple(lam)]
    return {mu: block["p"][i][j] for i, mu in enumerate(block["order"]) if block["p"][i][j]}


def projective_verma_mult(datum: RootDatum, lam: Weight, mu: Weight) -> int:
    """(P_C(lam) : Delta_C(mu)) by classical BGG reciprocity."""
    return verma_simple_mult(datum, mu, lam)


def tilting_verma_mult(datum: RootDatum, kappa: Weight, nu: Weight) -> int:
    """(T_C(kappa) : Delta_C(nu)) via the inversion duality."""
    two_rho = wt_scale(2, datum.rho)
    return verma_simple_mult(
        datum, wt_sub(wt_scale(-1, nu), two_rho), wt_sub(wt_scale(-1, kappa), two_rho)
    )


def tilting_support(datum: RootDatum, kappa: Weight) -> dict[Weight, int]:
    """All nonzero (T_C(kappa) : Delta_C(nu)), nu in the dot-orbit of kappa."""
    group = finite_weyl(datum)
    out = {}
    for nu in group.dot_orbit(kappa):
        m = tilting_verma_mult(datum, kappa, nu)
        if m:
            out[nu] = m
    return out


def projective_support(datum: RootDatum, lam: Weight) -> dict[Weight, int]:
    """All nonzero (P_C(lam) : Delta_C(nu))."""
    group = finite_weyl(datum)
    out = {}
    for nu in group.dot_orbit(lam):
        m = projective_verma_mult(datum, lam, nu)
        if m:
            out[nu] = m
    return out
