"""Multiplicity pipelines and tensor decompositions for category O at a root
of unity.

The authoritative computations are oracle-style: baby-Verma composition
factors come from greedy character peeling (both sides finite and exact),
quantum Verma factors from the finite baby/classical convolution, and tilting
multiplicities from the shifted-Steinberg expansion

    lam - (l-1)rho = delta0 + l*delta1,   delta0 in X_l,

which gives (T_q(lam) : Delta_q(l nu + eta)) as the convolution of classical
tilting multiplicities of T_C(delta1) with baby multiplicities of the
finite-dimensional projective cover at w0(delta0 - (l-1)rho).  On weights
where the paper's double-KL formula applies (classical part regular, finite
part l-regular) the KL fast path is available and agrees; elsewhere it is
rejected rather than extrapolated.
"""

from __future__ import annotations

from dataclasses import dataclass

from . import classical
from .chars import (
    TruncatedCharacter,
    Window,
    admissible_set,
    baby_verma_character,
    restricted_simple_character,
    simple_character,
    sort_weights,
    verma_character,
)
from .kl import engine_for
from .rootdata import (
    RootDatum,
    Weight,
    dominance_leq,
    int_root_coords,
    is_antidominant,
    is_dominant,
    l_adic_decompose,
    pairing,
    validate_l,
    wt_add,
    wt_scale,
    wt_sub,
)
from .weyl import affine_weyl, finite_weyl


class RegularityError(Exception):
    """A KL fast path was requested outside its validated range."""


class InconsistencyError(Exception):
    """Character peeling produced a negative coefficient (convention bug)."""


@dataclass(frozen=True)
class DecompositionRecord:
    kind: str  # simple | projective | injective | tilting
    classical_weight: Weight
    finite_weight: Weight
    l: int


@dataclass
class MultiplicityTable:
    subject: str
    entries: dict[Weight, int]
    complete: bool = True

    def nonzero(self) -> dict[Weight, int]:
        return {w: m for w, m in self.entries.items() if m}


# -- tensor decompositions ------------------------------------------------------


def decompose(kind: str, datum: RootDatum, lam: Weight, l: int) -> DecompositionRecord:
    """The (classical, finite) tensor-factor labels of the four module families."""
    pair = l_adic_decompose(datum, lam, l)
    group = finite_weyl(datum)
    if kind in ("simple", "projective", "injective"):
        return DecompositionRecord(kind, pair.lambda1, pair.lambda0, l)
    if kind == "tilting":
        w0 = group.longest_element()
        finite = wt_add(wt_scale(l, datum.rho), group.dot(w0, pair.lambda0))
        return DecompositionRecord(kind, wt_sub(pair.lambda1, datum.rho), finite, l)
    raise ValueError(f"unknown decomposition kind {kind!r}")


def reconstruct(datum: RootDatum, record: DecompositionRecord) -> Weight:
    """The highest weight determined by a decomposition record."""
    group = finite_weyl(datum)
    if record.kind == "tilting":
        lam1 = wt_add(record.classical_weight, datum.rho)
        w0 = group.longest_element()
        lam0 = group.dot(w0, wt_sub(record.finite_weight, wt_scale(record.l, datum.rho)))
    else:
        lam1, lam0 = record.classical_weight, record.finite_weight
    return wt_add(wt_scale(record.l, lam1), lam0)


# -- baby Verma factors by peeling ----------------------------------------------

_BABY_FACTORS: dict[tuple, dict[Weight, int]] = {}


def baby_simple_character(datum: RootDatum, mu: Weight, l: int) -> TruncatedCharacter:
    """ch of the baby simple with highest weight mu: e^{l mu^1} ch L_q(mu^0)."""
    pair = l_adic_decompose(datum, mu, l)
    return restricted_simple_character(datum, pair.lambda0, l).shift(
        wt_scale(l, pair.lambda1)
    )


def baby_verma_factors(datum: RootDatum, lam: Weight, l: int) -> dict[Weight, int]:
    """All [Delta~_q(lam) : L~_q(mu)], by greedy peeling of finite characters.

    Translation-equivariant, so only the restricted part lam^0 is ever peeled.
    """
    pair = l_adic_decompose(datum, lam, l)
    key = (datum.series, datum.rank, pair.lambda0, l)
    table = _BABY_FACTORS.get(key)
    if table is None:
        table = _peel(datum, pair.lambda0, l)
        _BABY_FACTORS[key] = table
    shift = wt_scale(l, pair.lambda1)
    return {wt_add(mu, shift): m for mu, m in table.items()}


def _peel(datum: RootDatum, lam0: Weight, l: int) -> dict[Weight, int]:
    remaining = dict(baby_verma_character(datum, lam0, l).values)

    def heightdiff(mu: Weight) -> int:
        rc = int_root_coords(datum, wt_sub(lam0, mu))
        assert rc is not None
        return sum(rc)

    order = sorted(remaining, key=lambda mu: (heightdiff(mu), mu))
    factors: dict[Weight, int] = {}
    for tau in order:
        c = remaining.get(tau, 0)
        if c == 0:
            continue
        if c < 0:
            raise InconsistencyError(f"negative coefficient {c} at {tau} while peeling {lam0}")
        factors[tau] = c
        for mu, cm in baby_simple_character(datum, tau, l).values.items():
            left = remaining.get(mu, 0) - c * cm
            if left:
                remaining[mu] = left
            else:
                remaining.pop(mu, None)
    if remaining:
        raise InconsistencyError(f"peeling of {lam0} left a nonzero remainder")
    return factors


def baby_verma_simple_multiplicity(datum: RootDatum, lam: Weight, mu: Weight, l: int) -> int:
    return baby_verma_factors(datum, lam, l).get(tuple(mu), 0)


# -- quantum Verma factors --------------------------------------------------------


def quantum_verma_simple_multiplicity(
    datum: RootDatum, lam: Weight, mu: Weight, l: int
) -> int:
    """[Delta_q(lam) : L_q(mu)] as the finite baby/classical convolution."""
    mu = tuple(mu)
    if not dominance_leq(datum, mu, lam):
        return 0
    pair = l_adic_decompose(datum, mu, l)
    total = 0
    for kappa, m in baby_verma_factors(datum, lam, l).items():
        kpair = l_adic_decompose(datum, kappa, l)
        if kpair.lambda0 != pair.lambda0:
            continue
        total += m * classical.verma_simple_mult(datum, kpair.lambda1, pair.lambda1)
    return total


def quantum_verma_factor_table(datum: RootDatum, lam: Weight, l: int) -> MultiplicityTable:
    entries: dict[Weight, int] = {}
    for kappa, m in baby_verma_factors(datum, lam, l).items():
        kpair = l_adic_decompose(datum, kappa, l)
        group = finite_weyl(datum)
        for mu1 in group.dot_orbit(kpair.lambda1):
            c = classical.verma_simple_mult(datum, kpair.lambda1, mu1)
            if c:
                mu = wt_add(wt_scale(l, mu1), kpair.lambda0)
                entries[mu] = entries.get(mu, 0) + m * c
    return MultiplicityTable(subject=f"verma{list(lam)}", entries=entries)


# -- tilting multiplicities --------------------------------------------------------

_QPROJ: dict[tuple, dict[Weight, int]] = {}


def finite_projective_baby_multiplicities(
    datum: RootDatum, mu0: Weight, l: int
) -> dict[Weight, int]:
    """(Q_q(mu0) : Delta~_q(eta)) = [Delta~_q(eta) : L~_q(mu0)] for mu0 in X_l.

    The support is finite: eta must lie between mu0 and mu0 plus (l-1) times
    the sum of the positive roots.
    """
    mu0 = tuple(mu0)
    key = (datum.series, datum.rank, mu0, l)
    cached = _QPROJ.get(key)
    if cached is not None:
        return cached
    out: dict[Weight, int] = {}
    for eta in _box_above(datum, mu0, l):
        m = baby_verma_factors(datum, eta, l).get(mu0, 0)
        if m:
            out[eta] = m
    _QPROJ[key] = out
    return out


def _box_above(datum: RootDatum, mu: Weight, l: int) -> list[Weight]:
    import itertools

    n = datum.rank
    bound = [0] * n
    for r in datum.positive_roots:
        for i in range(n):
            bound[i] += (l - 1) * r.root_coords[i]
    cols = [tuple(datum.cartan[i][j] for i in range(n)) for j in range(n)]
    out = []
    for cs in itertools.product(*(range(b + 1) for b in bound)):
        eta = tuple(mu)
        for j, c in enumerate(cs):
            if c:
                eta = wt_add(eta, wt_scale(c, cols[j]))
        out.append(eta)
    return out


def shifted_steinberg_expansion(datum: RootDatum, lam: Weight, l: int):
    """lam = (l-1)rho + delta0 + l*delta1 with delta0 in X_l."""
    delta = wt_sub(lam, wt_scale(l - 1, datum.rho))
    pair = l_adic_decompose(datum, delta, l)
    return pair.lambda0, pair.lambda1


def tilting_verma_table(datum: RootDatum, lam: Weight, l: int) -> MultiplicityTable:
    """(T_q(lam) : Delta_q(.)) for every weight, general mode."""
    delta0, delta1 = shifted_steinberg_expansion(datum, lam, l)
    group = finite_weyl(datum)
    w0 = group.longest_element()
    mu0 = group.act(w0, wt_sub(delta0, wt_scale(l - 1, datum.rho)))
    assert all(0 <= x < l for x in mu0)
    classical_part = classical.tilting_support(datum, delta1)
    finite_part = finite_projective_baby_multiplicities(datum, mu0, l)
    entries: dict[Weight, int] = {}
    for nu, a in classical_part.items():
        for eta, b in finite_part.items():
            mu = wt_add(wt_scale(l, nu), eta)
            entries[mu] = entries.get(mu, 0) + a * b
    table = MultiplicityTable(subject=f"tilting{list(lam)}", entries=entries)
    assert table.entries.get(tuple(lam)) == 1, "tilting table must contain its own weight once"
    return table


def tilting_verma_multiplicity(
    datum: RootDatum, lam: Weight, mu: Weight, l: int, mode: str = "general"
) -> int:
    if mode == "general":
        return tilting_verma_table(datum, lam, l).entries.get(tuple(mu), 0)
    if mode == "kl":
        return tilting_verma_table_kl(datum, lam, l).entries.get(tuple(mu), 0)
    raise ValueError(f"unknown tilting mode {mode!r}")


def tilting_verma_table_kl(datum: RootDatum, lam: Weight, l: int) -> MultiplicityTable:
    """The double-KL fast path: P values for the classical tilting factor and
    inverse-KL values for the finite projective factor.

    Requires lam^1 - rho regular and lam^0 l-regular; otherwise rejected.
    """
    validate_l(datum, l)
    pair = l_adic_decompose(datum, lam, l)
    kappa = wt_sub(pair.lambda1, datum.rho)
    if any(pairing(datum, pair.lambda1, r) == 0 for r in datum.positive_roots):
        raise RegularityError(f"classical part {kappa} is not regular")
    nu0 = wt_add(pair.lambda0, datum.rho)
    if any(pairing(datum, nu0, r) % l == 0 for r in datum.positive_roots):
        raise RegularityError(f"finite part {pair.lambda0} is not l-regular")
    group = finite_weyl(datum)
    fin_engine = engine_for(group)
    w, _ = group.min_to_antidominant(kappa)
    winv = group.inverse(w)
    classical_part: dict[Weight, int] = {}
    for y in group.bruhat_lowerset(w):
        val = fin_engine.value_at_one(y, w)
        if val:
            nu = group.dot(group.multiply(y, winv), kappa)
            classical_part[nu] = classical_part.get(nu, 0) + val
    w0 = group.longest_element()
    # lambda~0 = l*rho + w0 . lambda0, in X_l because lambda0 is l-regular
    tilde0 = wt_add(wt_scale(l, datum.rho), group.dot(w0, pair.lambda0))
    assert all(0 <= x < l for x in tilde0)
    finite_part = _finite_projective_kl(datum, tilde0, l)
    entries: dict[Weight, int] = {}
    for nu, a in classical_part.items():
        for eta, b in finite_part.items():
            mu = wt_add(wt_scale(l, nu), eta)
            entries[mu] = entries.get(mu, 0) + a * b
    return MultiplicityTable(subject=f"tilting{list(lam)}", entries=entries)


def _finite_projective_kl(datum: RootDatum, mu0: Weight, l: int) -> dict[Weight, int]:
    """(Q_q(mu0) : Delta~_q(eta)) from affine KL values alone.

    Signed KL values at 1 give the transition from baby-simple to baby-Verma
    characters on the upward interval above mu0 (their validated range);
    unitriangular inversion of that matrix yields the multiplicities.
    """
    aff = affine_weyl(datum)
    engine = engine_for(aff)
    pos0 = aff.normalize_to_alcove(mu0, l)
    block = []
    for eta in _box_above(datum, mu0, l):
        ep = aff.normalize_to_alcove(eta, l)
        if ep.base == pos0.base:
            block.append((eta, ep.navigator))

    def hd(eta: Weight) -> int:
        rc = int_root_coords(datum, wt_sub(eta, mu0))
        assert rc is not None
        return sum(rc)

    block.sort(key=lambda t: (hd(t[0]), t[0]))
    size = len(block)
    p = [[0] * size for _ in range(size)]
    for j, (_, zj) in enumerate(block):
        for i, (_, zi) in enumerate(block):
            if aff.bruhat_leq(zi, zj):
                sign = -1 if (aff.length(zi) + aff.length(zj)) % 2 else 1
                p[i][j] = sign * engine.value_at_one(zi, zj)
    mult = [[0] * size for _ in range(size)]
    for v in range(size):
        mult[v][v] = 1
        for j in range(v - 1, -1, -1):
            acc = 0
            for k in range(j + 1, v + 1):
                acc += mult[v][k] * p[j][k]
            mult[v][j] = -acc
    return {block[v][0]: mult[v][0] for v in range(size) if mult[v][0]}


# -- projectives and BGG reciprocity ------------------------------------------------


def projective_verma_multiplicity(datum: RootDatum, lam: Weight, mu: Weight, l: int) -> int:
    """(P_q(lam) : Delta_q(mu)) = [Delta_q(mu) : L_q(lam)]; also the value of
    (I_q(lam) : nabla_q(mu))."""
    return quantum_verma_simple_multiplicity(datum, mu, lam, l)


def projective_verma_table(datum: RootDatum, lam: Weight, l: int) -> MultiplicityTable:
    """All nonzero (P_q(lam) : Delta_q(mu)); the support is finite because the
    baby factor below each classical orbit weight is boxed."""
    lam = tuple(lam)
    pair = l_adic_decompose(datum, lam, l)
    group = finite_weyl(datum)
    candidates: set[Weight] = set()
    for nu in group.dot_orbit(pair.lambda1):
        if not classical.verma_simple_mult(datum, nu, pair.lambda1):
            continue
        base = wt_add(wt_scale(l, nu), pair.lambda0)
        candidates.update(_box_above(datum, base, l))
    entries = {}
    for mu in sorted(candidates):
        m = projective_verma_multiplicity(datum, lam, mu, l)
        if m:
            entries[mu] = m
    return MultiplicityTable(subject=f"projective{list(lam)}", entries=entries)


# -- p^q coefficients ------------------------------------------------------------


@dataclass(frozen=True)
class PqValue:
    value: int
    mode: str


def p_q_table(datum: RootDatum, lam: Weight, l: int, window: Window) -> dict[Weight, int]:
    """Oracle mode: invert ch L_q(lam) = sum p^q_{mu,lam} ch Delta_q(mu) on the
    window, exactly."""
    lam = tuple(lam)
    simple = simple_character(datum, lam, l, window)
    adm = [mu for mu in admissible_set(datum, window) if dominance_leq(datum, mu, lam)]

    def hd(mu):
        rc = int_root_coords(datum, wt_sub(lam, mu))
        return sum(rc)

    adm.sort(key=hd)
    from .chars import kostant_count

    p: dict[Weight, int] = {}
    for mu in adm:
        acc = simple.values.get(mu, 0)
        for xi in adm:
            if xi == mu or not dominance_leq(datum, mu, xi):
                continue
            if xi in p and p[xi]:
                acc -= p[xi] * kostant_count(datum, int_root_coords(datum, wt_sub(xi, mu)))
        p[mu] = acc
    return {k: v for k, v in p.items() if v}


def p_q_coefficient(
    datum: RootDatum,
    mu: Weight,
    lam: Weight,
    l: int,
    depth: int | None = None,
    mode: str = "oracle",
    force: bool = False,
) -> PqValue:
    mu, lam = tuple(mu), tuple(lam)
    if mode == "oracle":
        if not dominance_leq(datum, mu, lam):
            return PqValue(0, "oracle")
        rc = int_root_coords(datum, wt_sub(lam, mu))
        d = max(max(rc), depth or 0)
        table = p_q_table(datum, lam, l, Window.below(lam, d))
        return PqValue(table.get(mu, 0), "oracle")
    if mode == "formula":
        return PqValue(_p_q_formula(datum, mu, lam, l, force), "formula")
    raise ValueError(f"unknown p_q mode {mode!r}")


def _p_q_formula(datum: RootDatum, mu: Weight, lam: Weight, l: int, force: bool) -> int:
    """Thm-5.2(ii)-style evaluation; valid only on the cross-validated range
    (l-regular restricted part, dominant finite-side arguments)."""
    pair = l_adic_decompose(datum, lam, l)
    nu0 = wt_add(pair.lambda0, datum.rho)
    if any(pairing(datum, nu0, r) % l == 0 for r in datum.positive_roots):
        if not force:
            raise RegularityError("formula mode requires an l-regular restricted part")
    total = 0
    for nu, pc in classical.simple_into_vermas(datum, pair.lambda1).items():
        eta = wt_sub(mu, wt_scale(l, nu))
        if not is_dominant(datum, eta) and not force:
            raise RegularityError(
                f"formula mode hit a non-dominant finite argument {eta}; "
                "use oracle mode or force"
            )
        total += pc * _p_tilde_eq16(datum, eta, pair.lambda0, l)
    return total


def _p_tilde_eq16(datum: RootDatum, eta: Weight, lam0: Weight, l: int) -> int:
    aff = affine_weyl(datum)
    engine = engine_for(aff)
    pos = aff.normalize_to_alcove(lam0, l)
    epos = aff.normalize_to_alcove(tuple(eta), l)
    if epos.base != pos.base:
        return 0
    z, x = epos.navigator, pos.navigator
    sign = -1 if (aff.length(z) + aff.length(x)) % 2 else 1
    return sign * engine.value_at_one(z, x)


# -- block structure and predicates ------------------------------------------------


@dataclass(frozen=True)
class SpecialBlockInfo:
    is_special: bool
    f_image: Weight | None


def special_block(datum: RootDatum, lam: Weight, l: int) -> SpecialBlockInfo:
    pair = l_adic_decompose(datum, lam, l)
    if pair.lambda0 == wt_scale(l - 1, datum.rho):
        return SpecialBlockInfo(True, pair.lambda1)
    return SpecialBlockInfo(False, None)


def g_map(datum: RootDatum, nu: Weight, l: int) -> Weight:
    """The special-block embedding G on weights: nu -> l*nu + (l-1)rho."""
    return wt_add(wt_scale(l, nu), wt_scale(l - 1, datum.rho))


@dataclass(frozen=True)
class StructuralPredicates:
    verma_simple: bool
    verma_projective: bool
    proj_injective: bool


def structural_predicates(datum: RootDatum, lam: Weight, l: int) -> StructuralPredicates:
    """Guaranteed-sufficient structural facts (the first two), and the exact
    projective-injective criterion (antidominance)."""
    info = special_block(datum, lam, l)
    verma_simple = bool(info.is_special and is_antidominant(datum, info.f_image))
    verma_projective = bool(
        info.is_special and all(x + 1 >= 0 for x in info.f_image)
    )
    return StructuralPredicates(
        verma_simple=verma_simple,
        verma_projective=verma_projective,
        proj_injective=is_antidominant(datum, lam),
    )


@dataclass(frozen=True)
class LargeLComparison:
    quantum: int
    baby: int
    criterion_holds: bool
    agree: bool


def large_l_comparison(datum: RootDatum, lam: Weight, mu: Weight, l: int) -> LargeLComparison:
    """Cor-3.9-style comparison: when lam - mu dominates no l-fold positive
    multiple, the quantum and baby multiplicities provably agree."""
    lam, mu = tuple(lam), tuple(mu)
    quantum = quantum_verma_simple_multiplicity(datum, lam, mu, l)
    baby = baby_verma_simple_multiplicity(datum, lam, mu, l)
    diff = wt_sub(lam, mu)
    criterion = not any(
        dominance_leq(datum, wt_scale(l, datum.simple_root(i + 1).fund_coords), diff)
        for i in range(datum.rank)
    )
    return LargeLComparison(quantum, baby, criterion, quantum == baby)


def generic_verma_simple_multiplicity(datum: RootDatum, lam: Weight, mu: Weight) -> int:
    """The generic-parameter category answer: the classical multiplicity."""
    return classical.verma_simple_mult(datum, lam, mu)


# -- character-level consistency helpers ---------------------------------------------


def verma_character_balance(
    datum: RootDatum, lam: Weight, l: int, window: Window
) -> bool:
    """ch Delta_q(lam) = sum_mu [Delta_q(lam):L_q(mu)] ch L_q(mu) on the window."""
    lam = tuple(lam)
    lhs = verma_character(datum, lam, window)
    table = quantum_verma_factor_table(datum, lam, l)
    adm = admissible_set(datum, window)
    totals: dict[Weight, int] = {}
    for mu, m in table.nonzero().items():
        piece = simple_character(datum, mu, l, window)
        for w in adm:
            c = piece.values.get(w, 0)
            if c:
                totals[w] = totals.get(w, 0) + m * c
    return all(lhs.values.get(w, 0) == totals.get(w, 0) for w in adm)


def table_to_json(datum: RootDatum, table: MultiplicityTable, ref: Weight | None = None) -> dict:
    nz = table.nonzero()
    if ref is None:
        tops = [w for w in nz if all(dominance_leq(datum, v, w) or v == w for v in nz)]
        ref = tops[0] if tops else (0,) * datum.rank
    ordered = sort_weights(datum, ref, nz)
    return {
        "subject": table.subject,
        "complete": table.complete,
        "entries": [{"wt": list(w), "mult": nz[w]} for w in ordered],
    }
