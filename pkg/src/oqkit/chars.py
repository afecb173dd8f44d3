"""Characters in the completed group ring, truncated to finite windows.

A window is a finite set of top weights plus a depth d; its admissible set is
the union of the boxes {top - sum c_i alpha_i : 0 <= c_i <= d}.  A truncated
character stores integer coefficients on (part of) the admissible set and is
exact there: the full character it represents agrees with the stored values
on every admissible weight.  Finite characters (Weyl modules, baby Vermas,
restricted simples) are additionally ``complete``: the stored support is the
whole support.

Multiplication computes the largest window on which the product is guaranteed
exact: a product coefficient is kept only when every potential contribution
comes from the factors' known regions.  A weight is known to a factor when it
lies in the factor's admissible set or outside its support cone entirely.

All module characters are nonnegative; alternating sums carry a ``virtual``
marker and skip the nonnegativity checks.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field, replace
from fractions import Fraction

from . import classical
from .kl import engine_for
from .rootdata import (
    RootDatum,
    Weight,
    dominance_leq,
    int_root_coords,
    pairing,
    root_coords,
    validate_l,
    wt_add,
    wt_scale,
    wt_sub,
)
from .weyl import affine_weyl, finite_weyl


@dataclass(frozen=True)
class Window:
    tops: tuple[Weight, ...]
    depth: int

    def __post_init__(self):
        object.__setattr__(self, "tops", tuple(sorted(set(map(tuple, self.tops)))))

    @staticmethod
    def below(top: Weight, depth: int) -> "Window":
        return Window((tuple(top),), depth)


@dataclass
class TruncatedCharacter:
    datum: RootDatum
    window: Window
    values: dict[Weight, int] = field(default_factory=dict)
    exact: bool = True
    complete: bool = False
    virtual: bool = False

    def coeff(self, mu: Weight) -> int:
        mu = tuple(mu)
        if not self.is_known_at(mu):
            raise ValueError(f"coefficient at {mu} lies outside the exact region")
        return self.values.get(mu, 0)

    def is_known_at(self, mu: Weight) -> bool:
        if self.complete:
            return True
        mu = tuple(mu)
        if mu in admissible_set(self.datum, self.window):
            return True
        # weights not below any top carry coefficient 0 of the full character
        return not any(dominance_leq(self.datum, mu, top) for top in self.window.tops)

    def support(self) -> list[Weight]:
        return [w for w, c in self.values.items() if c]

    def dimension(self) -> int:
        if not self.complete:
            raise ValueError("dimension is only defined for complete characters")
        return sum(self.values.values())

    def shift(self, mu: Weight) -> "TruncatedCharacter":
        """Multiplication by e^mu."""
        mu = tuple(mu)
        return replace(
            self,
            window=Window(tuple(wt_add(t, mu) for t in self.window.tops), self.window.depth),
            values={wt_add(w, mu): c for w, c in self.values.items()},
        )

    def scale(self, k: int) -> "TruncatedCharacter":
        return replace(
            self,
            values={w: k * c for w, c in self.values.items() if k * c},
            virtual=self.virtual or k < 0,
        )


_ADMISSIBLE: dict[tuple, frozenset[Weight]] = {}


def admissible_set(datum: RootDatum, window: Window) -> frozenset[Weight]:
    key = (datum.series, datum.rank, window)
    cached = _ADMISSIBLE.get(key)
    if cached is not None:
        return cached
    n = datum.rank
    cols = [tuple(datum.cartan[i][j] for i in range(n)) for j in range(n)]
    out: set[Weight] = set()
    for top in window.tops:
        for cs in itertools.product(range(window.depth + 1), repeat=n):
            mu = top
            for j, c in enumerate(cs):
                if c:
                    mu = wt_sub(mu, wt_scale(c, cols[j]))
            out.add(mu)
    result = frozenset(out)
    _ADMISSIBLE[key] = result
    return result


def sort_weights(datum: RootDatum, ref: Weight, weights) -> list[Weight]:
    """Descending dominance-compatible order: by height of ref - mu, ties lex."""

    def key(mu: Weight):
        h = sum(root_coords(datum, wt_sub(ref, mu)))
        return (h, tuple(-x for x in mu))

    return sorted(weights, key=key)


# -- Kostant partition counts -------------------------------------------------

_KOSTANT: dict[tuple, dict] = {}


def kostant_count(datum: RootDatum, rc: tuple[int, ...]) -> int:
    """Number of ways to write the root-lattice vector rc as an N-sum of
    positive roots.
    """
    if any(x < 0 for x in rc):
        return 0
    key = (datum.series, datum.rank)
    memo = _KOSTANT.setdefault(key, {})
    roots = [r.root_coords for r in datum.positive_roots]

    def count(m: int, c: tuple[int, ...]) -> int:
        if all(x == 0 for x in c):
            return 1
        if m == 0:
            return 0
        got = memo.get((m, c))
        if got is None:
            r = roots[m - 1]
            got = count(m - 1, c)
            rest = tuple(x - y for x, y in zip(c, r))
            if all(x >= 0 for x in rest):
                got += count(m, rest)
            memo[(m, c)] = got
        return got

    return count(len(roots), tuple(rc))


# -- basic characters ----------------------------------------------------------


def unit_character(datum: RootDatum, mu: Weight) -> TruncatedCharacter:
    mu = tuple(mu)
    return TruncatedCharacter(datum, Window.below(mu, 0), {mu: 1}, complete=True)


def zero_character(datum: RootDatum) -> TruncatedCharacter:
    return TruncatedCharacter(datum, Window((), 0), {}, complete=True)


def verma_character(datum: RootDatum, lam: Weight, window: Window) -> TruncatedCharacter:
    """ch Delta(lam) on the window; the e^mu coefficient is the Kostant count
    of lam - mu.  The same character serves Delta_C, Delta_q and nabla_q.
    """
    lam = tuple(lam)
    values = {}
    for mu in admissible_set(datum, window):
        rc = int_root_coords(datum, wt_sub(lam, mu))
        if rc is None:
            continue
        c = kostant_count(datum, rc)
        if c:
            values[mu] = c
    return TruncatedCharacter(datum, window, values)


def _complete_window(datum: RootDatum, top: Weight, values: dict[Weight, int]) -> Window:
    depth = 0
    for mu in values:
        rc = int_root_coords(datum, wt_sub(top, mu))
        assert rc is not None and all(x >= 0 for x in rc)
        depth = max(depth, max(rc, default=0))
    return Window.below(top, depth)


def baby_verma_character(datum: RootDatum, lam: Weight, l: int) -> TruncatedCharacter:
    """ch of the l^N-dimensional baby Verma with highest weight lam:
    e^lam times the product over positive roots of (1 + e^-a + ... + e^-(l-1)a).
    """
    validate_l(datum, l)
    lam = tuple(lam)
    values: dict[Weight, int] = {lam: 1}
    for r in datum.positive_roots:
        nxt: dict[Weight, int] = {}
        for mu, c in values.items():
            for k in range(l):
                key = wt_sub(mu, wt_scale(k, r.fund_coords))
                nxt[key] = nxt.get(key, 0) + c
        values = nxt
    ch = TruncatedCharacter(
        datum, _complete_window(datum, lam, values), values, complete=True
    )
    assert ch.dimension() == l ** datum.num_positive
    return ch


def steinberg_character(datum: RootDatum, l: int) -> TruncatedCharacter:
    return baby_verma_character(datum, wt_scale(l - 1, datum.rho), l)


_DOMINANT_WEYL: dict[tuple, TruncatedCharacter] = {}


def weyl_character(datum: RootDatum, lam: Weight) -> TruncatedCharacter:
    """chi(lam): the Weyl character for lam+rho regular dominant, zero when
    lam+rho is singular, and alternating in general: chi(w.lam) = (-1)^l(w) chi(lam).
    """
    lam = tuple(lam)
    group = finite_weyl(datum)
    nu = wt_add(lam, datum.rho)
    if any(pairing(datum, nu, r) == 0 for r in datum.positive_roots):
        return zero_character(datum)
    w, dom = group.min_to_dominant(lam)
    sign = -1 if group.length(w) % 2 else 1
    ch = _dominant_weyl_character(datum, dom)
    return ch if sign == 1 else ch.scale(-1)


def _dominant_weyl_character(datum: RootDatum, lam: Weight) -> TruncatedCharacter:
    key = (datum.series, datum.rank, tuple(lam))
    cached = _DOMINANT_WEYL.get(key)
    if cached is not None:
        return cached
    group = finite_weyl(datum)
    lam = tuple(lam)
    low = group.act(group.longest_element(), lam)
    box = int_root_coords(datum, wt_sub(lam, low))
    assert box is not None
    n = datum.rank
    cols = [tuple(datum.cartan[i][j] for i in range(n)) for j in range(n)]
    terms = []
    for w in group.elements():
        sign = -1 if group.length(w) % 2 else 1
        terms.append((sign, group.dot(w, lam)))
    values: dict[Weight, int] = {}
    for cs in itertools.product(*(range(b + 1) for b in box)):
        mu = lam
        for j, c in enumerate(cs):
            if c:
                mu = wt_sub(mu, wt_scale(c, cols[j]))
        total = 0
        for sign, wlam in terms:
            rc = int_root_coords(datum, wt_sub(wlam, mu))
            if rc is not None and all(x >= 0 for x in rc):
                total += sign * kostant_count(datum, rc)
        if total:
            assert total > 0, "Weyl multiplicity must be nonnegative"
            values[mu] = total
    ch = TruncatedCharacter(datum, _complete_window(datum, lam, values), values, complete=True)
    assert ch.values.get(lam) == 1
    assert ch.dimension() == _weyl_dimension(datum, lam)
    _DOMINANT_WEYL[key] = ch
    return ch


def _weyl_dimension(datum: RootDatum, lam: Weight) -> int:
    num = Fraction(1)
    nu = wt_add(lam, datum.rho)
    for r in datum.positive_roots:
        num *= Fraction(pairing(datum, nu, r), pairing(datum, datum.rho, r))
    assert num.denominator == 1
    return int(num)


def frobenius_twist(ch: TruncatedCharacter, l: int) -> TruncatedCharacter:
    """Dilate the support by l; exact on the dilated window."""
    return replace(
        ch,
        window=Window(
            tuple(wt_scale(l, t) for t in ch.window.tops), l * ch.window.depth
        ),
        values={wt_scale(l, w): c for w, c in ch.values.items()},
    )


# -- multiplication -------------------------------------------------------------


def multiply(a: TruncatedCharacter, b: TruncatedCharacter) -> TruncatedCharacter:
    """Product, exact on the largest guaranteed window."""
    assert a.datum is b.datum or a.datum == b.datum
    datum = a.datum
    if not a.window.tops or not b.window.tops:
        return zero_character(datum)
    virtual = a.virtual or b.virtual
    if a.complete and b.complete:
        values = _convolve(a.values, b.values)
        top = _maximal_weights(datum, [wt_add(x, y) for x in a.window.tops for y in b.window.tops])
        window = Window(tuple(top), a.window.depth + b.window.depth)
        return TruncatedCharacter(datum, window, values, complete=True, virtual=virtual)
    if a.complete:
        return _mul_complete_windowed(a, b, virtual)
    if b.complete:
        return _mul_complete_windowed(b, a, virtual)
    return _mul_windowed(a, b, virtual)


def _convolve(av: dict, bv: dict, keep=None) -> dict[Weight, int]:
    out: dict[Weight, int] = {}
    for wa, ca in av.items():
        if not ca:
            continue
        for wb, cb in bv.items():
            if not cb:
                continue
            key = wt_add(wa, wb)
            if keep is not None and key not in keep:
                continue
            out[key] = out.get(key, 0) + ca * cb
    return {k: v for k, v in out.items() if v}


def _maximal_weights(datum: RootDatum, weights) -> list[Weight]:
    uniq = sorted(set(map(tuple, weights)))
    out = []
    for w in uniq:
        if not any(w != v and dominance_leq(datum, w, v) for v in uniq):
            out.append(w)
    return out


def _box_depth_limit(datum: RootDatum, tops, initial: int, ok) -> int:
    """Largest d <= initial with every offset in [0, d]^n from every top ok."""
    n = datum.rank
    cols = [tuple(datum.cartan[i][j] for i in range(n)) for j in range(n)]
    best = initial
    for top in tops:
        for cs in itertools.product(range(initial + 1), repeat=n):
            if max(cs, default=0) > best:
                continue
            mu = top
            for j, c in enumerate(cs):
                if c:
                    mu = wt_sub(mu, wt_scale(c, cols[j]))
            if not ok(mu):
                best = min(best, max(cs) - 1)
                if best < 0:
                    return -1
    return best


def _mul_complete_windowed(
    fin: TruncatedCharacter, win: TruncatedCharacter, virtual: bool
) -> TruncatedCharacter:
    datum = fin.datum
    tops = _maximal_weights(
        datum, [wt_add(x, y) for x in fin.window.tops for y in win.window.tops]
    )
    if len(fin.window.tops) == 1 and len(win.window.tops) == 1:
        # single-top case in closed form: a coefficient at top - c is exact
        # exactly when the box offset c stays within the windowed factor's depth
        depth = win.window.depth
    else:
        initial = win.window.depth + fin.window.depth
        supp = fin.support()

        def ok(mu: Weight) -> bool:
            return all(win.is_known_at(wt_sub(mu, nu)) for nu in supp)

        depth = _box_depth_limit(datum, tops, initial, ok)
    if depth < 0:
        return TruncatedCharacter(datum, Window(tuple(tops), 0), {}, exact=False, virtual=virtual)
    window = Window(tuple(tops), depth)
    keep = admissible_set(datum, window)
    values = _convolve(fin.values, win.values, keep=keep)
    return TruncatedCharacter(datum, window, values, virtual=virtual)


def _mul_windowed(
    a: TruncatedCharacter, b: TruncatedCharacter, virtual: bool
) -> TruncatedCharacter:
    datum = a.datum
    tops = _maximal_weights(
        datum, [wt_add(x, y) for x in a.window.tops for y in b.window.tops]
    )
    if len(a.window.tops) == 1 and len(b.window.tops) == 1:
        window = Window(tuple(tops), min(a.window.depth, b.window.depth))
        keep = admissible_set(datum, window)
        return TruncatedCharacter(
            datum, window, _convolve(a.values, b.values, keep=keep), virtual=virtual
        )
    adm_a = admissible_set(datum, a.window)
    adm_b = admissible_set(datum, b.window)

    def ok(mu: Weight) -> bool:
        for ta in a.window.tops:
            for tb in b.window.tops:
                rc = int_root_coords(datum, wt_sub(wt_add(ta, tb), mu))
                if rc is None or any(x < 0 for x in rc):
                    continue
                for xs in itertools.product(*(range(c + 1) for c in rc)):
                    nu = _below(datum, ta, xs)
                    eta = _below(datum, tb, tuple(c - x for c, x in zip(rc, xs)))
                    if nu not in adm_a or eta not in adm_b:
                        return False
        return True

    depth = _box_depth_limit(datum, tops, min(a.window.depth, b.window.depth), ok)
    if depth < 0:
        return TruncatedCharacter(datum, Window(tuple(tops), 0), {}, exact=False, virtual=virtual)
    window = Window(tuple(tops), depth)
    keep = admissible_set(datum, window)
    values = _convolve(a.values, b.values, keep=keep)
    return TruncatedCharacter(datum, window, values, virtual=virtual)


def _below(datum: RootDatum, top: Weight, cs) -> Weight:
    n = datum.rank
    mu = tuple(top)
    for j, c in enumerate(cs):
        if c:
            col = tuple(datum.cartan[i][j] for i in range(n))
            mu = wt_sub(mu, wt_scale(c, col))
    return mu


def char_sum(datum: RootDatum, chars, window: Window, virtual: bool = False) -> TruncatedCharacter:
    """Sum of characters, each of which must be exact on the given window."""
    adm = admissible_set(datum, window)
    values: dict[Weight, int] = {}
    for ch in chars:
        for mu in adm:
            c = ch.coeff(mu)
            if c:
                values[mu] = values.get(mu, 0) + c
    return TruncatedCharacter(datum, window, {k: v for k, v in values.items() if v}, virtual=virtual)


def restrict(ch: TruncatedCharacter, window: Window) -> TruncatedCharacter:
    adm = admissible_set(ch.datum, window)
    if not all(ch.is_known_at(mu) for mu in adm):
        raise ValueError("character is not exact on the requested window")
    values = {mu: ch.values.get(mu, 0) for mu in adm if ch.values.get(mu, 0)}
    return TruncatedCharacter(ch.datum, window, values, virtual=ch.virtual)


def agree_on(a: TruncatedCharacter, b: TruncatedCharacter, window: Window) -> bool:
    adm = admissible_set(a.datum, window)
    return all(a.coeff(mu) == b.coeff(mu) for mu in adm)


# -- simple characters at a root of unity ---------------------------------------

_RESTRICTED: dict[tuple, TruncatedCharacter] = {}


def restricted_simple_character(datum: RootDatum, lam0: Weight, l: int) -> TruncatedCharacter:
    """ch L_q(lam0) for lam0 in X_l: finite, nonnegative, top coefficient 1.

    Computed from affine KL values at 1: with b the alcove base of lam0 and w
    the navigator (corrected across the walls through lam0 + rho when lam0 is
    singular), the character is the sum over y <= w whose alcove is dominant
    of (-1)^{l(y)+l(w)} P_{y,w}(1) chi(y . b).
    """
    validate_l(datum, l)
    lam0 = tuple(lam0)
    if not all(0 <= x < l for x in lam0):
        raise ValueError(f"{lam0} is not in X_l for l={l}")
    key = (datum.series, datum.rank, lam0, l)
    cached = _RESTRICTED.get(key)
    if cached is not None:
        return cached
    aff = affine_weyl(datum)
    engine = engine_for(aff)
    pos = aff.normalize_to_alcove(lam0, l)
    base, x = pos.base, pos.navigator
    walls = aff.walls_through(lam0, l)
    if walls:
        candidates = [
            aff.multiply(x, u)
            for u in aff.stabilizer_subgroup(base, l)
        ]
        good = [
            w
            for w in candidates
            if all(aff.alcove_below_wall(w, k, m, l) for k, m in walls)
        ]
        assert len(good) == 1, "wall-side correction must be unique"
        w = good[0]
    else:
        w = x
    lw = aff.length(w)
    values: dict[Weight, int] = {}
    for y in aff.bruhat_lowerset(w):
        if not aff.alcove_is_dominant(y, l):
            continue
        coeff = engine.value_at_one(y, w)
        if coeff == 0:
            continue
        sign = -1 if (aff.length(y) + lw) % 2 else 1
        term = weyl_character(datum, aff.dot(y, base, l)).scale(sign * coeff)
        for mu, c in term.values.items():
            values[mu] = values.get(mu, 0) + c
    values = {k: v for k, v in values.items() if v}
    assert all(v > 0 for v in values.values()), "restricted character must be nonnegative"
    assert values.get(lam0) == 1, "restricted character must have top coefficient 1"
    ch = TruncatedCharacter(datum, _complete_window(datum, lam0, values), values, complete=True)
    _RESTRICTED[key] = ch
    return ch


def simple_character(
    datum: RootDatum, lam: Weight, l: int, window: Window
) -> TruncatedCharacter:
    """ch L_q(lam) = (ch L_C(lam^1))^{[l]} . ch L_q(lam^0), exact on the window."""
    from .rootdata import l_adic_decompose

    lam = tuple(lam)
    pair = l_adic_decompose(datum, lam, l)
    finite_part = restricted_simple_character(datum, pair.lambda0, l)
    coeffs = classical.simple_into_vermas(datum, pair.lambda1)
    depth1 = window.depth // l + 2
    for _ in range(4):
        w1 = Window.below(pair.lambda1, depth1)
        parts = [
            verma_character(datum, mu, w1).scale(c) for mu, c in sorted(coeffs.items())
        ]
        classical_ch = char_sum(datum, parts, w1, virtual=True)
        product = multiply(frobenius_twist(classical_ch, l), finite_part)
        adm_goal = admissible_set(datum, window)
        if all(product.is_known_at(mu) for mu in adm_goal):
            result = restrict(product, window)
            assert all(v > 0 for v in result.values.values()), "simple character must be nonnegative"
            if lam in adm_goal:
                assert result.values.get(lam) == 1, "highest weight must have coefficient 1"
            result.virtual = False
            return result
        depth1 += 2
    raise RuntimeError("could not reach the requested window exactly")
