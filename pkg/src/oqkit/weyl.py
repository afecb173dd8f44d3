"""Finite and affine Weyl groups with rho-shifted dot actions.

Elements are stored in a canonical form (M, t): M is the integer matrix of
the linear action on X in fundamental coordinates, t is a translation vector
in simple-root coordinates.  Finite elements have t = 0.  The affine group is
the abstract semidirect product W x Z.Phi; the level l enters only through
the action

    x . lam = M(lam + rho) - rho + l * (t in fundamental coordinates),

so one group object serves every l.  The affine generator s_0 is the
reflection through the wall <lam + rho, theta^vee> = -l, theta the highest
short root, which makes the fundamental domain of the dot action the closure
of the top antidominant alcove

    A_l^- = { lam : -l < <lam + rho, alpha^vee> < 0 for all alpha > 0 }.

Lengths are computed by counting separating hyperplanes (Iwahori-Matsumoto);
reduced words come from greedy descent stripping and are ShortLex minimal
(generator 0 is the affine one).  Bruhat order uses the subword property.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .rootdata import (
    RootDatum,
    Weight,
    pairing,
    root_coords,
    wt_add,
    wt_sub,
)

Matrix = tuple[tuple[int, ...], ...]


@dataclass(frozen=True)
class WeylElement:
    """Group element in canonical (matrix, translation) form."""

    group_key: tuple[str, int, bool]  # (series, rank, affine)
    matrix: Matrix
    trans: tuple[int, ...]

    @property
    def is_translation(self) -> bool:
        n = len(self.trans)
        return self.matrix == _identity(n)


@dataclass(frozen=True)
class AlcovePosition:
    """A weight presented as navigator . base with base in the closure of A_l^-."""

    base: Weight
    navigator: WeylElement


def _identity(n: int) -> Matrix:
    return tuple(tuple(1 if i == j else 0 for j in range(n)) for i in range(n))


def _mat_mul(a: Matrix, b: Matrix) -> Matrix:
    n = len(a)
    return tuple(
        tuple(sum(a[i][k] * b[k][j] for k in range(n)) for j in range(n)) for i in range(n)
    )


def _mat_vec(a: Matrix, v: tuple) -> tuple:
    return tuple(sum(row[j] * v[j] for j in range(len(v))) for row in a)


def _mat_inverse(a: Matrix) -> Matrix:
    n = len(a)
    aug = [[Fraction(a[i][j]) for j in range(n)] + [Fraction(int(i == j)) for j in range(n)] for i in range(n)]
    for col in range(n):
        piv = next(r for r in range(col, n) if aug[r][col] != 0)
        aug[col], aug[piv] = aug[piv], aug[col]
        inv = 1 / aug[col][col]
        aug[col] = [x * inv for x in aug[col]]
        for r in range(n):
            if r != col and aug[r][col] != 0:
                f = aug[r][col]
                aug[r] = [x - f * y for x, y in zip(aug[r], aug[col])]
    out = []
    for i in range(n):
        row = aug[i][n:]
        assert all(x.denominator == 1 for x in row)
        out.append(tuple(int(x) for x in row))
    return tuple(out)


class _WeylGroupBase:
    """Shared machinery for the finite group and its affinization."""

    affine = False

    def __init__(self, datum: RootDatum):
        self.datum = datum
        n = datum.rank
        self.key = (datum.series, datum.rank, self.affine)
        self.identity = WeylElement(self.key, _identity(n), (0,) * n)
        self._root_action: dict[Matrix, Matrix] = {}
        self._inv: dict[WeylElement, WeylElement] = {}
        self._len: dict[WeylElement, int] = {}
        self._word: dict[WeylElement, tuple[int, ...]] = {}
        self._lower: dict[WeylElement, frozenset[WeylElement]] = {}
        self.generators: dict[int, WeylElement] = {}
        for i in range(1, n + 1):
            self.generators[i] = self._simple_reflection(i)

    # -- construction ---------------------------------------------------

    def _simple_reflection(self, i: int) -> WeylElement:
        n = self.datum.rank
        c = self.datum.cartan
        mat = tuple(
            tuple((1 if k == j else 0) - (c[k][i - 1] if j == i - 1 else 0) for j in range(n))
            for k in range(n)
        )
        return WeylElement(self.key, mat, (0,) * n)

    def _check(self, el: WeylElement) -> None:
        if el.group_key != self.key:
            raise ValueError(f"element of group {el.group_key} used in group {self.key}")

    # -- group operations -------------------------------------------------

    def root_action(self, mat: Matrix) -> Matrix:
        """The same linear map written on simple-root coordinates."""
        cached = self._root_action.get(mat)
        if cached is None:
            n = self.datum.rank
            c = self.datum.cartan
            cols = []
            for j in range(n):
                alpha_fund = tuple(c[i][j] for i in range(n))
                img = _mat_vec(mat, alpha_fund)
                rc = root_coords(self.datum, img)
                assert all(x.denominator == 1 for x in rc)
                cols.append(tuple(int(x) for x in rc))
            cached = tuple(tuple(cols[j][i] for j in range(n)) for i in range(n))
            self._root_action[mat] = cached
        return cached

    def multiply(self, a: WeylElement, b: WeylElement) -> WeylElement:
        self._check(a)
        self._check(b)
        mat = _mat_mul(a.matrix, b.matrix)
        t = tuple(x + y for x, y in zip(a.trans, _mat_vec(self.root_action(a.matrix), b.trans)))
        return WeylElement(self.key, mat, t)

    def product(self, els) -> WeylElement:
        out = self.identity
        for e in els:
            out = self.multiply(out, e)
        return out

    def inverse(self, a: WeylElement) -> WeylElement:
        self._check(a)
        cached = self._inv.get(a)
        if cached is None:
            minv = _mat_inverse(a.matrix)
            t = tuple(-x for x in _mat_vec(self.root_action(minv), a.trans))
            cached = WeylElement(self.key, minv, t)
            self._inv[a] = cached
        return cached

    def from_word(self, word) -> WeylElement:
        """Evaluate a word (iterable of generator indices) to an element."""
        return self.product(self.generators[i] for i in word)

    def parse_word(self, text: str) -> WeylElement:
        return self.from_word(int(tok) for tok in text.split())

    # -- length, words, Bruhat order --------------------------------------

    def length(self, a: WeylElement) -> int:
        self._check(a)
        cached = self._len.get(a)
        if cached is None:
            cached = self._length(a)
            self._len[a] = cached
        return cached

    def _length(self, a: WeylElement) -> int:  # overridden
        raise NotImplementedError

    def left_descents(self, a: WeylElement) -> list[int]:
        la = self.length(a)
        return [i for i, g in self.generators.items() if self.length(self.multiply(g, a)) < la]

    def right_descents(self, a: WeylElement) -> list[int]:
        la = self.length(a)
        return [i for i, g in self.generators.items() if self.length(self.multiply(a, g)) < la]

    def reduced_word(self, a: WeylElement) -> tuple[int, ...]:
        """The ShortLex-minimal reduced word (smallest left descent first)."""
        self._check(a)
        cached = self._word.get(a)
        if cached is not None:
            return cached
        word: list[int] = []
        cur = a
        steps = self.length(a)
        for _ in range(steps):
            i = min(self.left_descents(cur))
            word.append(i)
            cur = self.multiply(self.generators[i], cur)
        assert cur == self.identity, "descent stripping did not reach the identity"
        out = tuple(word)
        self._word[a] = out
        return out

    def word_str(self, a: WeylElement) -> str:
        return " ".join(str(i) for i in self.reduced_word(a))

    def bruhat_lowerset(self, w: WeylElement) -> frozenset[WeylElement]:
        """All z <= w, via subword products of a reduced word of w."""
        self._check(w)
        cached = self._lower.get(w)
        if cached is not None:
            return cached
        current = {self.identity}
        for i in self.reduced_word(w):
            g = self.generators[i]
            current |= {self.multiply(z, g) for z in current}
        out = frozenset(current)
        self._lower[w] = out
        return out

    def bruhat_leq(self, y: WeylElement, w: WeylElement) -> bool:
        self._check(y)
        self._check(w)
        if self.length(y) > self.length(w):
            return False
        return y in self.bruhat_lowerset(w)

    def bruhat_interval(self, y: WeylElement, w: WeylElement) -> list[WeylElement]:
        if not self.bruhat_leq(y, w):
            raise ValueError("bruhat_interval requires y <= w")
        zs = [z for z in self.bruhat_lowerset(w) if self.bruhat_leq(y, z)]
        zs.sort(key=lambda z: (self.length(z), self.reduced_word(z)))
        return zs


class FiniteWeylGroup(_WeylGroupBase):
    affine = False

    def act(self, w: WeylElement, lam: Weight) -> Weight:
        self._check(w)
        return _mat_vec(w.matrix, lam)

    def dot(self, w: WeylElement, lam: Weight) -> Weight:
        """w . lam = w(lam + rho) - rho."""
        rho = self.datum.rho
        return wt_sub(self.act(w, wt_add(lam, rho)), rho)

    def _length(self, a: WeylElement) -> int:
        # number of positive roots sent to negative roots
        ra = self.root_action(a.matrix)
        count = 0
        for r in self.datum.positive_roots:
            img = _mat_vec(ra, r.root_coords)
            if all(x <= 0 for x in img):
                count += 1
        return count

    def elements(self) -> list[WeylElement]:
        cached = getattr(self, "_elements", None)
        if cached is None:
            seen = {self.identity}
            frontier = [self.identity]
            while frontier:
                x = frontier.pop()
                for g in self.generators.values():
                    y = self.multiply(x, g)
                    if y not in seen:
                        seen.add(y)
                        frontier.append(y)
            cached = sorted(seen, key=lambda z: (self.length(z), self.reduced_word(z)))
            self._elements = cached
        return cached

    def longest_element(self) -> WeylElement:
        cached = getattr(self, "_w0", None)
        if cached is None:
            rho = self.datum.rho
            nu = rho
            word: list[int] = []
            while any(x > 0 for x in nu):
                i = next(k for k, x in enumerate(nu) if x > 0) + 1
                nu = self.act(self.generators[i], nu)
                word.append(i)
            cached = self.product(self.generators[i] for i in word)
            assert self.act(cached, rho) == tuple(-x for x in rho)
            self._w0 = cached
        return cached

    def min_to_antidominant(self, lam: Weight) -> tuple[WeylElement, Weight]:
        """Minimal w with w^{-1} . lam antidominant; returns (w, w^{-1} . lam)."""
        nu = wt_add(lam, self.datum.rho)
        word: list[int] = []
        while any(x > 0 for x in nu):
            i = next(k for k, x in enumerate(nu) if x > 0) + 1
            nu = self.act(self.generators[i], nu)
            word.append(i)
        w = self.product(self.generators[i] for i in word)
        lam_minus = wt_sub(nu, self.datum.rho)
        assert self.dot(self.inverse(w), lam) == lam_minus
        return w, lam_minus

    def min_to_dominant(self, lam: Weight) -> tuple[WeylElement, Weight]:
        """Minimal w with w^{-1} . lam dominant-or-singular; returns (w, it)."""
        nu = wt_add(lam, self.datum.rho)
        word: list[int] = []
        while any(x < 0 for x in nu):
            i = next(k for k, x in enumerate(nu) if x < 0) + 1
            nu = self.act(self.generators[i], nu)
            word.append(i)
        w = self.product(self.generators[i] for i in word)
        return w, wt_sub(nu, self.datum.rho)

    def dot_orbit(self, lam: Weight) -> list[Weight]:
        seen = {tuple(lam)}
        frontier = [tuple(lam)]
        while frontier:
            mu = frontier.pop()
            for g in self.generators.values():
                img = self.dot(g, mu)
                if img not in seen:
                    seen.add(img)
                    frontier.append(img)
        return sorted(seen)


class AffineWeylGroup(_WeylGroupBase):
    affine = True

    def __init__(self, datum: RootDatum):
        super().__init__(datum)
        theta = datum.highest_short_root
        n = datum.rank
        # s_0 = reflection in the wall <lam + rho, theta^vee> = -l,
        # i.e. the pair (s_theta, -theta) in W x Z.Phi.
        mat = tuple(
            tuple((1 if k == j else 0) - theta.fund_coords[k] * theta.coroot[j] for j in range(n))
            for k in range(n)
        )
        self.generators[0] = WeylElement(self.key, mat, tuple(-x for x in theta.root_coords))
        self._theta = theta

    # -- actions ----------------------------------------------------------

    def translation_fund(self, x: WeylElement) -> Weight:
        c = self.datum.cartan
        n = self.datum.rank
        return tuple(sum(c[i][j] * x.trans[j] for j in range(n)) for i in range(n))

    def act_nu(self, x: WeylElement, nu, l: int):
        """Action on shifted coordinates nu = lam + rho (exact, Fraction-safe)."""
        self._check(x)
        tau = self.translation_fund(x)
        lin = _mat_vec(x.matrix, nu)
        return tuple(a + l * b for a, b in zip(lin, tau))

    def dot(self, x: WeylElement, lam: Weight, l: int) -> Weight:
        rho = self.datum.rho
        nu = self.act_nu(x, wt_add(lam, rho), l)
        return wt_sub(nu, rho)

    def _length(self, a: WeylElement) -> int:
        ra_inv = self.root_action(self.inverse(a).matrix)
        tau = self.translation_fund(a)
        total = 0
        for r in self.datum.positive_roots:
            c = sum(f * x for f, x in zip(r.coroot, tau))
            img = _mat_vec(ra_inv, r.root_coords)
            if all(x <= 0 for x in img):
                total += abs(c + 1)
            else:
                total += abs(c)
        return total

    # -- alcove geometry ---------------------------------------------------

    def interior_point(self, l: int) -> tuple[Fraction, ...]:
        """An exact rational point strictly inside A_l^- in nu-coordinates."""
        h = self.datum.coxeter_number
        return tuple(Fraction(-l, h) for _ in range(self.datum.rank))

    def alcove_is_dominant(self, x: WeylElement, l: int) -> bool:
        nu = self.act_nu(x, self.interior_point(l), l)
        return all(v > 0 for v in nu)

    def alcove_below_wall(self, x: WeylElement, root_index: int, m: int, l: int) -> bool:
        nu = self.act_nu(x, self.interior_point(l), l)
        r = self.datum.positive_roots[root_index]
        return sum(f * v for f, v in zip(r.coroot, nu)) < m * l

    def walls_through(self, lam: Weight, l: int) -> list[tuple[int, int]]:
        """(positive-root index, m) for every wall <nu, alpha^vee> = m*l through lam+rho."""
        nu = wt_add(lam, self.datum.rho)
        out = []
        for k, r in enumerate(self.datum.positive_roots):
            v = pairing(self.datum, nu, r)
            if v % l == 0:
                out.append((k, v // l))
        return out

    def normalize_to_alcove(self, lam: Weight, l: int) -> AlcovePosition:
        """Walk lam into the closure of A_l^- and record the minimal navigator.

        At each step the unique strictly violated wall of the fundamental
        domain is crossed: a positive simple pairing, or the theta-wall at -l.
        """
        datum = self.datum
        theta = self._theta
        cur = tuple(lam)
        word: list[int] = []
        while True:
            nu = wt_add(cur, datum.rho)
            i = next((k for k, v in enumerate(nu) if v > 0), None)
            if i is not None:
                g = i + 1
            elif pairing(datum, nu, theta) < -l:
                g = 0
            else:
                break
            cur = self.dot(self.generators[g], cur, l)
            word.append(g)
        navigator = self.product(self.generators[g] for g in word)
        assert self.dot(navigator, cur, l) == tuple(lam)
        assert self.length(navigator) == len(word)
        return AlcovePosition(base=cur, navigator=navigator)

    def stabilizer_subgroup(self, base: Weight, l: int) -> list[WeylElement]:
        """The (finite) stabilizer of a point in the closure of A_l^-.

        Generated by the wall reflections of the fundamental domain fixing
        the point.
        """
        gens = [g for g in self.generators.values() if self.dot(g, base, l) == tuple(base)]
        seen = {self.identity}
        frontier = [self.identity]
        while frontier:
            x = frontier.pop()
            for g in gens:
                y = self.multiply(x, g)
                if y not in seen:
                    seen.add(y)
                    frontier.append(y)
        return sorted(seen, key=self.length)

    def length_ball(self, max_length: int) -> list[WeylElement]:
        """All elements of length <= max_length (BFS over generators)."""
        seen = {self.identity}
        frontier = [self.identity]
        while frontier:
            x = frontier.pop()
            for g in self.generators.values():
                y = self.multiply(x, g)
                if y not in seen and self.length(y) <= max_length:
                    seen.add(y)
                    frontier.append(y)
        return sorted(seen, key=lambda z: (self.length(z), self.reduced_word(z)))


_FINITE: dict[tuple[str, int], FiniteWeylGroup] = {}
_AFFINE: dict[tuple[str, int], AffineWeylGroup] = {}


def finite_weyl(datum: RootDatum) -> FiniteWeylGroup:
    key = (datum.series, datum.rank)
    if key not in _FINITE:
        _FINITE[key] = FiniteWeylGroup(datum)
    return _FINITE[key]


def affine_weyl(datum: RootDatum) -> AffineWeylGroup:
    key = (datum.series, datum.rank)
    if key not in _AFFINE:
        _AFFINE[key] = AffineWeylGroup(datum)
    return _AFFINE[key]
