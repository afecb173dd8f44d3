"""Root data for the finite simple types: Cartan matrices, positive roots,
the weight lattice, and l-adic weight arithmetic.

Weights live in X = Z^n in fundamental-weight coordinates, so the i-th
coordinate of a weight is its pairing with the i-th simple coroot.  A simple
root alpha_j, written in fundamental coordinates, is the j-th column of the
Cartan matrix.  All arithmetic is exact (int / Fraction); there is no
floating point anywhere in this package.

Conventions are Bourbaki throughout; in particular for G2 the first simple
root is short, so the symmetrizer is d = (1, 3).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

Weight = tuple[int, ...]

# number of positive roots per series, as a function of the rank
_POSITIVE_COUNTS = {
    "A": lambda n: n * (n + 1) // 2,
    "B": lambda n: n * n,
    "C": lambda n: n * n,
    "D": lambda n: n * (n - 1),
    "E": lambda n: {6: 36, 7: 63, 8: 120}[n],
    "F": lambda n: 24,
    "G": lambda n: 6,
}

_VALID_RANKS = {
    "A": lambda n: n >= 1,
    "B": lambda n: n >= 2,
    "C": lambda n: n >= 2,
    "D": lambda n: n >= 4,
    "E": lambda n: n in (6, 7, 8),
    "F": lambda n: n == 4,
    "G": lambda n: n == 2,
}


@dataclass(frozen=True)
class PositiveRoot:
    """A positive root, in simple-root coordinates and as a functional on X.

    ``coroot`` is the integer vector f with <lam, alpha^vee> = f . lam for
    lam in fundamental coordinates.
    """

    root_coords: tuple[int, ...]
    fund_coords: tuple[int, ...]
    coroot: tuple[int, ...]
    height: int


@dataclass(frozen=True)
class RootDatum:
    series: str
    rank: int
    cartan: tuple[tuple[int, ...], ...]
    symmetrizers: tuple[int, ...]
    positive_roots: tuple[PositiveRoot, ...]

    @property
    def key(self) -> str:
        return f"{self.series}{self.rank}"

    @property
    def num_positive(self) -> int:
        return len(self.positive_roots)

    @property
    def rho(self) -> Weight:
        return (1,) * self.rank

    @property
    def highest_short_root(self) -> PositiveRoot:
        """The positive root whose coroot is the highest coroot.

        This is the root through which the affine reflection bounding the
        fundamental alcove acts; its coroot dominates every other coroot.
        """
        return max(self.positive_roots, key=lambda r: sum(r.coroot))

    @property
    def coxeter_number(self) -> int:
        return sum(self.highest_short_root.coroot) + 1

    def simple_root(self, i: int) -> PositiveRoot:
        """The i-th simple root, i in 1..rank."""
        target = tuple(1 if j == i - 1 else 0 for j in range(self.rank))
        for r in self.positive_roots:
            if r.root_coords == target:
                return r
        raise ValueError(f"no simple root {i}")


@dataclass(frozen=True)
class LAdicPair:
    """lambda = lambda0 + l*lambda1 with lambda0 in X_l = [0, l)^n."""

    lambda0: Weight
    lambda1: Weight
    l: int


@dataclass(frozen=True)
class WeightPredicates:
    dominant: bool
    antidominant: bool
    regular: bool
    l_regular: bool
    special: bool
    steinberg: bool


def _build_cartan(series: str, rank: int) -> list[list[int]]:
    n = rank
    a = [[2 if i == j else 0 for j in range(n)] for i in range(n)]

    def edge(i: int, j: int, aij: int = -1, aji: int = -1) -> None:
        a[i][j] = aij
        a[j][i] = aji

    if series in ("A", "B", "C", "F", "G"):
        for i in range(n - 1):
            edge(i, i + 1)
    if series == "B":
        # alpha_n short: <alpha_{n-1}, alpha_n^vee> = -2
        a[n - 1][n - 2] = -2
    elif series == "C":
        a[n - 2][n - 1] = -2
    elif series == "D":
        for i in range(n - 2):
            edge(i, i + 1)
        edge(n - 3, n - 1)
    elif series == "E":
        # Bourbaki: chain 1-3-4-5-6(-7-8), node 2 attached to node 4
        chain = [0, 2, 3, 4, 5, 6, 7][: n - 1]
        for i, j in zip(chain, chain[1:]):
            edge(i, j)
        edge(1, 3)
    elif series == "F":
        a[2][1] = -2
        a[1][2] = -1
    elif series == "G":
        a[0][1] = -3
        a[1][0] = -1
    return a


def _symmetrizers(cartan: list[list[int]]) -> tuple[int, ...]:
    """Relatively prime positive integers d with diag(d) . C symmetric."""
    n = len(cartan)
    d: list[Fraction | None] = [None] * n
    d[0] = Fraction(1)
    # propagate along the Dynkin graph
    changed = True
    while changed:
        changed = False
        for i in range(n):
            for j in range(n):
                if i != j and cartan[i][j] != 0:
                    if d[i] is not None and d[j] is None:
                        d[j] = d[i] * cartan[i][j] / cartan[j][i]
                        changed = True
    assert all(x is not None for x in d), "Dynkin diagram not connected"
    denom = 1
    for x in d:
        denom = denom * x.denominator // _gcd(denom, x.denominator)
    ints = [int(x * denom) for x in d]
    g = 0
    for v in ints:
        g = _gcd(g, v)
    return tuple(v // g for v in ints)


def _gcd(a: int, b: int) -> int:
    while b:
        a, b = b, a % b
    return abs(a)


def _positive_roots(cartan: list[list[int]], d: tuple[int, ...]) -> tuple[PositiveRoot, ...]:
    """All positive roots via reflection closure on root coordinates."""
    n = len(cartan)
    simple = [tuple(1 if j == i else 0 for j in range(n)) for i in range(n)]
    roots: set[tuple[int, ...]] = set(simple)
    frontier = list(simple)
    while frontier:
        beta = frontier.pop()
        for i in range(n):
            pairing = sum(cartan[i][j] * beta[j] for j in range(n))
            img = tuple(beta[j] - (pairing if j == i else 0) for j in range(n))
            if img not in roots:
                roots.add(img)
                frontier.append(img)
    out = []
    for c in sorted(roots):
        if all(x >= 0 for x in c) and any(x > 0 for x in c):
            fund = tuple(sum(cartan[i][j] * c[j] for j in range(n)) for i in range(n))
            norm = sum(c[j] * c[k] * d[j] * cartan[j][k] for j in range(n) for k in range(n))
            coroot = []
            for j in range(n):
                f = Fraction(2 * d[j] * c[j], norm)
                assert f.denominator == 1, "coroot is not integral"
                coroot.append(int(f))
            out.append(PositiveRoot(c, fund, tuple(coroot), sum(c)))
    out.sort(key=lambda r: (r.height, r.root_coords))
    return tuple(out)


@lru_cache(maxsize=None)
def build_root_datum(series: str, rank: int) -> RootDatum:
    """Construct the root datum for a finite simple type.

    Raises ValueError on an invalid (series, rank) pair.  Ranks up to 4 are
    the supported, tested regime; larger ranks are accepted but slow paths
    (full Weyl-group enumeration) may become expensive.
    """
    series = series.upper()
    if series not in _VALID_RANKS or not isinstance(rank, int):
        raise ValueError(f"unknown series {series!r}")
    if not _VALID_RANKS[series](rank):
        raise ValueError(f"invalid rank {rank} for series {series}")
    cartan = _build_cartan(series, rank)
    d = _symmetrizers(cartan)
    roots = _positive_roots(cartan, d)
    datum = RootDatum(
        series=series,
        rank=rank,
        cartan=tuple(tuple(row) for row in cartan),
        symmetrizers=d,
        positive_roots=roots,
    )
    _check_datum(datum)
    return datum


def parse_type(type_str: str) -> RootDatum:
    """Parse a combined type label like "A1" or "G2"."""
    s = type_str.strip().upper()
    if len(s) < 2 or not s[0].isalpha():
        raise ValueError(f"cannot parse type {type_str!r}")
    try:
        rank = int(s[1:])
    except ValueError:
        raise ValueError(f"cannot parse type {type_str!r}") from None
    return build_root_datum(s[0], rank)


def _check_datum(datum: RootDatum) -> None:
    n = datum.rank
    c = datum.cartan
    for i in range(n):
        if c[i][i] != 2:
            raise AssertionError("Cartan diagonal must be 2")
        for j in range(n):
            if i != j and c[i][j] > 0:
                raise AssertionError("off-diagonal Cartan entries must be <= 0")
            if datum.symmetrizers[i] * c[i][j] != datum.symmetrizers[j] * c[j][i]:
                raise AssertionError("D.C is not symmetric")
    expected = _POSITIVE_COUNTS[datum.series](n)
    if datum.num_positive != expected:
        raise AssertionError(
            f"{datum.key}: found {datum.num_positive} positive roots, expected {expected}"
        )


# -- weight arithmetic -------------------------------------------------------


def wt_add(a: Weight, b: Weight) -> Weight:
    return tuple(x + y for x, y in zip(a, b))


def wt_sub(a: Weight, b: Weight) -> Weight:
    return tuple(x - y for x, y in zip(a, b))


def wt_scale(k: int, a: Weight) -> Weight:
    return tuple(k * x for x in a)


def pairing(datum: RootDatum, lam: Weight, root: PositiveRoot) -> int:
    """<lam, alpha^vee> for a positive root alpha of the datum."""
    return sum(f * x for f, x in zip(root.coroot, lam))


@lru_cache(maxsize=None)
def _cartan_inverse(datum: RootDatum) -> tuple[tuple[Fraction, ...], ...]:
    n = datum.rank
    aug = [[Fraction(datum.cartan[i][j]) for j in range(n)] + [Fraction(int(i == j)) for j in range(n)] for i in range(n)]
    for col in range(n):
        piv = next(r for r in range(col, n) if aug[r][col] != 0)
        aug[col], aug[piv] = aug[piv], aug[col]
        inv = 1 / aug[col][col]
        aug[col] = [x * inv for x in aug[col]]
        for r in range(n):
            if r != col and aug[r][col] != 0:
                f = aug[r][col]
                aug[r] = [x - f * y for x, y in zip(aug[r], aug[col])]
    return tuple(tuple(row[n:]) for row in aug)


def root_coords(datum: RootDatum, delta: Weight) -> tuple[Fraction, ...]:
    """Coordinates of delta on the simple roots (exact rationals)."""
    cinv = _cartan_inverse(datum)
    return tuple(sum(row[j] * delta[j] for j in range(datum.rank)) for row in cinv)


def int_root_coords(datum: RootDatum, delta: Weight) -> tuple[int, ...] | None:
    """Root coordinates if delta lies in the root lattice, else None."""
    rc = root_coords(datum, delta)
    if all(x.denominator == 1 for x in rc):
        return tuple(int(x) for x in rc)
    return None


def dominance_leq(datum: RootDatum, mu: Weight, lam: Weight) -> bool:
    """mu <= lam in the usual order: lam - mu a nonnegative sum of simple roots."""
    rc = int_root_coords(datum, wt_sub(lam, mu))
    return rc is not None and all(x >= 0 for x in rc)


def height_below(datum: RootDatum, top: Weight, mu: Weight) -> int:
    """Height of top - mu in simple-root coordinates (must be integral)."""
    rc = int_root_coords(datum, wt_sub(top, mu))
    if rc is None:
        raise ValueError(f"{mu} is not below {top} in the root lattice")
    return sum(rc)


def validate_l(datum: RootDatum, l: int) -> None:
    if l < 3 or l % 2 == 0:
        raise ValueError(f"l must be odd and >= 3, got {l}")
    if datum.series == "G" and l % 3 == 0:
        raise ValueError("l must be prime to 3 in type G2")


def l_adic_decompose(datum: RootDatum, lam: Weight, l: int) -> LAdicPair:
    """The unique expansion lam = lambda0 + l*lambda1 with lambda0 in X_l."""
    validate_l(datum, l)
    lam0 = tuple(x % l for x in lam)
    lam1 = tuple((x - x % l) // l for x in lam)
    assert wt_add(lam0, wt_scale(l, lam1)) == tuple(lam)
    return LAdicPair(lam0, lam1, l)


def is_dominant(datum: RootDatum, lam: Weight) -> bool:
    return all(x >= 0 for x in lam)


def is_antidominant(datum: RootDatum, lam: Weight) -> bool:
    return all(v <= 0 for v in wt_add(lam, datum.rho))


def weight_predicates(datum: RootDatum, lam: Weight, l: int) -> WeightPredicates:
    """Pointwise predicates of a weight relative to the root system and l."""
    validate_l(datum, l)
    shifted = wt_add(lam, datum.rho)
    pairings = [pairing(datum, shifted, r) for r in datum.positive_roots]
    pair = l_adic_decompose(datum, lam, l)
    steinberg = tuple(lam) == wt_scale(l - 1, datum.rho)
    return WeightPredicates(
        dominant=is_dominant(datum, lam),
        antidominant=all(p <= 0 for p in pairings),
        regular=all(p != 0 for p in pairings),
        l_regular=all(p % l != 0 for p in pairings),
        special=pair.lambda0 == wt_scale(l - 1, datum.rho),
        steinberg=steinberg,
    )
