"""Kazhdan-Lusztig polynomials P_{y,w} and inverse polynomials Q_{z,w}.

The engine runs the classical left-descent recursion with exact integer
polynomials, memoized on canonical element pairs, and never leaves the
Bruhat interval below the top element, which keeps affine computations
finite.  Q is obtained by back-substitution in the triangular system

    sum_z (-1)^{l(z)-l(y)} P_{y,z} Q_{z,w} = delta_{y,w}.

A persistent cache serializes the P-table as JSON lines keyed by
ShortLex-minimal reduced words.
"""

from __future__ import annotations

import json
import threading
from dataclasses import dataclass

from .klpoly import KLPolynomial
from .weyl import WeylElement, _WeylGroupBase

CACHE_VERSION = 1


class CacheError(Exception):
    """Raised when a persistent KL cache cannot be trusted."""


class KLEngine:
    """Memoized KL computations over one (finite or affine) Weyl group."""

    def __init__(self, group: _WeylGroupBase, descent_choice: str = "min"):
        self.group = group
        self._p: dict[tuple[WeylElement, WeylElement], KLPolynomial] = {}
        self._q: dict[tuple[WeylElement, WeylElement], KLPolynomial] = {}
        self._lock = threading.RLock()
        self._pick = min if descent_choice == "min" else max

    # -- P ------------------------------------------------------------------

    def polynomial(self, y: WeylElement, w: WeylElement) -> KLPolynomial:
        g = self.group
        g._check(y)
        g._check(w)
        if y == w:
            return KLPolynomial.one()
        if not g.bruhat_leq(y, w):
            return KLPolynomial.zero()
        d = g.length(w) - g.length(y)
        if d <= 2:
            # degree bound forces a constant, and the constant term is 1
            return KLPolynomial.one()
        key = (y, w)
        with self._lock:
            cached = self._p.get(key)
        if cached is not None:
            return cached
        res = self._compute(y, w)
        assert res.coeff(0) == 1, "KL constant term must be 1"
        assert res.degree <= (d - 1) // 2, "KL degree bound violated"
        assert all(c >= 0 for c in res.coeffs), "KL coefficients must be nonnegative"
        with self._lock:
            self._p.setdefault(key, res)
        return res

    def _compute(self, y: WeylElement, w: WeylElement) -> KLPolynomial:
        g = self.group
        s = g.generators[self._pick(g.left_descents(w))]
        sy = g.multiply(s, y)
        if g.length(sy) > g.length(y):
            # P_{y,w} = P_{sy,w} when sy > y and sw < w
            return self.polynomial(sy, w)
        v = g.multiply(s, w)
        res = self.polynomial(sy, v) + self.polynomial(y, v).shift(1)
        lw = g.length(w)
        for z in g.bruhat_lowerset(v):
            lz = g.length(z)
            if (lw - lz) % 2 != 0:
                continue
            if g.length(g.multiply(s, z)) > lz:
                continue
            m = self.mu(z, v)
            if m == 0 or not g.bruhat_leq(y, z):
                continue
            res = res - self.polynomial(y, z).scale(m).shift((lw - lz) // 2)
        return res

    def mu(self, y: WeylElement, w: WeylElement) -> int:
        """Coefficient of q^{(l(w)-l(y)-1)/2} in P_{y,w}; 0 unless y < w."""
        g = self.group
        d = g.length(w) - g.length(y)
        if d <= 0 or d % 2 == 0 or not g.bruhat_leq(y, w):
            return 0
        return self.polynomial(y, w).coeff((d - 1) // 2)

    # -- Q ------------------------------------------------------------------

    def inverse_polynomial(self, z: WeylElement, w: WeylElement) -> KLPolynomial:
        g = self.group
        g._check(z)
        g._check(w)
        if z == w:
            return KLPolynomial.one()
        if not g.bruhat_leq(z, w):
            return KLPolynomial.zero()
        key = (z, w)
        with self._lock:
            cached = self._q.get(key)
        if cached is not None:
            return cached
        # back-substitution: Q_{z,w} = sum_{z<u<=w} (-1)^{l(u)-l(z)+1} P_{z,u} Q_{u,w}
        lz = g.length(z)
        res = KLPolynomial.zero()
        for u in g.bruhat_interval(z, w):
            if u == z:
                continue
            sign = -1 if (g.length(u) - lz) % 2 == 0 else 1
            res = res + (self.polynomial(z, u) * self.inverse_polynomial(u, w)).scale(sign)
        with self._lock:
            self._q.setdefault(key, res)
        return res

    # -- table access ---------------------------------------------------------

    def value_at_one(self, y: WeylElement, w: WeylElement) -> int:
        return self.polynomial(y, w).at_one()

    def fill_finite_table(self) -> int:
        """Compute and store P for every Bruhat pair y <= w of a finite group."""
        els = self.group.elements()  # type: ignore[attr-defined]
        with self._lock:
            for w in els:
                for y in els:
                    if self.group.bruhat_leq(y, w):
                        self._p[(y, w)] = self.polynomial(y, w)
        return len(self._p)

    def stored_items(self):
        return sorted(
            self._p.items(),
            key=lambda kv: (
                self.group.length(kv[0][1]),
                self.group.reduced_word(kv[0][1]),
                self.group.length(kv[0][0]),
                self.group.reduced_word(kv[0][0]),
            ),
        )


@dataclass(frozen=True)
class KLCache:
    """Identity header plus the serialized P-table of one group."""

    series: str
    rank: int
    affine: bool
    entries: tuple[tuple[str, str, tuple[int, ...]], ...]


def cache_store(engine: KLEngine, path) -> int:
    """Write the engine's P-table to a JSON-lines file; returns #entries."""
    g = engine.group
    header = {
        "version": CACHE_VERSION,
        "series": g.datum.series,
        "rank": g.datum.rank,
        "affine": g.affine,
    }
    lines = [json.dumps(header, sort_keys=True)]
    for (y, w), poly in engine.stored_items():
        lines.append(
            json.dumps({"y": g.word_str(y), "w": g.word_str(w), "p": poly.to_list()})
        )
    with open(path, "w", encoding="utf-8") as fh:
        fh.write("\n".join(lines) + "\n")
    return len(lines) - 1


def cache_load(engine: KLEngine, path) -> int:
    """Load a cache file into the engine, validating identity and content."""
    g = engine.group
    try:
        with open(path, "r", encoding="utf-8") as fh:
            lines = [ln for ln in fh.read().splitlines() if ln.strip()]
    except OSError as exc:
        raise CacheError(f"cannot read cache file {path}: {exc}") from exc
    if not lines:
        raise CacheError(f"cache file {path} is empty")
    header = _parse_line(lines[0], path, 1)
    for field, expected in (
        ("version", CACHE_VERSION),
        ("series", g.datum.series),
        ("rank", g.datum.rank),
        ("affine", g.affine),
    ):
        if header.get(field) != expected:
            raise CacheError(
                f"cache header mismatch in {path}: {field}={header.get(field)!r}, "
                f"expected {expected!r}"
            )
    loaded = 0
    for no, line in enumerate(lines[1:], start=2):
        rec = _parse_line(line, path, no)
        try:
            y = g.parse_word(rec["y"])
            w = g.parse_word(rec["w"])
            coeffs = tuple(rec["p"])
        except (KeyError, ValueError, TypeError) as exc:
            raise CacheError(f"malformed cache entry at {path}:{no}: {exc}") from exc
        if not all(isinstance(c, int) for c in coeffs):
            raise CacheError(f"non-integer coefficient at {path}:{no}")
        poly = KLPolynomial(coeffs)
        prev = engine._p.get((y, w))
        if prev is not None and prev != poly:
            raise CacheError(f"conflicting entry at {path}:{no}")
        engine._p[(y, w)] = poly
        loaded += 1
    return loaded


def cache_stats(path) -> dict:
    """Header and entry count of a cache file, with validation."""
    try:
        with open(path, "r", encoding="utf-8") as fh:
            lines = [ln for ln in fh.read().splitlines() if ln.strip()]
    except OSError as exc:
        raise CacheError(f"cannot read cache file {path}: {exc}") from exc
    if not lines:
        raise CacheError(f"cache file {path} is empty")
    header = _parse_line(lines[0], path, 1)
    for no, line in enumerate(lines[1:], start=2):
        rec = _parse_line(line, path, no)
        if not {"y", "w", "p"} <= rec.keys():
            raise CacheError(f"malformed cache entry at {path}:{no}")
    return {"header": header, "entries": len(lines) - 1}


def _parse_line(line: str, path, no: int) -> dict:
    try:
        rec = json.loads(line)
    except json.JSONDecodeError as exc:
        raise CacheError(f"cannot parse {path}:{no}: {exc}") from exc
    if not isinstance(rec, dict):
        raise CacheError(f"cache line {path}:{no} is not an object")
    return rec


_ENGINES: dict[tuple, KLEngine] = {}


def engine_for(group: _WeylGroupBase) -> KLEngine:
    key = group.key
    if key not in _ENGINES:
        _ENGINES[key] = KLEngine(group)
    return _ENGINES[key]
