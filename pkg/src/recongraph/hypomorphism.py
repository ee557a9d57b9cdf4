"""Decks of vertex-deleted cards and hypomorphisms between two graphs.

A hypomorphism is a bijection ``f: V(G) -> V(H)`` together with, for every
vertex ``v``, an isomorphism ``phi[v]: G - v -> H - f(v)``. Maps are stored
against the original vertex indices; ``phi[v][v]`` is ``None``.
"""

from __future__ import annotations

import itertools
import math
from collections import Counter
from dataclasses import dataclass, field
from functools import cached_property
from typing import Any, Iterator, Optional, Sequence

from .graph import SimpleGraph, _bits, delete_vertex
from .iso import canonical_key, enumerate_isomorphisms

DEFAULT_LIMIT = 10**6

Map = tuple[Optional[int], ...]


class ShapeError(ValueError):
    """Orders or map lengths do not fit the graphs at hand."""


@dataclass(frozen=True)
class Deck:
    """Multiset of card keys, stored sorted."""

    cards: tuple[bytes, ...]

    def __len__(self) -> int:
        return len(self.cards)

    def counts(self) -> Counter:
        return Counter(self.cards)


def card_keys(G: SimpleGraph) -> list[bytes]:
    """Canonical key of ``G - v`` for each vertex ``v`` in order."""
    return [canonical_key(delete_vertex(G, v)[0]) for v in range(G.n)]


def deck(G: SimpleGraph) -> Deck:
    if G.n < 2:
        raise ValueError("a deck needs at least two vertices")
    return Deck(tuple(sorted(card_keys(G))))


def decks_equal(G: SimpleGraph, H: SimpleGraph) -> bool:
    if G.n != H.n:
        return False
    if G.n < 2:
        return G.edge_count == H.edge_count
    return deck(G) == deck(H)


@dataclass(frozen=True)
class Hypomorphism:
    f: tuple[int, ...]
    phi: tuple[Map, ...]

    @cached_property
    def phi_inv(self) -> tuple[Map, ...]:
        out = []
        for v, m in enumerate(self.phi):
            inv: list[Optional[int]] = [None] * len(self.f)
            for u, w in enumerate(m):
                if w is not None:
                    inv[w] = u
            out.append(tuple(inv))
        return tuple(out)

    @cached_property
    def f_inv(self) -> tuple[int, ...]:
        inv = [0] * len(self.f)
        for v, w in enumerate(self.f):
            inv[w] = v
        return tuple(inv)

    @property
    def order(self) -> int:
        return len(self.f)

    def to_dict(self) -> dict[str, Any]:
        return {
            "f": list(self.f),
            "phi": {str(v): [w for w in m if w is not None] for v, m in enumerate(self.phi)},
        }

    @classmethod
    def from_dict(cls, data: dict[str, Any]) -> Hypomorphism:
        f = tuple(int(x) for x in data["f"])
        n = len(f)
        phi = []
        for v in range(n):
            imgs = [int(x) for x in data["phi"][str(v)]]
            if len(imgs) != n - 1:
                raise ShapeError(f"phi[{v}] must list {n - 1} images, got {len(imgs)}")
            m: list[Optional[int]] = list(imgs)
            m.insert(v, None)
            phi.append(tuple(m))
        return cls(f, tuple(phi))

    @classmethod
    def from_maps(cls, f: Sequence[int], phi: dict[int, dict[int, int]]) -> Hypomorphism:
        n = len(f)
        rows = []
        for v in range(n):
            rows.append(tuple(None if u == v else phi[v][u] for u in range(n)))
        return cls(tuple(f), tuple(rows))


def identity_hypomorphism(n: int) -> Hypomorphism:
    return Hypomorphism(tuple(range(n)), tuple(tuple(None if u == v else u for u in range(n)) for v in range(n)))


@dataclass
class ValidationReport:
    violations: list[str] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.violations


def _check_shape(G: SimpleGraph, H: SimpleGraph, hy: Hypomorphism) -> None:
    if G.n != H.n:
        raise ShapeError(f"graph orders differ: {G.n} vs {H.n}")
    if len(hy.f) != G.n or len(hy.phi) != G.n:
        raise ShapeError("hypomorphism size does not match the graphs")
    for v, m in enumerate(hy.phi):
        if len(m) != G.n:
            raise ShapeError(f"phi[{v}] has length {len(m)}, expected {G.n}")


def card_violation(G: SimpleGraph, H: SimpleGraph, v: int, w: int, m: Map) -> Optional[str]:
    """Why ``m`` fails to be an isomorphism ``G - v -> H - w`` (``None`` if it is one)."""
    n = G.n
    if m[v] is not None:
        return f"phi[{v}] is defined at its own deleted vertex"
    imgs = [m[u] for u in range(n) if u != v]
    if any(x is None or not 0 <= x < n for x in imgs):
        return f"phi[{v}] is not total on V - {v}"
    if len(set(imgs)) != n - 1 or w in imgs:
        return f"phi[{v}] is not a bijection onto V' - {w}"
    drop_g = ~(1 << v)
    drop_h = ~(1 << w)
    for u in range(n):
        if u == v:
            continue
        want = 0
        for x in _bits(G.adj[u] & drop_g):
            want |= 1 << m[x]
        if H.adj[m[u]] & drop_h != want:
            return f"phi[{v}] breaks adjacency at vertex {u}"
    return None


def validate_hypomorphism(G: SimpleGraph, H: SimpleGraph, hy: Hypomorphism) -> ValidationReport:
    """List every way ``hy`` fails the defining property; empty list means valid.

    Wrong orders raise :class:`ShapeError` instead of producing violations.
    """
    _check_shape(G, H, hy)
    report = ValidationReport()
    n = G.n
    if sorted(hy.f) != list(range(n)):
        report.violations.append("f is not a bijection")
        return report
    for v in range(n):
        bad = card_violation(G, H, v, hy.f[v], hy.phi[v])
        if bad:
            report.violations.append(bad)
        if G.degree(v) != H.degree(hy.f[v]):
            report.violations.append(f"degree of {v} is {G.degree(v)} but f({v}) has {H.degree(hy.f[v])}")
    return report


class CardMatcher:
    """Card keys of two equal-order graphs plus cached lifted card isomorphisms."""

    def __init__(self, G: SimpleGraph, H: SimpleGraph):
        self.G, self.H = G, H
        self.keys_g = card_keys(G)
        self.keys_h = card_keys(H)
        self._isos: dict[tuple[int, int], list[Map]] = {}

    def compatible(self, v: int, w: int) -> bool:
        return self.keys_g[v] == self.keys_h[w] and self.G.degree(v) == self.H.degree(w)

    def decks_match(self) -> bool:
        return sorted(self.keys_g) == sorted(self.keys_h)

    def isomorphisms(self, v: int, w: int) -> list[Map]:
        """All isomorphisms ``G - v -> H - w`` in lexicographic order, on original indices."""
        key = (v, w)
        if key not in self._isos:
            cg, kept_g = delete_vertex(self.G, v)
            ch, kept_h = delete_vertex(self.H, w)
            out = []
            for m in enumerate_isomorphisms(cg, ch):
                row: list[Optional[int]] = [None] * self.G.n
                for i, j in enumerate(m.images):
                    row[kept_g[i]] = kept_h[j]
                out.append(tuple(row))
            self._isos[key] = out
        return self._isos[key]

    def bijections(self) -> Iterator[tuple[int, ...]]:
        """Bijections ``f`` respecting (degree, card) classes, in lexicographic order."""
        n = self.G.n
        img = [0] * n

        def extend(v: int, used: int) -> Iterator[tuple[int, ...]]:
            if v == n:
                yield tuple(img)
                return
            for w in range(n):
                if not used >> w & 1 and self.compatible(v, w):
                    img[v] = w
                    yield from extend(v + 1, used | 1 << w)

        if self.decks_match():
            yield from extend(0, 0)

    def count_for(self, f: Sequence[int]) -> int:
        total = 1
        for v, w in enumerate(f):
            total *= len(self.isomorphisms(v, w))
        return total


def find_hypomorphisms(
    G: SimpleGraph,
    H: SimpleGraph,
    limit: Optional[int] = DEFAULT_LIMIT,
    per_f_limit: Optional[int] = None,
    matcher: Optional[CardMatcher] = None,
) -> Iterator[Hypomorphism]:
    """Yield hypomorphisms ``G -> H``: ``f`` in lexicographic order, then the
    product of per-vertex card isomorphisms in lexicographic order.

    ``limit`` caps the whole stream, ``per_f_limit`` the yields for one ``f``.
    """
    if G.n != H.n:
        raise ShapeError(f"graph orders differ: {G.n} vs {H.n}")
    if G.n < 3:
        raise ShapeError("hypomorphism search needs at least three vertices")
    if limit is not None and limit < 1:
        raise ValueError("limit must be >= 1")
    cm = matcher or CardMatcher(G, H)
    count = 0
    for f in cm.bijections():
        choices = [cm.isomorphisms(v, w) for v, w in enumerate(f)]
        if any(not c for c in choices):
            continue
        product = itertools.product(*choices)
        if per_f_limit is not None:
            product = itertools.islice(product, per_f_limit)
        for phi in product:
            yield Hypomorphism(f, phi)
            count += 1
            if limit is not None and count >= limit:
                return


def count_hypomorphisms(G: SimpleGraph, H: SimpleGraph, matcher: Optional[CardMatcher] = None) -> int:
    """Exact number of hypomorphisms (the uncapped stream length).

    Compatible ``(v, w)`` have isomorphic cards, so each contributes
    ``|Aut(G - v)|`` choices and the bijections factor over card classes.
    """
    cm = matcher or CardMatcher(G, H)
    if G.n != H.n or not cm.decks_match():
        return 0
    if any(not any(cm.compatible(v, w) for w in range(H.n)) for v in range(G.n)):
        return 0
    total = 1
    for size in Counter(zip(cm.keys_g, G.degrees())).values():
        total *= math.factorial(size)
    for v in range(G.n):
        w = next(w for w in range(H.n) if cm.compatible(v, w))
        total *= len(cm.isomorphisms(v, w))
    return total
