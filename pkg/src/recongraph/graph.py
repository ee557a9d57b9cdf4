"""Finite simple graphs on vertices ``0..n-1`` with bit-packed adjacency rows."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Optional, Sequence


class GraphError(ValueError):
    """Raised for malformed graph input (bad vertex, loop, bad labels)."""


def _bits(mask: int) -> Iterable[int]:
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


@dataclass(frozen=True)
class SimpleGraph:
    """Immutable simple undirected graph.

    ``adj[v]`` is an integer whose bit ``u`` is set iff ``{u, v}`` is an edge.
    ``labels`` holds optional display names (1-based names like ``a1`` are the
    convention used throughout this package).
    """

    n: int
    adj: tuple[int, ...]
    labels: Optional[tuple[str, ...]] = None

    def __post_init__(self) -> None:
        if self.n < 1:
            raise GraphError(f"graph needs at least one vertex, got n={self.n}")
        if len(self.adj) != self.n:
            raise GraphError("adjacency row count does not match n")
        full = (1 << self.n) - 1
        for v, row in enumerate(self.adj):
            if row & ~full:
                raise GraphError(f"row {v} references a vertex out of range")
            if row >> v & 1:
                raise GraphError(f"loop at vertex {v}")
            for u in _bits(row):
                if not self.adj[u] >> v & 1:
                    raise GraphError(f"adjacency not symmetric at ({v},{u})")
        if self.labels is not None:
            if len(self.labels) != self.n:
                raise GraphError("label count does not match n")
            if len(set(self.labels)) != self.n:
                raise GraphError("labels must be distinct")

    def has_edge(self, u: int, v: int) -> bool:
        return bool(self.adj[u] >> v & 1)

    def neighbors(self, v: int) -> list[int]:
        return list(_bits(self.adj[v]))

    def degree(self, v: int) -> int:
        return self.adj[v].bit_count()

    def degrees(self) -> list[int]:
        return [row.bit_count() for row in self.adj]

    @property
    def edge_count(self) -> int:
        return sum(row.bit_count() for row in self.adj) // 2

    def edges(self) -> list[tuple[int, int]]:
        """Sorted edge list with ``u < v``."""
        return [(u, v) for u in range(self.n) for v in _bits(self.adj[u] >> (u + 1) << (u + 1))]

    def label(self, v: int) -> str:
        if self.labels is not None:
            return self.labels[v]
        return f"v{v + 1}"

    def index_of(self, label: str) -> int:
        names = self.labels or tuple(f"v{i + 1}" for i in range(self.n))
        try:
            return names.index(label)
        except ValueError:
            raise GraphError(f"no vertex labelled {label!r}") from None

    def with_labels(self, labels: Optional[Sequence[str]]) -> SimpleGraph:
        return SimpleGraph(self.n, self.adj, tuple(labels) if labels is not None else None)

    def induced(self, vertices: Sequence[int]) -> SimpleGraph:
        """Full subgraph on ``vertices``, re-indexed in the given order."""
        pos = {v: i for i, v in enumerate(vertices)}
        rows = []
        for v in vertices:
            row = 0
            for u in _bits(self.adj[v]):
                if u in pos:
                    row |= 1 << pos[u]
            rows.append(row)
        labels = tuple(self.label(v) for v in vertices) if self.labels is not None else None
        return SimpleGraph(len(vertices), tuple(rows), labels)

    def relabel(self, perm: Sequence[int]) -> SimpleGraph:
        """Graph with vertex ``v`` renamed ``perm[v]`` (labels travel along)."""
        rows = [0] * self.n
        for v in range(self.n):
            row = 0
            for u in _bits(self.adj[v]):
                row |= 1 << perm[u]
            rows[perm[v]] = row
        labels = None
        if self.labels is not None:
            moved = [""] * self.n
            for v in range(self.n):
                moved[perm[v]] = self.labels[v]
            labels = tuple(moved)
        return SimpleGraph(self.n, tuple(rows), labels)

    def complement(self) -> SimpleGraph:
        full = (1 << self.n) - 1
        return SimpleGraph(self.n, tuple(full & ~row & ~(1 << v) for v, row in enumerate(self.adj)), self.labels)

    def __repr__(self) -> str:
        return f"SimpleGraph(n={self.n}, edges={self.edges()})"


def make_graph(n: int, edges: Iterable[Sequence[int]], labels: Optional[Sequence[str]] = None) -> SimpleGraph:
    """Build a graph from an edge list; duplicate pairs collapse to one edge."""
    if n < 1:
        raise GraphError(f"graph needs at least one vertex, got n={n}")
    rows = [0] * n
    for pair in edges:
        u, v = pair
        if not (0 <= u < n and 0 <= v < n):
            raise GraphError(f"edge ({u},{v}) has a vertex out of range 0..{n - 1}")
        if u == v:
            raise GraphError(f"edge ({u},{v}) is a loop")
        rows[u] |= 1 << v
        rows[v] |= 1 << u
    return SimpleGraph(n, tuple(rows), tuple(labels) if labels is not None else None)


def empty_graph(n: int) -> SimpleGraph:
    return SimpleGraph(n, (0,) * n)


def complete_graph(n: int) -> SimpleGraph:
    full = (1 << n) - 1
    return SimpleGraph(n, tuple(full & ~(1 << v) for v in range(n)))


def path_graph(n: int) -> SimpleGraph:
    return make_graph(n, [(i, i + 1) for i in range(n - 1)])


def cycle_graph(n: int) -> SimpleGraph:
    return make_graph(n, [(i, (i + 1) % n) for i in range(n)])


def delete_vertex(G: SimpleGraph, v: int) -> tuple[SimpleGraph, tuple[int, ...]]:
    """Card ``G - v``.

    Returns the subgraph together with ``kept``: ``kept[i]`` is the original
    index of the card's vertex ``i`` (order preserving).
    """
    if not 0 <= v < G.n:
        raise GraphError(f"vertex {v} out of range 0..{G.n - 1}")
    if G.n < 2:
        raise GraphError("cannot delete the only vertex")
    kept = tuple(u for u in range(G.n) if u != v)
    return G.induced(kept), kept


def degree(G: SimpleGraph, v: int) -> int:
    if not 0 <= v < G.n:
        raise GraphError(f"vertex {v} out of range 0..{G.n - 1}")
    return G.degree(v)


def connected_components(G: SimpleGraph) -> list[frozenset[int]]:
    """Components sorted by least vertex."""
    seen = 0
    out = []
    for s in range(G.n):
        if seen >> s & 1:
            continue
        comp = frontier = 1 << s
        while frontier:
            nxt = 0
            for u in _bits(frontier):
                nxt |= G.adj[u]
            frontier = nxt & ~comp
            comp |= frontier
        seen |= comp
        out.append(frozenset(_bits(comp)))
    return out


def is_isomorphism(G: SimpleGraph, H: SimpleGraph, images: Sequence[int]) -> bool:
    """True iff ``images`` is a bijection ``V(G) -> V(H)`` preserving and reflecting edges."""
    if G.n != H.n or len(images) != G.n or sorted(images) != list(range(H.n)):
        return False
    return all(
        G.has_edge(u, v) == H.has_edge(images[u], images[v]) for u in range(G.n) for v in range(u + 1, G.n)
    )


def preserves_adjacency(G: SimpleGraph, H: SimpleGraph, mapping: dict[int, int]) -> Optional[tuple[int, int]]:
    """Check that ``mapping`` is an isomorphism between the induced subgraphs on its domain and image.

    Returns ``None`` on success, else a witnessing source pair.
    """
    if len(set(mapping.values())) != len(mapping):
        dom = sorted(mapping)
        for i, u in enumerate(dom):
            for v in dom[i + 1 :]:
                if mapping[u] == mapping[v]:
                    return (u, v)
    dom = sorted(mapping)
    for i, u in enumerate(dom):
        for v in dom[i + 1 :]:
            if G.has_edge(u, v) != H.has_edge(mapping[u], mapping[v]):
                return (u, v)
    return None
