"""Isomorphism search and exact canonical keys for small graphs.

Both routines start from the same colour refinement (equitable partition);
isomorphism search then backtracks vertex by vertex, canonical keys run an
individualisation-refinement tree and keep the least adjacency encoding.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Iterator, Optional, Sequence

from .graph import SimpleGraph, _bits

BLANK = None


@dataclass(frozen=True)
class VertexMap:
    """Injective map given by ``images[v]``; ``None`` marks a vertex outside the domain."""

    images: tuple[Optional[int], ...]
    target_order: int

    @property
    def source_order(self) -> int:
        return len(self.images)

    @property
    def domain(self) -> list[int]:
        return [v for v, w in enumerate(self.images) if w is not None]

    def __call__(self, v: Optional[int]) -> Optional[int]:
        if v is None:
            return None
        return self.images[v]

    def __len__(self) -> int:
        return len(self.images)

    def __getitem__(self, v: int) -> Optional[int]:
        return self.images[v]

    def is_injective(self) -> bool:
        hit = [w for w in self.images if w is not None]
        return len(hit) == len(set(hit)) and all(0 <= w < self.target_order for w in hit)

    def is_bijective(self) -> bool:
        return self.is_injective() and None not in self.images and self.source_order == self.target_order

    def inverse(self) -> VertexMap:
        inv: list[Optional[int]] = [None] * self.target_order
        for v, w in enumerate(self.images):
            if w is not None:
                inv[w] = v
        return VertexMap(tuple(inv), self.source_order)

    def as_list(self) -> list[Optional[int]]:
        return list(self.images)


def refine(G: SimpleGraph, cells: Optional[list[list[int]]] = None) -> tuple[list[list[int]], tuple]:
    """Equitable refinement of an ordered partition.

    Cells are split by (neighbour counts into every current cell) and the
    pieces ordered by that signature, so the result is label independent. The
    returned trace records every split; equal traces are necessary for two
    graphs to be isomorphic under the cell correspondence.
    """
    if cells is None:
        cells = [list(range(G.n))]
    cells = [list(c) for c in cells]
    trace = []
    while True:
        masks = [sum(1 << v for v in c) for c in cells]
        new_cells: list[list[int]] = []
        round_trace = []
        for c in cells:
            if len(c) == 1:
                new_cells.append(c)
                round_trace.append(((), 1))
                continue
            groups: dict[tuple, list[int]] = {}
            for v in c:
                sig = tuple((G.adj[v] & m).bit_count() for m in masks)
                groups.setdefault(sig, []).append(v)
            for sig in sorted(groups):
                new_cells.append(groups[sig])
                round_trace.append((sig, len(groups[sig])))
        trace.append(tuple(round_trace))
        if len(new_cells) == len(cells):
            return new_cells, tuple(trace)
        cells = new_cells


def _colour_masks(H: SimpleGraph, G: SimpleGraph) -> Optional[tuple[list[int], list[int]]]:
    cells_g, trace_g = refine(G)
    cells_h, trace_h = refine(H)
    if trace_g != trace_h:
        return None
    colour = [0] * G.n
    for i, c in enumerate(cells_g):
        for v in c:
            colour[v] = i
    return colour, [sum(1 << v for v in c) for c in cells_h]


def enumerate_isomorphisms(G: SimpleGraph, H: SimpleGraph, limit: Optional[int] = None) -> Iterator[VertexMap]:
    """Yield isomorphisms ``G -> H`` in lexicographic order of image lists."""
    if limit is not None and limit < 1:
        raise ValueError("limit must be >= 1")
    if G.n != H.n or G.edge_count != H.edge_count or sorted(G.degrees()) != sorted(H.degrees()):
        return
    prep = _colour_masks(H, G)
    if prep is None:
        return
    colour, cell_h = prep
    n = G.n
    img = [0] * n
    count = 0

    def extend(v: int, used: int) -> Iterator[tuple[int, ...]]:
        if v == n:
            yield tuple(img)
            return
        row = G.adj[v]
        want = 0
        for u in range(v):
            if row >> u & 1:
                want |= 1 << img[u]
        assigned = used
        for w in _bits(cell_h[colour[v]] & ~used):
            if H.adj[w] & assigned == want:
                img[v] = w
                yield from extend(v + 1, used | 1 << w)

    for images in extend(0, 0):
        yield VertexMap(images, n)
        count += 1
        if limit is not None and count >= limit:
            return


def find_isomorphism(G: SimpleGraph, H: SimpleGraph) -> Optional[VertexMap]:
    """Lexicographically least isomorphism ``G -> H``, or ``None``."""
    return next(enumerate_isomorphisms(G, H, 1), None)


def automorphisms(G: SimpleGraph, limit: Optional[int] = None) -> Iterator[VertexMap]:
    return enumerate_isomorphisms(G, G, limit)


def _encode(G: SimpleGraph, order: Sequence[int]) -> int:
    code = 0
    n = G.n
    for i in range(n):
        row = G.adj[order[i]]
        for j in range(i + 1, n):
            code = code << 1 | (row >> order[j] & 1)
    return code


def _twin(G: SimpleGraph, u: int, w: int) -> bool:
    return G.adj[u] & ~(1 << w) == G.adj[w] & ~(1 << u)


@lru_cache(maxsize=1 << 18)
def _canonical(n: int, adj: tuple[int, ...]) -> tuple[bytes, tuple[int, ...]]:
    G = SimpleGraph(n, adj)
    best: list = [None, None]

    def search(cells: list[list[int]]) -> None:
        cells, _ = refine(G, cells)
        target = None
        for i, c in enumerate(cells):
            if len(c) > 1 and (target is None or len(c) < len(cells[target])):
                target = i
        if target is None:
            order = [c[0] for c in cells]
            code = _encode(G, order)
            if best[0] is None or code < best[0]:
                best[0], best[1] = code, tuple(order)
            return
        cell = cells[target]
        reps: list[int] = []
        for v in cell:
            # swapping twins is an automorphism fixing the current partition
            if any(_twin(G, v, r) for r in reps):
                continue
            reps.append(v)
            rest = [u for u in cell if u != v]
            search(cells[:target] + [[v], rest] + cells[target + 1 :])

    search([list(range(n))])
    nbits = n * (n - 1) // 2
    key = bytes([n]) + best[0].to_bytes((nbits + 7) // 8 or 1, "big")
    return key, best[1]


def canonical_key(G: SimpleGraph) -> bytes:
    """Exact isomorphism-class key: equal keys iff isomorphic graphs."""
    return _canonical(G.n, G.adj)[0]


def canonical_order(G: SimpleGraph) -> tuple[int, ...]:
    """Vertex order realising the canonical key (``order[i]`` goes to position ``i``)."""
    return _canonical(G.n, G.adj)[1]


def canonical_form(G: SimpleGraph) -> SimpleGraph:
    order = canonical_order(G)
    perm = [0] * G.n
    for i, v in enumerate(order):
        perm[v] = i
    return SimpleGraph(G.n, G.relabel(perm).adj)


def is_isomorphic(G: SimpleGraph, H: SimpleGraph) -> bool:
    return G.n == H.n and canonical_key(G) == canonical_key(H)
