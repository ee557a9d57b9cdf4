"""The associated digraph of a hypomorphism and alternating-cycle analysis.

For a hypomorphism ``(f, phi)`` from ``G`` to ``H`` the digraph on ``V(G)`` has

* a normal arrow ``v1 -> v2`` iff ``v1 v2`` is a non-edge of ``G`` while
  ``f(v1) phi[v1](v2)`` is an edge of ``H``;
* a dashed arrow ``v1 ~> v2`` iff ``f(v1) f(v2)`` is a non-edge of ``H`` while
  ``v1 phi[v1]^-1(f(v2))`` is an edge of ``G``.

Alternating cycles ``v1 -> v2 ~> v3 -> ... ~> v1`` are classified ALPHA or
BETA from the blank-propagating composition sequences computed in
:func:`type_sequences`.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any, Iterator, Optional, Sequence

from .graph import SimpleGraph, _bits, is_isomorphism
from .hypomorphism import Hypomorphism, validate_hypomorphism
from .iso import VertexMap


class InvariantViolation(AssertionError):
    """A property that must hold for every valid input did not hold."""


class InvalidHypomorphism(ValueError):
    def __init__(self, violations: list[str]):
        super().__init__("; ".join(violations))
        self.violations = violations


class NotExtendable(Exception):
    """``phi[v]`` does not extend; ``arrow`` is a normal arrow out of ``v``."""

    def __init__(self, vertex: int, arrow: tuple[int, int]):
        super().__init__(f"phi[{vertex}] does not extend: normal arrow {arrow[0]} -> {arrow[1]}")
        self.vertex = vertex
        self.arrow = arrow


@dataclass(frozen=True)
class AssociatedDigraph:
    order: int
    normal_out: tuple[int, ...]
    dashed_out: tuple[int, ...]
    G: Optional[SimpleGraph] = field(default=None, compare=False, repr=False)
    H: Optional[SimpleGraph] = field(default=None, compare=False, repr=False)
    hy: Optional[Hypomorphism] = field(default=None, compare=False, repr=False)

    @property
    def normal(self) -> frozenset[tuple[int, int]]:
        return frozenset((u, v) for u in range(self.order) for v in _bits(self.normal_out[u]))

    @property
    def dashed(self) -> frozenset[tuple[int, int]]:
        return frozenset((u, v) for u in range(self.order) for v in _bits(self.dashed_out[u]))

    def has_normal(self, u: int, v: int) -> bool:
        return bool(self.normal_out[u] >> v & 1)

    def has_dashed(self, u: int, v: int) -> bool:
        return bool(self.dashed_out[u] >> v & 1)

    def is_empty(self) -> bool:
        return not any(self.normal_out) and not any(self.dashed_out)

    def to_dict(self) -> dict[str, Any]:
        return {
            "order": self.order,
            "normal": sorted(list(a) for a in self.normal),
            "dashed": sorted(list(a) for a in self.dashed),
        }


def normal_out_mask(G: SimpleGraph, H: SimpleGraph, f: Sequence[int], m: Sequence[Optional[int]], v: int) -> int:
    """Normal arrows out of ``v``; depends only on ``f(v)`` and ``phi[v]``."""
    mask = 0
    row_h = H.adj[f[v]]
    for u in _bits(((1 << G.n) - 1) & ~G.adj[v] & ~(1 << v)):
        if row_h >> m[u] & 1:
            mask |= 1 << u
    return mask


def dashed_out_mask(G: SimpleGraph, H: SimpleGraph, f: Sequence[int], m_inv: Sequence[Optional[int]], v: int) -> int:
    mask = 0
    w = f[v]
    row_g = G.adj[v]
    for u in range(G.n):
        if u == v:
            continue
        fu = f[u]
        if not H.adj[w] >> fu & 1 and row_g >> m_inv[fu] & 1:
            mask |= 1 << u
    return mask


def build_assoc(G: SimpleGraph, H: SimpleGraph, hy: Hypomorphism, check: bool = True) -> AssociatedDigraph:
    if check:
        report = validate_hypomorphism(G, H, hy)
        if not report.ok:
            raise InvalidHypomorphism(report.violations)
    normal = tuple(normal_out_mask(G, H, hy.f, hy.phi[v], v) for v in range(G.n))
    dashed = tuple(dashed_out_mask(G, H, hy.f, hy.phi_inv[v], v) for v in range(G.n))
    return AssociatedDigraph(G.n, normal, dashed, G, H, hy)


@dataclass(frozen=True)
class Balance:
    vertex: int
    normal_out: int
    dashed_out: int

    @property
    def equal(self) -> bool:
        return self.normal_out == self.dashed_out


def arrow_balance(D: AssociatedDigraph) -> list[Balance]:
    return [Balance(v, D.normal_out[v].bit_count(), D.dashed_out[v].bit_count()) for v in range(D.order)]


def arrow_rule_violations(D: AssociatedDigraph) -> list[str]:
    """Arrows contradicting the non-edge conditions in ``G`` resp. ``H``."""
    out = []
    G, H, hy = D.G, D.H, D.hy
    if G is None or H is None or hy is None:
        return out
    for u, v in sorted(D.normal):
        if u == v or G.has_edge(u, v):
            out.append(f"normal arrow {u}->{v} over an edge of G")
    for u, v in sorted(D.dashed):
        if u == v or H.has_edge(hy.f[u], hy.f[v]):
            out.append(f"dashed arrow {u}~>{v} over an edge of H")
    return out


def extendable_vertices(D: AssociatedDigraph) -> frozenset[int]:
    """Vertices with no normal out-arrow (and therefore no dashed one)."""
    out = set()
    for v in range(D.order):
        if not D.normal_out[v]:
            if D.dashed_out[v]:
                raise InvariantViolation(f"vertex {v} has dashed but no normal out-arrows")
            out.add(v)
    return frozenset(out)


def extension_map(hy: Hypomorphism, v: int) -> tuple[int, ...]:
    """``phi[v]`` completed by ``v -> f(v)``."""
    return tuple(hy.f[v] if u == v else hy.phi[v][u] for u in range(len(hy.f)))


def extends_directly(G: SimpleGraph, H: SimpleGraph, hy: Hypomorphism, v: int) -> bool:
    """Adjacency test of the completed map, independent of the arrows."""
    return is_isomorphism(G, H, extension_map(hy, v))


def extend_iso(G: SimpleGraph, H: SimpleGraph, hy: Hypomorphism, v: int) -> VertexMap:
    """Extend ``phi[v]`` to a full isomorphism, or raise :class:`NotExtendable`."""
    if not 0 <= v < G.n:
        raise ValueError(f"vertex {v} out of range")
    report = validate_hypomorphism(G, H, hy)
    if not report.ok:
        raise InvalidHypomorphism(report.violations)
    arrows = normal_out_mask(G, H, hy.f, hy.phi[v], v)
    direct = extends_directly(G, H, hy, v)
    if direct != (arrows == 0):
        raise InvariantViolation(f"vertex {v}: extension={direct} but normal out-mask={arrows:b}")
    if not direct:
        w = (arrows & -arrows).bit_length() - 1
        raise NotExtendable(v, (v, w))
    return VertexMap(extension_map(hy, v), H.n)


@dataclass(frozen=True)
class AlternatingCycle:
    """Closed walk ``v1 -> v2 ~> v3 -> ... v2k ~> v1`` (vertices may repeat)."""

    vertices: tuple[int, ...]

    def __post_init__(self) -> None:
        if not self.vertices or len(self.vertices) % 2:
            raise ValueError("an alternating cycle has an even, positive number of vertices")

    @property
    def k(self) -> int:
        return len(self.vertices) // 2

    def arrows(self) -> list[tuple[str, int, int]]:
        c = self.vertices
        out = []
        for i in range(0, len(c), 2):
            out.append(("normal", c[i], c[i + 1]))
            out.append(("dashed", c[i + 1], c[(i + 2) % len(c)]))
        return out

    def missing_arrows(self, D: AssociatedDigraph) -> list[tuple[str, int, int]]:
        return [
            (kind, a, b)
            for kind, a, b in self.arrows()
            if not (D.has_normal(a, b) if kind == "normal" else D.has_dashed(a, b))
        ]

    def is_valid_in(self, D: AssociatedDigraph) -> bool:
        return not self.missing_arrows(D)




def _closing_sets(D: AssociatedDigraph, s: int, steps: int) -> list[tuple[int, int]]:
    """``reach[r] = (m0, m1)``: states that can close back at ``s`` within ``r`` arrows.

    ``m0`` holds vertices whose next arrow is normal (restricted to ``>= s``),
    ``m1`` those whose next arrow is dashed.
    """
    allowed0 = ((1 << D.order) - 1) & ~((1 << s) - 1)
    e0, e1 = 1 << s, 0
    acc0, acc1 = e0, e1
    reach = [(acc0, acc1)]
    for _ in range(steps):
        n0 = 0
        for v in _bits(allowed0):
            if D.normal_out[v] & e1:
                n0 |= 1 << v
        n1 = 0
        for v in range(D.order):
            if D.dashed_out[v] & e0:
                n1 |= 1 << v
        e0, e1 = n0, n1
        acc0 |= e0
        acc1 |= e1
        reach.append((acc0, acc1))
    return reach


def _is_least_rotation(c: tuple[int, ...]) -> bool:
    return all(c <= c[i:] + c[:i] for i in range(2, len(c), 2))


def find_alternating_cycles(
    D: AssociatedDigraph, max_k: Optional[int] = None, limit: Optional[int] = None
) -> Iterator[AlternatingCycle]:
    """Alternating cycles with ``k <= max_k``, one per class under even rotation.

    Each cycle is reported in its least even rotation; the stream is sorted by
    start vertex and then lexicographically. ``max_k`` defaults to the order.
    """
    if max_k is None:
        max_k = D.order
    if max_k < 1:
        raise ValueError("max_k must be >= 1")
    if limit is not None and limit < 1:
        raise ValueError("limit must be >= 1")
    steps = 2 * max_k
    count = 0
    for s in range(D.order):
        if not D.normal_out[s]:
            continue
        reach = _closing_sets(D, s, steps)
        allowed0 = ((1 << D.order) - 1) & ~((1 << s) - 1)
        path = [s]

        def walk(v: int) -> Iterator[tuple[int, ...]]:
            budget = steps - (len(path) - 1)
            if len(path) % 2 == 1:
                for w in _bits(D.normal_out[v] & reach[budget - 1][1]):
                    path.append(w)
                    yield from walk(w)
                    path.pop()
                return
            targets = D.dashed_out[v]
            if targets >> s & 1:
                yield tuple(path)
            if budget - 1 >= 2:
                for w in _bits(targets & allowed0 & reach[budget - 1][0]):
                    path.append(w)
                    yield from walk(w)
                    path.pop()

        for cyc in walk(s):
            if _is_least_rotation(cyc):
                yield AlternatingCycle(cyc)
                count += 1
                if limit is not None and count >= limit:
                    return


def mutual_normal_pairs(D: AssociatedDigraph) -> list[tuple[int, int]]:
    return [(u, v) for u, v in sorted(D.normal) if u < v and D.has_normal(v, u)]


# ---------------------------------------------------------------------------
# blank-propagating sequences


def _cycle_word(hy: Hypomorphism, cycle: Sequence[int]) -> tuple[list, list[int], list[int]]:
    """Maps ``m_p`` and seeds for positions ``p = 1..2k`` (stored 0-based).

    Odd positions use ``phi[v_p]`` with seed ``f(v_p)``; even positions use the
    inverse ``phi[v_p]^-1`` with seed ``v_p``. Terminals: offset ``o`` ends at
    ``f(v_o)`` for even ``o`` (``v_0 = v_2k``) and at ``v_o`` for odd ``o``.
    """
    L = len(cycle)
    maps = []
    seeds = []
    for p in range(1, L + 1):
        v = cycle[p - 1]
        if p % 2:
            maps.append(hy.phi[v])
            seeds.append(hy.f[v])
        else:
            maps.append(hy.phi_inv[v])
            seeds.append(v)
    terminals = []
    for o in range(L):
        v = cycle[(o - 1) % L]
        terminals.append(hy.f[v] if o % 2 == 0 else v)
    return maps, seeds, terminals


def _apply(maps: list, o: int, start: int, stop: int, x: Optional[int]) -> Optional[int]:
    """``m_{o+start} o ... o m_{o+stop-1}`` applied to ``x`` (innermost map last index)."""
    L = len(maps)
    for p in range(stop - 1, start - 1, -1):
        if x is None:
            return None
        x = maps[(o + p - 1) % L][x]
    return x


@dataclass(frozen=True)
class PhaseOrbit:
    """Values at indices ``r, r + 2k, r + 4k, ...`` of one sequence."""

    phase: int
    values: tuple[int, ...]
    periodic: bool


@dataclass(frozen=True)
class SequenceRow:
    offset: int
    primed: bool
    terminal: int
    entries: tuple[Optional[int], ...]
    phases: tuple[PhaseOrbit, ...]

    @property
    def periodic_phases(self) -> list[PhaseOrbit]:
        return [ph for ph in self.phases if ph.periodic]

    @property
    def defined(self) -> list[int]:
        """1-based indices of defined entries (only meaningful without periodic phases)."""
        return [i + 1 for i, x in enumerate(self.entries) if x is not None]

    @property
    def truncation(self) -> str:
        return "periodic" if self.periodic_phases else "blank"

    def to_dict(self) -> dict[str, Any]:
        return {
            "offset": self.offset,
            "primed": self.primed,
            "terminal": self.terminal,
            "entries": list(self.entries),
            "truncation": self.truncation,
            "periodic_phases": [{"phase": p.phase, "period": len(p.values)} for p in self.periodic_phases],
        }


@dataclass(frozen=True)
class SequenceTable:
    cycle: tuple[int, ...]
    rows: tuple[SequenceRow, ...]

    def row(self, offset: int) -> SequenceRow:
        return self.rows[offset]

    def to_dict(self) -> dict[str, Any]:
        return {"cycle": list(self.cycle), "rows": [r.to_dict() for r in self.rows]}


def sequence_row(hy: Hypomorphism, cycle: Sequence[int], offset: int) -> SequenceRow:
    """One sequence of the table: primed for even ``offset``, unprimed for odd.

    Entry ``j`` is ``m_{o+1} o ... o m_{o+j-1}(seed_{o+j})`` and entries ``2k``
    apart differ by the full cycle word, so each phase ``j mod 2k`` is one
    orbit of that word. An orbit stops at its first blank or when it returns
    to its start (the word is a partial injection, so that is the only
    possible recurrence and the phase then never blanks).
    """
    maps, seeds, terminals = _cycle_word(hy, cycle)
    L = len(cycle)
    o = offset
    phases = []
    n = len(hy.f)
    for r in range(1, L + 1):
        x = _apply(maps, o, 1, r, seeds[(o + r - 1) % L])
        vals: list[int] = []
        periodic = False
        while x is not None:
            if vals and x == vals[0]:
                periodic = True
                break
            if len(vals) > n:
                raise InvariantViolation("orbit longer than the vertex count")
            vals.append(x)
            x = _apply(maps, o, 1, L + 1, x)
        phases.append(PhaseOrbit(r, tuple(vals), periodic))
    depth = max((len(ph.values) for ph in phases), default=0)
    entries: list[Optional[int]] = []
    for q in range(depth):
        for ph in phases:
            if q < len(ph.values):
                entries.append(ph.values[q])
            elif ph.periodic:
                entries.append(ph.values[q % len(ph.values)])
            else:
                entries.append(None)
    while entries and entries[-1] is None:
        entries.pop()
    return SequenceRow(o, o % 2 == 0, terminals[o], tuple(entries), tuple(phases))


def type_sequences(G: SimpleGraph, H: SimpleGraph, hy: Hypomorphism, cycle: AlternatingCycle | Sequence[int]) -> SequenceTable:
    verts = tuple(cycle.vertices if isinstance(cycle, AlternatingCycle) else cycle)
    if not verts or len(verts) % 2:
        raise ValueError("cycle must have an even, positive length")
    return SequenceTable(verts, tuple(sequence_row(hy, verts, o) for o in range(len(verts))))


ALPHA = "ALPHA"
BETA = "BETA"


@dataclass(frozen=True)
class CycleClassification:
    kind: str
    cycle: tuple[int, ...]
    n0: Optional[int] = None
    witness: Optional[dict[str, Any]] = None
    table: Optional[SequenceTable] = field(default=None, compare=False)

    @property
    def is_alpha(self) -> bool:
        return self.kind == ALPHA

    def to_dict(self, with_table: bool = False) -> dict[str, Any]:
        out: dict[str, Any] = {"kind": self.kind, "cycle": list(self.cycle)}
        if self.n0 is not None:
            out["n0"] = self.n0
        if self.witness is not None:
            out["witness"] = self.witness
        if with_table and self.table is not None:
            out["table"] = self.table.to_dict()
        return out


def _row_failure(row: SequenceRow, n0: Optional[int]) -> Optional[dict[str, Any]]:
    per = row.periodic_phases
    if per:
        return {"reason": "periodic", "offset": row.offset, "phase": per[0].phase, "period": len(per[0].values)}
    m = len(row.entries)
    if m == 0 or None in row.entries:
        first_blank = row.entries.index(None) + 1 if None in row.entries else 1
        return {"reason": "gap", "offset": row.offset, "first_blank": first_blank, "last_defined": m}
    if n0 is not None and m != n0:
        return {"reason": "length mismatch", "offset": row.offset, "length": m, "expected": n0}
    if row.entries[-1] != row.terminal:
        return {"reason": "terminal mismatch", "offset": row.offset, "value": row.entries[-1], "expected": row.terminal}
    return None


def classify_cycle(
    G: SimpleGraph,
    H: SimpleGraph,
    hy: Hypomorphism,
    cycle: AlternatingCycle | Sequence[int],
    full_table: bool = False,
) -> CycleClassification:
    """ALPHA when all rows share one defined prefix ``1..n0`` ending at their terminal.

    Rows are examined in offset order and the first failing one becomes the
    BETA witness. With ``full_table`` every row is computed and attached.
    """
    verts = tuple(cycle.vertices if isinstance(cycle, AlternatingCycle) else cycle)
    if not verts or len(verts) % 2:
        raise ValueError("cycle must have an even, positive length")
    rows = []
    fail = None
    n0 = None
    for o in range(len(verts)):
        row = sequence_row(hy, verts, o)
        rows.append(row)
        if fail is None:
            fail = _row_failure(row, n0)
            if fail is None and n0 is None:
                n0 = len(row.entries)
        if fail is not None and not full_table:
            break
    table = SequenceTable(verts, tuple(rows)) if full_table or fail is None else None
    if fail is not None:
        return CycleClassification(BETA, verts, None, fail, table)
    return CycleClassification(ALPHA, verts, n0, None, table)


def reverse_arrow_violations(D: AssociatedDigraph, cycle: AlternatingCycle) -> list[tuple[str, int, int]]:
    """Reverse arrows ``v_2i -> v_2i-1`` and ``v_2i+1 ~> v_2i`` that are missing."""
    c = cycle.vertices
    L = len(c)
    out = []
    for i in range(0, L, 2):
        if not D.has_normal(c[i + 1], c[i]):
            out.append(("normal", c[i + 1], c[i]))
        if not D.has_dashed(c[(i + 2) % L], c[i + 1]):
            out.append(("dashed", c[(i + 2) % L], c[i + 1]))
    return out


# ---------------------------------------------------------------------------
# trichotomy


@dataclass
class TrichotomyReport:
    max_k: int
    extendable: list[int]
    extension: Optional[tuple[int, ...]]
    mutual_pairs: list[dict[str, Any]]
    cycles_examined: int
    cycles_truncated: bool
    alpha_cycles: int
    beta_cycles: int

    @property
    def clause_I(self) -> bool:
        return bool(self.extendable)

    @property
    def clause_II(self) -> bool:
        return bool(self.mutual_pairs)

    @property
    def clause_III(self) -> bool:
        return self.cycles_examined > 0 and self.alpha_cycles == 0

    @property
    def holds(self) -> bool:
        return self.clause_I or self.clause_II or self.clause_III

    def to_dict(self) -> dict[str, Any]:
        return {
            "max_k": self.max_k,
            "clauses": {"I": self.clause_I, "II": self.clause_II, "III": self.clause_III},
            "extendable": self.extendable,
            "extension": list(self.extension) if self.extension is not None else None,
            "mutual_pairs": self.mutual_pairs,
            "cycles": {
                "examined": self.cycles_examined,
                "truncated": self.cycles_truncated,
                "alpha": self.alpha_cycles,
                "beta": self.beta_cycles,
            },
        }


def classify_trichotomy(
    G: SimpleGraph,
    H: SimpleGraph,
    hy: Hypomorphism,
    max_k: Optional[int] = None,
    cycle_limit: Optional[int] = None,
    D: Optional[AssociatedDigraph] = None,
) -> TrichotomyReport:
    """Which of the three cases holds; raises :class:`InvariantViolation` if none does."""
    if D is None:
        D = build_assoc(G, H, hy)
    if max_k is None:
        max_k = G.n
    ext = sorted(extendable_vertices(D))
    extension = None
    if ext:
        extension = extend_iso(G, H, hy, ext[0]).images
    pairs = []
    for u, v in mutual_normal_pairs(D):
        pairs.append(
            {
                "pair": [u, v],
                "forward": classify_cycle(G, H, hy, (u, v)).kind,
                "backward": classify_cycle(G, H, hy, (v, u)).kind,
            }
        )
    examined = alpha = beta = 0
    truncated = False
    fetch = None if cycle_limit is None else cycle_limit + 1
    for cyc in find_alternating_cycles(D, max_k, fetch):
        if cycle_limit is not None and examined >= cycle_limit:
            truncated = True
            break
        examined += 1
        if classify_cycle(G, H, hy, cyc).is_alpha:
            alpha += 1
        else:
            beta += 1
    report = TrichotomyReport(max_k, ext, extension, pairs, examined, truncated, alpha, beta)
    if not report.holds:
        raise InvariantViolation(f"no clause holds for f={list(hy.f)}")
    return report


# ---------------------------------------------------------------------------
# DOT


def _quote(name: str) -> str:
    return '"' + name.replace("\\", "\\\\").replace('"', '\\"') + '"'


def assoc_to_dot(D: AssociatedDigraph, G: Optional[SimpleGraph] = None, name: str = "assoc", overlay: bool = False) -> str:
    """Directed DOT: normal arrows solid, dashed arrows ``style=dashed``.

    With ``overlay`` the edges of ``G`` are added as gray undirected lines.
    """
    G = G or D.G
    lines = [f"digraph {_quote(name)} {{"]
    for v in range(D.order):
        label = G.label(v) if G is not None else f"v{v + 1}"
        lines.append(f"  {v} [label={_quote(label)}];")
    for u, v in sorted(D.normal):
        lines.append(f"  {u} -> {v};")
    for u, v in sorted(D.dashed):
        lines.append(f"  {u} -> {v} [style=dashed];")
    if overlay and G is not None:
        for u, v in G.edges():
            lines.append(f"  {u} -> {v} [dir=none, color=gray];")
    lines.append("}")
    return "\n".join(lines) + "\n"
