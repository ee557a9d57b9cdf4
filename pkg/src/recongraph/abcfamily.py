"""The offset-set graph family ``A(n; B, C)`` and its companion checks.

Vertex index ``i`` stands for ``a_{i+1}``. Offsets in ``B`` join vertices at
odd 1-based positions forward, offsets in ``C`` join even positions forward.
The companion ``A(n; C, B)`` is relabelled so that its index ``i`` is
``a'_{i+1} = b_{n-i}``, which makes the four shift/reflection maps below
simple index formulas.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Any, Iterable, Optional

from .graph import GraphError, SimpleGraph, is_isomorphism, make_graph, preserves_adjacency
from .hypomorphism import CardMatcher, Hypomorphism, Map


class SpecError(ValueError):
    pass


def _offsets(values: Iterable[int]) -> frozenset[int]:
    return frozenset(int(x) for x in values)


@dataclass(frozen=True)
class AbcSpec:
    n: int
    B: frozenset[int]
    C: frozenset[int]

    def __post_init__(self) -> None:
        object.__setattr__(self, "B", _offsets(self.B))
        object.__setattr__(self, "C", _offsets(self.C))
        if self.n < 3:
            raise SpecError(f"n must be at least 3, got {self.n}")
        for name, s in (("B", self.B), ("C", self.C)):
            bad = sorted(x for x in s if not 1 <= x <= self.n - 1)
            if bad:
                raise SpecError(f"{name} contains {bad}, outside 1..{self.n - 1}")

    def swapped(self) -> AbcSpec:
        return AbcSpec(self.n, self.C, self.B)

    def key(self) -> tuple:
        return (self.n, tuple(sorted(self.B)), tuple(sorted(self.C)))

    def __str__(self) -> str:
        fmt = lambda s: "{" + ",".join(map(str, sorted(s))) + "}"
        return f"A({self.n};{fmt(self.B)},{fmt(self.C)})"

    def to_dict(self) -> dict[str, Any]:
        return {"n": self.n, "B": sorted(self.B), "C": sorted(self.C)}


@dataclass(frozen=True)
class BarAbcSpec:
    base: AbcSpec
    p: int

    def __post_init__(self) -> None:
        if not 1 <= self.p < self.base.n:
            raise SpecError(f"p must satisfy 1 <= p < n, got p={self.p}, n={self.base.n}")

    @property
    def removed(self) -> list[int]:
        """1-based positions ``p, p+2, ...`` up to ``n``."""
        return list(range(self.p, self.base.n + 1, 2))

    @property
    def kept(self) -> list[int]:
        gone = set(self.removed)
        return [i for i in range(1, self.base.n + 1) if i not in gone]

    def __str__(self) -> str:
        fmt = lambda s: "{" + ",".join(map(str, sorted(s))) + "}"
        return f"Abar({self.base.n},{self.p};{fmt(self.base.B)},{fmt(self.base.C)})"


def layer_edges(n: int, offset: int, start_parity: int) -> list[tuple[int, int]]:
    """Pattern edges for one offset; ``start_parity`` 1 = odd starts, 0 = even (1-based)."""
    first = 0 if start_parity == 1 else 1
    return [(i, i + offset) for i in range(first, n - offset, 2)]


def build_abc(spec: AbcSpec, prefix: str = "a") -> SimpleGraph:
    n = spec.n
    edges = []
    for b in sorted(spec.B):
        edges += layer_edges(n, b, 1)
    for c in sorted(spec.C):
        edges += layer_edges(n, c, 0)
    return make_graph(n, edges, [f"{prefix}{i + 1}" for i in range(n)])


def build_bar_abc(spec: BarAbcSpec, prefix: str = "a") -> SimpleGraph:
    """Full subgraph on the surviving positions; labels keep the original indices."""
    full = build_abc(spec.base, prefix)
    return full.induced([i - 1 for i in spec.kept])


def edge_layer(spec: AbcSpec, u: int, v: int) -> tuple[str, int]:
    """Which layer an edge of ``build_abc(spec)`` belongs to: ``("B", b)`` or ``("C", c)``."""
    lo, hi = min(u, v), max(u, v)
    return ("B" if lo % 2 == 0 else "C", hi - lo)


@dataclass(frozen=True)
class BetaGamma:
    beta: int
    beta_prime: int
    gamma: int
    gamma_prime: int

    def as_tuple(self) -> tuple[int, int, int, int]:
        return (self.beta, self.beta_prime, self.gamma, self.gamma_prime)


def odd_gap(n: int, s: Iterable[int]) -> frozenset[int]:
    """Offsets ``x`` with ``n - x`` odd."""
    return frozenset(x for x in s if (n - x) % 2 == 1)


def beta_gamma(spec: AbcSpec) -> BetaGamma:
    beta = len(odd_gap(spec.n, spec.B))
    gamma = len(odd_gap(spec.n, spec.C))
    return BetaGamma(beta, len(spec.B) - beta, gamma, len(spec.C) - gamma)


def companion(spec: AbcSpec) -> tuple[SimpleGraph, SimpleGraph]:
    """``A = A(n;B,C)`` and ``A' = A(n;C,B)`` with ``A'`` index ``i`` = ``a'_{i+1}``."""
    A = build_abc(spec)
    raw = build_abc(spec.swapped())
    n = spec.n
    Ap = raw.relabel([n - 1 - j for j in range(n)]).with_labels([f"a'{i + 1}" for i in range(n)])
    return A, Ap


# ---------------------------------------------------------------------------
# the four index maps


def shift_map(n: int) -> dict[int, int]:
    """``a_i -> a_{i-2}`` for ``i = 3..n``."""
    return {u: u - 2 for u in range(2, n)}


def phi_first(n: int) -> dict[int, int]:
    """``a_i -> a'_{n-i+2}`` on ``A - a_1``."""
    return {u: n - u for u in range(1, n)}


def phi_last(n: int) -> dict[int, int]:
    """``a_i -> a'_{n-i}`` on ``A - a_n``."""
    return {u: n - 2 - u for u in range(n - 1)}


def as_row(n: int, mapping: dict[int, int]) -> Map:
    return tuple(mapping.get(u) for u in range(n))


@dataclass
class MapCheck:
    name: str
    mapping: dict[int, int]
    witness: Optional[tuple[int, int]]

    @property
    def ok(self) -> bool:
        return self.witness is None

    def to_dict(self) -> dict[str, Any]:
        return {"name": self.name, "ok": self.ok, "witness": list(self.witness) if self.witness else None}


def _check_map(name: str, G: SimpleGraph, H: SimpleGraph, mapping: dict[int, int]) -> MapCheck:
    return MapCheck(name, mapping, preserves_adjacency(G, H, mapping))


@dataclass
class IndexMapReport:
    spec: AbcSpec
    checks: list[MapCheck]

    @property
    def ok(self) -> bool:
        return all(c.ok for c in self.checks)

    def to_dict(self) -> dict[str, Any]:
        return {"spec": self.spec.to_dict(), "ok": self.ok, "maps": [c.to_dict() for c in self.checks]}


def index_map_check(spec: AbcSpec, pair: Optional[tuple[SimpleGraph, SimpleGraph]] = None) -> IndexMapReport:
    """Verify the shift maps on ``A`` and ``A'`` and the two reflections ``A - v -> A' - v'``."""
    A, Ap = pair or companion(spec)
    n = spec.n
    checks = [
        _check_map("shift", A, A, shift_map(n)),
        _check_map("shift_prime", Ap, Ap, shift_map(n)),
        _check_map("phi_first", A, Ap, phi_first(n)),
        _check_map("phi_last", A, Ap, phi_last(n)),
    ]
    return IndexMapReport(spec, checks)


def is_hamilton_path(G: SimpleGraph, order: Iterable[int]) -> bool:
    seq = list(order)
    return sorted(seq) == list(range(G.n)) and all(G.has_edge(x, y) for x, y in zip(seq, seq[1:]))


@dataclass
class EquivalenceReport:
    spec: AbcSpec
    values: dict[str, Any]
    ok: bool

    def to_dict(self) -> dict[str, Any]:
        return {"spec": self.spec.to_dict(), "ok": self.ok, "values": self.values}


def hamilton_check(spec: AbcSpec, pair: Optional[tuple[SimpleGraph, SimpleGraph]] = None) -> EquivalenceReport:
    A, Ap = pair or companion(spec)
    a = is_hamilton_path(A, range(spec.n))
    b = is_hamilton_path(Ap, range(spec.n))
    c = 1 in spec.B and 1 in spec.C
    return EquivalenceReport(spec, {"path_in_A": a, "path_in_A_prime": b, "unit_offsets": c}, a == b == c)


def parity_count_check(spec: AbcSpec, pair: Optional[tuple[SimpleGraph, SimpleGraph]] = None) -> EquivalenceReport:
    A, Ap = pair or companion(spec)
    n = spec.n
    bg = beta_gamma(spec)
    lhs = bg.beta == bg.gamma
    rhs = (
        A.edge_count == Ap.edge_count
        and A.degree(0) == Ap.degree(0)
        and A.degree(n - 1) == Ap.degree(n - 1)
    )
    closed = {
        "deg_first": (A.degree(0), len(spec.B)),
        "deg_last": (A.degree(n - 1), bg.beta + bg.gamma_prime),
        "deg_last_prime": (Ap.degree(n - 1), len(spec.C)),
        "deg_first_prime": (Ap.degree(0), bg.gamma + bg.beta_prime),
    }
    closed_ok = all(x == y for x, y in closed.values())
    values = {
        "beta_gamma": list(bg.as_tuple()),
        "beta_eq_gamma": lhs,
        "counts_match": rhs,
        "edges": [A.edge_count, Ap.edge_count],
        "closed_forms": {k: list(v) for k, v in closed.items()},
        "closed_forms_ok": closed_ok,
    }
    return EquivalenceReport(spec, values, lhs == rhs and closed_ok)


def symmetry_check(spec: AbcSpec, pair: Optional[tuple[SimpleGraph, SimpleGraph]] = None) -> EquivalenceReport:
    A, Ap = pair or companion(spec)
    n = spec.n
    B0 = odd_gap(n, spec.B)
    C0 = odd_gap(n, spec.C)
    tau0 = phi_first(n)  # a_i -> a_{n-i+2}, same index formula inside A
    tau1 = phi_last(n)
    t0 = preserves_adjacency(A, A, tau0) is None
    t1 = preserves_adjacency(A, A, tau1) is None
    bar = is_isomorphism(A, Ap, list(range(n)))
    # the reflections composed with the index reflections are the identity on their domains
    p1, p2 = phi_first(n), phi_last(n)
    composed = all(p1[tau0[u]] == u for u in tau0) and all(p2[tau1[u]] == u for u in tau1)
    values = {
        "B0": sorted(B0),
        "C0": sorted(C0),
        "tau0_automorphism": t0,
        "tau1_automorphism": t1,
        "identity_isomorphism": bar,
        "compositions_extend": composed,
    }
    return EquivalenceReport(spec, values, (B0 == C0) == (t0 and t1 and bar) and composed)


def abc_to_dot(spec: AbcSpec, name: Optional[str] = None) -> str:
    """Undirected DOT with B-layer edges solid and C-layer edges dashed."""
    A = build_abc(spec)
    lines = [f'graph "{name or str(spec)}" {{']
    for v in range(A.n):
        lines.append(f'  {v} [label="{A.label(v)}"];')
    for u, v in A.edges():
        layer, off = edge_layer(spec, u, v)
        style = "solid" if layer == "B" else "dashed"
        lines.append(f'  {u} -- {v} [style={style}, label="{layer}{off}"];')
    lines.append("}")
    return "\n".join(lines) + "\n"


# ---------------------------------------------------------------------------
# hypomorphisms with some prescribed components


def complete_hypomorphism(
    G: SimpleGraph,
    H: SimpleGraph,
    fixed: dict[int, tuple[int, Optional[Map]]],
    matcher: Optional[CardMatcher] = None,
) -> Optional[Hypomorphism]:
    """Least hypomorphism agreeing with ``fixed[v] = (f(v), phi_v or None)``.

    Free vertices get the lexicographically least compatible image and card
    isomorphism. Returns ``None`` when no completion exists.
    """
    if G.n != H.n:
        raise GraphError("orders differ")
    cm = matcher or CardMatcher(G, H)
    n = G.n
    for v, (w, m) in fixed.items():
        if not cm.compatible(v, w):
            return None
        if m is not None and m not in cm.isomorphisms(v, w):
            return None
    f = [-1] * n
    used = 0
    for v, (w, _) in fixed.items():
        if used >> w & 1:
            return None
        f[v] = w
        used |= 1 << w
    free = [v for v in range(n) if f[v] < 0]

    def extend(i: int, used: int) -> bool:
        if i == len(free):
            return True
        v = free[i]
        for w in range(n):
            if not used >> w & 1 and cm.compatible(v, w) and cm.isomorphisms(v, w):
                f[v] = w
                if extend(i + 1, used | 1 << w):
                    return True
        f[v] = -1
        return False

    if not extend(0, used):
        return None
    phi = []
    for v in range(n):
        given = fixed.get(v, (None, None))[1]
        if given is not None:
            phi.append(tuple(given))
        else:
            isos = cm.isomorphisms(v, f[v])
            if not isos:
                return None
            phi.append(isos[0])
    return Hypomorphism(tuple(f), tuple(phi))


def reflection_hypomorphism(spec: AbcSpec) -> Optional[tuple[SimpleGraph, SimpleGraph, Hypomorphism]]:
    """``(A, A', hy)`` with ``f(a_1) = a'_1``, ``f(a_n) = a'_n`` and the two reflections
    as ``phi`` at ``a_1`` and ``a_n``; other components found by search."""
    A, Ap = companion(spec)
    n = spec.n
    fixed = {0: (0, as_row(n, phi_first(n))), n - 1: (n - 1, as_row(n, phi_last(n)))}
    hy = complete_hypomorphism(A, Ap, fixed)
    if hy is None:
        return None
    return A, Ap, hy
