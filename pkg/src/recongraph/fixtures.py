"""Named regression fixtures: observed facts diffed against stored expectations."""

from __future__ import annotations

import itertools
import json
from dataclasses import dataclass, field
from importlib import resources
from typing import Any, Optional

from .abcfamily import (
    AbcSpec,
    BarAbcSpec,
    as_row,
    beta_gamma,
    build_bar_abc,
    companion,
    complete_hypomorphism,
    hamilton_check,
    reflection_hypomorphism,
    odd_gap,
)
from .assoc import NotExtendable, build_assoc, classify_cycle, extend_iso
from .graph import SimpleGraph, connected_components, path_graph
from .hypomorphism import decks_equal
from .iso import find_isomorphism, is_isomorphic
from .decomposition import decompose_pair


class UnknownFixture(KeyError):
    pass


def fixture_names() -> list[str]:
    files = resources.files("recongraph") / "fixture_data"
    return sorted(p.name[: -len(".json")] for p in files.iterdir() if p.name.endswith(".json"))


def load_fixture(name: str) -> dict[str, Any]:
    path = resources.files("recongraph") / "fixture_data" / f"{name}.json"
    if not path.is_file():
        raise UnknownFixture(name)
    return json.loads(path.read_text(encoding="utf-8"))


@dataclass
class FixtureResult:
    name: str
    observed: dict[str, Any]
    expected: dict[str, Any]
    diffs: list[dict[str, Any]] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.diffs

    def to_dict(self) -> dict[str, Any]:
        return {"name": self.name, "ok": self.ok, "diffs": self.diffs, "observed": self.observed}


def _arrows(D, v1: int, v2: int) -> dict[str, bool]:
    return {
        "normal_12": D.has_normal(v1, v2),
        "normal_21": D.has_normal(v2, v1),
        "dashed_12": D.has_dashed(v1, v2),
        "dashed_21": D.has_dashed(v2, v1),
    }


def _component_facts(G: SimpleGraph) -> tuple[list[int], bool]:
    comps = connected_components(G)
    sizes = sorted(len(c) for c in comps)
    paths = all(is_isomorphic(G.induced(sorted(c)), path_graph(len(c))) for c in comps)
    return sizes, paths


def _triangles(G: SimpleGraph) -> list[tuple[int, int, int]]:
    return [
        t
        for t in itertools.combinations(range(G.n), 3)
        if G.has_edge(t[0], t[1]) and G.has_edge(t[0], t[2]) and G.has_edge(t[1], t[2])
    ]


def _observe_abc(data: dict[str, Any]) -> dict[str, Any]:
    s = data["spec"]
    spec = AbcSpec(s["n"], s["B"], s["C"])
    A, Ap = companion(spec)
    n = spec.n
    obs: dict[str, Any] = {"isomorphic": find_isomorphism(A, Ap) is not None}
    obs["decks_equal"] = decks_equal(A, Ap)
    obs["component_sizes_A"], paths_a = _component_facts(A)
    obs["component_sizes_A_prime"], paths_b = _component_facts(Ap)
    obs["components_are_paths"] = paths_a and paths_b
    obs["hamilton"] = hamilton_check(spec).values["path_in_A"]
    obs["beta_gamma"] = list(beta_gamma(spec).as_tuple())
    obs["odd_gap_sets_equal"] = odd_gap(n, spec.B) == odd_gap(n, spec.C)
    obs["degree_preserving_bijection"] = sorted(A.degrees()) == sorted(Ap.degrees())

    # triangles with degree pattern {4,4,2}
    def pattern(G: SimpleGraph) -> list[list[str]]:
        return [
            [G.label(x) for x in sorted(t, key=lambda x: (int(G.label(x).lstrip("a'")), x))]
            for t in _triangles(G)
            if sorted(G.degree(x) for x in t) == [2, 4, 4]
        ]

    tri_p = pattern(Ap)
    obs["triangle_A_prime"] = tri_p[0] if tri_p else None
    obs["triangle_degrees"] = [Ap.degree(Ap.index_of(x)) for x in tri_p[0]] if tri_p else None
    obs["triangle_in_A"] = bool(pattern(A))
    deg2 = [v for v in range(n) if A.degree(v) == 2]
    obs["unique_degree2_A"] = A.label(deg2[0]) if len(deg2) == 1 else None
    if len(deg2) == 1:
        nb = A.neighbors(deg2[0])
        obs["degree2_neighbours_A"] = [A.label(x) for x in nb]
        obs["degree2_neighbours_adjacent"] = len(nb) == 2 and A.has_edge(nb[0], nb[1])
    built = reflection_hypomorphism(spec)
    if built is not None:
        _, _, hy = built
        D = build_assoc(A, Ap, hy)
        obs["arrows"] = _arrows(D, 0, n - 1)
        cls = classify_cycle(A, Ap, hy, (0, n - 1))
        obs["cycle_kind"] = cls.kind
        obs["n0"] = cls.n0
        if cls.is_alpha and D.has_normal(n - 1, 0):
            obs["structure_ok"] = decompose_pair(A, Ap, hy, 0, n - 1, D=D, strict=False).ok
    return obs


def bar_instance(data: dict[str, Any]):
    """``(G, H, hy, v1, v2)`` for a ``bar`` fixture; ``hy`` is ``None`` if no completion exists."""
    gs, hs = data["G"], data["H"]
    G = build_bar_abc(BarAbcSpec(AbcSpec(gs["n"], gs["B"], gs["C"]), gs["p"]))
    H = build_bar_abc(BarAbcSpec(AbcSpec(hs["n"], hs["B"], hs["C"]), hs["p"]), prefix="a'")
    v1, v2 = G.index_of(data["v1"]), G.index_of(data["v2"])
    fixed = {}
    for key, v in (("phi_v1", v1), ("phi_v2", v2)):
        m = {G.index_of(a): H.index_of(b) for a, b in data[key].items()}
        fixed[v] = (H.index_of(data["f"][G.label(v)]), as_row(G.n, m))
    return G, H, complete_hypomorphism(G, H, fixed), v1, v2


def _observe_bar(data: dict[str, Any]) -> dict[str, Any]:
    G, H, hy, v1, v2 = bar_instance(data)
    obs: dict[str, Any] = {"isomorphic": find_isomorphism(G, H) is not None}
    obs["completed"] = hy is not None
    if hy is None:
        return obs
    obs["f"] = {G.label(v): H.label(w) for v, w in enumerate(hy.f)}
    D = build_assoc(G, H, hy)
    obs["arrows"] = _arrows(D, v1, v2)
    cls = classify_cycle(G, H, hy, (v1, v2), full_table=True)
    obs["cycle_kind"] = cls.kind
    for key, row, graph in (("primed", cls.table.rows[0], H), ("unprimed", cls.table.rows[1], G)):
        entries = row.entries
        obs[f"{key}_blanks"] = {
            "isolated": [i + 1 for i, x in enumerate(entries) if x is None],
            "from": len(entries) + 1,
        }
        obs[f"{key}_values"] = {str(i + 1): graph.label(x) for i, x in enumerate(entries) if x is not None}
    try:
        extend_iso(G, H, hy, v1)
        obs["v1_extends"] = True
    except NotExtendable as exc:
        obs["v1_extends"] = False
        obs["v1_witness"] = [G.label(exc.arrow[0]), G.label(exc.arrow[1])]
    return obs


def run_fixture(name: str) -> FixtureResult:
    data = load_fixture(name)
    if data["kind"] == "abc":
        obs = _observe_abc(data)
    elif data["kind"] == "bar":
        obs = _observe_bar(data)
    else:
        raise ValueError(f"fixture {name}: unknown kind {data['kind']!r}")
    expected = data["expect"]
    diffs = []
    for key in sorted(expected):
        got: Optional[Any] = obs.get(key)
        if got != expected[key]:
            diffs.append({"key": key, "expected": expected[key], "observed": got})
    return FixtureResult(name, obs, expected, diffs)


def run_all() -> list[FixtureResult]:
    return [run_fixture(n) for n in fixture_names()]
