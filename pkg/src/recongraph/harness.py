"""Exhaustive small-graph enumeration and the verification sweeps.

``verify_exhaustive`` runs two layers of checks on every pair of deck-equal
graphs:

* per-vertex checks over every compatible ``(v, f(v), phi_v)`` triple. Normal
  out-arrows, the dashed out-count and extendability at ``v`` only depend on
  that triple, so this covers every hypomorphism without a cap;
* whole-digraph checks (trichotomy, reverse arrows of ALPHA cycles, the
  decomposition around ALPHA mutual pairs) over every hypomorphism in which
  no vertex extends (the only ones where the trichotomy is not immediate),
  then over a capped stream of the rest.
"""

from __future__ import annotations

import itertools
import json
import time
from collections import Counter, defaultdict
from dataclasses import asdict, dataclass, field
from multiprocessing import Pool
from typing import Any, Iterable, Iterator, Optional

from .abcfamily import (
    AbcSpec,
    beta_gamma,
    companion,
    hamilton_check,
    index_map_check,
    parity_count_check,
    symmetry_check,
)
from .assoc import (
    InvariantViolation,
    arrow_rule_violations,
    build_assoc,
    classify_cycle,
    classify_trichotomy,
    extends_directly,
    find_alternating_cycles,
    mutual_normal_pairs,
    reverse_arrow_violations,
)
from .graph import SimpleGraph, _bits
from .hypomorphism import CardMatcher, Hypomorphism, count_hypomorphisms, decks_equal, find_hypomorphisms, validate_hypomorphism
from .io import read_graph6, write_graph6
from .iso import canonical_key, find_isomorphism, is_isomorphic
from .decomposition import StructureViolation, decompose_pair

MAX_ENUM = 8


class CapError(ValueError):
    pass


def _augment(reps: list[SimpleGraph], n: int) -> list[SimpleGraph]:
    seen: dict[bytes, SimpleGraph] = {}
    for R in reps:
        for mask in range(1 << (n - 1)):
            rows = list(R.adj) + [mask]
            for u in _bits(mask):
                rows[u] |= 1 << (n - 1)
            G = SimpleGraph(n, tuple(rows))
            key = canonical_key(G)
            if key not in seen:
                seen[key] = G
    return [seen[k] for k in sorted(seen)]


_ENUM_CACHE: dict[int, list[SimpleGraph]] = {}


def enumerate_graphs(n: int) -> Iterator[SimpleGraph]:
    """One graph per isomorphism class on ``n`` vertices, sorted by canonical key."""
    if not 1 <= n <= MAX_ENUM:
        raise CapError(f"enumeration supports 1 <= n <= {MAX_ENUM}, got {n}")
    for m in range(1, n + 1):
        if m not in _ENUM_CACHE:
            _ENUM_CACHE[m] = [SimpleGraph(1, (0,))] if m == 1 else _augment(_ENUM_CACHE[m - 1], m)
    yield from _ENUM_CACHE[n]


@dataclass(frozen=True)
class Caps:
    hypomorphisms: int = 10**4
    per_f: Optional[int] = 64
    cycles: int = 200
    max_k: Optional[int] = None
    vertex_checks: bool = True
    structure: bool = True
    rigid: Optional[int] = 10**5


@dataclass
class VerificationReport:
    scope: dict[str, Any]
    counts: dict[str, int] = field(default_factory=dict)
    violations: list[dict[str, Any]] = field(default_factory=list)
    incomplete: list[dict[str, Any]] = field(default_factory=list)
    flags: list[dict[str, Any]] = field(default_factory=list)
    timing: dict[str, float] = field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return not self.violations

    def to_dict(self, timing: bool = True) -> dict[str, Any]:
        out = {
            "scope": self.scope,
            "counts": self.counts,
            "violations": self.violations,
            "incomplete": self.incomplete,
            "flags": self.flags,
            "ok": self.ok,
        }
        if timing:
            out["timing"] = self.timing
        return out

    def to_json(self, timing: bool = True) -> str:
        return json.dumps(self.to_dict(timing), sort_keys=True, indent=2)


def _violation(kind: str, G: SimpleGraph, H: SimpleGraph, hy=None, **detail: Any) -> dict[str, Any]:
    out = {"kind": kind, "G": write_graph6(G), "H": write_graph6(H), "detail": detail}
    if hy is not None:
        out["hypomorphism"] = hy.to_dict()
    return out


def _vertex_checks(G: SimpleGraph, H: SimpleGraph, cm: CardMatcher, tally: Counter, out: list) -> None:
    """Balance and extension equivalence for every compatible ``(v, w, phi_v)``."""
    n = G.n
    for v in range(n):
        for w in range(n):
            if not cm.compatible(v, w):
                continue
            for m in cm.isomorphisms(v, w):
                tally["vertex_triples"] += 1
                normal = 0
                row_h = H.adj[w]
                for u in range(n):
                    if u != v and not G.adj[v] >> u & 1 and row_h >> m[u] & 1:
                        normal |= 1 << u
                inv = [0] * n
                for u, x in enumerate(m):
                    if x is not None:
                        inv[x] = u
                dashed = sum(
                    1 for x in range(n) if x != w and not row_h >> x & 1 and G.adj[v] >> inv[x] & 1
                )
                if normal.bit_count() != dashed:
                    out.append(
                        _violation("balance", G, H, v=v, w=w, phi=list(m), normal=normal.bit_count(), dashed=dashed)
                    )
                ext = [w if u == v else m[u] for u in range(n)]
                direct = all(
                    G.has_edge(a, b) == H.has_edge(ext[a], ext[b]) for a in range(n) for b in range(a + 1, n)
                )
                if direct != (normal == 0):
                    out.append(_violation("extension", G, H, v=v, w=w, phi=list(m), extends=direct, normal=normal))
                tally["vertex_extendable"] += direct


def _digraph_checks(G: SimpleGraph, H: SimpleGraph, hy, caps: Caps, tally: Counter, out: list) -> None:
    report = validate_hypomorphism(G, H, hy)
    if not report.ok:
        out.append(_violation("invalid hypomorphism", G, H, hy, violations=report.violations))
        return
    D = build_assoc(G, H, hy, check=False)
    for msg in arrow_rule_violations(D):
        out.append(_violation("arrow rule", G, H, hy, message=msg))
    for v in range(G.n):
        if D.normal_out[v].bit_count() != D.dashed_out[v].bit_count():
            out.append(_violation("balance", G, H, hy, v=v))
        if extends_directly(G, H, hy, v) != (D.normal_out[v] == 0):
            out.append(_violation("extension", G, H, hy, v=v))
    max_k = caps.max_k or G.n
    try:
        tri = classify_trichotomy(G, H, hy, max_k, caps.cycles, D)
    except InvariantViolation as exc:
        out.append(_violation("trichotomy", G, H, hy, message=str(exc)))
        return
    tally["digraphs"] += 1
    tally["clause_I"] += tri.clause_I
    tally["clause_II"] += tri.clause_II
    tally["clause_III"] += tri.clause_III
    tally["cycles_truncated"] += tri.cycles_truncated
    if not tri.clause_I:
        if tri.cycles_examined == 0:
            out.append(_violation("no cycle without extendable vertex", G, H, hy))
    # every cycle in the capped enumeration: reverse arrows for ALPHA ones
    for cyc in itertools.islice(find_alternating_cycles(D, max_k), caps.cycles):
        c = classify_cycle(G, H, hy, cyc)
        if c.is_alpha:
            tally["alpha_cycles"] += 1
            missing = reverse_arrow_violations(D, cyc)
            if missing:
                out.append(_violation("reverse arrows", G, H, hy, cycle=list(cyc.vertices), missing=missing))
        else:
            tally["beta_cycles"] += 1
    if not caps.structure:
        return
    for u, v in mutual_normal_pairs(D):
        for a, b in ((u, v), (v, u)):
            tally["mutual_pairs"] += 1
            if not classify_cycle(G, H, hy, (a, b)).is_alpha:
                continue
            tally["structure_checked"] += 1
            try:
                decompose_pair(G, H, hy, a, b, D=D)
            except StructureViolation as exc:
                out.append(_violation("structure", G, H, hy, v1=a, v2=b, failed=exc.report.failed))


def _extends(G: SimpleGraph, H: SimpleGraph, v: int, w: int, m) -> bool:
    ext = [w if u == v else m[u] for u in range(G.n)]
    return all(G.has_edge(a, b) == H.has_edge(ext[a], ext[b]) for a in range(G.n) for b in range(a + 1, G.n))


def rigid_hypomorphisms(G: SimpleGraph, H: SimpleGraph, cm: CardMatcher) -> Iterator:
    """Hypomorphisms in which no vertex extends to a full isomorphism.

    Clause I of the trichotomy holds for every other hypomorphism, so this
    stream is the whole of what the remaining clauses have to cover.
    """
    cache: dict[tuple[int, int], list] = {}
    for f in cm.bijections():
        choices = []
        for v, w in enumerate(f):
            if (v, w) not in cache:
                cache[v, w] = [m for m in cm.isomorphisms(v, w) if not _extends(G, H, v, w, m)]
            if not cache[v, w]:
                break
            choices.append(cache[v, w])
        else:
            for phi in itertools.product(*choices):
                yield Hypomorphism(f, phi)


def _pair_task(args: tuple[str, str, Caps]) -> tuple[dict[str, int], list, Optional[dict]]:
    g6, h6, caps = args
    G, H = read_graph6(g6), read_graph6(h6)
    tally: Counter = Counter()
    out: list = []
    cm = CardMatcher(G, H)
    total = count_hypomorphisms(G, H, cm)
    tally["hypomorphisms_total"] += total
    if caps.vertex_checks:
        _vertex_checks(G, H, cm, tally, out)
    partial: dict[str, Any] = {}
    rigid: set = set()
    if caps.rigid is not None and total:
        stream = rigid_hypomorphisms(G, H, cm)
        for hy in itertools.islice(stream, caps.rigid):
            rigid.add(hy)
            _digraph_checks(G, H, hy, caps, tally, out)
        tally["rigid_checked"] += len(rigid)
        if next(stream, None) is not None:
            partial["rigid_capped"] = True
    checked = len(rigid)
    for hy in find_hypomorphisms(G, H, limit=caps.hypomorphisms, per_f_limit=caps.per_f, matcher=cm):
        if hy in rigid:
            continue
        checked += 1
        _digraph_checks(G, H, hy, caps, tally, out)
    tally["hypomorphisms_checked"] += checked
    if checked and not is_isomorphic(G, H):
        out.append(_violation("reconstruction", G, H))
    if total and not checked:
        out.append(_violation("search missed hypomorphisms", G, H, expected=total))
    if checked < total or partial:
        partial.update({"G": g6, "H": h6, "checked": checked, "total": total})
        return dict(tally), out, partial
    return dict(tally), out, None


def _run(tasks: list, fn, jobs: int) -> Iterator:
    if jobs <= 1:
        for t in tasks:
            yield fn(t)
        return
    with Pool(jobs) as pool:
        yield from pool.imap(fn, tasks, chunksize=1)


def deck_classes(graphs: Iterable[SimpleGraph]) -> list[list[SimpleGraph]]:
    """Group graphs by deck, preserving input order inside and across groups."""
    groups: dict[tuple, list[SimpleGraph]] = defaultdict(list)
    for G in graphs:
        ck = tuple(sorted(canonical_key(G.induced([u for u in range(G.n) if u != v])) for v in range(G.n)))
        groups[ck].append(G)
    return list(groups.values())


def verify_exhaustive(max_n: int, caps: Caps = Caps(), jobs: int = 1, min_n: int = 3) -> VerificationReport:
    if not 3 <= min_n <= max_n <= 7:
        raise CapError(f"verify supports 3 <= n <= 7, got {min_n}..{max_n}")
    report = VerificationReport(scope={"min_n": min_n, "max_n": max_n, "caps": asdict(caps), "jobs": jobs})
    tally: Counter = Counter()
    t0 = time.perf_counter()
    tasks = []
    for n in range(min_n, max_n + 1):
        graphs = list(enumerate_graphs(n))
        tally[f"graphs_n{n}"] = len(graphs)
        tally["graphs"] += len(graphs)
        for cls in deck_classes(graphs):
            for G, H in itertools.product(cls, cls):
                tally["deck_equal_pairs"] += 1
                if G is not H:
                    tally["distinct_deck_equal_pairs"] += 1
                tasks.append((write_graph6(G), write_graph6(H), caps))
    report.timing["enumerate"] = round(time.perf_counter() - t0, 3)
    t1 = time.perf_counter()
    for sub, viol, partial in _run(tasks, _pair_task, jobs):
        tally.update(sub)
        report.violations.extend(viol)
        if partial:
            report.incomplete.append(partial)
    report.timing["verify"] = round(time.perf_counter() - t1, 3)
    report.counts = dict(sorted(tally.items()))
    return report


# ---------------------------------------------------------------------------
# offset-family sweeps

SWEEP_CHECKS = ("index_maps", "hamilton", "parity_counts", "symmetry")


def _subsets(n: int) -> list[frozenset[int]]:
    items = range(1, n)
    return [frozenset(c) for r in range(n) for c in itertools.combinations(items, r)]


def _admissible(spec: AbcSpec) -> bool:
    """Offset sets that can arise from a mutual ALPHA pair: 1 in C, and 1 in B when n is odd."""
    return 1 in spec.C and (spec.n % 2 == 0 or 1 in spec.B)


def _spec_task(args: tuple[int, tuple[str, ...], bool]) -> tuple[dict[str, int], list, list]:
    n, checks, flag = args
    tally: Counter = Counter()
    out: list = []
    flags: list = []
    subsets = _subsets(n)
    for B in subsets:
        for C in subsets:
            spec = AbcSpec(n, B, C)
            pair = companion(spec)
            tally["specs"] += 1
            for name in checks:
                if name == "index_maps":
                    r = index_map_check(spec, pair)
                    if not r.ok:
                        out.append({"check": name, "spec": spec.to_dict(), "detail": r.to_dict()})
                    continue
                fn = {"hamilton": hamilton_check, "parity_counts": parity_count_check, "symmetry": symmetry_check}[name]
                r = fn(spec, pair)
                if not r.ok:
                    out.append({"check": name, "spec": spec.to_dict(), "detail": r.values})
            tally["checks"] += len(checks)
            if flag and _admissible(spec):
                bg = beta_gamma(spec)
                if bg.beta == bg.gamma:
                    tally["beta_eq_gamma"] += 1
                    A, Ap = pair
                    if find_isomorphism(A, Ap) is None:
                        flags.append({"spec": spec.to_dict(), "non_isomorphic": True, "decks_equal": decks_equal(A, Ap)})
    return dict(tally), out, flags


def sweep_abc(
    n_values: Iterable[int], checks: Iterable[str] = SWEEP_CHECKS, flag_problem: bool = True, jobs: int = 1
) -> VerificationReport:
    """Run the family checks over every ``(B, C)`` for each ``n``.

    With ``flag_problem`` every admissible spec (see :func:`_admissible`) with
    equal parity counts whose two graphs are not isomorphic is listed in
    ``flags`` together with a deck comparison.
    """
    ns = sorted(set(int(x) for x in n_values))
    checks = tuple(checks)
    for c in checks:
        if c not in SWEEP_CHECKS:
            raise ValueError(f"unknown check {c!r}")
    if any(not 3 <= n <= 9 for n in ns):
        raise CapError("sweep supports 3 <= n <= 9")
    report = VerificationReport(scope={"n": ns, "checks": list(checks), "flag_problem": flag_problem, "jobs": jobs})
    tally: Counter = Counter()
    t0 = time.perf_counter()
    for sub, viol, flags in _run([(n, checks, flag_problem) for n in ns], _spec_task, jobs):
        tally.update(sub)
        report.violations.extend(viol)
        report.flags.extend(flags)
    report.timing["sweep"] = round(time.perf_counter() - t0, 3)
    report.counts = dict(sorted(tally.items()))
    return report
