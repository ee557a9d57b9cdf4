"""Command-line entry point.

JSON reports go to stdout (or ``--out``), a one-line summary to stderr.
Exit status: 0 pass, 1 a checked property failed, 2 bad usage or input.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path
from typing import Any, Optional

from .abcfamily import (
    AbcSpec,
    BarAbcSpec,
    SpecError,
    abc_to_dot,
    build_abc,
    build_bar_abc,
    companion,
    hamilton_check,
    index_map_check,
    parity_count_check,
    symmetry_check,
)
from .assoc import (
    InvalidHypomorphism,
    InvariantViolation,
    assoc_to_dot,
    build_assoc,
    classify_cycle,
    classify_trichotomy,
)
from .fixtures import UnknownFixture, fixture_names, run_fixture
from .graph import GraphError, SimpleGraph, connected_components
from .harness import SWEEP_CHECKS, CapError, Caps, sweep_abc, verify_exhaustive
from .hypomorphism import Hypomorphism, ShapeError, count_hypomorphisms, deck, find_hypomorphisms
from .io import graph_to_dict, graph_to_dot, load_graph, write_graph6
from .iso import canonical_form
from .decomposition import PreconditionError, decompose_pair


class UsageError(Exception):
    pass


def _emit(payload: Any, out: Optional[str]) -> None:
    text = json.dumps(payload, sort_keys=True, indent=2) + "\n"
    if out:
        Path(out).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)


def _say(msg: str) -> None:
    print(msg, file=sys.stderr)


def _offset_list(text: str) -> list[int]:
    text = text.strip()
    if not text:
        return []
    try:
        return [int(x) for x in text.split(",")]
    except ValueError:
        raise UsageError(f"bad offset list {text!r}; expected e.g. 1,3,4") from None


def _n_values(text: str) -> list[int]:
    """``8``, ``3,5,7`` or ``3..9``."""
    try:
        if ".." in text:
            lo, hi = text.split("..")
            return list(range(int(lo), int(hi) + 1))
        return [int(x) for x in text.split(",")]
    except ValueError:
        raise UsageError(f"bad n value {text!r}") from None


def _spec(args) -> AbcSpec:
    return AbcSpec(args.n, _offset_list(args.B), _offset_list(args.C))


def _load_hy(path: str) -> Hypomorphism:
    try:
        data = json.loads(Path(path).read_text(encoding="utf-8"))
    except json.JSONDecodeError as exc:
        raise UsageError(f"{path}: {exc}") from None
    if "hypomorphism" in data:
        data = data["hypomorphism"]
    try:
        return Hypomorphism.from_dict(data)
    except (KeyError, TypeError, ValueError) as exc:
        raise UsageError(f"{path}: malformed hypomorphism ({exc})") from None


def _graph_summary(G: SimpleGraph) -> dict[str, Any]:
    out = graph_to_dict(G)
    out["graph6"] = write_graph6(G)
    out["canonical_graph6"] = write_graph6(canonical_form(G))
    out["degrees"] = G.degrees()
    out["components"] = [sorted(c) for c in connected_components(G)]
    return out


# ---------------------------------------------------------------------------
# handlers; each returns an exit status


def cmd_graph(args) -> int:
    G = load_graph(args.file)
    if args.action == "dot":
        text = graph_to_dot(G, name=Path(args.file).stem)
        if args.out:
            Path(args.out).write_text(text, encoding="utf-8")
        else:
            sys.stdout.write(text)
        return 0
    _emit(_graph_summary(G), args.out)
    _say(f"{G.n} vertices, {G.edge_count} edges")
    return 0


def cmd_deck(args) -> int:
    G = load_graph(args.file)
    d = deck(G)
    cards = []
    for v in range(G.n):
        card = G.induced([u for u in range(G.n) if u != v])
        cards.append({"vertex": v, "card": write_graph6(canonical_form(card))})
    classes = sorted({c["card"] for c in cards})
    _emit({"cards": cards, "classes": len(classes), "size": len(d)}, args.out)
    _say(f"deck of {G.n} cards, {len(classes)} isomorphism classes")
    return 0


def cmd_hypo(args) -> int:
    G, H = load_graph(args.g1), load_graph(args.g2)
    total = count_hypomorphisms(G, H)
    found = [hy.to_dict() for hy in find_hypomorphisms(G, H, limit=args.limit)] if total else []
    _emit({"total": total, "returned": len(found), "hypomorphisms": found}, args.out)
    note = " (truncated by --limit)" if len(found) < total else ""
    _say(f"{total} hypomorphisms, {len(found)} returned{note}")
    return 0


def _assoc_inputs(args):
    G, H = load_graph(args.g1), load_graph(args.g2)
    hy = _load_hy(args.hypo)
    return G, H, hy, build_assoc(G, H, hy)


def cmd_assoc_build(args) -> int:
    G, H, hy, D = _assoc_inputs(args)
    if args.dot:
        Path(args.dot).write_text(assoc_to_dot(D, G, overlay=args.overlay), encoding="utf-8")
    _emit(D.to_dict(), args.out)
    _say(f"{len(D.normal)} normal, {len(D.dashed)} dashed arrows")
    return 0


def cmd_assoc_classify(args) -> int:
    G, H, hy, D = _assoc_inputs(args)
    if args.cycle:
        cyc = _offset_list(args.cycle)
        c = classify_cycle(G, H, hy, cyc, full_table=True)
        _emit(c.to_dict(with_table=True), args.out)
        _say(f"cycle {cyc}: {c.kind}")
        return 0
    try:
        rep = classify_trichotomy(G, H, hy, args.max_k, args.cycle_limit, D)
    except InvariantViolation as exc:
        _emit({"ok": False, "error": str(exc)}, args.out)
        _say(f"trichotomy failed: {exc}")
        return 1
    _emit(rep.to_dict(), args.out)
    clauses = [k for k, v in (("I", rep.clause_I), ("II", rep.clause_II), ("III", rep.clause_III)) if v]
    _say("clauses holding: " + ", ".join(clauses))
    return 0


def cmd_abc(args) -> int:
    if args.action == "sweep":
        checks = args.checks.split(",") if args.checks else list(SWEEP_CHECKS)
        rep = sweep_abc(_n_values(args.n_values), checks, flag_problem=not args.no_flags, jobs=args.jobs)
        _emit(rep.to_dict(timing=not args.no_timing), args.out)
        _say(f"{rep.counts.get('specs', 0)} specs, {len(rep.violations)} violations, {len(rep.flags)} flagged")
        return 0 if rep.ok else 1
    if args.n is None:
        raise UsageError("-n is required")
    spec = _spec(args)
    if args.action == "build":
        if args.bar is not None:
            bar = BarAbcSpec(spec, args.bar)
            G = build_bar_abc(bar)
            name = str(bar)
        else:
            G = build_abc(spec)
            name = str(spec)
        if args.dot:
            text = abc_to_dot(spec, name) if args.bar is None else graph_to_dot(G, name)
            Path(args.dot).write_text(text, encoding="utf-8")
        out = graph_to_dict(G)
        out["name"] = name
        out["graph6"] = write_graph6(G)
        _emit(out, args.out)
        _say(f"{name}: {G.n} vertices, {G.edge_count} edges")
        return 0
    pair = companion(spec)
    results = {
        "index_maps": index_map_check(spec, pair).to_dict(),
        "hamilton": hamilton_check(spec, pair).to_dict(),
        "parity_counts": parity_count_check(spec, pair).to_dict(),
        "symmetry": symmetry_check(spec, pair).to_dict(),
    }
    ok = all(r["ok"] for r in results.values())
    _emit({"spec": spec.to_dict(), "ok": ok, "checks": results}, args.out)
    _say(f"{spec}: {'all checks pass' if ok else 'FAILED'}")
    return 0 if ok else 1


def cmd_structf(args) -> int:
    G, H, hy, D = _assoc_inputs(args)
    rep = decompose_pair(G, H, hy, args.v1, args.v2, D=D, strict=False)
    _emit(rep.to_dict(), args.out)
    _say(f"n={rep.n} B={rep.B} C={rep.C}: " + ("all items pass" if rep.ok else f"failed {rep.failed}"))
    return 0 if rep.ok else 1


def cmd_verify(args) -> int:
    caps = Caps(
        hypomorphisms=args.cap,
        per_f=args.per_f,
        cycles=args.cycles,
        max_k=args.max_k,
        vertex_checks=not args.no_vertex_checks,
        structure=not args.no_structure,
    )
    rep = verify_exhaustive(args.max_n, caps, jobs=args.jobs, min_n=args.min_n)
    _emit(rep.to_dict(timing=not args.no_timing), args.out)
    _say(
        f"{rep.counts.get('graphs', 0)} graphs, {rep.counts.get('deck_equal_pairs', 0)} deck-equal pairs, "
        f"{rep.counts.get('hypomorphisms_checked', 0)} hypomorphisms checked, "
        f"{len(rep.violations)} violations, {len(rep.incomplete)} pairs with capped coverage"
    )
    return 0 if rep.ok else 1


def cmd_fixture(args) -> int:
    names = fixture_names() if args.name == "all" else [args.name]
    results = [run_fixture(n) for n in names]
    _emit([r.to_dict() for r in results], args.out)
    for r in results:
        _say(f"{r.name}: {'pass' if r.ok else 'FAIL'}")
    return 0 if all(r.ok for r in results) else 1


# ---------------------------------------------------------------------------
# parser


def _add_abc_spec(p: argparse.ArgumentParser) -> None:
    p.add_argument("-n", type=int, help="number of vertices")
    p.add_argument("-B", default="", help="odd-start offsets, e.g. 1,3,4 (\"\" for none)")
    p.add_argument("-C", default="", help="even-start offsets (\"\" for none)")


def _add_assoc_inputs(p: argparse.ArgumentParser) -> None:
    p.add_argument("g1", help="first graph (JSON or graph6)")
    p.add_argument("g2", help="second graph (JSON or graph6)")
    p.add_argument("--hypo", required=True, help="hypomorphism JSON file")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="recongraph", description=__doc__.splitlines()[0])
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--out", help="write the JSON report here instead of stdout")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("graph", help="inspect a graph file", parents=[common])
    p.add_argument("action", choices=["show", "dot"])
    p.add_argument("file")
    p.set_defaults(func=cmd_graph)

    p = sub.add_parser("deck", help="list the cards of a graph", parents=[common])
    p.add_argument("file")
    p.set_defaults(func=cmd_deck)

    p = sub.add_parser("hypo", help="hypomorphism search")
    hs = p.add_subparsers(dest="action", required=True)
    q = hs.add_parser("search", parents=[common])
    q.add_argument("g1")
    q.add_argument("g2")
    q.add_argument("--limit", type=int, default=100)
    q.set_defaults(func=cmd_hypo)

    p = sub.add_parser("assoc", help="associated digraph")
    asub = p.add_subparsers(dest="action", required=True)
    q = asub.add_parser("build", parents=[common])
    _add_assoc_inputs(q)
    q.add_argument("--dot", help="write DOT here")
    q.add_argument("--overlay", action="store_true", help="draw the edges of the first graph too")
    q.set_defaults(func=cmd_assoc_build)
    q = asub.add_parser("classify", parents=[common])
    _add_assoc_inputs(q)
    q.add_argument("--max-k", type=int, default=None)
    q.add_argument("--cycle-limit", type=int, default=None)
    q.add_argument("--cycle", help="classify one cycle given as comma-separated vertices")
    q.set_defaults(func=cmd_assoc_classify)

    p = sub.add_parser("abc", help="offset-pattern graph family", parents=[common])
    p.add_argument("action", choices=["build", "check", "sweep"])
    _add_abc_spec(p)
    p.add_argument("--bar", type=int, help="drop positions p, p+2, ... (build only)")
    p.add_argument("--dot", help="write DOT here (build only)")
    p.add_argument("--n-values", default="3..8", help="sweep range: 8, 3,5,7 or 3..9")
    p.add_argument("--checks", help=f"sweep subset of {','.join(SWEEP_CHECKS)}")
    p.add_argument("--no-flags", action="store_true", help="skip the equal-count non-isomorphic scan")
    p.add_argument("--jobs", type=int, default=1)
    p.add_argument("--no-timing", action="store_true")
    p.set_defaults(func=cmd_abc)

    p = sub.add_parser("structf", help="decomposition around a mutual normal pair")
    fs = p.add_subparsers(dest="action", required=True)
    q = fs.add_parser("extract", parents=[common])
    _add_assoc_inputs(q)
    q.add_argument("--v1", type=int, required=True)
    q.add_argument("--v2", type=int, required=True)
    q.set_defaults(func=cmd_structf)

    p = sub.add_parser("verify", help="exhaustive verification over small graphs", parents=[common])
    p.add_argument("--max-n", type=int, required=True)
    p.add_argument("--min-n", type=int, default=3)
    p.add_argument("--jobs", type=int, default=1)
    p.add_argument("--cap", type=int, default=Caps.hypomorphisms, help="hypomorphisms per pair")
    p.add_argument("--per-f", type=int, default=Caps.per_f, help="hypomorphisms per bijection")
    p.add_argument("--cycles", type=int, default=Caps.cycles, help="alternating cycles per digraph")
    p.add_argument("--max-k", type=int, default=None)
    p.add_argument("--no-vertex-checks", action="store_true")
    p.add_argument("--no-structure", action="store_true", help="skip the mutual-pair decomposition check")
    p.add_argument("--no-timing", action="store_true")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("fixture", help="regression fixtures")
    xs = p.add_subparsers(dest="action", required=True)
    q = xs.add_parser("run", parents=[common])
    q.add_argument("name", help="fixture name or 'all'")
    q.set_defaults(func=cmd_fixture)
    return parser


def main(argv: Optional[list[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 0 if exc.code == 0 else 2
    try:
        return args.func(args)
    except InvalidHypomorphism as exc:
        _say(f"error: invalid hypomorphism: {exc}")
        return 2
    except UnknownFixture as exc:
        _say(f"error: unknown fixture {exc}; known: {', '.join(fixture_names())}")
        return 2
    except (UsageError, GraphError, ShapeError, SpecError, CapError, PreconditionError, OSError, ValueError) as exc:
        _say(f"error: {exc}")
        return 2


if __name__ == "__main__":
    sys.exit(main())
