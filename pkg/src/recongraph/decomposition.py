"""Decomposition of a hypomorphic pair around an ALPHA mutual normal pair.

Given normal arrows ``v1 -> v2`` and ``v2 -> v1`` whose 2-cycle is ALPHA,
the walk ``a_1 = v1``, ``a_2 = phi[v1]^-1(f(v2))``, ``a_{i+2} =
phi[v1]^-1 phi[v2](a_i)`` picks out an offset-pattern subgraph ``A``; the rest
of the vertex set splits into the part moved by ``Psi = phi[v2]^-1 phi[v1]``
and the part it fixes. :func:`decompose_pair` computes all of this and
checks the sixteen resulting claims one by one.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any, Optional

from .abcfamily import AbcSpec, beta_gamma, build_abc, is_hamilton_path, layer_edges
from .assoc import AssociatedDigraph, build_assoc, classify_cycle, sequence_row
from .graph import SimpleGraph, preserves_adjacency
from .hypomorphism import Hypomorphism, Map


class PreconditionError(ValueError):
    pass


class StructureViolation(AssertionError):
    def __init__(self, report: DecompositionReport):
        failed = [k for k, c in report.checks.items() if not c["ok"]]
        super().__init__(f"structure items failed: {failed}")
        self.report = report


@dataclass
class DecompositionReport:
    v1: int
    v2: int
    n: int
    A_vertices: list[int]
    A_prime_vertices: list[int]
    B: list[int]
    C: list[int]
    X: list[int]
    Y: list[int]
    X_prime: list[int]
    Y_prime: list[int]
    mixed_offsets: list[dict[str, Any]] = field(default_factory=list)
    checks: dict[str, dict[str, Any]] = field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return bool(self.checks) and all(c["ok"] for c in self.checks.values())

    @property
    def failed(self) -> list[str]:
        return [k for k, c in self.checks.items() if not c["ok"]]

    def spec(self) -> AbcSpec:
        return AbcSpec(self.n, self.B, self.C)

    def to_dict(self) -> dict[str, Any]:
        return {
            "v1": self.v1,
            "v2": self.v2,
            "n": self.n,
            "A": self.A_vertices,
            "A_prime": self.A_prime_vertices,
            "B": self.B,
            "C": self.C,
            "X": self.X,
            "Y": self.Y,
            "X_prime": self.X_prime,
            "Y_prime": self.Y_prime,
            "mixed_offsets": self.mixed_offsets,
            "ok": self.ok,
            "checks": self.checks,
        }


def _compose(outer: Map, inner: Map) -> Map:
    return tuple(None if x is None else outer[x] for x in inner)


def _orbit_sets(step: Map, stops: set[int]) -> tuple[set[int], set[int], set[int]]:
    """Split vertices by forward iteration of the partial map ``step``.

    Returns (vertices whose orbit reaches ``stops``, moved rest, fixed rest).
    """
    n = len(step)
    reach, moved, fixed = set(), set(), set()
    for v in range(n):
        x: Optional[int] = v
        hit = False
        for _ in range(n + 1):
            if x in stops:
                hit = True
                break
            x = step[x]
            if x is None:
                break
        if hit:
            reach.add(v)
        elif step[v] == v:
            fixed.add(v)
        else:
            moved.add(v)
    return reach, moved, fixed


def _check(ok: bool, **witness: Any) -> dict[str, Any]:
    out: dict[str, Any] = {"ok": bool(ok)}
    if not ok:
        out["witness"] = witness
    return out


def _restricted_iso(G: SimpleGraph, H: SimpleGraph, m: Map, source: set[int], target: set[int]) -> dict[str, Any]:
    if any(m[x] is None for x in source):
        return _check(False, reason="map undefined on part", vertices=sorted(x for x in source if m[x] is None))
    image = {m[x] for x in source}
    if image != target:
        return _check(False, reason="image differs", image=sorted(image), expected=sorted(target))
    bad = preserves_adjacency(G, H, {x: m[x] for x in source})
    return _check(bad is None, reason="adjacency", pair=list(bad) if bad else None)


def _shift_check(G: SimpleGraph, step: Map, seq: list[int]) -> dict[str, Any]:
    n = len(seq)
    dom = set(range(G.n)) - {seq[0], seq[1]}
    cod = set(range(G.n)) - {seq[n - 2], seq[n - 1]}
    undefined = sorted(x for x in dom if step[x] is None)
    if undefined:
        return _check(False, reason="undefined", vertices=undefined)
    if {step[x] for x in dom} != cod:
        return _check(False, reason="image differs", image=sorted({step[x] for x in dom}), expected=sorted(cod))
    for i in range(2, n):
        if step[seq[i]] != seq[i - 2]:
            return _check(False, reason="index formula", index=i + 1, value=step[seq[i]], expected=seq[i - 2])
    bad = preserves_adjacency(G, G, {x: step[x] for x in dom})
    return _check(bad is None, reason="adjacency", pair=list(bad) if bad else None)


def _extract_offsets(G: SimpleGraph, seq: list[int], parity: int) -> tuple[list[int], list[dict[str, Any]]]:
    """Offsets whose pattern edges along ``seq`` are all present; mixed ones reported."""
    n = len(seq)
    found, mixed = [], []
    for d in range(1, n):
        pat = layer_edges(n, d, parity)
        if not pat:
            continue
        have = [G.has_edge(seq[i], seq[j]) for i, j in pat]
        if all(have):
            found.append(d)
        elif any(have):
            miss = next(p for p, h in zip(pat, have) if not h)
            mixed.append({"offset": d, "starts": "odd" if parity else "even", "missing": [miss[0] + 1, miss[1] + 1]})
    return found, mixed


def _matches_pattern(G: SimpleGraph, seq: list[int], spec: AbcSpec) -> Optional[list[int]]:
    """``None`` if the induced graph on ``seq`` is exactly ``build_abc(spec)``, else a differing 1-based pair."""
    model = build_abc(spec)
    n = len(seq)
    for i in range(n):
        for j in range(i + 1, n):
            if G.has_edge(seq[i], seq[j]) != model.has_edge(i, j):
                return [i + 1, j + 1]
    return None


def decompose_pair(
    G: SimpleGraph,
    H: SimpleGraph,
    hy: Hypomorphism,
    v1: int,
    v2: int,
    D: Optional[AssociatedDigraph] = None,
    strict: bool = True,
) -> DecompositionReport:
    """Build and verify the decomposition; ``strict`` raises :class:`StructureViolation` on any failure."""
    if D is None:
        D = build_assoc(G, H, hy)
    if v1 == v2 or not (D.has_normal(v1, v2) and D.has_normal(v2, v1)):
        raise PreconditionError(f"{v1} and {v2} are not a mutual normal pair")
    cls = classify_cycle(G, H, hy, (v1, v2))
    if not cls.is_alpha:
        raise PreconditionError(f"cycle ({v1},{v2}) is BETA: {cls.witness}")

    f, phi, phi_inv = hy.f, hy.phi, hy.phi_inv
    w1, w2 = f[v1], f[v2]
    checks: dict[str, dict[str, Any]] = {}

    walk = sequence_row(hy, (v2, v1), 1)
    seq = list(walk.entries)
    clean = not walk.periodic_phases and None not in seq
    n = len(seq)
    checks["1"] = _check(clean and n >= 3, length=n, periodic=bool(walk.periodic_phases), entries=seq)
    if not clean or n < 2:
        report = DecompositionReport(v1, v2, n, seq, [], [], [], [], [], [], [], checks=checks)
        if strict:
            raise StructureViolation(report)
        return report
    seq_p = [w1] + [phi[v1][seq[n - i + 1]] for i in range(2, n + 1)]

    psi = _compose(phi_inv[v2], phi[v1])
    psi_p = _compose(phi[v2], phi_inv[v1])
    A_set, X, Y = _orbit_sets(psi, {v1, seq[1]})
    Ap_set, Xp, Yp = _orbit_sets(psi_p, {w1, phi[v1][v2]})

    checks["2"] = _check(
        len(set(seq)) == n and A_set == set(seq), sequence=seq, orbit_set=sorted(A_set)
    )
    checks["3"] = _check(
        None not in seq_p and len(set(seq_p)) == n and Ap_set == set(seq_p), sequence=seq_p, orbit_set=sorted(Ap_set)
    )
    checks["4"] = _check(
        seq[0] == v1 and seq[-1] == v2 and seq_p[0] == w1 and seq_p[-1] == w2,
        ends=[seq[0], seq[-1]],
        ends_prime=[seq_p[0], seq_p[-1]],
    )

    B, mixed_b = _extract_offsets(G, seq, 1)
    C, mixed_c = _extract_offsets(G, seq, 0)
    # odd-start pairs in the companion labelling b_j = a'_{n-j+1} hold C; its offset n-1 is vacuous in A
    b_order = list(reversed(seq_p))
    if n - 1 not in C and H.has_edge(b_order[0], b_order[n - 1]):
        C.append(n - 1)
    mixed = mixed_b + mixed_c
    spec = AbcSpec(n, B, C) if n >= 3 else None
    if spec is not None:
        diff_a = _matches_pattern(G, seq, spec)
        diff_ap = _matches_pattern(H, b_order, spec.swapped())
    else:
        diff_a = diff_ap = [0, 0]
    checks["5"] = _check(not mixed and diff_a is None and diff_ap is None, mixed=mixed, differs_A=diff_a, differs_A_prime=diff_ap)

    bg = beta_gamma(spec) if spec is not None else None
    checks["6"] = _check(1 in C and bg is not None and bg.beta == bg.gamma, C=sorted(C), beta_gamma=list(bg.as_tuple()) if bg else None)

    both_dashed = D.has_dashed(v1, v2) and D.has_dashed(v2, v1)
    if n % 2 == 1 or both_dashed:
        ham = is_hamilton_path(G.induced(seq), range(n)) and is_hamilton_path(H.induced(seq_p), range(n))
        checks["7"] = _check(ham and 1 in B, odd=n % 2 == 1, dashed_both=both_dashed, B=sorted(B))
    else:
        checks["7"] = {"ok": True, "vacuous": True}

    checks["8"] = _shift_check(G, psi, seq)
    checks["9"] = _shift_check(H, psi_p, seq_p)

    rest = set(range(G.n)) - set(seq)
    rest_p = set(range(H.n)) - set(seq_p)
    checks["10"] = _check(
        rest == X | Y and all(psi[x] is not None and psi[x] in rest for x in rest),
        rest=sorted(rest),
        images=sorted(psi[x] for x in rest if psi[x] is not None),
    )
    checks["11"] = _check(
        rest_p == Xp | Yp and all(psi_p[x] is not None and psi_p[x] in rest_p for x in rest_p),
        rest=sorted(rest_p),
        images=sorted(psi_p[x] for x in rest_p if psi_p[x] is not None),
    )
    for key, src, dst in (("12", rest, rest_p), ("13", X, Xp), ("14", Y, Yp)):
        r1 = _restricted_iso(G, H, phi[v1], src, dst)
        r2 = _restricted_iso(G, H, phi[v2], src, dst)
        checks[key] = {"ok": r1["ok"] and r2["ok"]}
        if not checks[key]["ok"]:
            checks[key]["witness"] = {"phi_v1": r1.get("witness"), "phi_v2": r2.get("witness")}

    bad15 = [i for i in range(2, n + 1) if phi[v1][seq[i - 1]] != seq_p[n - i + 1]]
    checks["15"] = _check(not bad15, indices=bad15)
    bad16 = [i for i in range(1, n) if phi[v2][seq[i - 1]] != seq_p[n - i - 1]]
    checks["16"] = _check(not bad16, indices=bad16)

    report = DecompositionReport(
        v1,
        v2,
        n,
        seq,
        seq_p,
        sorted(B),
        sorted(C),
        sorted(X),
        sorted(Y),
        sorted(Xp),
        sorted(Yp),
        mixed,
        checks,
    )
    if strict and not report.ok:
        raise StructureViolation(report)
    return report
