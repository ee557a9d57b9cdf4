"""Graph serialization: JSON, graph6 and DOT."""

from __future__ import annotations

import json
from pathlib import Path
from typing import Any, Iterable, Iterator, Optional

from .graph import GraphError, SimpleGraph, make_graph


def graph_to_dict(G: SimpleGraph) -> dict[str, Any]:
    out: dict[str, Any] = {"n": G.n, "edges": [list(e) for e in G.edges()]}
    if G.labels is not None:
        out["labels"] = list(G.labels)
    return out


def graph_from_dict(data: dict[str, Any]) -> SimpleGraph:
    try:
        n = int(data["n"])
        edges = [tuple(int(x) for x in e) for e in data.get("edges", [])]
    except (KeyError, TypeError, ValueError) as exc:
        raise GraphError(f"malformed graph JSON: {exc}") from None
    for e in edges:
        if len(e) != 2:
            raise GraphError(f"edge {list(e)} is not a pair")
    return make_graph(n, edges, data.get("labels"))


def dumps_graph(G: SimpleGraph) -> str:
    return json.dumps(graph_to_dict(G), sort_keys=True)


def loads_graph(text: str) -> SimpleGraph:
    return graph_from_dict(json.loads(text))


def _n_prefix(n: int) -> str:
    if n <= 62:
        return chr(n + 63)
    if n <= 258047:
        return "~" + "".join(chr(((n >> s) & 63) + 63) for s in (12, 6, 0))
    return "~~" + "".join(chr(((n >> s) & 63) + 63) for s in (30, 24, 18, 12, 6, 0))


def write_graph6(G: SimpleGraph, header: bool = False) -> str:
    bits = [int(G.has_edge(i, j)) for j in range(1, G.n) for i in range(j)]
    bits += [0] * (-len(bits) % 6)
    body = "".join(chr(int("".join(map(str, bits[k : k + 6])), 2) + 63) for k in range(0, len(bits), 6))
    return (">>graph6<<" if header else "") + _n_prefix(G.n) + body


def read_graph6(line: str) -> SimpleGraph:
    """Parse one graph6 string (the ``>>graph6<<`` header is optional)."""
    s = line.strip()
    if s.startswith(">>graph6<<"):
        s = s[len(">>graph6<<") :]
    if not s:
        raise GraphError("empty graph6 string")
    data = [ord(c) - 63 for c in s]
    if any(not 0 <= x < 64 for x in data):
        raise GraphError(f"invalid graph6 character in {line!r}")
    if data[0] == 63:
        if len(data) > 1 and data[1] == 63:
            n = 0
            for x in data[2:8]:
                n = n << 6 | x
            data = data[8:]
        else:
            n = 0
            for x in data[1:4]:
                n = n << 6 | x
            data = data[4:]
    else:
        n = data[0]
        data = data[1:]
    need = n * (n - 1) // 2
    if len(data) * 6 < need:
        raise GraphError(f"graph6 string too short for n={n}")
    bits = [(x >> (5 - k)) & 1 for x in data for k in range(6)]
    edges = []
    pos = 0
    for j in range(1, n):
        for i in range(j):
            if bits[pos]:
                edges.append((i, j))
            pos += 1
    return make_graph(n, edges)


def iter_graph6(lines: Iterable[str]) -> Iterator[SimpleGraph]:
    for line in lines:
        if line.strip():
            yield read_graph6(line)


def load_graph(path: str | Path) -> SimpleGraph:
    """Read a graph from a JSON file or the first line of a graph6 file."""
    text = Path(path).read_text(encoding="utf-8")
    stripped = text.lstrip()
    if stripped.startswith("{"):
        return loads_graph(text)
    first = stripped.splitlines()[0] if stripped else ""
    return read_graph6(first)


def _quote(name: str) -> str:
    return '"' + name.replace("\\", "\\\\").replace('"', '\\"') + '"'


def graph_to_dot(G: SimpleGraph, name: str = "G", edge_attrs: Optional[dict[tuple[int, int], str]] = None) -> str:
    """Undirected DOT; vertices and edges emitted in ascending index order."""
    lines = [f"graph {_quote(name)} {{"]
    for v in range(G.n):
        lines.append(f"  {v} [label={_quote(G.label(v))}];")
    for u, v in G.edges():
        attrs = (edge_attrs or {}).get((u, v))
        lines.append(f"  {u} -- {v}" + (f" [{attrs}]" if attrs else "") + ";")
    lines.append("}")
    return "\n".join(lines) + "\n"
