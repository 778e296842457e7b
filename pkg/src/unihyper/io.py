"""Text formats: hypergraphs, key-value reports and sectioned certificate files.

Hypergraph format::

    # optional comments
    r n m          (r = 0 for mixed edge sizes)
    v1 v2 ... vr   (one edge per line, m lines)

Reports are one ``key = value`` per line; non-string values are JSON encoded
so that they parse back to the same value. Certificates are a report header
followed by ``[section]`` blocks of whitespace separated integer rows.
"""

from __future__ import annotations

import json
from pathlib import Path
from typing import Any, Iterable

from .core import Graph, Hypergraph, hypergraph
from .decomposition.p3 import P3HitDecomposition
from .decomposition.thin import DecompCertificate
from .hitting import HitCertificate


class ParseError(ValueError):
    def __init__(self, msg: str, line: int | None = None, source: str = "<text>"):
        self.line = line
        where = f"{source}:{line}: " if line is not None else f"{source}: "
        super().__init__(where + msg)


def _content_lines(text: str):
    for i, raw in enumerate(text.splitlines(), 1):
        s = raw.split("#", 1)[0].strip()
        if s:
            yield i, s


def _ints(s: str, line: int, source: str) -> list[int]:
    try:
        return [int(x) for x in s.split()]
    except ValueError:
        raise ParseError(f"expected integers, got {s!r}", line, source) from None


# ---------------------------------------------------------------------------
# hypergraphs
# ---------------------------------------------------------------------------

def format_hypergraph(h: Hypergraph) -> str:
    r = h.uniformity if h.uniformity is not None else 0
    lines = [f"{r} {h.n} {h.m}"]
    lines += [" ".join(map(str, e)) for e in h.edges]
    return "\n".join(lines) + "\n"


def parse_hypergraph(text: str, source: str = "<text>") -> Hypergraph:
    rows = list(_content_lines(text))
    if not rows:
        raise ParseError("missing header line 'r n m'", None, source)
    line, head = rows[0]
    nums = _ints(head, line, source)
    if len(nums) != 3:
        raise ParseError("header must be 'r n m'", line, source)
    r, n, m = nums
    if r < 0 or n < 0 or m < 0:
        raise ParseError("header values must be non-negative", line, source)
    if len(rows) - 1 != m:
        raise ParseError(f"header declares {m} edges, found {len(rows) - 1}", line, source)
    edges = []
    for line, s in rows[1:]:
        e = _ints(s, line, source)
        if r and len(e) != r:
            raise ParseError(f"edge has {len(e)} vertices, expected {r}", line, source)
        if any(not 0 <= v < n for v in e):
            raise ParseError(f"vertex out of range 0..{n - 1}", line, source)
        if len(set(e)) != len(e):
            raise ParseError("repeated vertex in edge", line, source)
        edges.append(tuple(sorted(e)))
    seen = set()
    for (line, _), e in zip(rows[1:], edges):
        if e in seen:
            raise ParseError(f"duplicate edge {list(e)}", line, source)
        seen.add(e)
    return hypergraph(n, edges, r or None)


def read_hypergraph(path: str | Path) -> Hypergraph:
    p = Path(path)
    return parse_hypergraph(p.read_text(), str(p))


def write_hypergraph(h: Hypergraph, path: str | Path) -> None:
    Path(path).write_text(format_hypergraph(h))


# ---------------------------------------------------------------------------
# key-value reports
# ---------------------------------------------------------------------------

def _encode(v: Any) -> str:
    if isinstance(v, str):
        return v
    return json.dumps(v, sort_keys=True)


def _decode(s: str) -> Any:
    try:
        return json.loads(s)
    except ValueError:
        return s


def format_report(d: dict[str, Any]) -> str:
    return "".join(f"{k} = {_encode(v)}\n" for k, v in d.items())


def parse_report(text: str, source: str = "<text>") -> dict[str, Any]:
    out: dict[str, Any] = {}
    for i, raw in enumerate(text.splitlines(), 1):
        s = raw.strip()
        if not s or s.startswith("#") or s.startswith("["):
            if s.startswith("["):
                break
            continue
        k, eq, v = s.partition(" =")
        if not eq or not k or (v and not v.startswith(" ")):
            raise ParseError("expected 'key = value'", i, source)
        out[k.strip()] = _decode(v.strip()) if v.strip() else ""
    return out


# ---------------------------------------------------------------------------
# sectioned certificates
# ---------------------------------------------------------------------------

def _sections(text: str, source: str) -> tuple[dict[str, Any], dict[str, list[tuple[int, str]]]]:
    header = parse_report(text, source)
    secs: dict[str, list[tuple[int, str]]] = {}
    cur = None
    for i, raw in enumerate(text.splitlines(), 1):
        s = raw.split("#", 1)[0].strip()
        if s.startswith("[") and s.endswith("]"):
            cur = s[1:-1].strip()
            if cur in secs:
                raise ParseError(f"duplicate section [{cur}]", i, source)
            secs[cur] = []
        elif cur is not None and s:
            secs[cur].append((i, s))
    return header, secs


def _edge_rows(edges: Iterable[Iterable[int]]) -> list[str]:
    return [" ".join(map(str, e)) for e in edges]


def _graph_from(secs, name: str, n: int, source: str) -> Graph:
    if name not in secs:
        raise ParseError(f"missing section [{name}]", None, source)
    edges = []
    for line, s in secs[name]:
        e = _ints(s, line, source)
        if len(e) != 2 or not all(0 <= v < n for v in e) or e[0] == e[1]:
            raise ParseError(f"bad graph edge {s!r}", line, source)
        edges.append(tuple(sorted(e)))
    try:
        return Graph(n, tuple(edges))
    except ValueError as ex:
        raise ParseError(str(ex), secs[name][0][0] if secs[name] else None, source) from None


def format_decomp(cert: DecompCertificate, host: Graph) -> str:
    head = {"kind": "krl", "n": host.n, "k": cert.k, "multiplicity": cert.multiplicity,
            "path_power": cert.path_power, "homs": cert.homs is not None}
    head.update({f"meta.{k}": v for k, v in sorted(cert.meta.items())})
    lines = [format_report(head).rstrip("\n"), "[host]", *_edge_rows(host.edges)]
    for i, p in enumerate(cert.parts):
        lines += [f"[part {i}]", *_edge_rows(p.edges)]
    if cert.homs is not None:
        for i, hom in enumerate(cert.homs):
            lines += [f"[hom {i}]", " ".join(map(str, hom))]
    return "\n".join(lines) + "\n"


def parse_decomp(text: str, source: str = "<text>") -> tuple[DecompCertificate, Graph]:
    head, secs = _sections(text, source)
    if head.get("kind") != "krl":
        raise ParseError("not a (k, r, l) certificate (kind != krl)", 1, source)
    n, k = int(head["n"]), int(head["k"])
    host = _graph_from(secs, "host", n, source)
    parts = tuple(_graph_from(secs, f"part {i}", n, source) for i in range(k))
    homs = None
    if head.get("homs"):
        homs = []
        for i in range(k):
            rows = secs.get(f"hom {i}")
            if not rows:
                raise ParseError(f"missing section [hom {i}]", None, source)
            homs.append(tuple(_ints(" ".join(s for _, s in rows), rows[0][0], source)))
        homs = tuple(homs)
    meta = {k[5:]: v for k, v in head.items() if k.startswith("meta.")}
    return DecompCertificate(parts, int(head["multiplicity"]), int(head["path_power"]), homs, meta), host


def format_placements(cert: HitCertificate) -> list[str]:
    """``f -> v1 v2 ...`` lines: hyperedge, then the image of each pattern vertex."""
    return [f"{' '.join(map(str, e))} -> {' '.join(map(str, pl))}" for e, pl in sorted(cert.placements.items())]


def parse_placements(rows, pattern: Hypergraph, source: str) -> HitCertificate:
    pl = {}
    for line, s in rows:
        if "->" not in s:
            raise ParseError("expected 'edge -> placement'", line, source)
        a, b = s.split("->", 1)
        pl[tuple(sorted(_ints(a, line, source)))] = tuple(_ints(b, line, source))
    return HitCertificate(pattern, pl)


def format_p3(dec: P3HitDecomposition, h: Hypergraph) -> str:
    head = {"kind": "p3", "n": dec.hitting_graph.n}
    head.update({f"meta.{k}": v for k, v in sorted(dec.meta.items())})
    lines = [format_report(head).rstrip("\n"), "[hypergraph]", *_edge_rows(h.edges),
             "[hitting_graph]", *_edge_rows(dec.hitting_graph.edges)]
    for i, p in enumerate(dec.parts):
        lines += [f"[part {i}]", *_edge_rows(p.edges)]
    lines += ["[matching]", *_edge_rows(dec.matching)]
    lines += ["[deleted]", " ".join(map(str, dec.deleted_set))]
    lines += ["[placements]", *format_placements(dec.certificate)]
    return "\n".join(lines) + "\n"


def parse_p3(text: str, source: str = "<text>") -> tuple[P3HitDecomposition, Hypergraph]:
    from .core import path_graph

    head, secs = _sections(text, source)
    if head.get("kind") != "p3":
        raise ParseError("not a P_3 decomposition (kind != p3)", 1, source)
    n = int(head["n"])
    hrows = secs.get("hypergraph", [])
    h = hypergraph(n, [tuple(_ints(s, line, source)) for line, s in hrows], 3)
    f = _graph_from(secs, "hitting_graph", n, source)
    parts = tuple(_graph_from(secs, f"part {i}", n, source) for i in range(4))
    m = _graph_from(secs, "matching", n, source).edges
    deleted = tuple(v for line, s in secs.get("deleted", []) for v in _ints(s, line, source))
    cert = parse_placements(secs.get("placements", []), path_graph(3), source)
    meta = {k[5:]: v for k, v in head.items() if k.startswith("meta.")}
    return P3HitDecomposition(f, parts, tuple(m), deleted, cert, meta), h


def format_hit(g: Hypergraph, h: Hypergraph, cert: HitCertificate, pattern_name: str) -> str:
    """Hitting graph file: kind=hit, sections [hypergraph], [hitting_graph], [placements]."""
    head = {"kind": "hit", "n": h.n, "r": h.uniformity or h.rank, "hit_r": g.uniformity or g.rank,
            "pattern": pattern_name}
    lines = [format_report(head).rstrip("\n"), "[hypergraph]", *_edge_rows(h.edges),
             "[hitting_graph]", *_edge_rows(g.edges), "[placements]", *format_placements(cert)]
    return "\n".join(lines) + "\n"


def parse_hit(text: str, source: str = "<text>") -> tuple[Hypergraph, Hypergraph, HitCertificate]:
    from .core import matching_plus_path, perfect_matching_pattern

    head, secs = _sections(text, source)
    if head.get("kind") != "hit":
        raise ParseError("not a hitting certificate (kind != hit)", 1, source)
    n, r, hr = int(head["n"]), int(head["r"]), int(head["hit_r"])
    name = str(head.get("pattern", ""))
    if name == "matching_path":
        pattern = matching_plus_path(r)
    elif name == "matching":
        pattern = perfect_matching_pattern(r, hr)
    else:
        raise ParseError(f"unknown pattern {name!r}", None, source)
    h = hypergraph(n, [tuple(_ints(s, line, source)) for line, s in secs.get("hypergraph", [])], r)
    g = hypergraph(n, [tuple(_ints(s, line, source)) for line, s in secs.get("hitting_graph", [])], hr)
    return g, h, parse_placements(secs.get("placements", []), pattern, source)


def format_verify_report(summary: dict[str, Any], witnesses: Iterable[Hypergraph] = ()) -> str:
    """Key-value summary followed by one ``[witness i]`` block per failing member."""
    lines = [format_report(summary).rstrip("\n")]
    for i, w in enumerate(witnesses):
        lines += [f"[witness {i}]", format_hypergraph(w).rstrip("\n")]
    return "\n".join(lines) + "\n"


def parse_verify_report(text: str, source: str = "<text>") -> tuple[dict[str, Any], list[Hypergraph]]:
    head, secs = _sections(text, source)
    wits = []
    i = 0
    while f"witness {i}" in secs:
        rows = secs[f"witness {i}"]
        wits.append(parse_hypergraph("\n".join(s for _, s in rows), f"{source}[witness {i}]"))
        i += 1
    return head, wits
