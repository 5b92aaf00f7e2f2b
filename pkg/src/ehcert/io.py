"""Plain-text files: edge lists and certificates.

Edge-list format: the first line holds ``n m``, then ``m`` lines ``u v`` with
0-based endpoints.  Blank lines and lines starting with ``#`` are ignored on
input.  The canonical form written here lists each edge once with ``u < v``,
sorted, so writing a canonical file back reproduces it byte for byte.
"""

import json
from pathlib import Path

from . import certificates as C
from .errors import ParseError
from .graph import Graph


def parse_graph(text):
    rows = []
    for no, line in enumerate(text.splitlines(), start=1):
        body = line.strip()
        if body and not body.startswith("#"):
            rows.append((no, body.split()))
    if not rows:
        raise ParseError("missing 'n m' header", 1)
    no, head = rows[0]
    n, m = _ints(head, no, "header")
    if n < 0 or m < 0:
        raise ParseError("negative count in header", no)
    seen = {}
    for no, toks in rows[1:]:
        u, v = _ints(toks, no, "edge")
        if not (0 <= u < n and 0 <= v < n):
            raise ParseError(f"edge {u} {v} leaves the vertex range 0..{n - 1}", no)
        if u == v:
            raise ParseError(f"loop at vertex {u}", no)
        key = (min(u, v), max(u, v))
        if key in seen:
            raise ParseError(f"duplicate edge {key[0]} {key[1]} (first on line {seen[key]})", no)
        seen[key] = no
    if len(seen) != m:
        raise ParseError(f"header promises {m} edges, file has {len(seen)}", rows[-1][0])
    return Graph.from_edges(n, seen)


def _ints(toks, no, what):
    if len(toks) != 2:
        raise ParseError(f"{what} line needs two integers, got {len(toks)} fields", no)
    try:
        return int(toks[0]), int(toks[1])
    except ValueError:
        raise ParseError(f"{what} line has a non-integer field", no) from None


def format_graph(g):
    edges = g.edges()
    return "".join([f"{g.n} {len(edges)}\n"] + [f"{u} {v}\n" for u, v in edges])


def read_graph(path):
    return parse_graph(Path(path).read_text())


def write_graph(g, path):
    Path(path).write_text(format_graph(g))


def read_certificate(path):
    text = Path(path).read_text()
    try:
        return C.from_text(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"malformed certificate: {exc.msg}", exc.lineno) from None
    except (ValueError, KeyError, TypeError) as exc:
        raise ParseError(f"malformed certificate: {exc}") from None


def write_certificate(cert, path):
    Path(path).write_text(C.to_text(cert))
