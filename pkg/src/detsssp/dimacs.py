"""DIMACS shortest-path format (``p sp n m`` / ``a u v w`` / ``c ...``)."""

from __future__ import annotations

import io

import numpy as np

from .errors import DimacsError, GraphBoundsError
from .graph import INT64_SAFE, Graph

__all__ = ["load_dimacs", "loads_dimacs", "save_dimacs", "read_dimacs_file", "write_dimacs_file"]


def _int(tok: str, lineno: int, what: str) -> int:
    try:
        return int(tok)
    except ValueError:
        raise DimacsError(lineno, f"{what} {tok!r} is not an integer") from None


def load_dimacs(stream) -> Graph:
    """Parse a DIMACS ``.gr`` stream; file vertices are 1-based."""
    n = m = None
    header_line = 0
    tails, heads, weights = [], [], []
    worst = (0, 0)  # (most negative weight, its line)
    for lineno, raw in enumerate(stream, start=1):
        line = raw.strip()
        if not line or line[0] == "c":
            continue
        tok = line.split()
        if tok[0] == "p":
            if n is not None:
                raise DimacsError(lineno, "duplicate problem line")
            if len(tok) != 4 or tok[1] != "sp":
                raise DimacsError(lineno, "expected 'p sp <n> <m>'")
            n, m = _int(tok[2], lineno, "vertex count"), _int(tok[3], lineno, "arc count")
            if n < 0 or m < 0:
                raise DimacsError(lineno, "negative size in problem line")
            header_line = lineno
        elif tok[0] == "a":
            if n is None:
                raise DimacsError(lineno, "arc before the problem line")
            if len(tok) != 4:
                raise DimacsError(lineno, "expected 'a <u> <v> <w>'")
            u, v = _int(tok[1], lineno, "vertex"), _int(tok[2], lineno, "vertex")
            w = _int(tok[3], lineno, "weight")
            for x in (u, v):
                if not 1 <= x <= n:
                    raise DimacsError(lineno, f"vertex {x} outside 1..{n}")
            if abs(w) >= INT64_SAFE:
                raise DimacsError(lineno, f"weight {w} outside the 64-bit safety bound")
            if len(tails) == m:
                raise DimacsError(lineno, f"more arcs than the {m} announced")
            tails.append(u - 1)
            heads.append(v - 1)
            weights.append(w)
            if w < worst[0]:
                worst = (w, lineno)
        else:
            raise DimacsError(lineno, f"unknown line type {tok[0]!r}")
    if n is None:
        raise DimacsError(max(header_line, 1), "missing problem line")
    if len(tails) != m:
        raise DimacsError(header_line, f"announced {m} arcs, found {len(tails)}")
    try:
        return Graph(n, np.array(tails, dtype=np.int64), np.array(heads, dtype=np.int64),
                     np.array(weights, dtype=np.int64))
    except GraphBoundsError as exc:
        raise DimacsError(worst[1] or header_line, str(exc)) from None


def loads_dimacs(text: str) -> Graph:
    return load_dimacs(io.StringIO(text))


def save_dimacs(graph: Graph, stream=None):
    """Canonical text with arcs sorted by (tail, head, weight).

    Writes to ``stream`` if given, otherwise returns the text.
    """
    order = graph.canonical_order()
    t = (graph.tails[order] + 1).tolist()
    h = (graph.heads[order] + 1).tolist()
    w = graph.weights[order].tolist()
    lines = [f"p sp {graph.n} {graph.m}\n"]
    lines.extend(f"a {a} {b} {c}\n" for a, b, c in zip(t, h, w))
    text = "".join(lines)
    if stream is None:
        return text
    stream.write(text)
    return None


def read_dimacs_file(path) -> Graph:
    with open(path, encoding="utf-8") as fh:
        return load_dimacs(fh)


def write_dimacs_file(graph: Graph, path) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        save_dimacs(graph, fh)
