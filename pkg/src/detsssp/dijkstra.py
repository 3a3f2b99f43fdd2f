"""Deterministic Dijkstra over non-negative weight views.

Supports several sources with initial labels, a radius cap and both
directions (``"-"`` walks reverse adjacency and so computes distances *to*
the sources).  Ties are broken by vertex id, so the settle order and the
parent arrays are reproducible.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import _kernels as K
from .errors import InvariantViolation
from .graph import WeightView

__all__ = ["UNREACHED", "ShortestPaths", "Path", "dijkstra", "shortest_path_between"]

UNREACHED = int(K.INF)


def _direction(direction) -> int:
    if direction in ("+", 1, "out", "forward"):
        return 1
    if direction in ("-", -1, "in", "reverse"):
        return -1
    raise ValueError(f"direction must be '+' or '-', got {direction!r}")


def adjacency(wv: WeightView, direction=1):
    g = wv.graph
    if _direction(direction) == 1:
        return g.out_ptr, g.out_nbr, g.out_eid, wv.csr_weights(1)
    return g.in_ptr, g.in_nbr, g.in_eid, wv.csr_weights(-1)


@dataclass(frozen=True)
class ShortestPaths:
    """Result of :func:`dijkstra`.

    ``dist[v]`` is :data:`UNREACHED` for vertices beyond the cap or not
    reachable; ``parent[v]`` is the id of the edge that settled ``v`` (-1 for
    sources and unreached vertices).  ``order`` lists settled vertices in
    settle order.
    """

    dist: np.ndarray
    parent: np.ndarray
    order: np.ndarray
    direction: int

    def reached(self, v: int) -> bool:
        return self.dist[v] != UNREACHED

    def path_edges(self, graph, v: int) -> list[int]:
        """Edge ids of the tree path ending (or, for ``-``, starting) at ``v``."""
        edges = []
        step = graph.tails if self.direction == 1 else graph.heads
        while self.parent[v] >= 0:
            e = int(self.parent[v])
            edges.append(e)
            v = int(step[e])
        if self.direction == 1:
            edges.reverse()
        return edges


def _run(wv, sources, cap, direction, target=-1):
    g = wv.graph
    ptr, nbr, eid, wk = adjacency(wv, direction)
    src = np.fromiter((int(s) for s, _ in sources), dtype=np.int64, count=len(sources))
    lab = np.fromiter((int(x) for _, x in sources), dtype=np.int64, count=len(sources))
    dist, done, par = K.new_workspace(g.n)
    cap = UNREACHED - 1 if cap is None else min(int(cap), UNREACHED - 1)
    order, d, p, status = K.dijkstra_kernel(ptr, nbr, eid, wk, wv.full_mask, src, lab,
                                            np.int64(cap), np.int64(target), dist, done, par)
    if status:
        raise InvariantViolation("negative edge met by Dijkstra; the view must be non-negative")
    return order, d, p


def dijkstra(wv: WeightView, sources, radius_cap=None, direction="+") -> ShortestPaths:
    """Shortest distances from ``sources`` (a vertex or ``(vertex, label)`` pairs).

    Only vertices at distance ``<= radius_cap`` are reported.
    """
    if isinstance(sources, (int, np.integer)):
        sources = [(int(sources), 0)]
    sources = [(s, 0) if isinstance(s, (int, np.integer)) else s for s in sources]
    for s, lab in sources:
        if lab < 0:
            raise ValueError("initial labels must be non-negative")
        if not wv.contains(s):
            raise ValueError(f"source {s} is outside the view")
    sgn = _direction(direction)
    order, d, p = _run(wv, sources, radius_cap, sgn)
    n = wv.graph.n
    dist = np.full(n, UNREACHED, dtype=np.int64)
    parent = np.full(n, -1, dtype=np.int64)
    dist[order] = d
    parent[order] = p
    return ShortestPaths(dist, parent, order, sgn)


@dataclass(frozen=True)
class Path:
    vertices: list[int]
    edges: list[int]
    weight: int

    def weight_in(self, wv: WeightView) -> int:
        """Weight of the same edges under another view's transform."""
        return int(wv.weights[np.asarray(self.edges, dtype=np.int64)].sum()) if self.edges else 0


def shortest_path_between(wv: WeightView, u: int, v: int, cap=None) -> Path | None:
    """A shortest ``u -> v`` path of weight ``<= cap``, or ``None``."""
    if u == v:
        return Path([u], [], 0)
    if not (wv.contains(u) and wv.contains(v)):
        return None
    order, d, p = _run(wv, [(u, 0)], cap, 1, target=v)
    if order.shape[0] == 0 or order[-1] != v:
        return None
    parent = dict(zip(order.tolist(), p.tolist()))
    g = wv.graph
    edges = []
    x = v
    while x != u:
        e = parent[x]
        edges.append(e)
        x = int(g.tails[e])
    edges.reverse()
    verts = [u] + [int(g.heads[e]) for e in edges]
    return Path(verts, edges, int(d[-1]))
