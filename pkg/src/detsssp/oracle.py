"""Slow, independent ground truth.

Pure Python on purpose: nothing here shares code with the numba kernels, so
agreement between the two is meaningful.
"""

from __future__ import annotations

import heapq
from dataclasses import dataclass

from .graph import Graph
from .outcome import Distances, NegativeCycle, SolveOutcome

__all__ = ["bellman_ford", "k_neg_shortest", "DpTable", "dijkstra_reference"]


def bellman_ford(graph: Graph, source: int) -> SolveOutcome:
    """Bellman-Ford with early exit; a change in round ``n`` exposes a cycle."""
    n = graph.n
    edges = list(zip(range(graph.m), graph.tails.tolist(), graph.heads.tolist(),
                     graph.weights.tolist()))
    dist = [None] * n
    pred = [-1] * n
    dist[source] = 0
    last = -1
    for _ in range(n):
        last = -1
        for e, u, v, w in edges:
            du = dist[u]
            if du is None:
                continue
            nd = du + w
            if dist[v] is None or nd < dist[v]:
                dist[v] = nd
                pred[v] = e
                last = v
        if last < 0:
            break
    if last >= 0:
        # n predecessor steps from a vertex relaxed in round n land on a cycle
        x = last
        for _ in range(n):
            x = graph.tails[pred[x]]
        cyc = []
        y = x
        while True:
            e = pred[y]
            cyc.append(e)
            y = int(graph.tails[e])
            if y == x:
                break
        cyc.reverse()
        return NegativeCycle.from_edges(graph, cyc)
    parent = [None if pred[v] < 0 else int(graph.tails[pred[v]]) for v in range(n)]
    return Distances(dist, parent)


def dijkstra_reference(graph: Graph, labels, skip_negative=True):
    """Dijkstra over the non-negative edges from initial ``labels`` (``None`` = +inf)."""
    dist = list(labels)
    adj = [[] for _ in range(graph.n)]
    for u, v, w in graph.edges():
        if w >= 0 or not skip_negative:
            adj[u].append((v, w))
    heap = [(d, v) for v, d in enumerate(dist) if d is not None]
    heapq.heapify(heap)
    done = [False] * graph.n
    while heap:
        d, u = heapq.heappop(heap)
        if done[u] or d != dist[u]:
            continue
        done[u] = True
        for v, w in adj[u]:
            nd = d + w
            if dist[v] is None or nd < dist[v]:
                dist[v] = nd
                heapq.heappush(heap, (nd, v))
    return dist


@dataclass
class DpTable:
    """``D[k][v]``: shortest ``source -> v`` walk weight using at most ``k``
    negative edges (``None`` = unreachable)."""

    D: list

    def __getitem__(self, k):
        return self.D[k]

    def __len__(self):
        return len(self.D)


def k_neg_shortest(graph: Graph, source: int, k_max: int) -> DpTable:
    """Layered relaxation: layer ``k`` relaxes every negative edge once from
    layer ``k-1`` and then closes over the non-negative edges."""
    start = [None] * graph.n
    start[source] = 0
    layers = [dijkstra_reference(graph, start)]
    neg = [(u, v, w) for u, v, w in graph.edges() if w < 0]
    for _ in range(k_max):
        prev = layers[-1]
        cur = list(prev)
        for u, v, w in neg:
            if prev[u] is not None and (cur[v] is None or prev[u] + w < cur[v]):
                cur[v] = prev[u] + w
        layers.append(dijkstra_reference(graph, cur))
    return DpTable(layers)
