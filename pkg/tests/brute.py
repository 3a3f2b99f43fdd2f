"""Brute-force references for the tests.

Plain Python (one numpy Floyd-Warshall) over edge lists, sharing no code
with the package's kernels.
"""

from __future__ import annotations

from fractions import Fraction

import numpy as np

INF = None  # unreachable
INF_NP = 1 << 40  # unreachable in integer matrices


def edge_list(graph, weights=None):
    w = graph.weights.tolist() if weights is None else list(weights)
    return list(zip(graph.tails.tolist(), graph.heads.tolist(), w))


def floyd(n, edges, members=None):
    """All-pairs shortest distances (``None`` = unreachable), no negative cycles."""
    keep = set(range(n)) if members is None else set(int(v) for v in members)
    d = [[None] * n for _ in range(n)]
    for v in keep:
        d[v][v] = 0
    for u, v, w in edges:
        if u in keep and v in keep and (d[u][v] is None or w < d[u][v]):
            d[u][v] = w
    for k in keep:
        dk = d[k]
        for i in keep:
            dik = d[i][k]
            if dik is None:
                continue
            di = d[i]
            for j in keep:
                if dk[j] is not None and (di[j] is None or dik + dk[j] < di[j]):
                    di[j] = dik + dk[j]
    return d


def has_negative_cycle(n, edges):
    d = floyd_raw(n, edges)
    return any(d[v][v] is not None and d[v][v] < 0 for v in range(n))


def floyd_raw(n, edges):
    d = [[None] * n for _ in range(n)]
    for u, v, w in edges:
        if d[u][v] is None or w < d[u][v]:
            d[u][v] = w
    for k in range(n):
        for i in range(n):
            if d[i][k] is None:
                continue
            for j in range(n):
                if d[k][j] is not None and (d[i][j] is None or d[i][k] + d[k][j] < d[i][j]):
                    d[i][j] = d[i][k] + d[k][j]
    return d


def simple_paths_min(n, edges, source, max_neg=None):
    """Minimum weight of a simple path ``source -> v`` for every ``v``
    (optionally with at most ``max_neg`` negative edges) by exhaustive DFS."""
    adj = [[] for _ in range(n)]
    for u, v, w in edges:
        adj[u].append((v, w))
    best = [None] * n
    best[source] = 0
    on = [False] * n
    on[source] = True

    def go(u, dist, negs):
        for v, w in adj[u]:
            if on[v]:
                continue
            k = negs + (w < 0)
            if max_neg is not None and k > max_neg:
                continue
            nd = dist + w
            if best[v] is None or nd < best[v]:
                best[v] = nd
            on[v] = True
            go(v, nd, k)
            on[v] = False

    go(source, 0, 0)
    return best


def bellman_ford_plain(n, edges, source):
    """Textbook Bellman-Ford; returns distances or the string ``"cycle"``."""
    d = [None] * n
    d[source] = 0
    for _ in range(n):
        changed = False
        for u, v, w in edges:
            if d[u] is not None and (d[v] is None or d[u] + w < d[v]):
                d[v] = d[u] + w
                changed = True
        if not changed:
            return d
    return "cycle"


def log2_floor(m):
    return max(1, int(m).bit_length() - 1)


def ball_sweep(n, edges, members, s, sign, delta0, delta, eps, m, budget=None, C=4):
    """Radius-sweep reference for ball growing.

    Exact distances from ``s`` (towards ``s`` when ``sign`` is -1) inside
    ``members``; then, for ``i = 0, 1, ...``, the volume of the ball of radius
    ``delta0 + i * step`` is compared with the previous one.  Degrees are the
    full graph's.  Returns ``(outcome, radius, ball, padded)``.
    """
    delta0, delta, eps = Fraction(delta0), Fraction(delta), Fraction(eps)
    step = eps * delta / log2_floor(m)
    deg = [0] * n
    for u, v, _ in edges:
        deg[u] += 1
        if u != v:
            deg[v] += 1
    es = edges if sign == 1 else [(v, u, w) for u, v, w in edges]
    dist = floyd(n, es, members)[s]
    reach = [v for v in range(n) if dist[v] is not None]

    def ball(r):
        return sorted(v for v in reach if dist[v] <= r)

    def vol(vs):
        return sum(deg[v] for v in vs)

    i = 0
    prev = None
    while True:
        radius = delta0 + i * step
        b = ball(radius)
        if i > 0 and vol(b) <= (1 + C * eps) * vol(prev):
            r = delta0 + (i - 1) * step
            outcome = "exhausted" if len(b) == len(reach) else "stopped"
            return outcome, r, ball(r), b
        if budget is not None and vol(b) > budget:
            return "overweight", None, None, None
        if radius > delta0 + delta:
            return "guard", None, None, None
        prev = b
        i += 1


def floyd_matrix(n, edges):
    """Vectorized Floyd-Warshall over non-negative weights; ``INF_NP`` = unreachable."""
    d = np.full((n, n), INF_NP, dtype=np.int64)
    np.fill_diagonal(d, 0)
    for u, v, w in edges:
        if w < d[u, v]:
            d[u, v] = w
    for k in range(n):
        d = np.minimum(d, d[:, k:k + 1] + d[k:k + 1, :])
    return np.minimum(d, INF_NP)

