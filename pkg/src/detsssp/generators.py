"""Seeded random graph families.

All generators draw from ``numpy.random.default_rng(seed)`` so a
``(kind, params, seed)`` triple always yields the same graph.
"""

from __future__ import annotations

import numpy as np

from .graph import Graph
from .outcome import cycle_weight

__all__ = ["KINDS", "generate", "uniform_random", "non_negative_random", "clustered",
           "planted_negative_cycle"]

KINDS = ("uniform-random", "non-negative-random", "clustered", "planted-negative-cycle")


def _endpoints(rng, n, m, loops):
    t = rng.integers(0, n, m)
    if loops or n < 2:
        h = rng.integers(0, n, m)
    else:
        h = (t + rng.integers(1, n, m)) % n
    return t, h


def _check(n, m):
    if n < 1 or m < 0:
        raise ValueError("need n >= 1 and m >= 0")


def uniform_random(n, m, lo=-8, hi=8, hidden_potential=0, loops=False, seed=0) -> Graph:
    """Uniform endpoints, weights uniform in ``[lo, hi]``.

    With ``hidden_potential = P > 0`` the weights are instead ``b + p(u) - p(v)``
    with ``b`` uniform in ``[max(lo, 0), hi]`` and ``p`` uniform in ``[0, P]``:
    negative edges but no negative cycle, and every weight ``>= -P``.  The
    first non-loop edge gets weight exactly ``-P`` (when ``lo <= 0``), so the
    bound is attained.
    """
    _check(n, m)
    rng = np.random.default_rng(seed)
    t, h = _endpoints(rng, n, m, loops)
    if hidden_potential:
        base = rng.integers(max(lo, 0), hi + 1, m)
        p = rng.integers(0, hidden_potential + 1, n)
        first = np.flatnonzero(t != h)
        if lo <= 0 and first.shape[0]:
            e = first[0]
            base[e], p[t[e]], p[h[e]] = 0, 0, hidden_potential
        w = base + p[t] - p[h]
    else:
        w = rng.integers(lo, hi + 1, m)
    return Graph(n, t, h, w)


def non_negative_random(n, m, max_weight=100, loops=False, seed=0) -> Graph:
    return uniform_random(n, m, 0, max_weight, loops=loops, seed=seed)


def clustered(n, m, lo=1, hi=10, bridges=2, bridge_weight=1000, seed=0) -> Graph:
    """Two dense halves joined by ``bridges`` edges in each direction."""
    _check(n, m)
    if n < 4:
        raise ValueError("clustered graphs need n >= 4")
    rng = np.random.default_rng(seed)
    half = n // 2
    inner = max(m - 2 * bridges, 0)
    side = rng.integers(0, 2, inner)
    size = np.where(side == 0, half, n - half)
    off = np.where(side == 0, 0, half)
    t = rng.integers(0, size) + off
    h = (t - off + rng.integers(1, size)) % size + off
    w = rng.integers(lo, hi + 1, inner)
    bt = np.concatenate([rng.integers(0, half, bridges), rng.integers(half, n, bridges)])
    bh = np.concatenate([rng.integers(half, n, bridges), rng.integers(0, half, bridges)])
    bw = np.full(2 * bridges, bridge_weight)
    return Graph(n, np.concatenate([t, bt]), np.concatenate([h, bh]), np.concatenate([w, bw]))


def planted_negative_cycle(n, m, max_weight=20, cycle_length=3, seed=0):
    """A non-negative random graph plus a cycle of negative total weight.

    Returns ``(graph, cycle_vertices)``; the cycle is checked on the way out.
    """
    _check(n, m)
    length = min(max(cycle_length, 1), n)
    rng = np.random.default_rng(seed)
    t, h = _endpoints(rng, n, m, False)
    w = rng.integers(0, max_weight + 1, m)
    cyc = rng.permutation(n)[:length]
    cw = rng.integers(-max_weight, max_weight + 1, length)
    total = int(cw.sum())
    if total >= 0:
        cw[0] -= total + 1
    g = Graph(n, np.concatenate([t, cyc]), np.concatenate([h, np.roll(cyc, -1)]),
              np.concatenate([w, cw]))
    cycle = cyc.tolist()
    cw_total = cycle_weight(g, cycle)
    if cw_total is None or cw_total >= 0:
        raise AssertionError("planted cycle is not negative")
    return g, cycle


def generate(kind: str, params: dict | None = None, seed: int = 0) -> Graph:
    """Build a graph of family ``kind`` (one of :data:`KINDS`)."""
    params = dict(params or {})
    if kind == "uniform-random":
        return uniform_random(seed=seed, **params)
    if kind == "non-negative-random":
        return non_negative_random(seed=seed, **params)
    if kind == "clustered":
        return clustered(seed=seed, **params)
    if kind == "planted-negative-cycle":
        return planted_negative_cycle(seed=seed, **params)[0]
    raise ValueError(f"unknown graph kind {kind!r}; expected one of {', '.join(KINDS)}")
