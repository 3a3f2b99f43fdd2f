"""Negative-weight single-source shortest paths by scaling.

One scaling iteration (:func:`solve_iteration`) takes a graph whose weights
are at least ``-W`` and returns a potential that makes every weight of
``G^{W/2}`` (all weights plus ``W/2``) non-negative, or a negative cycle.  It
recurses on a padded decomposition of the clamped graph, stitches the part
potentials together through an auxiliary graph ``H`` and finishes with a
hybrid Bellman-Ford/Dijkstra bounded to ``eta`` negative edges.

:func:`scale_solve` pre-scales weights by ``2n``, repeats iterations while
halving ``W``, and reads exact distances off a final Dijkstra tree.
"""

from __future__ import annotations

import sys
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from . import _kernels as K
from .ballgrow import EPS0, SourceRun, _ratio, log_m, replay_growth, thresholds
from .decomposition import decompose
from .dijkstra import dijkstra, shortest_path_between
from .errors import GraphBoundsError, InvariantViolation
from .graph import (
    INT64_SAFE,
    Graph,
    Potential,
    Transform,
    VertexSet,
    WeightView,
    compact,
    view,
)
from .outcome import Distances, NegativeCycle, SolveOutcome

__all__ = [
    "HybridDistances",
    "PathWitness",
    "AuxGraph",
    "SolverConfig",
    "hybrid_bfd",
    "build_aux_graph",
    "negative_cycle_in_walk",
    "solve_iteration",
    "scale_solve",
    "default_eps",
    "default_eta",
]


# -- hybrid Bellman-Ford / Dijkstra ------------------------------------------


@dataclass
class HybridDistances:
    """Exact distances (``INF`` = unreachable) and parent edge ids.

    ``phase_labels[k]`` (when recorded) are the labels after phase ``k``; after
    the last phase they stay constant.
    """

    dist: np.ndarray
    parent: np.ndarray
    phases: int
    phase_labels: np.ndarray | None = None

    def label(self, k: int) -> np.ndarray:
        return self.phase_labels[min(k, self.phase_labels.shape[0] - 1)]


@dataclass
class PathWitness:
    """A ``source -> endpoint`` walk lighter than every walk with at most
    ``eta`` negative edges (``bound`` is that optimum; ``None`` = none exists).

    The walk is ``prefix``, then ``cycle`` repeated ``repeat`` times, then
    ``suffix`` (all edge ids).  ``cycle`` is empty for a simple path; when the
    parent trace closes a loop it holds that loop, whose weight is negative,
    and ``repeat`` is the smallest count pushing the walk below ``bound``.
    """

    prefix: list[int]
    cycle: list[int]
    repeat: int
    suffix: list[int]
    weight: int
    endpoint: int
    bound: int | None
    phase_labels: np.ndarray | None = None

    @property
    def closed(self) -> bool:
        return bool(self.cycle)

    @property
    def edges(self) -> list[int]:
        """The walk spelled out; can be long when ``repeat`` is large."""
        return self.prefix + self.cycle * self.repeat + self.suffix


def _graph_and_weights(g):
    if isinstance(g, WeightView):
        if g.mask is not None:
            raise ValueError("hybrid_bfd needs an unrestricted view")
        return g.graph, g.weights
    return g, g.weights


def hybrid_bfd(g, source: int, eta: int, *, record: bool = False):
    """Phased Bellman-Ford/Dijkstra from ``source`` with negative-edge budget ``eta``.

    Phase 0 is Dijkstra over the non-negative edges; each later phase relaxes
    the negative edges leaving vertices that changed, then re-runs Dijkstra
    from the improved labels.  A fixed point before phase ``eta + 1`` yields
    :class:`HybridDistances`; otherwise the parent trace of an improved vertex
    is returned as a :class:`PathWitness`.
    """
    if eta < 1:
        raise ValueError("eta must be at least 1")
    graph, w = _graph_and_weights(g)
    neg = np.flatnonzero(w < 0).astype(np.int64)
    status, phases, wit, bound, dist, par, rec = K.hybrid_bfd_kernel(
        graph.out_ptr, graph.out_nbr, graph.out_eid, compact(w[graph.out_eid]), np.int64(graph.n),
        np.int64(source), graph.tails[neg], graph.heads[neg], w[neg], neg, np.int64(eta),
        bool(record))
    labels = rec if record else None
    if status == 0:
        return HybridDistances(dist, par, int(phases), labels)
    bound = None if bound >= K.INF else int(bound)
    return _trace(graph, w, par, source, int(wit), bound, labels)


def _weight(w, edges) -> int:
    return int(w[np.asarray(edges, dtype=np.int64)].sum()) if edges else 0


def _trace(graph: Graph, w, par, source: int, v: int, bound, labels):
    edges = []
    seen = {v: 0}
    x = v
    while par[x] >= 0:
        e = int(par[x])
        edges.append(e)
        x = int(graph.tails[e])
        if x in seen:
            break
        seen[x] = len(edges)
    else:
        edges.reverse()
        return PathWitness(edges, [], 0, [], _weight(w, edges), v, bound, labels)
    # the parent structure closed a loop through x: reach x from the source
    # by a BFS path, go around the loop, then follow the trace to v
    cyc = edges[seen[x]:][::-1]
    suffix = edges[:seen[x]][::-1]
    cw = _weight(w, cyc)
    if cw >= 0:
        raise InvariantViolation("parent loop of non-negative weight")
    bfs = K.bfs_tree_kernel(graph.out_ptr, graph.out_nbr, graph.out_eid, np.int64(graph.n),
                            np.int64(source))
    prefix = []
    y = x
    while y != source:
        e = int(bfs[y])
        prefix.append(e)
        y = int(graph.tails[e])
    prefix.reverse()
    base = _weight(w, prefix) + _weight(w, suffix)
    repeat = 1
    if bound is not None and base + cw >= bound:
        repeat = (base - bound) // -cw + 1
    return PathWitness(prefix, cyc, repeat, suffix, base + repeat * cw, v, bound, labels)


# -- configuration and instances ---------------------------------------------


def default_eps(m: int) -> Fraction:
    """``1/log m``, capped below the ball-growth limit for small graphs."""
    return Fraction(1, max(log_m(m), EPS0.denominator + 1))


def default_eta(m: int) -> int:
    return 100 * log_m(m) ** 2 + 1


@dataclass
class SolverConfig:
    base_threshold: int = 4096
    eps: Fraction | None = None
    eta: int | None = None
    check: bool = True  # full edge scan of every returned potential
    shortcut: bool = True  # an instance without negative edges gets the zero potential
    # replay ball growths from vertex 0 on two cached Dijkstra runs: skips levels
    # whose decomposition is provably {X}, and the first race / heavy case
    reuse_runs: bool = True
    recorder: list | None = None  # receives one dict per recursion node


class _CycleFound(Exception):
    def __init__(self, edges):
        super().__init__("negative cycle")
        self.edges = edges


@dataclass
class _Instance:
    graph: Graph  # local ids, loop-free
    vmap: np.ndarray  # local vertex -> root vertex
    emap: np.ndarray  # local edge -> root edge
    clamped: WeightView | None = None
    runs: tuple | None = None  # complete out/in runs from vertex 0 in ``clamped``

    def induced(self, members):
        sub, vm, em = self.graph.induced(members)
        return _Instance(sub, self.vmap[vm], self.emap[em])


@dataclass
class _Context:
    root: Graph
    half: int
    eps: Fraction
    eta: int
    cfg: SolverConfig
    clamp: WeightView = field(init=False)
    iteration: int = 0

    def __post_init__(self):
        self.clamp = view(self.root, Transform.SHIFT_CLAMP, shift=self.half)

    def record(self, **kw):
        if self.cfg.recorder is not None:
            kw["iteration"] = self.iteration
            self.cfg.recorder.append(kw)


# -- auxiliary graph -----------------------------------------------------------


@dataclass
class AuxGraph:
    """Super-source ``0`` plus one copy of each vertex per part containing it.

    ``copy_vertex[c]`` / ``copy_part[c]`` give the instance vertex and part of
    copy ``c``; ``edge_origin[e]`` is the instance edge behind ``e`` (-1 for
    super-source edges).
    """

    graph: Graph
    copy_vertex: np.ndarray
    copy_part: np.ndarray
    edge_origin: np.ndarray
    copy_index: list[np.ndarray]  # per part: instance vertex -> copy id (or -1)


def build_aux_graph(g: Graph, shifted_w: np.ndarray, parts, potentials) -> AuxGraph:
    """``H`` for instance ``g`` (weights ``shifted_w``), parts and their potentials."""
    n = g.n
    k = len(parts)
    idx, phis = [], []
    cv, cp = [np.array([-1], dtype=np.int64)], [np.array([-1], dtype=np.int64)]
    nxt = 1
    for i, (p, phi) in enumerate(zip(parts, potentials)):
        members = np.asarray(p, dtype=np.int64)
        a = np.full(n, -1, dtype=np.int64)
        a[members] = np.arange(nxt, nxt + members.shape[0], dtype=np.int64)
        f = np.zeros(n, dtype=np.int64)
        f[members] = phi
        idx.append(a)
        phis.append(f)
        cv.append(members)
        cp.append(np.full(members.shape[0], i, dtype=np.int64))
        nxt += members.shape[0]
    tails, heads, ws, orig = [], [], [], []
    for i in range(k):
        members = cv[i + 1]
        tails.append(np.zeros(members.shape[0], dtype=np.int64))
        heads.append(idx[i][members])
        ws.append(-phis[i][members])
        orig.append(np.full(members.shape[0], -1, dtype=np.int64))
    t, h = g.tails, g.heads
    for i in range(k):
        ti = idx[i][t]
        for j in range(k):
            hj = idx[j][h]
            sel = np.flatnonzero((ti >= 0) & (hj >= 0))
            tails.append(ti[sel])
            heads.append(hj[sel])
            ws.append(shifted_w[sel] + phis[i][t[sel]] - phis[j][h[sel]])
            orig.append(sel.astype(np.int64))
    H = Graph(nxt, np.concatenate(tails), np.concatenate(heads), np.concatenate(ws),
              check_bounds=False)
    return AuxGraph(H, np.concatenate(cv), np.concatenate(cp), np.concatenate(orig), idx)


# -- cycles ---------------------------------------------------------------------


def negative_cycle_in_walk(graph: Graph, walk_edges, weights=None):
    """A simple cycle of negative weight inside a closed walk, or ``None``.

    The walk is split into simple cycles with a vertex stack; their weights
    sum to the walk's, so a negative walk always contains one.
    """
    w = graph.weights if weights is None else weights
    edges = [int(e) for e in walk_edges]
    if not edges:
        return None
    start = int(graph.tails[edges[0]])
    stack_v = [start]
    stack_e = []
    pos = {start: 0}
    for e in edges:
        v = int(graph.heads[e])
        stack_e.append(e)
        if v in pos:
            p = pos[v]
            cyc = stack_e[p:]
            if sum(int(w[c]) for c in cyc) < 0:
                return cyc
            for x in stack_v[p + 1:]:
                del pos[x]
            del stack_v[p + 1:]
            del stack_e[p:]
        else:
            pos[v] = len(stack_v)
            stack_v.append(v)
    return None


def _close_and_extract(ctx: _Context, root_edges, d):
    """Close a root walk with a clamped-graph path back to its start and
    return a negative simple cycle of it."""
    g = ctx.root
    first, last = int(g.tails[root_edges[0]]), int(g.heads[root_edges[-1]])
    walk = list(root_edges)
    if first != last:
        back = shortest_path_between(ctx.clamp, last, first, cap=int(d))
        if back is None:
            raise InvariantViolation("no closing path within the weak-diameter cap")
        walk += back.edges
    cyc = negative_cycle_in_walk(g, walk)
    if cyc is None:
        raise InvariantViolation("closed walk contains no negative cycle")
    return cyc


def _extract_via_diameter(ctx: _Context, inst: _Instance, e_local: int, d):
    e = int(inst.emap[e_local])
    return _close_and_extract(ctx, [e], d)


def _extract_from_witness(ctx: _Context, inst: _Instance, aux: AuxGraph, wit: PathWitness, d):
    if wit.closed:
        origin = aux.edge_origin[np.asarray(wit.cycle, dtype=np.int64)]
        if np.any(origin < 0):
            raise InvariantViolation("witness cycle passes through the super-source")
        cyc = negative_cycle_in_walk(ctx.root, inst.emap[origin].tolist())
        if cyc is None:
            raise InvariantViolation("witness cycle is not negative in the ambient graph")
        return cyc
    origin = aux.edge_origin[np.asarray(wit.prefix, dtype=np.int64)]
    path = origin[1:]
    if path.shape[0] == 0 or np.any(path < 0):
        raise InvariantViolation("witness path maps to an empty ambient path")
    return _close_and_extract(ctx, inst.emap[path].tolist(), d)


# -- one scaling iteration --------------------------------------------------------


def _base_case(ctx: _Context, inst: _Instance, w):
    g = inst.graph
    n = g.n
    t = np.concatenate([np.zeros(n, dtype=np.int64), g.tails + 1])
    h = np.concatenate([np.arange(1, n + 1, dtype=np.int64), g.heads + 1])
    ww = np.concatenate([np.zeros(n, dtype=np.int64), w])
    aux = Graph(n + 1, t, h, ww, check_bounds=False)
    res = hybrid_bfd(aux, 0, n + 1)
    if isinstance(res, PathWitness):
        if not res.closed:
            raise InvariantViolation("base case witness without a cycle")
        edges = np.asarray(res.cycle, dtype=np.int64) - n
        cyc = negative_cycle_in_walk(ctx.root, inst.emap[edges].tolist())
        if cyc is None:
            raise InvariantViolation("base case cycle is not negative in the ambient graph")
        raise _CycleFound(cyc)
    return res.dist[1:].copy()


def _solve(ctx: _Context, inst: _Instance, d: Fraction, depth: int):
    g = inst.graph
    m1 = g.m
    w = g.weights + ctx.half
    node = {"depth": depth, "n": g.n, "m": m1, "d": d, "volume": 2 * m1}
    if m1 == 0 or (ctx.cfg.shortcut and w.min() >= 0):
        phi = np.zeros(g.n, dtype=np.int64)
        node["kind"] = "nonnegative"
    elif m1 < ctx.cfg.base_threshold:
        phi = _base_case(ctx, inst, w)
        node["kind"] = "base"
    elif d < ctx.half:
        neg = np.flatnonzero(w < 0)
        if neg.shape[0]:
            raise _CycleFound(_extract_via_diameter(ctx, inst, int(neg[0]), d))
        phi = np.zeros(g.n, dtype=np.int64)
        node["kind"] = "small-d"
    else:
        phi = _recurse(ctx, inst, w, d, depth, node)
    if ctx.cfg.check:
        red = w + phi[g.tails] - phi[g.heads]
        node["valid"] = bool(red.shape[0] == 0 or red.min() >= 0)
        if not node["valid"]:
            raise InvariantViolation("returned potential leaves a negative edge")
    ctx.record(**node)
    return phi


def _clamped(ctx: _Context, inst: _Instance) -> WeightView:
    if inst.clamped is None:
        inst.clamped = view(inst.graph, Transform.SHIFT_CLAMP, shift=ctx.half)
    return inst.clamped


def _runs(ctx: _Context, inst: _Instance):
    """Complete out- and in-runs from vertex 0 of the clamped instance (cached)."""
    if inst.runs is None:
        wv = _clamped(ctx, inst)
        inst.runs = tuple(
            SourceRun.from_order(0, sgn, sp.order, sp.dist, wv.degree)
            for sgn in (1, -1) for sp in [dijkstra(wv, 0, direction=sgn)])
    return inst.runs


def _is_trivial(ctx: _Context, inst: _Instance, runs, d) -> bool:
    # light case: vertex 0 is raced first, on the whole instance; both balls
    # must be overweight for the heavy case to start there
    m1 = inst.graph.m
    delta = d / 12
    num, den = _ratio(ctx.eps)
    T, _, _ = thresholds(Fraction(0), delta, ctx.eps, m1)
    if any(replay_growth(r, T, num, den, m1 // 2)[0] != "overweight" for r in runs):
        return False
    # heavy case: both balls of radius r >= delta must already be everything
    T, _, _ = thresholds(delta, delta, ctx.eps, m1)
    for r in runs:
        res, i = replay_growth(r, T, num, den, None)
        if res != "stopped" or T[i - 1] < r.dist[-1]:
            return False
    return True


def _trivial_levels(ctx: _Context, inst: _Instance, d) -> int:
    """How many consecutive halvings of ``d`` decompose ``inst`` into itself.

    Vertex 0 is the first vertex the light case races.  If both of its balls
    are overweight and both heavy-case balls around it cover the instance,
    the decomposition is ``X = V, Y = Z = {}`` and the recursion continues on
    the same instance with ``d/2``.  The stopping rule is replayed on the
    cached runs instead of re-growing the balls at every level.
    """
    runs = _runs(ctx, inst)
    if any(r.order.shape[0] < inst.graph.n for r in runs):
        return 0
    j = 0
    while d >= ctx.half and _is_trivial(ctx, inst, runs, d):
        d /= 2
        j += 1
    return j


def _recurse(ctx: _Context, inst: _Instance, w, d, depth, node):
    g = inst.graph
    m1 = g.m
    if ctx.cfg.reuse_runs:
        j = _trivial_levels(ctx, inst, d)
        if j:
            node.update(kind="decompose", case="heavy", trivial=True,
                        parts=[{"volume": 2 * m1, "d": d / 2, "size": g.n}])
            phi = _solve(ctx, inst, d / 2 ** j, depth + j)
            for t in range(1, j):
                dt = d / 2 ** t
                ctx.record(depth=depth + t, n=g.n, m=m1, d=dt, volume=2 * m1, kind="decompose",
                           case="heavy", trivial=True, valid=ctx.cfg.check or None,
                           parts=[{"volume": 2 * m1, "d": dt / 2, "size": g.n}])
            return phi
    runs = _runs(ctx, inst) if ctx.cfg.reuse_runs else None
    dec = decompose(_clamped(ctx, inst), d, ctx.eps, runs=runs)
    parts = [p for p in dec.parts if len(p)]
    node["kind"] = "decompose"
    node["case"] = dec.case
    node["parts"] = []
    phis = []
    for p in parts:
        di = d if 5 * p.volume <= 8 * m1 else d / 2
        node["parts"].append({"volume": p.volume, "d": di, "size": len(p)})
        if di * p.volume > Fraction(9, 10) * d * (2 * m1):
            raise InvariantViolation("recursion made no progress on d * vol")
        same = len(p) == g.n
        child = inst if same else inst.induced(p.members)
        phis.append(_solve(ctx, child, di, depth + 1))
    if len(parts) == 1 and len(parts[0]) == g.n:
        # H would be a copy of the instance under a potential it already satisfies
        return phis[0]
    aux = build_aux_graph(g, w, [p.members for p in parts], phis)
    res = hybrid_bfd(aux.graph, 0, ctx.eta)
    if isinstance(res, PathWitness):
        raise _CycleFound(_extract_from_witness(ctx, inst, aux, res, d))
    phi = np.empty(g.n, dtype=np.int64)
    filled = np.zeros(g.n, dtype=bool)
    for i in range(len(parts)):
        a = aux.copy_index[i]
        sel = (a >= 0) & ~filled
        phi[sel] = res.dist[a[sel]] + phis[i][np.searchsorted(parts[i].members,
                                                               np.flatnonzero(sel))]
        filled |= sel
    node["bfd_phases"] = res.phases
    return phi


def _check_W(W: int):
    if W < 2 or W & (W - 1):
        raise ValueError("W must be a power of two >= 2")


def _run_iteration(ctx: _Context, inst: _Instance, d):
    try:
        return _solve(ctx, inst, Fraction(d), 0)
    except _CycleFound as found:
        return NegativeCycle.from_edges(ctx.root, found.edges)


def solve_iteration(G: Graph, W: int, X=None, d=None, eps=None,
                    config: SolverConfig | None = None):
    """One scaling iteration on ``G^{W/2}[X]``.

    Returns a :class:`Potential` over all of ``G``'s vertices (zero outside
    ``X``) that is valid on ``G^{W/2}[X]``, or a :class:`NegativeCycle` of
    ``G``.  ``d`` defaults to ``m^2 W / 2`` and ``eps`` to ``1/log m``.
    """
    _check_W(W)
    cfg = config or SolverConfig()
    if X is None:
        members = np.arange(G.n, dtype=np.int64)
    elif isinstance(X, VertexSet):
        members = X.members
    else:
        members = np.unique(np.asarray(X, dtype=np.int64))
    sub, vm, em = G.induced(members)
    half = W // 2
    loops = np.flatnonzero(sub.tails == sub.heads)
    bad = loops[sub.weights[loops] + half < 0]
    if bad.shape[0]:
        return NegativeCycle.from_edges(G, [int(em[bad[0]])])
    sub2, _, em2 = sub.induced(np.arange(sub.n), drop_loops=True)
    m = sub2.m
    eps = default_eps(m) if eps is None and cfg.eps is None else Fraction(eps or cfg.eps)
    if not 0 < eps < EPS0:
        raise ValueError(f"eps must lie in (0, {EPS0})")
    eta = cfg.eta or default_eta(m)
    d = Fraction(m * m * W, 2) if d is None else Fraction(d)
    ctx = _Context(G, half, eps, eta, cfg)
    res = _run_iteration(ctx, _Instance(sub2, vm, em[em2]), d)
    if isinstance(res, NegativeCycle):
        return res
    phi = np.zeros(G.n, dtype=np.int64)
    phi[vm] = res
    return Potential(phi)


def _pow2_at_least(x: int) -> int:
    return 1 << max(1, (int(x) - 1).bit_length())


def scale_solve(G: Graph, source: int, config: SolverConfig | None = None) -> SolveOutcome:
    """Exact single-source distances from ``source``, or a negative cycle
    reachable from it.  Unreachable vertices get distance ``None``."""
    cfg = config or SolverConfig()
    if not 0 <= source < G.n:
        raise ValueError("source out of range")
    reach = np.sort(K.bfs_kernel(G.out_ptr, G.out_nbr, np.int64(G.n), np.int64(source)))
    sub, vmap, emap = G.induced(reach)
    loops = np.flatnonzero((sub.tails == sub.heads) & (sub.weights < 0))
    if loops.shape[0]:
        return NegativeCycle.from_edges(G, [int(emap[loops[0]])])
    cur, _, em2 = sub.induced(np.arange(sub.n), drop_loops=True)
    emap = emap[em2]
    n, m = cur.n, cur.m
    src = int(np.searchsorted(vmap, source))
    scaled = cur.weights * (2 * n)
    W = _pow2_at_least(max(2, -int(scaled.min()) if m else 0))
    if m and (m * m * W // 2 >= INT64_SAFE
              or n * (2 * W + max(0, int(scaled.max()))) >= INT64_SAFE):
        raise GraphBoundsError("scaled weights overflow the 64-bit working range")
    cur = cur.with_weights(scaled)
    eps = cfg.eps if cfg.eps is not None else default_eps(m)
    eta = cfg.eta or default_eta(m)
    inst_v = np.arange(n, dtype=np.int64)
    inst_e = np.arange(m, dtype=np.int64)
    iteration = 0
    limit = sys.getrecursionlimit()
    sys.setrecursionlimit(max(limit, 20000))
    try:
        while m and int(cur.weights.min()) < -1:
            ctx = _Context(cur, W // 2, Fraction(eps), eta, cfg, iteration=iteration)
            res = _run_iteration(ctx, _Instance(cur, inst_v, inst_e), Fraction(m * m * W, 2))
            if isinstance(res, NegativeCycle):
                return NegativeCycle.from_edges(G, emap[np.asarray(res.edges)].tolist())
            cur = cur.with_weights(cur.weights + res[cur.tails] - res[cur.heads])
            W //= 2
            iteration += 1
    finally:
        sys.setrecursionlimit(limit)
    # a +1 per edge breaks ties towards fewer edges without beating the 2n separation
    tree = dijkstra(view(cur.with_weights(cur.weights + 1)), src)
    dist = [None] * G.n
    parent = [None] * G.n
    local = np.full(n, 0, dtype=np.int64)
    for v in tree.order.tolist():
        e = int(tree.parent[v])
        if e >= 0:
            u = int(cur.tails[e])
            local[v] = local[u] + int(sub.weights[em2[e]])
            parent[int(vmap[v])] = int(vmap[u])
        dist[int(vmap[v])] = int(local[v])
    return Distances(dist, parent)
