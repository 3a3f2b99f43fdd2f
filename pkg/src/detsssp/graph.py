"""Directed integer-weighted graphs, weight lenses and vertex sets.

A :class:`Graph` is immutable and stores its edges as parallel int64 arrays
plus CSR forward/reverse adjacency.  A :class:`WeightView` is a cheap lens over
a graph that reweights edges (shift, shift-then-clamp, potential) and/or
restricts to a vertex subset without copying edges.
"""

from __future__ import annotations

import enum
import math
from functools import cached_property

import numpy as np

from . import _kernels as K
from .errors import GraphBoundsError

__all__ = [
    "Graph",
    "GraphBoundsError",
    "Transform",
    "WeightView",
    "VertexSet",
    "Potential",
    "view",
    "regularize",
    "INT64_SAFE",
]

# Every intermediate label stays below this; 2**62 leaves headroom for one addition.
INT64_SAFE = 1 << 62


def compact(a: np.ndarray) -> np.ndarray:
    """``a`` as int32 when every value fits, else unchanged (less memory to stream)."""
    if a.shape[0] and (a.min() < _I32.min or a.max() > _I32.max):
        return a
    return a.astype(np.int32)


_I32 = np.iinfo(np.int32)


def _csr(n: int, keys: np.ndarray, m: int) -> tuple[np.ndarray, np.ndarray]:
    return K.csr_kernel(n, np.ascontiguousarray(keys, dtype=np.int64))


class Graph:
    """Immutable directed multigraph with integer weights.

    Vertices are ``0..n-1``.  Parallel edges and self-loops are kept.  A
    self-loop counts once towards its vertex's degree, so
    ``degree.sum() == 2 * (non-loop edges) + loops``.
    """

    __slots__ = (
        "n",
        "tails",
        "heads",
        "weights",
        "out_ptr",
        "out_eid",
        "out_nbr",
        "in_ptr",
        "in_eid",
        "in_nbr",
        "degree",
        "__dict__",
    )

    def __init__(self, n, tails, heads, weights, *, check_bounds: bool = True):
        n = int(n)
        if n < 0:
            raise ValueError("vertex count must be non-negative")
        if n >= _I32.max:
            raise GraphBoundsError("vertex ids must fit in 32 bits")
        tails = np.ascontiguousarray(tails, dtype=np.int64)
        heads = np.ascontiguousarray(heads, dtype=np.int64)
        weights = np.ascontiguousarray(weights, dtype=np.int64)
        if not (tails.shape == heads.shape == weights.shape) or tails.ndim != 1:
            raise ValueError("tails, heads and weights must be 1-d arrays of equal length")
        m = tails.shape[0]
        if m >= _I32.max:
            raise GraphBoundsError("edge ids must fit in 32 bits")
        if m and (tails.min() < 0 or heads.min() < 0 or tails.max() >= n or heads.max() >= n):
            raise ValueError("edge endpoint out of range")
        for a in (tails, heads, weights):
            a.flags.writeable = False
        self.n = n
        self.tails = tails
        self.heads = heads
        self.weights = weights
        self.out_ptr, self.out_eid = _csr(n, tails, m)
        self.in_ptr, self.in_eid = _csr(n, heads, m)
        # 32-bit neighbour and edge ids halve the memory the kernels stream through
        self.out_nbr = heads[self.out_eid].astype(np.int32)
        self.in_nbr = tails[self.in_eid].astype(np.int32)
        loops = tails == heads
        deg = np.bincount(tails, minlength=n) + np.bincount(heads[~loops], minlength=n)
        self.degree = deg.astype(np.int64)
        for a in (self.out_ptr, self.out_eid, self.out_nbr, self.in_ptr, self.in_eid,
                  self.in_nbr, self.degree):
            a.flags.writeable = False
        if check_bounds:
            self.check_bounds()

    @classmethod
    def from_edges(cls, n: int, edges, **kwargs) -> "Graph":
        edges = list(edges)
        if not edges:
            z = np.zeros(0, dtype=np.int64)
            return cls(n, z, z, z, **kwargs)
        t, h, w = zip(*edges)
        return cls(n, t, h, w, **kwargs)

    @property
    def m(self) -> int:
        return int(self.tails.shape[0])

    @cached_property
    def W(self) -> int:
        """Magnitude bound: every weight is at least ``-W`` (and ``W >= 1``)."""
        if self.m == 0:
            return 1
        return max(1, -int(self.weights.min()))

    @cached_property
    def max_weight(self) -> int:
        return int(self.weights.max()) if self.m else 0

    def check_bounds(self) -> None:
        m, W = self.m, self.W
        if m * m * W // 2 >= INT64_SAFE:
            raise GraphBoundsError(f"m^2*W/2 = {m * m * W // 2} does not fit below 2^62")
        if self.n * (2 * W + max(self.max_weight, 0)) >= 1 << 63:
            raise GraphBoundsError("n*(2W + max weight) does not fit in signed 64-bit")

    def edges(self):
        """Iterate ``(tail, head, weight)`` triples in edge-id order."""
        return zip(self.tails.tolist(), self.heads.tolist(), self.weights.tolist())

    def canonical_order(self) -> np.ndarray:
        return np.lexsort((self.weights, self.heads, self.tails))

    def out_edges(self, v: int) -> np.ndarray:
        return self.out_eid[self.out_ptr[v]:self.out_ptr[v + 1]]

    def in_edges(self, v: int) -> np.ndarray:
        return self.in_eid[self.in_ptr[v]:self.in_ptr[v + 1]]

    def volume(self, vertices) -> int:
        idx = np.asarray(vertices, dtype=np.int64)
        return int(self.degree[idx].sum())

    def with_weights(self, weights) -> "Graph":
        """Same topology, new weights (no bound check; for internal reweighting)."""
        g = Graph.__new__(Graph)
        for name in ("n", "tails", "heads", "out_ptr", "out_eid", "out_nbr",
                     "in_ptr", "in_eid", "in_nbr", "degree"):
            setattr(g, name, getattr(self, name))
        w = np.ascontiguousarray(weights, dtype=np.int64)
        w.flags.writeable = False
        g.weights = w
        return g

    def induced(self, vertices, *, drop_loops: bool = False):
        """Materialize ``G[vertices]``.

        Returns ``(subgraph, vertex_map, edge_map)`` where ``vertex_map[i]`` is
        the parent id of local vertex ``i`` and ``edge_map`` likewise for edges.
        """
        vmap = np.unique(np.asarray(vertices, dtype=np.int64))
        local = np.full(self.n, -1, dtype=np.int64)
        local[vmap] = np.arange(vmap.shape[0], dtype=np.int64)
        keep = (local[self.tails] >= 0) & (local[self.heads] >= 0)
        if drop_loops:
            keep &= self.tails != self.heads
        emap = np.flatnonzero(keep).astype(np.int64)
        sub = Graph(vmap.shape[0], local[self.tails[emap]], local[self.heads[emap]],
                    self.weights[emap], check_bounds=False)
        return sub, vmap, emap

    def __eq__(self, other):
        if not isinstance(other, Graph):
            return NotImplemented
        if self.n != other.n or self.m != other.m:
            return False
        a, b = self.canonical_order(), other.canonical_order()
        return (np.array_equal(self.tails[a], other.tails[b])
                and np.array_equal(self.heads[a], other.heads[b])
                and np.array_equal(self.weights[a], other.weights[b]))

    __hash__ = None

    def __repr__(self):
        return f"Graph(n={self.n}, m={self.m}, W={self.W})"


class Transform(enum.Enum):
    IDENTITY = "identity"
    SHIFT = "shift"
    SHIFT_CLAMP = "shift-clamp"
    POTENTIAL = "potential"


class WeightView:
    """Reweighted and/or vertex-restricted lens over a :class:`Graph`.

    Edges with an endpoint outside the restriction are hidden.  Transformed
    weights are computed once on first use and shared by every restriction of
    the same view (see :meth:`restrict`).
    """

    def __init__(self, graph: Graph, transform=Transform.IDENTITY, *, shift: int = 0,
                 potential=None, restriction=None, degree_preserving: bool = False,
                 _weights=None, _csr=None):
        self.graph = graph
        self.transform = Transform(transform)
        self.shift = int(shift)
        self.potential = None
        if self.transform is Transform.POTENTIAL:
            if potential is None:
                raise ValueError("potential transform needs a potential")
            phi = np.asarray(getattr(potential, "values", potential), dtype=np.int64)
            if phi.shape != (graph.n,):
                raise ValueError("potential must be total over the graph's vertices")
            self.potential = phi
        self.mask = None
        if restriction is not None:
            mask = np.zeros(graph.n, dtype=np.uint8)
            r = np.asarray(restriction)
            if r.dtype == bool or (r.dtype == np.uint8 and r.shape == (graph.n,)):
                mask[:] = r.astype(np.uint8)
            else:
                mask[r.astype(np.int64)] = 1
            self.mask = mask
        self.degree_preserving = bool(degree_preserving)
        if _weights is not None:
            self.__dict__["weights"] = _weights
        self._csr = {} if _csr is None else _csr

    @cached_property
    def weights(self) -> np.ndarray:
        g = self.graph
        t = self.transform
        if t is Transform.IDENTITY:
            w = g.weights
        elif t is Transform.SHIFT:
            w = g.weights + self.shift
        elif t is Transform.SHIFT_CLAMP:
            w = np.maximum(g.weights + self.shift, 0)
        else:
            w = g.weights + self.potential[g.tails] - self.potential[g.heads]
        w = np.ascontiguousarray(w, dtype=np.int64)
        w.flags.writeable = False
        return w

    @cached_property
    def full_mask(self) -> np.ndarray:
        """uint8 membership array, all ones when unrestricted."""
        if self.mask is None:
            return np.ones(self.graph.n, dtype=np.uint8)
        return self.mask

    @cached_property
    def visible_edges(self) -> np.ndarray:
        g = self.graph
        if self.mask is None:
            return np.arange(g.m, dtype=np.int64)
        keep = (self.mask[g.tails] != 0) & (self.mask[g.heads] != 0)
        return np.flatnonzero(keep).astype(np.int64)

    @property
    def m(self) -> int:
        return int(self.visible_edges.shape[0])

    @cached_property
    def degree(self) -> np.ndarray:
        g = self.graph
        if self.degree_preserving or self.mask is None:
            return g.degree
        e = self.visible_edges
        t, h = g.tails[e], g.heads[e]
        loops = t == h
        deg = np.bincount(t, minlength=g.n) + np.bincount(h[~loops], minlength=g.n)
        return deg.astype(np.int64)

    def vertices(self) -> np.ndarray:
        if self.mask is None:
            return np.arange(self.graph.n, dtype=np.int64)
        return np.flatnonzero(self.mask).astype(np.int64)

    def contains(self, v: int) -> bool:
        return self.mask is None or bool(self.mask[v])

    def weight(self, e: int) -> int:
        return int(self.weights[e])

    def volume(self, vertices) -> int:
        return int(self.degree[np.asarray(vertices, dtype=np.int64)].sum())

    def restrict(self, restriction, *, degree_preserving=None) -> "WeightView":
        """Same weights, different vertex restriction (shares the weight cache)."""
        return WeightView(self.graph, self.transform, shift=self.shift,
                          potential=self.potential, restriction=restriction,
                          degree_preserving=(self.degree_preserving
                                             if degree_preserving is None else degree_preserving),
                          _weights=self.weights, _csr=self._csr)

    def csr_weights(self, direction: int = 1) -> np.ndarray:
        """The weights in out- (``1``) or in-adjacency (``-1``) slot order."""
        got = self._csr.get(direction)
        if got is None:
            g = self.graph
            got = compact(self.weights[g.out_eid if direction == 1 else g.in_eid])
            self._csr[direction] = got
        return got

    def min_weight(self) -> int | None:
        e = self.visible_edges
        return int(self.weights[e].min()) if e.shape[0] else None

    def is_nonnegative(self) -> bool:
        mw = self.min_weight()
        return mw is None or mw >= 0

    def __repr__(self):
        r = "all" if self.mask is None else int(self.mask.sum())
        return (f"WeightView({self.graph!r}, {self.transform.value}, shift={self.shift}, "
                f"restriction={r}, degree_preserving={self.degree_preserving})")


def view(graph: Graph, transform=Transform.IDENTITY, restriction=None,
         degree_preserving: bool = False, *, shift: int | None = None,
         potential=None) -> WeightView:
    """Build a :class:`WeightView`.

    For the shift transforms ``shift`` defaults to ``graph.W // 2`` (the
    ``+W/2`` scaling graph).
    """
    transform = Transform(transform)
    if shift is None:
        shift = graph.W // 2 if transform in (Transform.SHIFT, Transform.SHIFT_CLAMP) else 0
    if transform is Transform.POTENTIAL and potential is not None:
        phi = np.asarray(getattr(potential, "values", potential))
        if phi.shape != (graph.n,):
            raise ValueError("potential must be total over the graph's vertices")
    return WeightView(graph, transform, shift=shift, potential=potential,
                      restriction=restriction, degree_preserving=degree_preserving)


class VertexSet:
    """A set of vertices of a graph together with its cached volume."""

    __slots__ = ("n", "members", "volume")

    def __init__(self, n: int, members, degree):
        self.n = n
        self.members = np.unique(np.asarray(members, dtype=np.int64))
        self.volume = int(np.asarray(degree)[self.members].sum())

    @classmethod
    def from_mask(cls, mask, degree) -> "VertexSet":
        mask = np.asarray(mask)
        return cls(mask.shape[0], np.flatnonzero(mask), degree)

    def mask(self) -> np.ndarray:
        out = np.zeros(self.n, dtype=bool)
        out[self.members] = True
        return out

    def __len__(self):
        return int(self.members.shape[0])

    def __iter__(self):
        return iter(self.members.tolist())

    def __contains__(self, v) -> bool:
        i = np.searchsorted(self.members, v)
        return bool(i < self.members.shape[0] and self.members[i] == v)

    def __eq__(self, other):
        if isinstance(other, VertexSet):
            return np.array_equal(self.members, other.members)
        return NotImplemented

    __hash__ = None

    def __repr__(self):
        return f"VertexSet(size={len(self)}, volume={self.volume})"


class Potential:
    """Integer vertex labelling used to reweight ``w(u,v) + phi(u) - phi(v)``."""

    __slots__ = ("values",)

    def __init__(self, values):
        self.values = np.asarray(values, dtype=np.int64)

    @classmethod
    def zeros(cls, n: int) -> "Potential":
        return cls(np.zeros(n, dtype=np.int64))

    def reduced_weights(self, wv: WeightView) -> np.ndarray:
        """Reweighted weights of the view's visible edges."""
        g = wv.graph
        e = wv.visible_edges
        return wv.weights[e] + self.values[g.tails[e]] - self.values[g.heads[e]]

    def is_valid(self, wv: WeightView) -> bool:
        """Full edge scan: every visible edge is non-negative after reweighting."""
        r = self.reduced_weights(wv)
        return bool(r.shape[0] == 0 or r.min() >= 0)

    def __len__(self):
        return int(self.values.shape[0])

    def __getitem__(self, v):
        return int(self.values[v])


def regularize(graph: Graph, mode: str = "per-level") -> Graph:
    """Append zero-weight self-loops to every vertex.

    ``"per-level"`` adds ``ceil(m/n)`` loops per vertex; ``"loglog"`` adds
    ``ceil(log2 log2 n)`` (none when ``n <= 2``).
    """
    n, m = graph.n, graph.m
    if mode == "per-level":
        k = -(-m // n) if n else 0
    elif mode == "loglog":
        k = math.ceil(math.log2(math.log2(n))) if n > 2 else 0
    else:
        raise ValueError(f"unknown regularization mode {mode!r}")
    if k <= 0:
        return graph
    loops = np.repeat(np.arange(n, dtype=np.int64), k)
    return Graph(n, np.concatenate([graph.tails, loops]),
                 np.concatenate([graph.heads, loops]),
                 np.concatenate([graph.weights, np.zeros(loops.shape[0], dtype=np.int64)]),
                 check_bounds=False)
