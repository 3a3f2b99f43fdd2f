"""Solver results: shortest-path distances or a negative-cycle certificate."""

from __future__ import annotations

import json
from dataclasses import dataclass

import numpy as np

from .errors import InvariantViolation
from .graph import Graph

__all__ = ["Distances", "NegativeCycle", "SolveOutcome", "outcome_from_dict"]


@dataclass(frozen=True)
class Distances:
    """``dist[v]`` / ``parent[v]`` are ``None`` when ``v`` is unreachable;
    ``parent`` holds predecessor vertices on a shortest-path tree."""

    dist: list
    parent: list

    def to_dict(self) -> dict:
        return {"distances": self.dist, "parents": self.parent}

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), separators=(",", ":"))


@dataclass(frozen=True)
class NegativeCycle:
    """A closed walk ``vertices[0] -> vertices[1] -> ... -> vertices[0]`` with
    negative total weight in the original graph.

    ``edges[i]`` is the edge id from ``vertices[i]`` to the next vertex.
    """

    vertices: list
    edges: list
    weight: int

    @classmethod
    def from_edges(cls, graph: Graph, edges) -> "NegativeCycle":
        """Canonicalize and verify: cheapest parallel edges, rotated to start
        at the smallest vertex, total weight re-summed and required < 0."""
        edges = [int(e) for e in edges]
        if not edges:
            raise InvariantViolation("empty cycle")
        tails = graph.tails
        heads = graph.heads
        for a, b in zip(edges, edges[1:] + edges[:1]):
            if int(heads[a]) != int(tails[b]):
                raise InvariantViolation("cycle edges do not form a closed walk")
        canon = [cheapest_edge(graph, int(tails[e]), int(heads[e])) for e in edges]
        verts = [int(tails[e]) for e in canon]
        r = verts.index(min(verts))
        verts = verts[r:] + verts[:r]
        canon = canon[r:] + canon[:r]
        weight = int(sum(int(graph.weights[e]) for e in canon))
        if weight >= 0:
            raise InvariantViolation(f"cycle weight {weight} is not negative")
        return cls(verts, canon, weight)

    def to_dict(self) -> dict:
        return {"cycle": self.vertices, "weight": self.weight}

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), separators=(",", ":"))


SolveOutcome = Distances | NegativeCycle


def cheapest_edge(graph: Graph, u: int, v: int) -> int:
    """Lowest-weight ``u -> v`` edge (lowest id on ties), or -1."""
    out = graph.out_edges(u)
    cand = out[graph.heads[out] == v]
    if cand.shape[0] == 0:
        return -1
    w = graph.weights[cand]
    best = cand[w == w.min()]
    return int(best.min())


def cycle_weight(graph: Graph, vertices) -> int | None:
    """Weight of the cheapest closed walk through ``vertices`` in order, or
    ``None`` if some consecutive pair is not an edge."""
    total = 0
    vs = list(vertices)
    for a, b in zip(vs, vs[1:] + vs[:1]):
        e = cheapest_edge(graph, int(a), int(b))
        if e < 0:
            return None
        total += int(graph.weights[e])
    return total


def outcome_from_dict(obj: dict) -> SolveOutcome:
    if "cycle" in obj:
        vs = [int(v) for v in obj["cycle"]]
        return NegativeCycle(vs, [], int(obj["weight"]))
    return Distances(list(obj["distances"]), list(obj["parents"]))


def distances_array(outcome: Distances, sentinel=None) -> np.ndarray:
    fill = np.iinfo(np.int64).max if sentinel is None else sentinel
    return np.array([fill if x is None else x for x in outcome.dist], dtype=np.int64)
