import numpy as np
import pytest

from brute import edge_list, simple_paths_min
from detsssp import Graph, InvariantViolation, dijkstra, shortest_path_between, view
from detsssp.dijkstra import UNREACHED
from detsssp.generators import clustered, non_negative_random


def _dist(sp):
    return [None if d == UNREACHED else int(d) for d in sp.dist]


def test_path_forward_and_reverse():
    g = Graph.from_edges(3, [(0, 1, 3), (1, 2, 4)])
    assert _dist(dijkstra(view(g), 0)) == [0, 3, 7]
    assert _dist(dijkstra(view(g), 2, direction="-")) == [7, 4, 0]


@pytest.mark.parametrize("seed", range(20))
def test_matches_path_enumeration(seed):
    g = non_negative_random(8, 18, max_weight=9, seed=seed)
    assert _dist(dijkstra(view(g), 0)) == simple_paths_min(g.n, edge_list(g), 0)


def test_initial_labels_and_multi_source():
    g = Graph.from_edges(4, [(0, 2, 5), (1, 2, 1), (2, 3, 1)])
    sp = dijkstra(view(g), [(0, 0), (1, 10)])
    assert _dist(sp) == [0, 10, 5, 6]


def test_radius_cap_hides_far_vertices():
    g = Graph.from_edges(3, [(0, 1, 3), (1, 2, 4)])
    assert _dist(dijkstra(view(g), 0, radius_cap=5)) == [0, 3, None]


def test_cap_monotonicity():
    g = non_negative_random(30, 100, max_weight=20, seed=3)
    full = dijkstra(view(g), 0).dist
    for cap in (0, 5, 17, 40):
        capped = dijkstra(view(g), 0, radius_cap=cap).dist
        seen = capped != UNREACHED
        assert np.array_equal(capped[seen], full[seen])
        assert np.all(full[~seen] > cap)


def test_triangle_inequality_and_determinism():
    g = non_negative_random(40, 200, max_weight=5, seed=11)
    a, b = dijkstra(view(g), 0), dijkstra(view(g), 0)
    assert np.array_equal(a.parent, b.parent) and np.array_equal(a.order, b.order)
    for u, v, w in edge_list(g):
        if a.reached(u):
            assert a.dist[v] <= a.dist[u] + w


def test_negative_edge_is_a_contract_violation():
    g = Graph.from_edges(2, [(0, 1, -1)])
    with pytest.raises(InvariantViolation):
        dijkstra(view(g), 0)


def test_restricted_view():
    g = Graph.from_edges(3, [(0, 1, 1), (1, 2, 1), (0, 2, 5)])
    assert _dist(dijkstra(view(g, restriction=[0, 2]), 0)) == [0, None, 5]


def test_path_between():
    g = clustered(20, 80, seed=2)
    wv = view(g)
    sp = dijkstra(wv, 0)
    for v in range(g.n):
        p = shortest_path_between(wv, 0, v)
        if not sp.reached(v):
            assert p is None
            continue
        assert p.weight == sp.dist[v] == p.weight_in(wv)
        assert p.vertices[0] == 0 and p.vertices[-1] == v
        for e, (a, b) in zip(p.edges, zip(p.vertices, p.vertices[1:])):
            assert (g.tails[e], g.heads[e]) == (a, b)


def test_path_between_trivial_cases():
    g = Graph.from_edges(3, [(0, 1, 2)])
    p = shortest_path_between(view(g), 1, 1)
    assert p.vertices == [1] and p.edges == [] and p.weight == 0
    assert shortest_path_between(view(g), 0, 2) is None
    assert shortest_path_between(view(g), 0, 1, cap=1) is None
