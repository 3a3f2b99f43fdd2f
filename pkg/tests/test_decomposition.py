import math
from fractions import Fraction

import numpy as np
import pytest

from brute import edge_list, floyd, log2_floor
from detsssp import (
    Graph,
    color_path,
    decompose,
    dijkstra,
    sample_paths,
    verify_decomposition,
    view,
)
from detsssp.ballgrow import SourceRun
from detsssp.decomposition import (
    C_OVERLAP,
    VOLUME_BOUNDED,
    WEAK_DIAMETER,
    Decomposition,
    HeavyTrigger,
    boundary_bound,
    heavy_case,
    light_case,
)
from detsssp.generators import clustered, non_negative_random
from detsssp.graph import VertexSet

EPS = Fraction(1, 11)


def cliques(sizes, weight=1, bridge=1000, ring=True):
    """Complete digraphs of the given sizes, consecutive ones joined by one
    bridge edge each way."""
    edges, starts, base = [], [], 0
    for k in sizes:
        starts.append(base)
        edges += [(base + i, base + j, weight) for i in range(k) for j in range(k) if i != j]
        base += k
    pairs = list(zip(starts, starts[1:] + starts[:1])) if ring else list(zip(starts, starts[1:]))
    for a, b in pairs:
        edges += [(a, b, bridge), (b, a, bridge)]
    return Graph.from_edges(base, edges), starts


def nonempty(dec):
    return [sorted(p.members.tolist()) for p in dec.parts if len(p)]


def test_two_cliques_split_cluster_from_rest():
    # the padding step must be at least 1 for unit weights to count as short
    delta = Fraction(100)
    g, _ = cliques([8, 8], bridge=int(10 * delta), ring=False)
    dec = decompose(view(g), 12 * delta, EPS)
    assert sorted(nonempty(dec)) == [list(range(8)), list(range(8, 16))]
    assert dec.volume_sum == 2 * g.m


def test_light_case_on_a_ring_of_cliques():
    delta = Fraction(100)
    g, starts = cliques([6, 6, 6, 6], bridge=int(10 * delta))
    res = light_case(view(g), delta, EPS)
    assert not isinstance(res, HeavyTrigger)
    x, y = res.parts
    # the core is a union of whole cliques and the bridges are beyond the padding
    core = set(res.provenance.core)
    blocks = [set(range(a, a + 6)) for a in starts]
    assert core == set().union(*[b for b in blocks if b & core])
    assert res.provenance.core == x
    assert x.volume + y.volume == 2 * g.m
    assert 2 * x.volume >= g.m


def test_long_edges_give_singleton_balls():
    delta = Fraction(12)
    g = non_negative_random(30, 90, seed=1).with_weights(
        np.full(90, 100, dtype=np.int64))
    res = light_case(view(g), delta, EPS)
    assert all(b.size == 1 for b in res.provenance.balls)
    assert 2 * res.provenance.core.volume >= g.m
    assert res.parts[0] == res.provenance.core


def _zero_clique(k):
    return Graph.from_edges(k, [(i, j, 0) for i in range(k) for j in range(k) if i != j])


def test_zero_weight_clique_is_heavy_with_one_part():
    g = _zero_clique(7)
    assert light_case(view(g), Fraction(5), EPS) == HeavyTrigger(0)
    dec = heavy_case(view(g), 0, Fraction(5), EPS)
    assert dec.provenance.r_plus == dec.provenance.r_minus == 5
    assert [len(p) for p in dec.parts] == [7, 0, 0]
    dec = decompose(view(g), 60, EPS)
    assert nonempty(dec) == [list(range(7))]
    assert dec.kinds[0] == WEAK_DIAMETER
    rep = verify_decomposition(dec, view(g))
    assert rep.parts[0]["ok"]
    assert rep.ok


def test_heavy_case_on_a_bidirected_cycle():
    delta = Fraction(4)
    n = int(12 * delta)
    edges = [(i, (i + 1) % n, 1) for i in range(n)] + [((i + 1) % n, i, 1) for i in range(n)]
    g = Graph.from_edges(n, edges)
    # the balls here are far lighter than m, so the size guards are off
    dec = heavy_case(view(g), 0, delta, EPS, check=False)
    prov = dec.provenance
    assert delta <= prov.r_plus <= 2 * delta and delta <= prov.r_minus <= 2 * delta
    d = floyd(n, edge_list(g))
    dout = d[0]
    din = [d[v][0] for v in range(n)]
    step = dec.step
    x = [v for v in range(n) if dout[v] <= prov.r_plus + step and din[v] <= prov.r_minus + step]
    y = [v for v in range(n) if dout[v] <= prov.r_plus + step and din[v] > prov.r_minus]
    z = [v for v in range(n) if dout[v] > prov.r_plus]
    assert [p.members.tolist() for p in dec.parts] == [x, y, z]


@pytest.mark.parametrize("seed", range(15))
def test_measured_overlap_is_within_the_bound(seed):
    rng = np.random.default_rng(seed)
    g = non_negative_random(40, 160, max_weight=int(rng.integers(0, 4)), seed=seed)
    dec = decompose(view(g), int(rng.integers(20, 200)), EPS)
    assert dec.volume_sum - 2 * g.m <= C_OVERLAP * EPS * g.m
    assert dec.k <= 3 and dec.kinds.count(WEAK_DIAMETER) <= 1


def test_clustered_graph_below_the_bridge_weight():
    g = clustered(40, 300, bridges=2, bridge_weight=10_000, seed=0)
    dec = decompose(view(g), 1000, EPS)
    parts = nonempty(dec)
    assert len(parts) == 2
    assert all(kind == VOLUME_BOUNDED for kind, p in zip(dec.kinds, dec.parts) if len(p))
    assert verify_decomposition(dec, view(g), sample_paths(view(g), 1000, 20)).ok


def test_path_inside_y_has_one_color():
    g, starts = cliques([6, 6, 6, 6], bridge=100)
    dec = decompose(view(g), 120, EPS)
    y = dec.parts[1]
    walk = [v for v in range(g.n) if v in y and v not in dec.parts[0]][:3]
    walk = [walk[0], walk[1], walk[2], walk[0]]
    cp = color_path(dec, walk, weight=3)
    assert cp.boundary == 0 and set(cp.colors) == {2}


def test_light_path_crossing_bound():
    g = Graph.from_edges(300, [(i, i + 1, 1) for i in range(299)])
    d = 120
    dec = decompose(view(g), d, EPS)
    assert dec.case == "light"
    path = list(range(d + 1))
    cp = color_path(dec, path, weight=d)
    step = EPS * Fraction(d, 12) / log2_floor(g.m)
    assert cp.boundary <= 2 * math.ceil(d / step)
    assert cp.boundary <= 2 * math.ceil(12 * log2_floor(g.m) / EPS)


@pytest.mark.parametrize("seed", range(10))
def test_sampled_paths_color_within_bounds(seed):
    rng = np.random.default_rng(seed)
    g = non_negative_random(50, 200, max_weight=int(rng.choice([1, 10, 100])), seed=seed)
    d = int(rng.integers(5, 3000))
    wv = view(g)
    dec = decompose(wv, d, EPS)
    for p in sample_paths(wv, d, 20, seed):
        cp = color_path(dec, p)
        for v, c in zip(cp.vertices, cp.colors):
            assert v in dec.parts[c - 1]
        assert cp.boundary <= boundary_bound(dec) <= 100 / EPS * math.log2(g.m)


def test_corrupted_decomposition_fails_coverage():
    g = non_negative_random(20, 60, max_weight=5, seed=4)
    dec = decompose(view(g), 30, EPS)
    drop = 3
    bad = Decomposition([VertexSet(g.n, [v for v in p if v != drop], g.degree) for p in dec.parts],
                        dec.kinds, dec.eps, dec.delta, dec.d, dec.m, dec.step, dec.provenance)
    rep = verify_decomposition(bad, view(g))
    assert not rep.property2 and rep.coverage["missing"] == [drop]


def test_decompositions_are_deterministic():
    g = clustered(40, 200, seed=8)
    a = decompose(view(g), 300, EPS).to_json()
    assert decompose(view(g), 300, EPS).to_json() == a


def test_decompose_rejects_bad_parameters():
    g = non_negative_random(5, 10, seed=0)
    with pytest.raises(ValueError):
        decompose(view(g), 0, EPS)
    with pytest.raises(ValueError):
        decompose(view(g), 10, Fraction(1, 10))


@pytest.mark.parametrize("seed", range(30))
def test_decomposing_with_runs_gives_the_same_result(seed):
    rng = np.random.default_rng(seed)
    n = int(rng.integers(2, 60))
    g = non_negative_random(n, int(rng.integers(n, 5 * n)), max_weight=int(rng.choice([0, 3, 50])),
                            seed=seed)
    wv = view(g)
    runs = tuple(SourceRun.from_order(0, sgn, sp.order, sp.dist, g.degree)
                 for sgn in (1, -1) for sp in [dijkstra(wv, 0, direction=sgn)])
    d = int(rng.integers(1, 2000))
    assert decompose(wv, d, EPS, runs=runs).to_json() == decompose(wv, d, EPS).to_json()
