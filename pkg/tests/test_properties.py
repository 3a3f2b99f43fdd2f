"""Hypothesis properties for the invariants each module promises."""

from fractions import Fraction

import numpy as np
import pytest
from hypothesis import HealthCheck, given, settings
from hypothesis import strategies as st

from brute import edge_list, floyd, has_negative_cycle
from detsssp import (
    Graph,
    NegativeCycle,
    Potential,
    SolverConfig,
    Transform,
    decompose,
    dijkstra,
    grow_ball,
    hybrid_bfd,
    loads_dimacs,
    save_dimacs,
    scale_solve,
    solve_iteration,
    verify_decomposition,
    view,
)
from detsssp.dijkstra import UNREACHED
from detsssp.graph import regularize

SETTINGS = settings(max_examples=60, deadline=None,
                    suppress_health_check=[HealthCheck.too_slow])


@st.composite
def graphs(draw, max_n=12, max_m=40, lo=-8, hi=8, loops=True):
    n = draw(st.integers(1, max_n))
    vert = st.integers(0, n - 1)
    edges = draw(st.lists(st.tuples(vert, vert, st.integers(lo, hi)), max_size=max_m))
    if not loops:
        edges = [e for e in edges if e[0] != e[1]]
    return Graph.from_edges(n, edges)


eps_values = st.sampled_from([Fraction(1, 11), Fraction(1, 12), Fraction(1, 20)])


# -- graph core -------------------------------------------------------------------


@SETTINGS
@given(graphs())
def test_degree_sum(g):
    loops = int(np.sum(g.tails == g.heads))
    assert int(g.degree.sum()) == 2 * (g.m - loops) + loops


@SETTINGS
@given(graphs())
def test_shift_clamp_minimum(g):
    wv = view(g, Transform.SHIFT_CLAMP)
    if g.m == 0:
        return
    low = wv.weights.min()
    if g.weights.min() <= -(g.W // 2):
        assert low == 0
    else:
        assert low >= 0


@SETTINGS
@given(graphs())
def test_dimacs_round_trip(g):
    text = save_dimacs(g)
    assert save_dimacs(loads_dimacs(text)) == text


@SETTINGS
@given(graphs(max_n=10, max_m=30, lo=0, hi=20), st.sampled_from(["per-level", "loglog"]))
def test_regularize_keeps_distances(g, mode):
    r = regularize(g, mode)
    assert floyd(g.n, edge_list(g)) == [row[:g.n] for row in floyd(r.n, edge_list(r))[:g.n]]


# -- dijkstra -----------------------------------------------------------------------


@SETTINGS
@given(graphs(lo=0, hi=20), st.integers(0, 40))
def test_dijkstra_triangle_cap_and_determinism(g, cap):
    full = dijkstra(view(g), 0)
    again = dijkstra(view(g), 0)
    assert np.array_equal(full.parent, again.parent)
    for u, v, w in edge_list(g):
        if full.reached(u):
            assert full.dist[v] <= full.dist[u] + w
    capped = dijkstra(view(g), 0, radius_cap=cap).dist
    seen = capped != UNREACHED
    assert np.array_equal(capped[seen], full.dist[seen])


# -- ball growth ---------------------------------------------------------------------


@SETTINGS
@given(graphs(max_n=16, max_m=50, lo=0, hi=15), st.sampled_from(["+", "-"]),
       st.integers(0, 10), st.fractions(1, 60), eps_values)
def test_stopped_ball_invariants(g, direction, d0, delta, eps):
    res = grow_ball(view(g), 0, direction, d0, delta, eps)
    assert res.stopped
    assert d0 <= res.radius <= d0 + delta
    assert res.padded.volume <= (1 + 4 * eps) * res.ball.volume
    assert set(res.ball.members) <= set(res.padded.members)


@SETTINGS
@given(graphs(max_n=16, max_m=50, lo=0, hi=15), st.integers(0, 10), st.fractions(1, 60),
       st.integers(2, 6), eps_values)
def test_radius_grows_with_an_integer_multiple_of_delta(g, d0, delta, k, eps):
    a = grow_ball(view(g), 0, "+", d0, delta, eps)
    b = grow_ball(view(g), 0, "+", d0, k * delta, eps)
    assert b.radius >= a.radius


@pytest.mark.xfail(strict=True, reason="radius is not monotone in delta when the "
                   "threshold grids of the two deltas do not nest")
def test_radius_monotone_in_delta_literal():
    g = Graph.from_edges(5, [(0, 1, 1), (1, 2, 4), (0, 3, 0), (3, 4, 3), (1, 2, 11)])
    eps = Fraction(1, 11)
    r1 = grow_ball(view(g), 0, "+", 0, Fraction(31), eps, m=2).radius
    r2 = grow_ball(view(g), 0, "+", 0, Fraction(2449, 50), eps, m=2).radius
    assert r2 >= r1


# -- decomposition --------------------------------------------------------------------


@SETTINGS
@given(graphs(max_n=16, max_m=60, lo=0, hi=30, loops=False), st.integers(1, 400), eps_values)
def test_decomposition_invariants(g, d, eps):
    if g.m == 0:
        return
    dec = decompose(view(g), d, eps)
    rep = verify_decomposition(dec, view(g))
    assert rep.property2
    assert dec.volume_sum <= 2 * g.m + 12 * eps * g.m
    assert dec.k <= 3 and dec.kinds.count("weak-diameter") <= 1
    assert rep.ok
    assert decompose(view(g), d, eps).to_json() == dec.to_json()


# -- solver ----------------------------------------------------------------------------


@SETTINGS
@given(graphs(max_n=10, max_m=30), st.integers(1, 12))
def test_hybrid_labels_never_increase(g, eta):
    res = hybrid_bfd(g, 0, eta, record=True)
    labels = res.phase_labels
    assert np.all(labels[1:] <= labels[:-1])


@SETTINGS
@given(graphs(max_n=14, max_m=50), st.sampled_from([2, 4, 8, 16]), st.sampled_from([0, 4, 4096]))
def test_iteration_returns_a_valid_potential(g, W, threshold):
    g = g.with_weights(np.maximum(g.weights, -W))
    out = solve_iteration(g, W, config=SolverConfig(base_threshold=threshold))
    shifted = [(u, v, w + W // 2) for u, v, w in edge_list(g)]
    if has_negative_cycle(g.n, shifted):
        assert isinstance(out, NegativeCycle)
    else:
        assert isinstance(out, Potential)
        assert out.is_valid(view(g, Transform.SHIFT, shift=W // 2))


@SETTINGS
@given(graphs(max_n=14, max_m=50), st.sampled_from([0, 8, 4096]))
def test_scale_solve_is_total_and_deterministic(g, threshold):
    cfg = SolverConfig(base_threshold=threshold)
    out = scale_solve(g, 0, cfg)
    assert out.to_json() == scale_solve(g, 0, cfg).to_json()
    if isinstance(out, NegativeCycle):
        assert out.weight == sum(int(g.weights[e]) for e in out.edges) < 0
    else:
        d = floyd(g.n, edge_list(g))[0] if not has_negative_cycle(g.n, edge_list(g)) else None
        if d is not None:
            assert out.dist == d
