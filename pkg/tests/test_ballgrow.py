from fractions import Fraction

import numpy as np
import pytest

from brute import ball_sweep, edge_list
from detsssp import Graph, InvariantViolation, grow_ball, view
from detsssp.ballgrow import VolumeHistory, padding_step
from detsssp.generators import non_negative_random

EPS = Fraction(1, 11)


def _check_against_sweep(g, s, sign, d0, delta, eps, budget=None, members=None):
    wv = view(g) if members is None else view(g, restriction=members, degree_preserving=True)
    res = grow_ball(wv, s, sign, d0, delta, eps, budget)
    mem = range(g.n) if members is None else members
    outcome, r, ball, padded = ball_sweep(g.n, edge_list(g), mem, s, sign, d0, delta, eps, g.m,
                                          budget)
    assert res.outcome == outcome
    if outcome != "overweight":
        assert res.radius == r
        assert res.ball.members.tolist() == ball
        assert res.padded.members.tolist() == padded
    return res


def test_isolated_vertex():
    g = Graph.from_edges(3, [(1, 2, 1)])
    res = grow_ball(view(g), 0, "+", 0, 10, EPS)
    assert res.stopped and res.radius == 0
    assert res.ball.members.tolist() == [0] and res.padded.members.tolist() == [0]


def test_star_with_long_spokes():
    delta = Fraction(100)
    far = 1000
    g = Graph.from_edges(5, [(0, v, far) for v in range(1, 5)])
    res = grow_ball(view(g), 0, "+", 0, delta, EPS)
    assert res.radius == 0 and res.ball.members.tolist() == [0]
    assert res.increments == 1


def test_unit_path_matches_sweep():
    n = 200
    g = Graph.from_edges(n, [(i, i + 1, 1) for i in range(n - 1)])
    _check_against_sweep(g, 0, 1, 0, 100, Fraction(1, 10) - Fraction(1, 1000))


@pytest.mark.parametrize("seed", range(40))
def test_random_cases_match_sweep(seed):
    rng = np.random.default_rng(seed)
    n = int(rng.integers(2, 30))
    g = non_negative_random(n, int(rng.integers(1, 4 * n)), max_weight=int(rng.integers(0, 20)),
                            loops=True, seed=seed)
    members = sorted(set(rng.integers(0, n, n).tolist()) | {0}) if seed % 3 == 0 else None
    budget = int(rng.integers(1, 2 * g.m + 2)) if seed % 2 else None
    _check_against_sweep(g, 0, 1 if seed % 4 < 2 else -1, int(rng.integers(0, 10)),
                         Fraction(int(rng.integers(1, 80)), int(rng.integers(1, 4))),
                         Fraction(1, int(rng.integers(11, 30))), budget, members)


def test_stopped_invariants():
    g = non_negative_random(60, 240, max_weight=10, seed=1)
    for s in range(0, 60, 7):
        for d0, delta in ((0, 30), (12, 7), (5, 200)):
            res = grow_ball(view(g), s, "+", d0, delta, EPS)
            assert d0 <= res.radius <= d0 + delta
            assert res.padded.volume <= (1 + 4 * EPS) * res.ball.volume
            assert set(res.ball.members) <= set(res.padded.members)


def test_work_counter_is_bounded_by_padded_volume():
    g = non_negative_random(80, 400, max_weight=10, seed=2)
    for s in range(0, 80, 9):
        res = grow_ball(view(g), s, "-", 3, 40, EPS)
        assert res.work <= res.padded.volume + len(res.padded)


def test_overweight_budget():
    g = Graph.from_edges(4, [(0, 1, 0), (1, 2, 0), (2, 3, 0)])
    res = grow_ball(view(g), 0, "+", 0, 10, EPS, volume_budget=2)
    assert res.outcome == "overweight" and res.radius is None


def test_rejects_bad_parameters():
    g = Graph.from_edges(2, [(0, 1, 1)])
    with pytest.raises(ValueError):
        grow_ball(view(g), 0, "+", 0, 10, Fraction(1, 10))
    with pytest.raises(ValueError):
        grow_ball(view(g), 0, "+", 0, 0, EPS)
    with pytest.raises(ValueError):
        grow_ball(view(g, restriction=[1]), 0, "+", 0, 5, EPS)


def test_negative_view_is_rejected():
    g = Graph.from_edges(2, [(0, 1, -1)])
    with pytest.raises(InvariantViolation):
        grow_ball(view(g), 0, "+", 0, 10, EPS)


def test_volume_history():
    g = non_negative_random(30, 90, max_weight=6, seed=5)
    res = grow_ball(view(g), 0, "+", 0, 500, EPS)
    hist = res.history(g.degree)
    assert hist.is_monotone()
    d = dict(zip(res.reached.tolist(), res.reached_dist.tolist()))
    for j in range(1, len(hist) + 1):
        r = hist.radius_for(j)
        inside = sum(int(g.degree[v]) for v, dv in d.items() if dv <= r)
        below = sum(int(g.degree[v]) for v, dv in d.items() if dv < r)
        assert inside >= j > below


def test_history_table_example():
    h = VolumeHistory([0, 2, 5], [1, 2, 1])
    assert [h.radius_for(j) for j in range(1, 5)] == [0, 2, 2, 5]


def test_padding_step_uses_floor_log():
    assert padding_step(120, Fraction(1, 12), 1000) == Fraction(120, 12 * 9)
