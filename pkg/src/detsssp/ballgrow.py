"""Ball growing with a volumetrically light padding shell.

``grow_ball`` runs Dijkstra from ``s`` and, every time the radius passes
``delta0 + i * step`` with ``step = eps * delta / log m``, tests whether the
last shell grew the volume by at most a ``1 + C*eps`` factor.  On the first
success it stops with ``r = delta0 + (i-1) * step``, so the padded ball
``B(s, r + step)`` is light relative to ``B(s, r)``.

All radii are exact rationals; ``log m`` is ``floor(log2 m)`` (at least 1),
which keeps every threshold an exact integer comparison.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from . import _kernels as K
from .dijkstra import _direction
from .errors import InvariantViolation
from .graph import VertexSet, WeightView

__all__ = [
    "C",
    "EPS0",
    "log_m",
    "padding_step",
    "BallResult",
    "VolumeHistory",
    "BallWorkspace",
    "SourceRun",
    "grow_ball",
    "ball_from_run",
    "replay_growth",
]

C = 4
EPS0 = Fraction(1, 10)


def log_m(m: int) -> int:
    """``floor(log2 m)``, clamped to at least 1."""
    return max(1, int(m).bit_length() - 1)


def padding_step(delta, eps, m: int) -> Fraction:
    return Fraction(eps) * Fraction(delta) / log_m(m)


def _as_fraction(x) -> Fraction:
    if isinstance(x, float):
        return Fraction(x).limit_denominator(1 << 20)
    return Fraction(x)


def thresholds(delta0, delta, eps, m):
    """Integer radius thresholds ``floor(delta0 + i*step)`` for ``i = 0..K``."""
    step = padding_step(delta, eps, m)
    k = math.floor(Fraction(delta) / step) + 1
    cap = int(K.INF) - 1
    # floor(delta0 + i*step) in plain integers: (a + i*b) // c
    delta0 = Fraction(delta0)
    c = delta0.denominator * step.denominator
    a = delta0.numerator * step.denominator
    b = step.numerator * delta0.denominator
    t = np.array([min((a + i * b) // c, cap) for i in range(k + 1)], dtype=np.int64)
    return t, k, step


class VolumeHistory:
    """``radius_for(j)``: minimum radius whose ball has volume at least ``j``.

    Built from the settle sequence of a ball growth; lookups are O(1).
    """

    def __init__(self, dists, degrees):
        dists = np.asarray(dists, dtype=np.int64)
        degrees = np.asarray(degrees, dtype=np.int64)
        self.table = np.concatenate([[np.iinfo(np.int64).min], np.repeat(dists, degrees)])

    def __len__(self):
        return int(self.table.shape[0]) - 1

    def radius_for(self, j: int) -> int:
        return int(self.table[j])

    def is_monotone(self) -> bool:
        return bool(np.all(np.diff(self.table[1:]) >= 0))


@dataclass
class BallResult:
    source: int
    direction: int
    delta0: Fraction
    delta: Fraction
    eps: Fraction
    outcome: str  # "stopped", "exhausted" or "overweight"
    radius: Fraction | None
    ball: VertexSet | None
    padded: VertexSet | None
    step: Fraction
    increments: int
    work: int
    reached: np.ndarray = field(repr=False)
    reached_dist: np.ndarray = field(repr=False)

    @property
    def stopped(self) -> bool:
        return self.outcome in ("stopped", "exhausted")

    def history(self, degree) -> VolumeHistory:
        return VolumeHistory(self.reached_dist, np.asarray(degree)[self.reached])


class BallWorkspace:
    """Reusable per-direction scratch arrays for repeated ball growth."""

    def __init__(self, n: int):
        self.plus = K.new_workspace(n)[:2]
        self.minus = K.new_workspace(n)[:2]


def _ratio(eps: Fraction):
    # 1 + C*eps == num/den
    return eps.denominator + C * eps.numerator, eps.denominator


def _check_eps(eps: Fraction):
    if not (0 < eps < EPS0):
        raise ValueError(f"eps must lie in (0, {EPS0}), got {eps}")


@dataclass(frozen=True)
class SourceRun:
    """A complete Dijkstra run from ``source`` in one direction of a view.

    ``order`` is the settle order, ``dist`` the matching distances and
    ``cum[j]`` the volume of the first ``j`` settled vertices.  One run
    answers every ball growth from ``source`` in that view.
    """

    source: int
    direction: int
    order: np.ndarray
    dist: np.ndarray
    cum: np.ndarray

    @classmethod
    def from_order(cls, source, direction, order, dist_by_vertex, degree) -> "SourceRun":
        order = np.asarray(order, dtype=np.int64)
        cum = np.concatenate([[0], np.cumsum(np.asarray(degree)[order])])
        return cls(int(source), int(direction), order, dist_by_vertex[order], cum)


def replay_growth(run: SourceRun, T, num, den, budget):
    """The stopping rule of :func:`grow_ball` evaluated on a complete run.

    Returns ``("stopped", i)`` (ball radius threshold ``T[i-1]``),
    ``("overweight", i)`` or ``("guard", K)``.
    """
    vols = run.cum[np.searchsorted(run.dist, T, side="right")]
    passes = np.flatnonzero(num * vols[:-1] >= den * vols[1:])
    stop = int(passes[0]) + 1 if passes.shape[0] else None
    over = np.flatnonzero(vols > budget) if budget is not None else np.zeros(0, dtype=np.int64)
    first_over = int(over[0]) if over.shape[0] else None
    if first_over is not None and (stop is None or first_over < stop):
        return "overweight", first_over
    if stop is None:
        return "guard", len(T) - 1
    return "stopped", stop


def ball_from_run(run: SourceRun, degree, delta0, delta, eps, m: int) -> BallResult | None:
    """What :func:`grow_ball` returns for a stopped growth, read off ``run``
    (``None`` if the growth would not stop; ``work`` is 0)."""
    eps, delta0, delta = _as_fraction(eps), Fraction(delta0), Fraction(delta)
    T, _, step = thresholds(delta0, delta, eps, m)
    num, den = _ratio(eps)
    res, i = replay_growth(run, T, num, den, None)
    if res != "stopped":
        return None
    n = degree.shape[0]
    cnt = int(np.searchsorted(run.dist, T[i], side="right"))
    inner = int(np.searchsorted(run.dist, T[i - 1], side="right"))
    verts, dists = run.order[:cnt], run.dist[:cnt]
    outcome = "exhausted" if cnt == run.order.shape[0] else "stopped"
    return BallResult(run.source, run.direction, delta0, delta, eps, outcome,
                      delta0 + (i - 1) * step, VertexSet(n, verts[:inner], degree),
                      VertexSet(n, verts, degree), step, i, 0, verts, dists)


def _result(s, sgn, delta0, delta, eps, status, st, volat, verts, dists, T, step, degree):
    n = degree.shape[0]
    work = int(st[4])
    if status == K.OVERWEIGHT:
        return BallResult(s, sgn, delta0, delta, eps, "overweight", None, None,
                          VertexSet(n, verts, degree), step, int(st[0]), work, verts, dists)
    if status == K.GUARD:
        raise InvariantViolation("ball growth passed delta0 + delta without the volume test firing")
    if status == K.NEGATIVE:
        raise InvariantViolation("ball growth met a negative edge")
    i = int(st[0])
    ball = VertexSet(n, verts[dists <= T[i - 1]], degree)
    padded = VertexSet(n, verts, degree)
    if ball.volume != volat[i - 1] or padded.volume != st[1]:
        raise InvariantViolation("ball volume bookkeeping mismatch")
    outcome = "exhausted" if st[3] else "stopped"
    return BallResult(s, sgn, delta0, delta, eps, outcome, delta0 + (i - 1) * step, ball, padded,
                      step, i, work, verts, dists)


def grow_ball(wv: WeightView, s: int, direction, delta0, delta, eps, volume_budget=None, *,
              m: int | None = None, workspace: BallWorkspace | None = None) -> BallResult:
    """Grow ``B^{+/-}(s, r)`` with a light padding shell; see the module docstring.

    ``m`` is the edge count whose logarithm sets the step (default: the base
    graph's).  With ``volume_budget`` the growth aborts with outcome
    ``"overweight"`` as soon as the final ball is certain to exceed it.
    """
    eps, delta0, delta = _as_fraction(eps), Fraction(delta0), Fraction(delta)
    _check_eps(eps)
    if delta <= 0 or delta0 < 0:
        raise ValueError("need delta > 0 and delta0 >= 0")
    if not wv.contains(s):
        raise ValueError(f"source {s} is outside the view")
    g = wv.graph
    m = g.m if m is None else m
    sgn = _direction(direction)
    T, k, step = thresholds(delta0, delta, eps, m)
    num, den = _ratio(eps)
    budget = int(K.INF) if volume_budget is None else int(volume_budget)
    if sgn == 1:
        ptr, nbr = g.out_ptr, g.out_nbr
    else:
        ptr, nbr = g.in_ptr, g.in_nbr
    degree = wv.degree
    if workspace is None:
        dist, done, _ = K.new_workspace(g.n)
    else:
        dist, done = workspace.plus if sgn == 1 else workspace.minus
    status, st, volat, verts, dists = K.grow_kernel(
        ptr, nbr, wv.csr_weights(sgn), degree, wv.full_mask, np.int64(s), T, np.int64(k),
        np.int64(num), np.int64(den), np.int64(budget), dist, done)
    return _result(s, sgn, delta0, delta, eps, status, st, volat, verts, dists, T, step, degree)


def race_balls(wv_plus: WeightView, wv_minus: WeightView, s: int, delta, eps, budget: int, *,
               m: int, workspace: BallWorkspace):
    """Grow the out-ball (in ``wv_plus``) and in-ball (in ``wv_minus``) of ``s``
    in lockstep from radius 0 and keep the one of smaller volume.

    Returns ``(direction, BallResult)``; direction is ``None`` when both balls
    exceed ``budget``.  Both views must share weights and degrees.
    """
    eps, delta = _as_fraction(eps), Fraction(delta)
    g = wv_plus.graph
    T, k, step = thresholds(Fraction(0), delta, eps, m)
    num, den = _ratio(eps)
    dp, op = workspace.plus
    dm, om = workspace.minus
    degree = wv_plus.degree
    choice, rp, rm, st, volat, verts, dists = K.race_kernel(
        g.out_ptr, g.out_nbr, wv_plus.csr_weights(1), g.in_ptr, g.in_nbr,
        wv_minus.csr_weights(-1), degree,
        wv_plus.full_mask, wv_minus.full_mask, np.int64(s), T, np.int64(k), np.int64(num),
        np.int64(den), np.int64(budget), dp, op, dm, om)
    if choice == -2:
        bad = rp if rp in (K.GUARD, K.NEGATIVE) else rm
        _result(s, 1, Fraction(0), delta, eps, bad, st, volat, verts, dists, T, step, degree)
        raise InvariantViolation("ball race ended without a decision")
    if choice == -1:
        return None, None
    sgn = 1 if choice == 0 else -1
    res = _result(s, sgn, Fraction(0), delta, eps, K.STOPPED, st, volat, verts, dists, T, step,
                  degree)
    return sgn, res
