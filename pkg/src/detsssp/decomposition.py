"""Deterministic padded decomposition of a non-negative directed graph.

Given a distance scale ``d`` the instance is covered by at most three vertex
sets.  Each set either has small volume or small weak diameter, and every
path of weight at most ``d`` can be colored by set membership with few color
changes.  Two regimes:

* light case: repeatedly grow small out- or in-balls (whichever is smaller)
  around the lowest unused vertex until one side's union ``U`` holds half the
  volume; return ``X = B(U, step)`` and ``Y = V - U``.
* heavy case: some vertex has both balls of radius ``delta`` heavier than
  ``m/2``; grow both balls once more in the full graph and cut along them.

Volumes use the instance's own degrees (a self-loop counts once), and every
ball grown on ``G{V - U}`` keeps those degrees.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from . import _kernels as K
from .ballgrow import (
    BallWorkspace,
    _as_fraction,
    _check_eps,
    _ratio,
    ball_from_run,
    grow_ball,
    log_m,
    padding_step,
    replay_growth,
    thresholds,
)
from .dijkstra import Path, adjacency, dijkstra
from .errors import InvariantViolation
from .graph import VertexSet, WeightView

__all__ = [
    "VOLUME_BOUNDED",
    "WEAK_DIAMETER",
    "C_OVERLAP",
    "BallRecord",
    "LightProvenance",
    "HeavyProvenance",
    "HeavyTrigger",
    "Decomposition",
    "ColoredPath",
    "VerificationReport",
    "light_case",
    "heavy_case",
    "decompose",
    "color_path",
    "verify_decomposition",
    "sample_paths",
]

VOLUME_BOUNDED = "volume-bounded"
WEAK_DIAMETER = "weak-diameter"

# sum of part volumes <= 2m + C_OVERLAP * eps * m (with the ball constant C = 4)
C_OVERLAP = 16

_VOL_NUM, _VOL_DEN = 8, 5  # 1.6


@dataclass(frozen=True)
class BallRecord:
    source: int
    direction: int
    radius: Fraction
    size: int
    volume: int
    padded_volume: int


@dataclass
class LightProvenance:
    direction: int
    core: VertexSet
    records: np.ndarray = field(repr=False)  # rows: source, side, increment, size, vol, padded vol
    step: Fraction = Fraction(0)

    @property
    def balls(self) -> list[BallRecord]:
        return [BallRecord(s, sd, (i - 1) * self.step, sz, v, pv)
                for s, sd, i, sz, v, pv in self.records.tolist()]


@dataclass
class HeavyProvenance:
    center: int
    r_plus: Fraction
    r_minus: Fraction
    out_core: VertexSet  # B+(s, r+)
    out_padded: VertexSet  # B+(s, r+ + step)
    in_core: VertexSet  # B-(s, r-)
    in_padded: VertexSet  # B-(s, r- + step)


@dataclass(frozen=True)
class HeavyTrigger:
    """Both balls around ``source`` were too heavy: use the heavy case."""

    source: int


@dataclass
class Decomposition:
    parts: list[VertexSet]
    kinds: list[str]
    eps: Fraction
    delta: Fraction
    d: Fraction
    m: int
    step: Fraction
    provenance: LightProvenance | HeavyProvenance
    work: int = 0

    @property
    def k(self) -> int:
        return len(self.parts)

    @property
    def case(self) -> str:
        return "light" if isinstance(self.provenance, LightProvenance) else "heavy"

    @property
    def volume_sum(self) -> int:
        return sum(p.volume for p in self.parts)

    def overlap_bound(self) -> Fraction:
        return 2 * self.m + C_OVERLAP * self.eps * self.m

    def to_dict(self) -> dict:
        out = {
            "case": self.case,
            "k": self.k,
            "m": self.m,
            "d": str(self.d),
            "delta": str(self.delta),
            "eps": str(self.eps),
            "step": str(self.step),
            "volume_sum": self.volume_sum,
            "parts": [
                {"kind": kind, "volume": p.volume, "vertices": p.members.tolist()}
                for p, kind in zip(self.parts, self.kinds)
            ],
        }
        prov = self.provenance
        if isinstance(prov, LightProvenance):
            out["provenance"] = {
                "direction": "+" if prov.direction == 1 else "-",
                "core": prov.core.members.tolist(),
                "balls": [
                    {"source": b.source, "direction": "+" if b.direction == 1 else "-",
                     "radius": str(b.radius), "size": b.size, "volume": b.volume,
                     "padded_volume": b.padded_volume}
                    for b in prov.balls
                ],
            }
        else:
            out["provenance"] = {
                "center": prov.center,
                "r_plus": str(prov.r_plus),
                "r_minus": str(prov.r_minus),
            }
        return out

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True)


def _instance(wv: WeightView):
    if not wv.is_nonnegative():
        raise InvariantViolation("decomposition needs a non-negative view")
    return wv.vertices(), wv.degree, wv.m


def _check_sizes(dec: Decomposition):
    m = dec.m
    for p, kind in zip(dec.parts, dec.kinds):
        if kind == VOLUME_BOUNDED and _VOL_DEN * p.volume > _VOL_NUM * m:
            raise InvariantViolation(f"part volume {p.volume} exceeds 1.6m = {1.6 * m}")
    if dec.volume_sum > dec.overlap_bound():
        raise InvariantViolation(
            f"volume sum {dec.volume_sum} exceeds 2m + {C_OVERLAP}*eps*m = {float(dec.overlap_bound())}")


def light_case(wv: WeightView, delta, eps, *, runs=None):
    """Light case; returns a two-part :class:`Decomposition` or a :class:`HeavyTrigger`.

    Balls are raced out/in from the lowest-numbered unused vertex and the
    smaller one joins ``U+`` or ``U-``.  A ball heavier than ``m/2`` in both
    directions triggers the heavy case.  With ``runs`` from the first vertex
    to be raced, that first race is decided without growing anything.
    """
    eps, delta = _as_fraction(eps), Fraction(delta)
    _check_eps(eps)
    if delta <= 0:
        raise ValueError("delta must be positive")
    verts, deg, m = _instance(wv)
    g = wv.graph
    T, k, step = thresholds(Fraction(0), delta, eps, m)
    num, den = _ratio(eps)
    if runs is not None and verts.shape[0] and runs[0].source == verts[0]:
        if all(replay_growth(r, T, num, den, m // 2)[0] == "overweight" for r in runs):
            return HeavyTrigger(int(verts[0]))
    ws = BallWorkspace(g.n)
    status, trigger, in_p, in_m, vol_p, vol_m, rec, work = K.light_kernel(
        g.out_ptr, g.out_nbr, wv.csr_weights(1), g.in_ptr, g.in_nbr, wv.csr_weights(-1), deg,
        wv.full_mask, verts, np.int64(m), T, np.int64(k), np.int64(num), np.int64(den),
        np.int64(m // 2), *ws.plus, *ws.minus)
    if status == 1:
        return HeavyTrigger(int(trigger))
    if status != 0:
        raise InvariantViolation(f"light case failed at vertex {trigger}")
    sgn = 1 if vol_p >= vol_m else -1
    core = VertexSet.from_mask(in_p if sgn == 1 else in_m, deg)
    if core.volume != (vol_p if sgn == 1 else vol_m):
        raise InvariantViolation("light case volume bookkeeping mismatch")
    # X = B(U, step): one multi-source search in the full instance
    ptr, nbr, eid, wk = adjacency(wv, sgn)
    dist, done, par = K.new_workspace(g.n)
    order, _, _, bad = K.dijkstra_kernel(ptr, nbr, eid, wk, wv.full_mask, core.members,
                                         np.zeros(len(core), dtype=np.int64),
                                         np.int64(math.floor(step)), np.int64(-1), dist, done, par)
    if bad:
        raise InvariantViolation("negative edge met while padding the light core")
    x = VertexSet(g.n, order, deg)
    ymask = wv.full_mask.astype(bool) & ~core.mask()
    y = VertexSet.from_mask(ymask, deg)
    dec = Decomposition([x, y], [VOLUME_BOUNDED, VOLUME_BOUNDED], eps, delta, 12 * delta, m,
                        step, LightProvenance(sgn, core, rec, step), int(work))
    _check_sizes(dec)
    return dec


def heavy_case(wv: WeightView, s: int, delta, eps, *, check: bool = True,
               runs=None) -> Decomposition:
    """Heavy case around ``s``: three parts cut along an out-ball and an in-ball.

    The size guarantees need both balls of radius ``delta`` around ``s`` to be
    heavier than ``m``; ``check=False`` skips the size guards so the cut can be
    inspected on other inputs.  ``runs`` (out- and in-:class:`SourceRun` from
    ``s``) replace the two ball growths.
    """
    eps, delta = _as_fraction(eps), Fraction(delta)
    _check_eps(eps)
    verts, deg, m = _instance(wv)
    g = wv.graph
    out = inn = None
    if runs is not None and runs[0].source == s:
        out = ball_from_run(runs[0], deg, delta, delta, eps, m)
        inn = ball_from_run(runs[1], deg, delta, delta, eps, m)
    if out is None or inn is None:
        ws = BallWorkspace(g.n)
        out = grow_ball(wv, s, 1, delta, delta, eps, m=m, workspace=ws)
        inn = grow_ball(wv, s, -1, delta, delta, eps, m=m, workspace=ws)
    step = out.step
    pp, pc = out.padded.mask(), out.ball.mask()
    mp, mc = inn.padded.mask(), inn.ball.mask()
    vmask = wv.full_mask.astype(bool)
    x = VertexSet.from_mask(pp & mp, deg)
    y = VertexSet.from_mask(pp & ~mc, deg)
    z = VertexSet.from_mask(vmask & ~pc, deg)
    prov = HeavyProvenance(int(s), out.radius, inn.radius, out.ball, out.padded, inn.ball,
                           inn.padded)
    dec = Decomposition([x, y, z], [WEAK_DIAMETER, VOLUME_BOUNDED, VOLUME_BOUNDED], eps, delta,
                        12 * delta, m, step, prov, out.work + inn.work)
    if check:
        _check_sizes(dec)
    return dec


def decompose(wv: WeightView, d, eps, *, runs=None) -> Decomposition:
    """Padded decomposition of the view's instance at scale ``d`` (``delta = d/12``).

    ``runs`` are optional complete out- and in-:class:`SourceRun` from the
    lowest visible vertex; the result is the same, computed with less work.
    """
    d = Fraction(d)
    if d <= 0:
        raise ValueError("d must be positive")
    delta = d / 12
    res = light_case(wv, delta, eps, runs=runs)
    if isinstance(res, HeavyTrigger):
        res = heavy_case(wv, res.source, delta, eps, runs=runs)
    res.d = d
    return res


# -- path coloring ---------------------------------------------------------


@dataclass
class ColoredPath:
    vertices: list[int]
    weight: int
    colors: list[int]  # 1-based part indices
    boundary: int


def _scan(seq, core, outer, inside, outside):
    """Color ``seq`` front to back: from each core vertex, the maximal run
    inside ``outer`` gets ``inside``; everything else gets ``outside``."""
    colors = [outside] * len(seq)
    i = 0
    while i < len(seq):
        if seq[i] in core:
            while i < len(seq) and seq[i] in outer:
                colors[i] = inside
                i += 1
        else:
            i += 1
    return colors


def _coloring(dec: Decomposition, verts):
    prov = dec.provenance
    if isinstance(prov, LightProvenance):
        core = set(prov.core)
        outer = set(dec.parts[0])
        if prov.direction == 1:
            return _scan(verts, core, outer, 1, 2)
        return _scan(verts[::-1], core, outer, 1, 2)[::-1]
    # yellow (0) / green (3) on the out-balls, then red/blue inside each yellow run
    yg = _scan(verts, set(prov.out_core), set(prov.out_padded), 0, 3)
    in_core, in_padded = set(prov.in_core), set(prov.in_padded)
    colors = list(yg)
    i = 0
    while i < len(verts):
        if yg[i] != 0:
            i += 1
            continue
        j = i
        while j < len(verts) and yg[j] == 0:
            j += 1
        seg = verts[i:j]
        colors[i:j] = _scan(seg[::-1], in_core, in_padded, 1, 2)[::-1]
        i = j
    return colors


def boundary_bound(dec: Decomposition) -> int:
    """``8 * ceil(12 * log m / eps)`` color changes for any path of weight <= d."""
    return 8 * math.ceil(12 * log_m(dec.m) / dec.eps)


def color_path(dec: Decomposition, path, weight=None) -> ColoredPath:
    """Color a walk by part membership with few color changes.

    ``path`` is a :class:`Path` or a vertex sequence (then pass ``weight``).
    """
    if isinstance(path, Path):
        verts, weight = list(path.vertices), path.weight
    else:
        verts = [int(v) for v in path]
    colors = _coloring(dec, verts)
    for v, c in zip(verts, colors):
        if v not in dec.parts[c - 1]:
            raise InvariantViolation(f"vertex {v} colored {c} is not in part {c}")
    boundary = sum(1 for a, b in zip(colors, colors[1:]) if a != b)
    if weight is not None and weight <= dec.d and boundary > boundary_bound(dec):
        raise InvariantViolation(f"{boundary} boundary edges exceed {boundary_bound(dec)}")
    return ColoredPath(verts, weight, colors, boundary)


# -- verification ----------------------------------------------------------


@dataclass
class VerificationReport:
    parts: list[dict] = field(default_factory=list)
    coverage: dict = field(default_factory=dict)
    paths: list[dict] = field(default_factory=list)

    @property
    def property1(self) -> bool:
        return all(p["ok"] for p in self.parts)

    @property
    def property2(self) -> bool:
        return self.coverage.get("ok", False)

    @property
    def property3(self) -> bool:
        return all(p["ok"] for p in self.paths)

    @property
    def ok(self) -> bool:
        return self.property1 and self.property2 and self.property3

    def to_dict(self) -> dict:
        return {"ok": self.ok, "property1": self.parts, "property2": self.coverage,
                "property3": self.paths}


def weak_diameter(wv: WeightView, members, cap=None):
    """Max ``d(u, v)`` over ``u, v`` in ``members`` measured in the whole view.

    With ``cap`` the search stops early and returns ``None`` once some pair is
    farther apart than ``cap``.
    """
    members = np.asarray(members, dtype=np.int64)
    worst = 0
    for u in members.tolist():
        sp = dijkstra(wv, int(u), radius_cap=cap)
        dist = sp.dist[members]
        if np.any(dist == K.INF):
            return None
        worst = max(worst, int(dist.max()))
    return worst


def verify_decomposition(dec: Decomposition, wv: WeightView, sample_paths=(), *,
                         diameter_limit: int = 256) -> VerificationReport:
    """Check the three decomposition properties and report every failure."""
    rep = VerificationReport()
    m = dec.m
    half = math.floor(dec.d / 2)
    for i, (p, kind) in enumerate(zip(dec.parts, dec.kinds), start=1):
        entry = {"part": i, "kind": kind, "volume": p.volume,
                 "volume_ok": _VOL_DEN * p.volume <= _VOL_NUM * m, "diameter": None, "note": ""}
        if entry["volume_ok"]:
            entry["ok"] = True
        elif len(p) <= diameter_limit:
            diam = weak_diameter(wv, p.members, cap=half)
            entry["diameter"] = diam
            entry["ok"] = diam is not None
            if diam is None:
                entry["note"] = "some pair is farther apart than d/2"
        else:
            entry["ok"] = kind == WEAK_DIAMETER
            entry["note"] = "too large to measure the weak diameter; kind trusted"
        rep.parts.append(entry)
    union = np.zeros(wv.graph.n, dtype=bool)
    for p in dec.parts:
        union[p.members] = True
    missing = np.flatnonzero(wv.full_mask.astype(bool) & ~union).tolist()
    extra = np.flatnonzero(union & ~wv.full_mask.astype(bool)).tolist()
    bound = dec.overlap_bound()
    rep.coverage = {
        "missing": missing,
        "extra": extra,
        "volume_sum": dec.volume_sum,
        "bound": float(bound),
        "ok": not missing and not extra and dec.volume_sum <= bound,
    }
    for path in sample_paths:
        try:
            cp = color_path(dec, path)
            rep.paths.append({"length": len(cp.vertices), "weight": cp.weight,
                              "boundary": cp.boundary, "ok": True})
        except InvariantViolation as exc:
            rep.paths.append({"length": len(path.vertices), "weight": path.weight,
                              "boundary": None, "ok": False, "error": str(exc)})
    return rep


def sample_paths(wv: WeightView, d, count: int, seed: int = 0) -> list[Path]:
    """``count`` shortest paths of weight ``<= d`` between seeded random pairs.

    Each draw picks a source uniformly, then a target uniformly among the
    vertices within ``d`` of it.
    """
    rng = np.random.default_rng(seed)
    verts = wv.vertices()
    cap = math.floor(d)
    g = wv.graph
    out = []
    for _ in range(count):
        u = int(verts[rng.integers(verts.shape[0])])
        sp = dijkstra(wv, u, radius_cap=cap)
        v = int(sp.order[rng.integers(sp.order.shape[0])])
        edges = sp.path_edges(g, v)
        vs = [u] + [int(g.heads[e]) for e in edges]
        out.append(Path(vs, edges, int(sp.dist[v])))
    return out
