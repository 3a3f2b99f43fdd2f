"""Scaling benchmark: wall time and recursion shape over doubling sizes."""

from __future__ import annotations

import csv
import gc
import time
from collections import defaultdict

from .generators import uniform_random
from .solver import SolverConfig, scale_solve

__all__ = ["FIELDS", "bench_graph", "bench_row", "run_bench", "write_csv", "warm_up"]

FIELDS = ["n", "m", "W", "wall_time", "recursion_depth", "total_recursive_edges",
          "max_level_edges", "iterations", "outcome"]


def bench_graph(m: int, W: int, seed: int):
    """``n = m/4`` uniform-random graph, negative edges down to ``-W`` and no
    negative cycle (hidden potential)."""
    return uniform_random(max(m // 4, 2), m, 0, W, hidden_potential=W, seed=seed)


def bench_row(m: int, W: int = 1 << 10, seed: int = 0) -> dict:
    g = bench_graph(m, W, seed)
    rec = []
    # collector pauses depend on whatever else the process holds, not on m
    gc.collect()
    gc.disable()
    try:
        t0 = time.perf_counter()
        out = scale_solve(g, 0, SolverConfig(recorder=rec))
        wall = time.perf_counter() - t0
    finally:
        gc.enable()
    level = defaultdict(int)
    for r in rec:
        level[r["iteration"], r["depth"]] += r["m"]
    return {
        "n": g.n,
        "m": g.m,
        "W": g.W,
        "wall_time": round(wall, 4),
        "recursion_depth": max((r["depth"] for r in rec), default=0),
        "total_recursive_edges": sum(r["m"] for r in rec),
        "max_level_edges": max(level.values(), default=0),
        "iterations": len({r["iteration"] for r in rec}),
        "outcome": "cycle" if hasattr(out, "weight") else "distances",
    }


def warm_up():
    """Compile every kernel once so timings exclude JIT cost."""
    bench_row(1 << 10)
    scale_solve(bench_graph(1 << 13, 1 << 4, 1), 0, SolverConfig(base_threshold=64))


def run_bench(sizes, W: int = 1 << 10, seed: int = 0, warm: bool = True) -> list[dict]:
    if warm:
        warm_up()
    return [bench_row(int(m), W, seed) for m in sizes]


def write_csv(rows, fh) -> None:
    w = csv.DictWriter(fh, fieldnames=FIELDS, lineterminator="\n")
    w.writeheader()
    for r in rows:
        w.writerow(r)
