"""Command-line surface: ``generate``, ``solve``, ``decompose``, ``verify``, ``bench``.

Exit codes are part of the interface:

========  ==========================================================
0         success (``solve``: distances; ``verify``: report consistent)
1         input error (missing file, bad DIMACS, bad JSON, bad value)
2         ``solve`` found a negative cycle; argparse usage errors
3         ``verify`` mismatch; ``decompose`` report with a failed property
========  ==========================================================

Vertex ids on the command line and in JSON reports are 0-based, DIMACS
files are 1-based.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass, field
from fractions import Fraction

from .ballgrow import EPS0
from .bench import run_bench, write_csv
from .decomposition import decompose, sample_paths, verify_decomposition
from .dimacs import read_dimacs_file, save_dimacs, write_dimacs_file
from .errors import DimacsError, GraphBoundsError
from .generators import KINDS, generate
from .graph import Transform, view
from .oracle import bellman_ford
from .outcome import NegativeCycle, cheapest_edge, cycle_weight
from .solver import default_eps, scale_solve

__all__ = ["RunConfig", "main", "cmd_generate", "cmd_solve", "cmd_decompose", "cmd_verify",
           "cmd_bench"]

EXIT_OK = 0
EXIT_INPUT = 1
EXIT_CYCLE = 2
EXIT_MISMATCH = 3

DECOMPOSE_PATHS = 20


@dataclass
class RunConfig:
    """Parsed arguments of one invocation."""

    command: str
    input: str | None = None
    output: str | None = None
    seed: int = 0
    params: dict = field(default_factory=dict)
    source: int = 0
    eps: Fraction | None = None
    d: Fraction | None = None
    report: str | None = None
    sizes: list = field(default_factory=list)
    verify: bool = True

    def __post_init__(self):
        if self.eps is not None and not 0 < self.eps < EPS0:
            raise ValueError(f"epsilon must lie in (0, {EPS0})")


class _Fail(Exception):
    def __init__(self, code: int, message: str):
        super().__init__(message)
        self.code = code


def _dump(obj) -> str:
    return json.dumps(obj, sort_keys=True, separators=(",", ":")) + "\n"


def _emit(text: str, path: str | None) -> None:
    if path is None:
        sys.stdout.write(text)
        return
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(text)


def _load(path: str):
    try:
        return read_dimacs_file(path)
    except OSError as exc:
        raise _Fail(EXIT_INPUT, f"{path}: {exc.strerror or exc}") from None
    except (DimacsError, GraphBoundsError) as exc:
        raise _Fail(EXIT_INPUT, f"{path}: {exc}") from None


def cmd_generate(cfg: RunConfig) -> int:
    g = generate(cfg.params.pop("kind"), cfg.params, cfg.seed)
    if cfg.output is None:
        sys.stdout.write(save_dimacs(g))
    else:
        write_dimacs_file(g, cfg.output)
    return EXIT_OK


def cmd_solve(cfg: RunConfig) -> int:
    g = _load(cfg.input)
    if not 0 <= cfg.source < g.n:
        raise _Fail(EXIT_INPUT, f"source {cfg.source} outside 0..{g.n - 1}")
    out = scale_solve(g, cfg.source)
    report = {"source": cfg.source, "n": g.n, "m": g.m}
    report.update(out.to_dict())
    _emit(_dump(report), cfg.output)
    return EXIT_CYCLE if isinstance(out, NegativeCycle) else EXIT_OK


def cmd_decompose(cfg: RunConfig) -> int:
    g = _load(cfg.input)
    clamped = bool(g.m and g.weights.min() < 0)
    wv = view(g, Transform.SHIFT_CLAMP, shift=0) if clamped else view(g)
    eps = cfg.eps if cfg.eps is not None else default_eps(g.m)
    if cfg.d is None or cfg.d <= 0:
        raise _Fail(EXIT_INPUT, "--d must be positive")
    dec = decompose(wv, cfg.d, eps)
    report = {"clamped": clamped, "decomposition": dec.to_dict()}
    if clamped:
        report["note"] = "negative weights were clamped to 0 before decomposing"
    ok = True
    if cfg.verify:
        paths = sample_paths(wv, cfg.d, DECOMPOSE_PATHS, cfg.seed) if g.n else []
        rep = verify_decomposition(dec, wv, paths)
        report["verification"] = rep.to_dict()
        ok = rep.ok
    _emit(_dump(report), cfg.output)
    return EXIT_OK if ok else EXIT_MISMATCH


def _check_cycle(g, obj) -> str | None:
    verts = obj.get("cycle")
    if not isinstance(verts, list) or not verts:
        return "cycle is empty"
    if any(not isinstance(v, int) or not 0 <= v < g.n for v in verts):
        return "cycle vertex out of range"
    w = cycle_weight(g, verts)
    if w is None:
        return "cycle uses a missing edge"
    if w >= 0:
        return f"cycle weight {w} is not negative"
    if w != obj.get("weight"):
        return f"cycle weight is {w}, report says {obj.get('weight')}"
    return None


def _check_distances(g, obj, source) -> str | None:
    dist, parents = obj.get("distances"), obj.get("parents")
    if not isinstance(dist, list) or len(dist) != g.n:
        return "distances have the wrong length"
    truth = bellman_ford(g, source)
    if isinstance(truth, NegativeCycle):
        return f"graph has a negative cycle through {truth.vertices[0]}"
    for v, (a, b) in enumerate(zip(dist, truth.dist)):
        if a != b:
            return f"vertex {v}: distance {a}, expected {b}"
    if isinstance(parents, list) and len(parents) == g.n:
        for v, p in enumerate(parents):
            if p is None:
                continue
            if not isinstance(p, int) or not 0 <= p < g.n or dist[p] is None:
                return f"vertex {v}: bad parent {p}"
            e = cheapest_edge(g, p, v)
            if e < 0 or dist[p] + int(g.weights[e]) != dist[v]:
                return f"vertex {v}: parent {p} is not on a shortest path"
    return None


def cmd_verify(cfg: RunConfig) -> int:
    g = _load(cfg.input)
    try:
        with open(cfg.report, encoding="utf-8") as fh:
            obj = json.load(fh)
    except OSError as exc:
        raise _Fail(EXIT_INPUT, f"{cfg.report}: {exc.strerror or exc}") from None
    except json.JSONDecodeError as exc:
        raise _Fail(EXIT_INPUT, f"{cfg.report}: invalid JSON ({exc})") from None
    if not isinstance(obj, dict):
        raise _Fail(EXIT_INPUT, f"{cfg.report}: expected a JSON object")
    if "cycle" in obj:
        problem = _check_cycle(g, obj)
    else:
        source = obj.get("source", cfg.source)
        if not isinstance(source, int) or not 0 <= source < g.n:
            raise _Fail(EXIT_INPUT, f"{cfg.report}: bad source {source!r}")
        problem = _check_distances(g, obj, source)
    if problem:
        print(f"mismatch: {problem}", file=sys.stderr)
        return EXIT_MISMATCH
    print("consistent", file=sys.stderr)
    return EXIT_OK


def cmd_bench(cfg: RunConfig) -> int:
    rows = run_bench(cfg.sizes, seed=cfg.seed)
    if cfg.output is None:
        write_csv(rows, sys.stdout)
    else:
        with open(cfg.output, "w", encoding="utf-8", newline="") as fh:
            write_csv(rows, fh)
    return EXIT_OK


def _fraction(text: str) -> Fraction:
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError):
        raise argparse.ArgumentTypeError(f"not a number: {text!r}") from None


def _size(tok: str) -> int:
    tok = tok.strip()
    if "^" in tok:
        base, exp = tok.split("^", 1)
        return int(base) ** int(exp)
    return int(tok)


def _sizes(text: str) -> list[int]:
    try:
        sizes = [_size(t) for t in text.split(",") if t.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"bad size list: {text!r}") from None
    if not sizes or min(sizes) < 4:
        raise argparse.ArgumentTypeError("sizes must be integers >= 4")
    return sizes


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="detsssp", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True)

    g = sub.add_parser("generate", help="write a seeded random graph as DIMACS")
    g.add_argument("--kind", choices=KINDS, default="uniform-random")
    g.add_argument("--n", type=int, required=True)
    g.add_argument("--m", type=int, required=True)
    g.add_argument("--lo", type=int, help="minimum weight (uniform-random, clustered)")
    g.add_argument("--hi", type=int, help="maximum weight (uniform-random, clustered)")
    g.add_argument("--max-weight", type=int, help="non-negative-random, planted-negative-cycle")
    g.add_argument("--hidden-potential", type=int, help="uniform-random without negative cycles")
    g.add_argument("--cycle-length", type=int, help="planted-negative-cycle")
    g.add_argument("--bridges", type=int, help="clustered")
    g.add_argument("--bridge-weight", type=int, help="clustered")
    g.add_argument("--seed", type=int, default=0)
    g.add_argument("--out")

    s = sub.add_parser("solve", help="single-source shortest paths or a negative cycle")
    s.add_argument("input")
    s.add_argument("--source", type=int, default=0, help="0-based source vertex")
    s.add_argument("--out")

    d = sub.add_parser("decompose", help="padded decomposition with a verification report")
    d.add_argument("input")
    d.add_argument("--d", type=_fraction, required=True)
    d.add_argument("--epsilon", type=_fraction, help=f"must be below {EPS0}")
    d.add_argument("--out")

    v = sub.add_parser("verify", help="re-check a solve report against Bellman-Ford")
    v.add_argument("input")
    v.add_argument("report")

    b = sub.add_parser("bench", help="scaling benchmark as CSV")
    b.add_argument("--sizes", type=_sizes, default=_sizes("2^14,2^15,2^16,2^17,2^18"),
                   help="comma-separated edge counts, e.g. 2^14,2^15")
    b.add_argument("--seed", type=int, default=0)
    b.add_argument("--out")
    return p


_GEN_FLAGS = {
    "uniform-random": ("n", "m", "lo", "hi", "hidden_potential"),
    "non-negative-random": ("n", "m", "max_weight"),
    "clustered": ("n", "m", "lo", "hi", "bridges", "bridge_weight"),
    "planted-negative-cycle": ("n", "m", "max_weight", "cycle_length"),
}


def _config(parser, ns) -> RunConfig:
    cmd = ns.command
    if cmd == "generate":
        params = {k: getattr(ns, k) for k in _GEN_FLAGS[ns.kind] if getattr(ns, k) is not None}
        params["kind"] = ns.kind
        return RunConfig(cmd, output=ns.out, seed=ns.seed, params=params)
    if cmd == "solve":
        return RunConfig(cmd, input=ns.input, output=ns.out, source=ns.source)
    if cmd == "decompose":
        if ns.epsilon is not None and not 0 < ns.epsilon < EPS0:
            parser.error(f"--epsilon must lie in (0, {EPS0})")
        return RunConfig(cmd, input=ns.input, output=ns.out, eps=ns.epsilon, d=ns.d)
    if cmd == "verify":
        return RunConfig(cmd, input=ns.input, report=ns.report)
    return RunConfig(cmd, output=ns.out, seed=ns.seed, sizes=ns.sizes)


_COMMANDS = {
    "generate": cmd_generate,
    "solve": cmd_solve,
    "decompose": cmd_decompose,
    "verify": cmd_verify,
    "bench": cmd_bench,
}


def main(argv=None) -> int:
    parser = build_parser()
    ns = parser.parse_args(argv)
    cfg = _config(parser, ns)
    try:
        return _COMMANDS[cfg.command](cfg)
    except _Fail as exc:
        print(f"error: {exc}", file=sys.stderr)
        return exc.code
    except (ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
