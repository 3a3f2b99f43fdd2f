"""Deterministic negative-weight single-source shortest paths.

Integer-weighted directed graphs, shortest paths from one source or a
negative-cycle certificate, built on a deterministic padded decomposition.
The main entry points:

>>> from detsssp import Graph, scale_solve
>>> g = Graph.from_edges(3, [(0, 1, 4), (1, 2, -3), (0, 2, 2)])
>>> scale_solve(g, 0).dist
[0, 4, 1]
"""

from .ballgrow import BallResult, grow_ball
from .decomposition import (
    Decomposition,
    color_path,
    decompose,
    sample_paths,
    verify_decomposition,
)
from .dijkstra import dijkstra, shortest_path_between
from .dimacs import load_dimacs, loads_dimacs, read_dimacs_file, save_dimacs, write_dimacs_file
from .errors import DimacsError, GraphBoundsError, InvariantViolation
from .generators import generate
from .graph import Graph, Potential, Transform, VertexSet, WeightView, view
from .oracle import bellman_ford, k_neg_shortest
from .outcome import Distances, NegativeCycle
from .solver import SolverConfig, hybrid_bfd, scale_solve, solve_iteration

__all__ = [
    "BallResult",
    "Decomposition",
    "DimacsError",
    "Distances",
    "Graph",
    "GraphBoundsError",
    "InvariantViolation",
    "NegativeCycle",
    "Potential",
    "SolverConfig",
    "Transform",
    "VertexSet",
    "WeightView",
    "bellman_ford",
    "color_path",
    "decompose",
    "dijkstra",
    "generate",
    "grow_ball",
    "hybrid_bfd",
    "k_neg_shortest",
    "load_dimacs",
    "loads_dimacs",
    "read_dimacs_file",
    "sample_paths",
    "save_dimacs",
    "scale_solve",
    "shortest_path_between",
    "solve_iteration",
    "verify_decomposition",
    "view",
    "write_dimacs_file",
]

__version__ = "0.1.0"
