"""
Negative weights: distances or a cycle
======================================

scale_solve returns exact distances from a source, or a negative cycle as a
certificate.  Underneath, each scaling round halves the most negative weight
with a recursive decomposition and a phased Bellman-Ford/Dijkstra on an
auxiliary graph.
"""

from detsssp import (
    Distances,
    SolverConfig,
    bellman_ford,
    generate,
    hybrid_bfd,
    scale_solve,
    solve_iteration,
)
from detsssp.generators import planted_negative_cycle

g = generate("uniform-random", {"n": 200, "m": 800, "lo": -50, "hi": 50, "hidden_potential": 50},
             seed=2)
out = scale_solve(g, 0)
print(type(out).__name__, out.dist[:10])
assert out.dist == bellman_ford(g, 0).dist

# a planted cycle comes back as a closed walk of negative weight
h, cycle = planted_negative_cycle(100, 400, seed=4)
res = scale_solve(h, cycle[0])
print("cycle:", res.vertices, "weight", res.weight)

# one scaling round on its own: given weights >= -W (W a power of two), a
# potential that makes every weight >= -W/2
pot = solve_iteration(g, 64)
print("one round gives a potential:", type(pot).__name__)

# the phased search with a budget of negative edges per path
small = generate("uniform-random", {"n": 12, "m": 30, "lo": -5, "hi": 9}, seed=8)
r = hybrid_bfd(small, 0, eta=3)
print(type(r).__name__, "phases" if hasattr(r, "phases") else "weight", getattr(r, "phases", None) or r.weight)

# recording every recursion node shows the shape of the computation
rec = []
scale_solve(g, 0, SolverConfig(base_threshold=64, recorder=rec))
print(len(rec), "recursion nodes; kinds:", sorted({r["kind"] for r in rec}))

# results serialize the same way the CLI writes them
print(Distances(out.dist[:3], out.parent[:3]).to_json())
