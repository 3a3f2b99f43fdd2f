"""
Reference oracles
=================

Two slow, obviously-correct solvers back the tests: Bellman-Ford with
cycle extraction, and a table D[k][v] of shortest walks that use at most k
negative edges.  Comparing against them is the quickest way to trust the
fast path on a new graph family.
"""

from detsssp import NegativeCycle, bellman_ford, generate, hybrid_bfd, k_neg_shortest, scale_solve
from detsssp._kernels import INF
from detsssp.solver import PathWitness

mismatches = 0
cycles = 0
for seed in range(200):
    g = generate("uniform-random", {"n": 15, "m": 45, "lo": -2, "hi": 8}, seed=seed)
    fast, slow = scale_solve(g, 0), bellman_ford(g, 0)
    if isinstance(slow, NegativeCycle):
        cycles += 1
        mismatches += not (isinstance(fast, NegativeCycle) and fast.weight < 0)
    else:
        mismatches += fast.dist != slow.dist
print(f"200 graphs, {cycles} with negative cycles, {mismatches} mismatches")

# the layered table explains what a phased search sees after k phases
g = generate("uniform-random", {"n": 8, "m": 20, "lo": -6, "hi": 6}, seed=11)
D = k_neg_shortest(g, 0, 3)
for k in range(4):
    print(k, D[k])

# the phased search agrees phase by phase, or hands back a witness walk that
# beats everything the table allows
r = hybrid_bfd(g, 0, eta=3, record=True)
if isinstance(r, PathWitness):
    print("witness of weight", r.weight, "ending at", r.endpoint)
else:
    labels = [[None if x >= INF else int(x) for x in row] for row in r.phase_labels]
    print("phase labels match the table:", labels[:4] == D.D[:len(labels[:4])])
