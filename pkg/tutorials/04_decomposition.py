"""
Padded decomposition
====================

decompose splits a non-negative graph into at most three overlapping parts.
Each part either has small volume or small weak diameter, every vertex is
covered, and a short path crosses few part boundaries.  The same input always
gives the same parts.
"""

from fractions import Fraction

from detsssp import color_path, decompose, generate, sample_paths, verify_decomposition, view
from detsssp.decomposition import boundary_bound

g = generate("clustered", {"n": 64, "m": 256, "bridge_weight": 400}, seed=5)
wv = view(g)
eps = Fraction(1, 11)

# small d: the light case peels off small balls; large d: one heavy vertex
# reaches most of the graph and a ball around it becomes a low-diameter part
for d in (20, 2000, 20000):
    dec = decompose(wv, d, eps)
    kinds = ", ".join(f"{k}:{p.volume}" for k, p in zip(dec.kinds, dec.parts))
    print(f"d={d}: {dec.case} case, parts [{kinds}], total volume {dec.volume_sum} "
          f"of 2m={2 * g.m}")

# verification recomputes every promise with plain searches
dec = decompose(wv, 200, eps)
paths = sample_paths(wv, 200, 10, seed=1)
rep = verify_decomposition(dec, wv, paths)
print("verified:", rep.ok)

# colour a path by the part each vertex falls in and count the changes
for path in paths[:3]:
    cp = color_path(dec, path)
    print(cp.vertices, cp.colors, "boundary", cp.boundary, "<=", boundary_bound(dec))

# the JSON record is canonical
print(dec.to_json()[:160], "...")
