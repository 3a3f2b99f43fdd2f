"""
Graphs, weight views and DIMACS files
=====================================

A Graph is an immutable edge list with CSR adjacency in both directions.
Algorithms never copy weights around; they look at a graph through a
WeightView that shifts, clamps, reweights by a potential or hides vertices.
"""

import numpy as np

from detsssp import Graph, Potential, Transform, loads_dimacs, save_dimacs, view

# four vertices, one negative edge and a pair of parallel edges
g = Graph.from_edges(4, [(0, 1, 3), (1, 2, -2), (2, 3, 4), (0, 3, 9), (0, 3, 6)])
print(g.n, g.m, "W =", g.W)
print("out-edges of 0:", g.out_edges(0), "in-edges of 3:", g.in_edges(3))

# degree counts every incident edge; volumes are sums of degrees
print("degrees:", g.degree)

# shifting by W/2 and clamping at zero gives the non-negative graph that
# the decomposition works on
clamped = view(g, Transform.SHIFT_CLAMP, shift=g.W // 2)
print("clamped weights:", clamped.weights)

# a potential p turns w(u,v) into w(u,v) + p(u) - p(v)
p = Potential(np.array([0, 0, -2, 0]))
print("reduced weights:", view(g, Transform.POTENTIAL, potential=p).weights)
print("valid potential:", p.is_valid(view(g)))

# restricting a view hides vertices without copying the graph
inner = view(g).restrict([0, 1, 2])
print("visible edges in G[{0,1,2}]:", inner.visible_edges)

# DIMACS text round-trips exactly (vertices are 1-indexed on disk)
text = save_dimacs(g)
print(text)
assert save_dimacs(loads_dimacs(text)) == text
