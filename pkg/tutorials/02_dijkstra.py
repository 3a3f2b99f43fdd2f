"""
Non-negative shortest paths
===========================

Dijkstra with ties broken by vertex id, so the shortest-path tree is the same
on every run.  It accepts several labelled sources, a radius cap and either
edge direction.
"""

from detsssp import Transform, dijkstra, generate, shortest_path_between, view
from detsssp.dijkstra import UNREACHED

g = generate("non-negative-random", {"n": 12, "m": 40, "max_weight": 9}, seed=7)
res = dijkstra(view(g), 0)
print("dist:", res.dist)
print("settle order:", res.order)

# the parent array holds edge ids; walk them back to recover a path
v = int(res.order[-1])
path = [v]
while res.parent[v] >= 0:
    v = int(g.tails[res.parent[v]])
    path.append(v)
print("tree path to the last settled vertex:", path[::-1])

# only vertices within the cap are reported
capped = dijkstra(view(g), 0, radius_cap=6)
print("within 6:", [u for u in range(g.n) if capped.dist[u] != UNREACHED])

# "-" searches along reversed edges: distances *to* vertex 0
print("to 0:", dijkstra(view(g), 0, direction="-").dist)

# several sources with starting labels
print("two sources:", dijkstra(view(g), [(0, 0), (5, 2)]).dist)

# a single pair, with the path itself
p = shortest_path_between(view(g), 0, 3)
print("0 -> 3:", p)

# negative graphs can be searched after clamping
neg = generate("uniform-random", {"n": 12, "m": 40, "lo": -4, "hi": 4}, seed=1)
print(dijkstra(view(neg, Transform.SHIFT_CLAMP, shift=neg.W // 2), 0).dist)
