"""
Growing balls with a light padding shell
========================================

grow_ball expands an out-ball (or in-ball) around a vertex through a fixed
grid of radii in [delta0, delta0 + delta].  It stops at the first radius
where one more grid step adds little volume, so the ball comes with a
slightly larger padded ball whose volume is at most (1 + 4 eps) times its own.
"""

from fractions import Fraction

from detsssp import generate, grow_ball, view

g = generate("non-negative-random", {"n": 60, "m": 240, "max_weight": 20}, seed=3)
eps = Fraction(1, 11)
wv = view(g)

# the grid is fine (delta over a few dozen steps), so on integer weights the
# first step often already adds nothing and the ball stops right at delta0
res = grow_ball(wv, 0, "+", 20, 40, eps)
print(res.outcome, "radius", res.radius, "grid step", res.step)
print("ball volume", res.ball.volume, "padded volume", res.padded.volume)
print("ratio", res.padded.volume / res.ball.volume, "<=", 1 + 4 * eps)

# the in-ball around the same vertex
back = grow_ball(wv, 0, "-", 20, 40, eps)
print("in-ball:", back.outcome, back.radius, len(back.ball))

# a volume budget turns an expensive growth into an early "overweight" answer
small = grow_ball(wv, 0, "+", 0, 5000, eps, volume_budget=20)
print("with a budget of 20:", small.outcome)

# the volume-by-radius table the stopping rule reads
hist = res.history(wv.degree)
for j in (1, len(hist) // 2, len(hist)):
    print(f"volume {j} reached at radius {hist.radius_for(j)}")
