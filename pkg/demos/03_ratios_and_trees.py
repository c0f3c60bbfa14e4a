"""Worst observed ratios over random instances, and properly colored trees."""

import random
from fractions import Fraction

from pcforest import brute_maxpf, brute_maxpt, solve_general, solve_maxpt
from pcforest.instances import gen_complete, gen_random
from pcforest.solvers import ratio_guarantee

rng = random.Random(0)
worst = {}
for _ in range(300):
    k = rng.choice([2, 3, 4])
    n = rng.randint(3, 8)
    g = gen_random(n, rng.randint(1, min(16, k * n * (n - 1) // 2)), k, False, rng.randrange(10**9))
    opt = brute_maxpf(g).optimum
    if opt:
        ratio = Fraction(solve_general(g).size, opt)
        key = ratio_guarantee("general", g)
        worst[key] = min(worst.get(key, Fraction(1)), ratio)
for bound, seen in sorted(worst.items()):
    print(f"guarantee {bound}: worst observed {seen}")

# Trees: n = 9 is still solved exactly; forcing the partition branch shows
# what the approximation returns on the same graph.
g = gen_complete(9, 3, seed=11)
print("max tree:", brute_maxpt(g).optimum)
print("exact branch:", solve_maxpt(g).size)
forced = solve_maxpt(g, force_approx=True)
print(f"partition branch: {forced.size} via {forced.branch}")
