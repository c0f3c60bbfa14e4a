"""Exact maxima on complete 2-colored multigraphs.

On these instances the solver is exact, which we confirm against
exhaustive search over a batch of seeded graphs.
"""

from pcforest import brute_maxpf, solve_complete_2color
from pcforest.instances import gen_complete

mismatches = 0
for seed in range(200):
    g = gen_complete(6, 2, seed, max_parallel=1 + seed % 2)
    got = solve_complete_2color(g).size
    mismatches += got != brute_maxpf(g, cap=64).optimum
print(f"200 instances, {mismatches} differ from the exhaustive optimum")

g = gen_complete(7, 2, seed=3)
r = solve_complete_2color(g)
print(f"n=7 example: forest {r.forest} of size {r.size}")
