"""Properly colored forests on a small multigraph.

Builds an instance by hand, checks a few edge sets, then compares the
approximation algorithms with the exact optimum.
"""

from pcforest import (
    ColoredMultigraph,
    brute_maxpf,
    max_coverable_set,
    solve_general,
    solve_union_matchings,
    verify_pc_forest,
)

# A 5-cycle whose edges alternate red (1) and blue (2), plus a green chord
# and a parallel green copy of one cycle edge.
g = ColoredMultigraph.from_edges(
    5,
    [(1, 2, 1), (2, 3, 2), (3, 4, 1), (4, 5, 2), (5, 1, 1), (1, 3, 3), (1, 2, 3)],
)
print(f"{g.n} vertices, {g.m} edges, colors {sorted(g.colors_used())}")

for ids in [(1, 2, 3, 4), (1, 5), (1, 7)]:
    print(f"edges {ids}: {verify_pc_forest(g, ids)}")

cert = max_coverable_set(g)
print(f"largest set covered by one matching per color: {sorted(cert.U)}")

best = brute_maxpf(g)
report = solve_general(g)
print(f"{report.algorithm}: size {report.size}, optimum {best.optimum}, "
      f"upper bounds {dict(report.upper_bounds)}")

# The union-of-matchings algorithm needs a simple graph; drop the parallel edge.
simple = g.subgraph([1, 2, 3, 4, 5, 6])
print(f"simplek on the simple part: {solve_union_matchings(simple).size} "
      f"(optimum {brute_maxpf(simple).optimum})")
