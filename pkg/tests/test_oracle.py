import random

import pytest

from pcforest import brute_maxpf, brute_maxpt, brute_opt_restricted, max_coverable_set, verify_pc_forest
from pcforest.instances import gen_random
from pcforest.oracle import CapExceeded, brute_longest_dipath, brute_max_linear_forest, brute_maxpf_bitmask

from conftest import colored, simple_graph


def test_maxpf_examples(c4_alternating):
    assert brute_maxpf(colored(3, [], k=1)).optimum == 0
    assert brute_maxpf(colored(3, [(1, 2, 1), (2, 3, 1)])).optimum == 1
    r = brute_maxpf(c4_alternating)
    assert r.optimum == 3 and verify_pc_forest(c4_alternating, r.witness).valid
    assert brute_maxpf_bitmask(c4_alternating).optimum == 3


def test_cap():
    g = gen_random(8, 25, 4, False, 1)
    with pytest.raises(CapExceeded):
        brute_maxpf(g)
    assert brute_maxpf(g, cap=25).optimum <= 7


def test_restricted_examples():
    g = gen_random(7, 12, 3, False, 3)
    assert brute_opt_restricted(g, g.vertices).optimum == brute_maxpf(g).optimum
    assert brute_opt_restricted(g, []).optimum == 0
    U = max_coverable_set(g).U
    assert brute_opt_restricted(g, U).optimum == brute_maxpf(g).optimum


def test_maxpt_examples():
    assert brute_maxpt(colored(2, [(1, 2, 1)])).witness == (1,)
    assert brute_maxpt(colored(3, [(1, 2, 1), (2, 3, 1)])).optimum == 1
    assert brute_maxpt(colored(3, [(1, 2, 1), (2, 3, 2), (3, 1, 3)])).optimum == 2


@pytest.mark.parametrize("seed", range(3))
def test_two_strategies_agree(seed):
    rng = random.Random(seed)
    for _ in range(70):
        n, k = rng.randint(1, 7), rng.randint(1, 4)
        g = gen_random(n, min(rng.randint(0, 14), k * n * (n - 1) // 2), k, False, rng.randrange(10**6))
        a, b = brute_maxpf(g), brute_maxpf_bitmask(g)
        assert a.optimum == b.optimum
        assert verify_pc_forest(g, a.witness).valid and verify_pc_forest(g, b.witness).valid


def test_adding_an_edge_never_lowers_the_optimum():
    rng = random.Random(9)
    for _ in range(80):
        g = gen_random(6, 12, 3, False, rng.randrange(10**6))
        keep = [e.id for e in g.edges if rng.random() < 0.6]
        sub = g.subgraph(keep)
        extra = next((e.id for e in g.edges if e.id not in keep), None)
        if extra is not None:
            assert brute_maxpf(g.subgraph(keep + [extra])).optimum >= brute_maxpf(sub).optimum


def test_maxpt_matches_exhaustive_trees():
    """Tree optimum equals the largest connected valid subset found by subset enumeration."""
    from itertools import combinations
    from pcforest import components

    rng = random.Random(4)
    for _ in range(60):
        n = rng.randint(2, 6)
        g = gen_random(n, min(rng.randint(1, 9), 3 * n * (n - 1) // 2), 3, False, rng.randrange(10**6))
        best = 0
        ids = [e.id for e in g.edges]
        for r in range(len(ids), 0, -1):
            if any(verify_pc_forest(g, c).valid and len(components(g, c)) == 1 for c in combinations(ids, r)):
                best = r
                break
        assert brute_maxpt(g).optimum == best


def test_linear_forest_and_dipath():
    star = simple_graph(4, [(1, 2), (1, 3), (1, 4)])
    assert brute_max_linear_forest(star).optimum == 2
    tri = simple_graph(3, [(1, 2), (2, 3), (1, 3)])
    assert brute_max_linear_forest(tri).optimum == 2
    assert brute_longest_dipath(3, [(1, 2), (2, 3), (3, 1)]).optimum == 2
    assert brute_longest_dipath(3, []).optimum == 0
