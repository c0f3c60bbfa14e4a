import itertools

import pytest

from pcforest import ColoredMultigraph, SimpleGraph


def colored(n, triples, k=None, simple=False):
    """Graph from (u, v, color) triples; vertices may be given as letters a, b, c..."""
    def vid(x):
        return ord(x) - ord("a") + 1 if isinstance(x, str) else x

    return ColoredMultigraph.from_edges(n, [(vid(u), vid(v), c) for u, v, c in triples], k, simple)


def simple_graph(n, pairs):
    return SimpleGraph(tuple(range(1, n + 1)), tuple((i, u, v) for i, (u, v) in enumerate(pairs, 1)))


def all_matchings(edges):
    """Every matching of an edge list of (id, u, v) triples."""
    out = [()]
    for r in range(1, len(edges) + 1):
        for combo in itertools.combinations(edges, r):
            ends = [x for _, u, v in combo for x in (u, v)]
            if len(ends) == len(set(ends)):
                out.append(tuple(e[0] for e in combo))
    return out


@pytest.fixture
def c4_alternating():
    return colored(4, [(1, 2, 1), (2, 3, 2), (3, 4, 1), (4, 1, 2)])


ACCEPTANCE_LINES = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
