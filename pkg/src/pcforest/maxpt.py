"""Maximum properly colored trees in complete multigraphs.

Small instances are solved exactly.  Larger ones start from a vertex
partition V1 ∪ V2 where G[V1] has a properly colored spanning tree F1 and F2
is an optimal tree of G[V2]; F1 is then extended into V2 by a bipartite
matching, and the better of the extension and F2 is returned.  The partition
comes from a pluggable oracle.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Iterable, NamedTuple

from .graph import ColoredMultigraph, Edge, SimpleGraph, components, verify_pc_forest
from .matching import max_matching
from .oracle import brute_maxpt
from .solvers import PreconditionError, SolveReport

__all__ = [
    "Partition",
    "PartitionOracle",
    "BipartiteH",
    "prune_parallel",
    "induced",
    "epsilon_threshold",
    "below_threshold",
    "exhaustive_partition",
    "partition_from_vertices",
    "build_bipartite_H",
    "forest_from_H_matching",
    "solve_maxpt",
    "guarantee_holds",
]


class Partition(NamedTuple):
    V1: frozenset[int]
    V2: frozenset[int]
    F1: tuple[int, ...]
    F2: tuple[int, ...]


PartitionOracle = Callable[[ColoredMultigraph], Partition]


def prune_parallel(g: ColoredMultigraph) -> ColoredMultigraph:
    """Keep at most n edges (the lowest ids) between each vertex pair."""
    kept: dict[tuple[int, int], int] = {}
    out = []
    for e in sorted(g.edges):
        pair = (min(e.u, e.v), max(e.u, e.v))
        if kept.get(pair, 0) < g.n:
            kept[pair] = kept.get(pair, 0) + 1
            out.append(e)
    if len(out) == g.m:
        return g
    return ColoredMultigraph(g.n, tuple(out), g.k, g.simple)


def induced(g: ColoredMultigraph, vertices: Iterable[int]) -> tuple[ColoredMultigraph, list[int]]:
    """G[V'] relabeled onto 1..|V'| in increasing order; edge ids are kept.

    Returns the graph and the list mapping new labels (1-based) to old ones.
    """
    old = sorted(set(vertices))
    new = {v: i for i, v in enumerate(old, start=1)}
    es = tuple(
        Edge(e.id, new[e.u], new[e.v], e.color)
        for e in g.edges
        if e.u in new and e.v in new
    )
    return ColoredMultigraph(len(old), es, g.k, g.simple), old


def epsilon_threshold(eps: Fraction) -> Fraction:
    return (eps * eps + 9 * eps + 18) / (eps * eps)


def below_threshold(n: int, eps: Fraction) -> bool:
    """n < (eps² + 9eps + 18)/eps², compared exactly."""
    return n * eps * eps < eps * eps + 9 * eps + 18


def _max_tree_on(g: ColoredMultigraph, vertices: Iterable[int]) -> tuple[int, ...]:
    vs = list(vertices)
    if len(vs) <= 1:
        return ()
    sub, _ = induced(g, vs)
    return brute_maxpt(sub, cap=max(400, sub.m)).witness


def _spanning_pc_tree(g: ColoredMultigraph, vertices: Iterable[int]) -> tuple[int, ...] | None:
    vs = list(vertices)
    tree = _max_tree_on(g, vs)
    return tree if len(tree) == max(len(vs) - 1, 0) else None


def partition_from_vertices(V1: Iterable[int]) -> PartitionOracle:
    """Oracle that uses a caller-chosen V1 and solves both sides exhaustively."""
    chosen = frozenset(V1)

    def oracle(g: ColoredMultigraph) -> Partition:
        if not chosen <= set(g.vertices):
            raise ValueError(f"partition vertices {sorted(chosen - set(g.vertices))} not in graph")
        F1 = _spanning_pc_tree(g, chosen)
        if F1 is None:
            raise ValueError(f"G[V1] has no properly colored spanning tree for V1={sorted(chosen)}")
        V2 = frozenset(g.vertices) - chosen
        return Partition(chosen, V2, F1, _max_tree_on(g, V2))

    return oracle


def exhaustive_partition(g: ColoredMultigraph, max_n: int = 9) -> Partition:
    """V1 = lexicographically first largest vertex set spanned by a properly colored tree."""
    if g.n > max_n:
        raise ValueError(f"exhaustive partition search is limited to n <= {max_n}, got {g.n}")
    for size in range(g.n, 0, -1):
        for S in itertools.combinations(g.vertices, size):
            F1 = _spanning_pc_tree(g, S)
            if F1 is not None:
                V1 = frozenset(S)
                V2 = frozenset(g.vertices) - V1
                return Partition(V1, V2, F1, _max_tree_on(g, V2))
    return Partition(frozenset(), frozenset(), (), ())


def _check_partition(g: ColoredMultigraph, p: Partition) -> None:
    if p.V1 & p.V2 or p.V1 | p.V2 != frozenset(g.vertices):
        raise ValueError("oracle sets V1, V2 do not partition V")
    for name, part, F in (("F1", p.V1, p.F1), ("F2", p.V2, p.F2)):
        if not verify_pc_forest(g, F).valid:
            raise ValueError(f"oracle {name} is not properly colored and acyclic")
        if len(components(g, F)) > 1:
            raise ValueError(f"oracle {name} is not connected")
        if any(g.edge(e).u not in part or g.edge(e).v not in part for e in F):
            raise ValueError(f"oracle {name} leaves its side of the partition")
    if len(p.F1) != max(len(p.V1) - 1, 0):
        raise ValueError("oracle F1 does not span V1")


@dataclass(frozen=True)
class BipartiteH:
    S: tuple[tuple[int, int], ...]  # (vertex of V1, free color)
    T: tuple[int, ...]  # vertices of V2
    W: tuple[tuple[tuple[int, int], int, int], ...]  # ((v, i), u, edge id of uv)

    def as_simple_graph(self) -> SimpleGraph:
        """Integer-labeled copy for the matching engine; edge ids are the G edge ids."""
        s_label = {s: i for i, s in enumerate(self.S, start=1)}
        t_label = {t: len(self.S) + i for i, t in enumerate(self.T, start=1)}
        return SimpleGraph(
            tuple(range(1, len(self.S) + len(self.T) + 1)),
            tuple((eid, s_label[s], t_label[u]) for s, u, eid in self.W),
        )


def build_bipartite_H(
    g: ColoredMultigraph, V1: Iterable[int], V2: Iterable[int], F1: Iterable[int]
) -> BipartiteH:
    v1, v2 = frozenset(V1), frozenset(V2)
    F1 = tuple(F1)
    if not verify_pc_forest(g, F1).valid or len(components(g, F1)) > 1:
        raise ValueError("F1 is not a properly colored tree")
    if any(g.edge(e).u not in v1 or g.edge(e).v not in v1 for e in F1):
        raise ValueError("F1 leaves V1")
    busy = {(x, g.edge(e).color) for e in F1 for x in (g.edge(e).u, g.edge(e).v)}
    S = tuple((v, i) for v in sorted(v1) for i in range(1, g.k + 1) if (v, i) not in busy)
    W = []
    for e in g.edges:
        for v, u in ((e.u, e.v), (e.v, e.u)):
            if v in v1 and u in v2 and (v, e.color) not in busy:
                W.append(((v, e.color), u, e.id))
    return BipartiteH(S, tuple(sorted(v2)), tuple(W))


def forest_from_H_matching(H: BipartiteH, matching: Iterable[int]) -> tuple[int, ...]:
    """Edges of G picked by a matching of H (given by edge id)."""
    by_id = {eid: (s, u) for s, u, eid in H.W}
    seen_s, seen_t = set(), set()
    out = []
    for eid in matching:
        if eid not in by_id:
            raise ValueError(f"edge {eid} is not an edge of H")
        s, u = by_id[eid]
        if s in seen_s or u in seen_t:
            raise ValueError("edge set is not a matching of H")
        seen_s.add(s)
        seen_t.add(u)
        out.append(eid)
    return tuple(sorted(out))


def _tree_report(g: ColoredMultigraph, tree: Iterable[int], branch: str) -> SolveReport:
    ids = tuple(sorted(tree))
    if not verify_pc_forest(g, ids).valid or len(components(g, ids)) > 1:
        raise AssertionError(f"max-PT {branch} branch produced an invalid tree")
    bounds = (("vertices-minus-one", max(g.n - 1, 0)),)
    return SolveReport(ids, len(ids), bounds, "maxpt", branch=branch)


def solve_maxpt(
    g: ColoredMultigraph,
    eps: Fraction | int | str = 2,
    oracle: PartitionOracle | None = None,
    force_approx: bool = False,
) -> SolveReport:
    """Properly colored tree with size at least OPT / sqrt((2+eps)(n-1)).

    ``force_approx`` runs the partition branch even below the size threshold
    where exhaustive search would normally be used.
    """
    eps = Fraction(eps)
    if eps <= 0:
        raise PreconditionError(f"eps must be positive, got {eps}")
    if not g.is_complete():
        raise PreconditionError("instance is not a complete multigraph")
    h = prune_parallel(g)
    if below_threshold(h.n, eps) and not force_approx:
        return _tree_report(g, brute_maxpt(h, cap=max(400, h.m)).witness, "exact")

    p = (oracle or exhaustive_partition)(h)
    _check_partition(h, p)
    if not p.V2:
        return _tree_report(g, p.F1, "F1")
    if not p.V1:
        return _tree_report(g, p.F2, "F2")
    H = build_bipartite_H(h, p.V1, p.V2, p.F1)
    F12 = forest_from_H_matching(H, max_matching(H.as_simple_graph()))
    if len(p.F1) + len(F12) >= len(p.F2):
        return _tree_report(g, p.F1 + F12, "F1+F12")
    return _tree_report(g, p.F2, "F2")


def guarantee_holds(size: int, optimum: int, n: int, eps: Fraction | int | str = 2) -> bool:
    """size * sqrt((2+eps)(n-1)) >= optimum, via squares of nonnegative rationals."""
    eps = Fraction(eps)
    return size * size * (2 + eps) * max(n - 1, 0) >= optimum * optimum
