"""Seeded instance generators and hardness-family constructions.

Each reduction returns a :class:`ReductionMap` holding the target graph, a
map from target edge ids to what they encode, a back-map that turns target
solutions into source solutions, and the optimum relation between the two.

Colors are fixed as red = 1, blue = 2 and the filler color = 3.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass, field
from typing import Callable, Iterable, Mapping, NamedTuple

from .graph import ColoredMultigraph, Edge, SimpleGraph, components, verify_pc_forest

RED, BLUE, THIRD = 1, 2, 3

__all__ = [
    "RED",
    "BLUE",
    "THIRD",
    "Digraph",
    "ReductionMap",
    "gen_random",
    "gen_complete",
    "gen_simple_graph",
    "gen_digraph",
    "reduce_lf_to_pcf2",
    "reduce_pcf2_to_pcf3_complete",
    "reduce_digraph_to_maxpt2",
    "gen_tsp12_doubling",
]


class Digraph(NamedTuple):
    n: int
    arcs: tuple[tuple[int, int], ...]  # arc j (1-based) is arcs[j-1]


# -- random generators -------------------------------------------------------


def gen_random(n: int, m: int, k: int, simple: bool = False, seed: int = 0) -> ColoredMultigraph:
    """m edges drawn uniformly without repetition; ids follow draw order."""
    if n < 0 or m < 0 or k < 1:
        raise ValueError("need n >= 0, m >= 0, k >= 1")
    pairs = list(itertools.combinations(range(1, n + 1), 2))
    rng = random.Random(seed)
    if simple:
        if m > len(pairs):
            raise ValueError(f"a simple graph on {n} vertices has at most {len(pairs)} edges")
        triples = [(u, v, rng.randint(1, k)) for u, v in rng.sample(pairs, m)]
    else:
        if m > k * len(pairs):
            raise ValueError(f"at most {k * len(pairs)} edges fit on {n} vertices with {k} colors")
        slots = [(u, v, c) for u, v in pairs for c in range(1, k + 1)]
        triples = rng.sample(slots, m)
    return ColoredMultigraph.from_edges(n, triples, k, simple)


def gen_complete(n: int, k: int, seed: int = 0, max_parallel: int | None = None) -> ColoredMultigraph:
    """Complete multigraph: each pair gets between 1 and ``max_parallel`` distinct colors."""
    if n < 0 or k < 1:
        raise ValueError("need n >= 0 and k >= 1")
    top = k if max_parallel is None else max_parallel
    if not 1 <= top <= k:
        raise ValueError(f"max_parallel must lie in [1, {k}]")
    rng = random.Random(seed)
    triples = []
    for u, v in itertools.combinations(range(1, n + 1), 2):
        for c in sorted(rng.sample(range(1, k + 1), rng.randint(1, top))):
            triples.append((u, v, c))
    rng.shuffle(triples)
    return ColoredMultigraph.from_edges(n, triples, k, simple=(top == 1))


def gen_simple_graph(n: int, m: int, seed: int = 0) -> SimpleGraph:
    """Uncolored simple graph on vertices 1..n."""
    pairs = list(itertools.combinations(range(1, n + 1), 2))
    if m > len(pairs) or m < 0:
        raise ValueError(f"need 0 <= m <= {len(pairs)}")
    chosen = random.Random(seed).sample(pairs, m)
    return SimpleGraph(tuple(range(1, n + 1)), tuple((i, u, v) for i, (u, v) in enumerate(chosen, 1)))


def gen_digraph(n: int, m: int, seed: int = 0) -> Digraph:
    """Loopless digraph without repeated arcs (antiparallel pairs allowed)."""
    arcs = [(a, b) for a in range(1, n + 1) for b in range(1, n + 1) if a != b]
    if m > len(arcs) or m < 0:
        raise ValueError(f"need 0 <= m <= {len(arcs)}")
    return Digraph(n, tuple(random.Random(seed).sample(arcs, m)))


# -- reductions --------------------------------------------------------------


@dataclass(frozen=True)
class ReductionMap:
    family: str
    source: object
    target: ColoredMultigraph
    origin: Mapping[int, tuple[str, int]]  # target edge id -> (kind, source reference)
    identity: str
    _backward: Callable = field(repr=False, compare=False)
    _target_opt: Callable[[int], int] = field(repr=False, compare=False)

    def backward(self, solution: Iterable[int]):
        """Map a feasible target solution to a feasible source solution."""
        return self._backward(tuple(solution))

    def target_optimum(self, source_optimum: int) -> int:
        return self._target_opt(source_optimum)

    def sidecar(self) -> str:
        lines = [f"# reduction {self.family}", f"# identity {self.identity}"]
        src = self.source
        if isinstance(src, Digraph):
            lines.append(f"# source digraph n {src.n}")
            lines += [f"# source arc {j} {a} {b}" for j, (a, b) in enumerate(src.arcs, 1)]
        elif isinstance(src, ColoredMultigraph):
            lines.append(f"# source colored n {src.n} k {src.k}")
            lines += [f"# source edge {e.id} {e.u} {e.v} {e.color}" for e in src.edges]
        else:
            lines.append(f"# source graph n {len(src.vertices)}")
            lines += [f"# source edge {i} {u} {v}" for i, u, v in src.edges]
        for tid in sorted(self.origin):
            kind, ref = self.origin[tid]
            lines.append(f"{tid} {kind} {ref}")
        return "\n".join(lines) + "\n"


def _require_numbered(h: SimpleGraph) -> int:
    n = len(h.vertices)
    if tuple(sorted(h.vertices)) != tuple(range(1, n + 1)):
        raise ValueError("source vertices must be 1..n")
    pairs = set()
    for _, u, v in h.edges:
        if u == v:
            raise ValueError(f"loop at vertex {u}")
        p = (min(u, v), max(u, v))
        if p in pairs:
            raise ValueError(f"parallel edges {p[0]}-{p[1]}: source must be simple")
        pairs.add(p)
    return n


def _cycle_edges(g: ColoredMultigraph, forest: set[int], new: Edge) -> list[int]:
    """Edges of the forest path between the endpoints of ``new`` (empty if disconnected)."""
    adj: dict[int, list[tuple[int, int]]] = {}
    for eid in forest:
        e = g.edge(eid)
        adj.setdefault(e.u, []).append((e.v, eid))
        adj.setdefault(e.v, []).append((e.u, eid))
    prev = {new.u: None}
    stack = [new.u]
    while stack:
        x = stack.pop()
        for y, eid in adj.get(x, ()):
            if y not in prev:
                prev[y] = (x, eid)
                stack.append(y)
    if new.v not in prev:
        return []
    out, x = [], new.v
    while prev[x] is not None:
        x, eid = prev[x]
        out.append(eid)
    return out


def reduce_lf_to_pcf2(h: SimpleGraph) -> ReductionMap:
    """Max linear forest in h  ->  Max-PF in a 2-colored simple graph on 3n vertices.

    Vertex v_i has a red copy i, a blue copy n+i and a connector 2n+i joined
    to them by a blue and a red edge respectively.
    """
    n = _require_numbered(h)
    triples: list[tuple[int, int, int]] = []
    origin: dict[int, tuple[str, int]] = {}
    for sid, u, v in h.edges:
        triples.append((u, v, RED))
        origin[len(triples)] = ("red-copy", sid)
    for sid, u, v in h.edges:
        triples.append((n + u, n + v, BLUE))
        origin[len(triples)] = ("blue-copy", sid)
    for i in range(1, n + 1):
        triples.append((i, 2 * n + i, BLUE))
        origin[len(triples)] = ("connector-red-side", i)
        triples.append((2 * n + i, n + i, RED))
        origin[len(triples)] = ("connector-blue-side", i)
    g = ColoredMultigraph.from_edges(3 * n, triples, 2, simple=True)
    connectors = [tid for tid, (kind, _) in origin.items() if kind.startswith("connector")]

    def backward(sol: tuple[int, ...]) -> tuple[int, ...]:
        verdict = verify_pc_forest(g, sol)
        if not verdict.valid:
            raise ValueError(f"target solution is not a properly colored forest: {verdict}")
        F = set(sol)
        for cid in connectors:
            if cid in F:
                continue
            c = g.edge(cid)
            cycle = _cycle_edges(g, F, c)
            if cycle:
                # the copy vertex end of the connector: i for the red side, n+i for the blue side
                copy_end = c.u if c.u <= 2 * n else c.v
                drop = [eid for eid in cycle if eid not in connectors and copy_end in (g.edge(eid).u, g.edge(eid).v)]
                if len(drop) != 1:
                    raise AssertionError("connector cycle lacks a unique copy edge at its copy vertex")
                F.discard(drop[0])
            F.add(cid)
            if not verify_pc_forest(g, F).valid:
                raise AssertionError("adding a connector broke the forest")
        out = sorted(origin[eid][1] for eid in F if not origin[eid][0].startswith("connector"))
        if len(out) != len(set(out)):
            raise AssertionError("both copies of a source edge survived")
        return tuple(out)

    return ReductionMap("lf2pcf", h, g, origin, "OPT' = OPT + 2n", backward, lambda opt: opt + 2 * n)


def reduce_pcf2_to_pcf3_complete(src: ColoredMultigraph) -> ReductionMap:
    """2-colored simple graph on n vertices -> 3-colored complete simple graph on 2n."""
    if not src.is_simple():
        raise ValueError("source must be simple")
    if any(e.color > 2 for e in src.edges):
        raise ValueError("source must use colors 1 and 2 only")
    n = src.n
    ids = [e.id for e in src.edges]
    if ids != list(range(1, src.m + 1)):
        raise ValueError("source edge ids must be 1..m in order")
    present = {(min(e.u, e.v), max(e.u, e.v)) for e in src.edges}
    triples = [(e.u, e.v, e.color) for e in src.edges]
    origin = {e.id: ("copy", e.id) for e in src.edges}
    for u, v in itertools.combinations(range(1, 2 * n + 1), 2):
        if (u, v) not in present:
            triples.append((u, v, THIRD))
            origin[len(triples)] = ("filler", 0)
    g = ColoredMultigraph.from_edges(2 * n, triples, 3, simple=True)
    m = src.m

    def backward(sol: tuple[int, ...]) -> tuple[int, ...]:
        verdict = verify_pc_forest(g, sol)
        if not verdict.valid:
            raise ValueError(f"target solution is not a properly colored forest: {verdict}")
        return tuple(sorted(eid for eid in sol if eid <= m))

    return ReductionMap("pcf3complete", src, g, origin, "OPT' = OPT + n", backward, lambda opt: opt + n)


def reduce_digraph_to_maxpt2(d: Digraph) -> ReductionMap:
    """Longest directed path in d -> Max-PT in a 2-colored graph on 2n vertices.

    Vertex i becomes in_i = 2i-1 and out_i = 2i joined by a red edge; arc
    (a, b) becomes a blue edge out_a - in_b.
    """
    n = d.n
    seen = set()
    for a, b in d.arcs:
        if a == b or not (1 <= a <= n and 1 <= b <= n):
            raise ValueError(f"bad arc {a}->{b}")
        if (a, b) in seen:
            raise ValueError(f"repeated arc {a}->{b}")
        seen.add((a, b))
    triples = []
    origin: dict[int, tuple[str, int]] = {}
    for j, (a, b) in enumerate(d.arcs, start=1):
        triples.append((2 * a, 2 * b - 1, BLUE))
        origin[len(triples)] = ("arc", j)
    for i in range(1, n + 1):
        triples.append((2 * i - 1, 2 * i, RED))
        origin[len(triples)] = ("gadget", i)
    g = ColoredMultigraph.from_edges(2 * n, triples, 2, simple=True)

    def backward(sol: tuple[int, ...]) -> tuple[int, ...]:
        verdict = verify_pc_forest(g, sol)
        if not verdict.valid or len(components(g, sol)) > 1:
            raise ValueError("target solution is not a properly colored tree")
        arcs = [origin[eid][1] for eid in sol if origin[eid][0] == "arc"]
        succ = {d.arcs[j - 1][0]: j for j in arcs}
        heads = {d.arcs[j - 1][1] for j in arcs}
        if len(succ) != len(arcs) or len(heads) != len(arcs):
            raise AssertionError("contracted arcs do not form a path or cycle")
        if arcs and all(d.arcs[j - 1][0] in heads for j in arcs):
            # directed cycle: drop its highest-id arc
            arcs.remove(max(arcs))
            succ = {d.arcs[j - 1][0]: j for j in arcs}
            heads = {d.arcs[j - 1][1] for j in arcs}
        starts = [d.arcs[j - 1][0] for j in arcs if d.arcs[j - 1][0] not in heads]
        if len(starts) > 1:
            raise AssertionError("contracted arcs split into several paths")
        order = []
        x = starts[0] if starts else None
        while x in succ:
            j = succ[x]
            order.append(j)
            x = d.arcs[j - 1][1]
        if len(order) != len(arcs):
            raise AssertionError("contracted arcs are not a single path")
        return tuple(order)

    return ReductionMap("lp2maxpt", d, g, origin, "OPT' = 2*OPT + 1", backward, lambda opt: 2 * opt + 1)


def gen_tsp12_doubling(h: SimpleGraph) -> ReductionMap:
    """Double each length-1 edge into a red and a blue parallel copy.

    A properly colored forest of the result maps to a linear forest of h, and
    every linear forest lifts back, so both optima coincide.
    """
    n = _require_numbered(h)
    triples = []
    origin: dict[int, tuple[str, int]] = {}
    for sid, u, v in h.edges:
        triples.append((u, v, RED))
        origin[len(triples)] = ("red-copy", sid)
        triples.append((u, v, BLUE))
        origin[len(triples)] = ("blue-copy", sid)
    g = ColoredMultigraph.from_edges(n, triples, 2)

    def backward(sol: tuple[int, ...]) -> tuple[int, ...]:
        verdict = verify_pc_forest(g, sol)
        if not verdict.valid:
            raise ValueError(f"target solution is not a properly colored forest: {verdict}")
        return tuple(sorted(origin[eid][1] for eid in sol))

    return ReductionMap("tsp12", h, g, origin, "OPT' = OPT", backward, lambda opt: opt)
