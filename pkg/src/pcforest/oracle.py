"""Exact solvers by exhaustive search, for ground truth at desk scale.

Two independent Max-PF enumerators are provided (a pruned include/exclude
DFS and plain subset enumeration) so each can audit the other.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

from .graph import ColoredMultigraph, EdgeSubset, SimpleGraph, components, verify_pc_forest

__all__ = [
    "OracleResult",
    "CapExceeded",
    "brute_maxpf",
    "brute_maxpf_bitmask",
    "brute_opt_restricted",
    "brute_maxpt",
    "brute_max_linear_forest",
    "brute_longest_dipath",
]


class CapExceeded(ValueError):
    """Instance is too large for exhaustive search under the given cap."""


@dataclass(frozen=True)
class OracleResult:
    optimum: int
    witness: EdgeSubset
    explored: int


def _check_cap(m: int, cap: int) -> None:
    if m > cap:
        raise CapExceeded(f"{m} edges exceed the enumeration cap of {cap}")


class _RollbackDSU:
    """Union-find without path compression so unions can be undone in LIFO order."""

    def __init__(self, n: int):
        self.parent = list(range(n + 1))
        self.size = [1] * (n + 1)
        self.history: list[int] = []

    def find(self, x: int) -> int:
        while self.parent[x] != x:
            x = self.parent[x]
        return x

    def union(self, a: int, b: int) -> bool:
        a, b = self.find(a), self.find(b)
        if a == b:
            return False
        if self.size[a] < self.size[b]:
            a, b = b, a
        self.parent[b] = a
        self.size[a] += self.size[b]
        self.history.append(b)
        return True

    def undo(self) -> None:
        b = self.history.pop()
        a = self.parent[b]
        self.size[a] -= self.size[b]
        self.parent[b] = b


def brute_maxpf(g: ColoredMultigraph, cap: int = 24) -> OracleResult:
    """Maximum properly colored forest by include/exclude search over edge ids."""
    _check_cap(g.m, cap)
    edges = sorted(g.edges)
    m = len(edges)
    touched = {x for e in edges for x in (e.u, e.v)}
    ceiling = max(len(touched) - 1, 0)
    used: set[tuple[int, int]] = set()
    dsu = _RollbackDSU(g.n)
    chosen: list[int] = []
    best: list[int] = []
    explored = 0

    def addable(j: int) -> bool:
        e = edges[j]
        return (
            (e.u, e.color) not in used
            and (e.v, e.color) not in used
            and dsu.find(e.u) != dsu.find(e.v)
        )

    def search(i: int) -> bool:
        nonlocal best, explored
        explored += 1
        if len(chosen) > len(best):
            best = chosen[:]
            if len(best) == ceiling:
                return True
        if i == m:
            return False
        bound = len(chosen) + sum(1 for j in range(i, m) if addable(j))
        if bound <= len(best):
            return False
        e = edges[i]
        # color conflicts are the cheaper test, so they go first
        if (e.u, e.color) not in used and (e.v, e.color) not in used and dsu.union(e.u, e.v):
            used.add((e.u, e.color))
            used.add((e.v, e.color))
            chosen.append(e.id)
            done = search(i + 1)
            chosen.pop()
            used.discard((e.u, e.color))
            used.discard((e.v, e.color))
            dsu.undo()
            if done:
                return True
        return search(i + 1)

    search(0)
    return OracleResult(len(best), tuple(sorted(best)), explored)


def brute_maxpf_bitmask(g: ColoredMultigraph, cap: int = 16) -> OracleResult:
    """Maximum properly colored forest by testing every edge subset."""
    _check_cap(g.m, cap)
    edges = sorted(g.edges)
    m = len(edges)
    best_mask, best_size = 0, 0
    for mask in range(1 << m):
        size = bin(mask).count("1")
        if size <= best_size:
            continue
        used = set()
        parent = list(range(g.n + 1))
        ok = True
        for j in range(m):
            if not mask >> j & 1:
                continue
            e = edges[j]
            ku, kv = (e.u, e.color), (e.v, e.color)
            if ku in used or kv in used:
                ok = False
                break
            used.add(ku)
            used.add(kv)
            a, b = e.u, e.v
            while parent[a] != a:
                a = parent[a]
            while parent[b] != b:
                b = parent[b]
            if a == b:
                ok = False
                break
            parent[b] = a
        if ok:
            best_mask, best_size = mask, size
    witness = tuple(edges[j].id for j in range(m) if best_mask >> j & 1)
    return OracleResult(best_size, witness, 1 << m)


def brute_opt_restricted(g: ColoredMultigraph, U: Iterable[int], cap: int = 24) -> OracleResult:
    """Optimum of the subgraph induced by U (edge ids keep their original values)."""
    us = set(U)
    if not us <= set(g.vertices):
        raise ValueError(f"vertices {sorted(us - set(g.vertices))} are not in the graph")
    return brute_maxpf(g.subgraph(g.induced_edges(us)), cap)


def brute_maxpt(g: ColoredMultigraph, cap: int = 400) -> OracleResult:
    """Maximum properly colored tree.

    Trees are grown from their least vertex r using vertices above r only, so
    each tree is generated from exactly one root.  Each step branches on the
    lowest-id frontier edge: take it, or ban it for the rest of the branch.
    """
    _check_cap(g.m, cap)
    best: list[int] = [g.edges[0].id] if g.edges else []
    ceiling = max(g.n - 1, 0)
    explored = 0
    if len(best) >= ceiling:
        return OracleResult(len(best), tuple(best), 1)

    for r in g.vertices:
        if g.n - r <= len(best):
            break
        in_tree = {r}
        used: set[tuple[int, int]] = set()
        banned: set[int] = set()
        chosen: list[int] = []
        room = g.n - r  # vertices above r

        def frontier():
            cand = None
            for x in in_tree:
                for e in g.incident(x):
                    if e.id in banned or (x, e.color) in used:
                        continue
                    y = e.other(x)
                    if y < r or y in in_tree:
                        continue
                    if cand is None or e.id < cand[0].id:
                        cand = (e, x, y)
            return cand

        def grow() -> bool:
            nonlocal best, explored
            explored += 1
            if len(chosen) > len(best):
                best = chosen[:]
                if len(best) == ceiling:
                    return True
            if len(chosen) + (room - (len(in_tree) - 1)) <= len(best):
                return False
            cand = frontier()
            if cand is None:
                return False
            e, x, y = cand
            in_tree.add(y)
            used.add((x, e.color))
            used.add((y, e.color))
            chosen.append(e.id)
            done = grow()
            chosen.pop()
            used.discard((x, e.color))
            used.discard((y, e.color))
            in_tree.discard(y)
            if done:
                return True
            banned.add(e.id)
            done = grow()
            banned.discard(e.id)
            return done

        if grow():
            break

    witness = tuple(sorted(best))
    if not (verify_pc_forest(g, witness).valid and len(components(g, witness)) <= 1):
        raise AssertionError("tree search produced an invalid witness")
    return OracleResult(len(best), witness, explored)


def brute_max_linear_forest(h: SimpleGraph, cap: int = 24) -> OracleResult:
    """Maximum linear forest (vertex-disjoint paths) of an uncolored simple graph."""
    edges = sorted(h.edges)
    _check_cap(len(edges), cap)
    m = len(edges)
    nv = max(h.vertices, default=0)
    deg = [0] * (nv + 1)
    dsu = _RollbackDSU(nv)
    chosen: list[int] = []
    best: list[int] = []
    explored = 0

    def search(i: int) -> None:
        nonlocal best, explored
        explored += 1
        if len(chosen) > len(best):
            best = chosen[:]
        if i == m or len(chosen) + (m - i) <= len(best):
            return
        eid, u, v = edges[i]
        if deg[u] < 2 and deg[v] < 2 and dsu.union(u, v):
            deg[u] += 1
            deg[v] += 1
            chosen.append(eid)
            search(i + 1)
            chosen.pop()
            deg[u] -= 1
            deg[v] -= 1
            dsu.undo()
        search(i + 1)

    search(0)
    return OracleResult(len(best), tuple(sorted(best)), explored)


def brute_longest_dipath(n: int, arcs: Sequence[tuple[int, int]]) -> OracleResult:
    """Longest simple directed path, counted in arcs; witness lists arc indices from 1."""
    out: dict[int, list[tuple[int, int]]] = {v: [] for v in range(1, n + 1)}
    for idx, (a, b) in enumerate(arcs, start=1):
        out[a].append((b, idx))
    best: list[int] = []
    explored = 0
    path: list[int] = []
    on_path: set[int] = set()

    def walk(x: int) -> None:
        nonlocal best, explored
        explored += 1
        if len(path) > len(best):
            best = path[:]
        for y, idx in out[x]:
            if y not in on_path:
                on_path.add(y)
                path.append(idx)
                walk(y)
                path.pop()
                on_path.discard(y)

    for s in range(1, n + 1):
        on_path.add(s)
        walk(s)
        on_path.discard(s)
        if len(best) == n - 1:
            break
    return OracleResult(len(best), tuple(best), explored)
