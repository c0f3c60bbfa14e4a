"""Edge-colored multigraphs, the text formats, and the forest verifier.

Vertices are the integers ``1..n``.  Edges carry stable ids ``1..m`` in the
order they were listed, and every tie elsewhere in the package is broken by
the smallest edge id.
"""

from __future__ import annotations

from collections import defaultdict
from dataclasses import dataclass, field
from typing import Iterable, NamedTuple, Sequence


class InstanceError(ValueError):
    """Malformed or invalid instance text; carries the offending line number."""

    def __init__(self, message: str, line: int | None = None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


class Edge(NamedTuple):
    id: int
    u: int
    v: int
    color: int

    def other(self, x: int) -> int:
        return self.v if x == self.u else self.u


EdgeSubset = tuple  # sorted tuple of edge ids


@dataclass(frozen=True)
class SimpleGraph:
    """Uncolored simple graph on ``vertices`` with id-labelled edges."""

    vertices: tuple[int, ...]
    edges: tuple[tuple[int, int, int], ...]  # (edge id, u, v)

    def adjacency(self) -> dict[int, list[tuple[int, int]]]:
        adj: dict[int, list[tuple[int, int]]] = {v: [] for v in self.vertices}
        for eid, u, v in self.edges:
            adj[u].append((v, eid))
            adj[v].append((u, eid))
        return adj


@dataclass(frozen=True, eq=False)
class ColoredMultigraph:
    n: int
    edges: tuple[Edge, ...]
    k: int
    simple: bool = False
    _by_id: dict = field(init=False, repr=False, compare=False)
    _incident: tuple = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        if self.n < 0:
            raise InstanceError("negative vertex count")
        if self.k < 1:
            raise InstanceError("need at least one color")
        by_id = {}
        incident: list[list[Edge]] = [[] for _ in range(self.n + 1)]
        per_color: set[tuple[int, int, int]] = set()
        pairs: set[tuple[int, int]] = set()
        for e in self.edges:
            if e.id in by_id:
                raise InstanceError(f"duplicate edge id {e.id}")
            if not (1 <= e.u <= self.n and 1 <= e.v <= self.n):
                raise InstanceError(f"edge {e.id}: vertex out of range [1,{self.n}]")
            if e.u == e.v:
                raise InstanceError(f"edge {e.id}: loop at vertex {e.u}")
            if not 1 <= e.color <= self.k:
                raise InstanceError(f"edge {e.id}: color {e.color} out of range [1,{self.k}]")
            pair = (min(e.u, e.v), max(e.u, e.v))
            if (pair[0], pair[1], e.color) in per_color:
                raise InstanceError(
                    f"edge {e.id}: parallel edges {pair[0]}-{pair[1]} in color class {e.color}"
                )
            if self.simple and pair in pairs:
                raise InstanceError(
                    f"edge {e.id}: parallel edges {pair[0]}-{pair[1]} in a simple instance"
                )
            per_color.add((pair[0], pair[1], e.color))
            pairs.add(pair)
            by_id[e.id] = e
            incident[e.u].append(e)
            incident[e.v].append(e)
        object.__setattr__(self, "_by_id", by_id)
        object.__setattr__(self, "_incident", tuple(tuple(x) for x in incident))

    @classmethod
    def from_edges(
        cls,
        n: int,
        edges: Iterable[tuple[int, int, int]],
        k: int | None = None,
        simple: bool = False,
    ) -> "ColoredMultigraph":
        """Build a graph from ``(u, v, color)`` triples, numbering edges from 1."""
        es = tuple(Edge(i, u, v, c) for i, (u, v, c) in enumerate(edges, start=1))
        if k is None:
            k = max((e.color for e in es), default=1)
        return cls(n, es, k, simple)

    @property
    def m(self) -> int:
        return len(self.edges)

    @property
    def vertices(self) -> range:
        return range(1, self.n + 1)

    def edge(self, eid: int) -> Edge:
        try:
            return self._by_id[eid]
        except KeyError:
            raise KeyError(f"unknown edge id {eid}") from None

    def incident(self, v: int) -> tuple[Edge, ...]:
        return self._incident[v]

    def colors_used(self) -> set[int]:
        return {e.color for e in self.edges}

    def is_simple(self) -> bool:
        """True when no two edges share an endpoint pair, whatever the flag says."""
        pairs = {(min(e.u, e.v), max(e.u, e.v)) for e in self.edges}
        return len(pairs) == len(self.edges)

    def is_complete(self) -> bool:
        pairs = {(min(e.u, e.v), max(e.u, e.v)) for e in self.edges}
        return len(pairs) == self.n * (self.n - 1) // 2

    def edges_between(self, u: int, v: int) -> list[Edge]:
        return [e for e in self._incident[u] if e.other(u) == v]

    def induced_edges(self, vertices: Iterable[int]) -> EdgeSubset:
        vs = set(vertices)
        return tuple(e.id for e in self.edges if e.u in vs and e.v in vs)

    def subgraph(self, edge_ids: Iterable[int]) -> "ColoredMultigraph":
        """Same vertex set, only the given edges; ids are preserved."""
        keep = set(edge_ids)
        return ColoredMultigraph(
            self.n, tuple(e for e in self.edges if e.id in keep), self.k, self.simple
        )

    def __eq__(self, other):
        if not isinstance(other, ColoredMultigraph):
            return NotImplemented
        return (self.n, self.edges, self.k, self.simple) == (
            other.n,
            other.edges,
            other.k,
            other.simple,
        )

    def __hash__(self):
        return hash((self.n, self.edges, self.k, self.simple))


# ---------------------------------------------------------------------------
# text formats


def parse_instance(text: str) -> ColoredMultigraph:
    """Parse ``p pcf <n> <m> <k> <simple|multi>`` followed by ``e u v color`` lines."""
    header = None
    header_line = 0
    raw: list[tuple[int, int, int, int]] = []
    for lineno, line in enumerate(text.splitlines(), start=1):
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        tok = line.split()
        if tok[0] == "p":
            if header is not None:
                raise InstanceError("second header line", lineno)
            if len(tok) != 6 or tok[1] != "pcf" or tok[5] not in ("simple", "multi"):
                raise InstanceError("malformed header, expected 'p pcf n m k simple|multi'", lineno)
            try:
                n, m, k = int(tok[2]), int(tok[3]), int(tok[4])
            except ValueError:
                raise InstanceError("non-integer header field", lineno) from None
            if n < 0 or m < 0 or k < 1:
                raise InstanceError("header fields out of range", lineno)
            header = (n, m, k, tok[5] == "simple")
            header_line = lineno
        elif tok[0] == "e":
            if header is None:
                raise InstanceError("edge line before header", lineno)
            if len(tok) != 4:
                raise InstanceError("malformed edge line, expected 'e u v color'", lineno)
            try:
                u, v, c = int(tok[1]), int(tok[2]), int(tok[3])
            except ValueError:
                raise InstanceError("non-integer edge field", lineno) from None
            raw.append((lineno, u, v, c))
        else:
            raise InstanceError(f"unknown line type {tok[0]!r}", lineno)
    if header is None:
        raise InstanceError("missing header line")
    n, m, k, simple = header
    if len(raw) != m:
        raise InstanceError(f"header declares {m} edges, found {len(raw)}", header_line)

    # Re-check invariants here so the error points at the offending line.
    seen_color: dict[tuple[int, int, int], int] = {}
    seen_pair: dict[tuple[int, int], int] = {}
    edges = []
    for eid, (lineno, u, v, c) in enumerate(raw, start=1):
        if not (1 <= u <= n and 1 <= v <= n):
            raise InstanceError(f"vertex out of range [1,{n}]", lineno)
        if u == v:
            raise InstanceError(f"loop edge at vertex {u}", lineno)
        if not 1 <= c <= k:
            raise InstanceError(f"color {c} out of range [1,{k}]", lineno)
        a, b = min(u, v), max(u, v)
        if (a, b, c) in seen_color:
            raise InstanceError(
                f"parallel edges {a}-{b} in color class {c} "
                f"(first at line {seen_color[(a, b, c)]})",
                lineno,
            )
        if simple and (a, b) in seen_pair:
            raise InstanceError(f"instance declared simple but {a}-{b} repeats", lineno)
        seen_color[(a, b, c)] = lineno
        seen_pair.setdefault((a, b), lineno)
        edges.append(Edge(eid, u, v, c))
    return ColoredMultigraph(n, tuple(edges), k, simple)


def serialize_instance(g: ColoredMultigraph) -> str:
    lines = [f"p pcf {g.n} {g.m} {g.k} {'simple' if g.simple else 'multi'}"]
    lines += [f"e {e.u} {e.v} {e.color}" for e in g.edges]
    return "\n".join(lines) + "\n"


def format_solution(edge_ids: Iterable[int], comments: Sequence[str] = ()) -> str:
    ids = sorted(edge_ids)
    lines = [f"s pcf {len(ids)}"]
    lines += [f"c {c}" for c in comments]
    lines += [f"f {i}" for i in ids]
    return "\n".join(lines) + "\n"


def parse_solution(text: str) -> EdgeSubset:
    size = None
    ids: list[int] = []
    for lineno, line in enumerate(text.splitlines(), start=1):
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        tok = line.split()
        if tok[0] == "c":
            continue
        try:
            if tok[0] == "s" and len(tok) == 3 and tok[1] == "pcf":
                size = int(tok[2])
            elif tok[0] == "f" and len(tok) == 2:
                ids.append(int(tok[1]))
            else:
                raise InstanceError("malformed solution line", lineno)
        except ValueError:
            raise InstanceError("non-integer field", lineno) from None
    if size is None:
        raise InstanceError("missing 's pcf <size>' line")
    if size != len(ids):
        raise InstanceError(f"size line says {size} but {len(ids)} edges listed")
    if len(set(ids)) != len(ids):
        raise InstanceError("duplicate edge id in solution")
    return tuple(sorted(ids))


# ---------------------------------------------------------------------------
# structure


def _checked_ids(g: ColoredMultigraph, edge_ids: Iterable[int]) -> list[Edge]:
    out = []
    seen = set()
    for i in edge_ids:
        if i in seen:
            raise ValueError(f"edge id {i} listed twice")
        seen.add(i)
        out.append(g.edge(i))
    return out


class UnionFind:
    """Disjoint sets over arbitrary hashable items, created on first touch."""

    def __init__(self, items: Iterable = ()):
        self.parent = {x: x for x in items}

    def find(self, x):
        parent = self.parent
        if x not in parent:
            parent[x] = x
            return x
        root = x
        while parent[root] != root:
            root = parent[root]
        while parent[x] != root:
            parent[x], x = root, parent[x]
        return root

    def union(self, a, b) -> bool:
        ra, rb = self.find(a), self.find(b)
        if ra == rb:
            return False
        if rb < ra:
            ra, rb = rb, ra
        self.parent[rb] = ra
        return True


def components(g: ColoredMultigraph, edge_ids: Iterable[int]) -> list[frozenset[int]]:
    """Vertex sets of the connected components of ``(V(F), F)``, ordered by least vertex."""
    uf = UnionFind()
    for e in _checked_ids(g, edge_ids):
        uf.union(e.u, e.v)
    groups: dict[int, set[int]] = defaultdict(set)
    for v in list(uf.parent):
        groups[uf.find(v)].add(v)
    return sorted((frozenset(s) for s in groups.values()), key=min)


def spanning_forest(g: ColoredMultigraph, edge_ids: Iterable[int]) -> EdgeSubset:
    """Maximum forest of F: scan ids ascending and drop each edge that closes a cycle.

    The dropped edge is always the highest id on the cycle it closes, so the
    result does not depend on the order ``edge_ids`` arrives in.
    """
    uf = UnionFind()
    keep = []
    for e in sorted(_checked_ids(g, edge_ids)):
        if uf.union(e.u, e.v):
            keep.append(e.id)
    return tuple(keep)


def color_class(g: ColoredMultigraph, i: int) -> SimpleGraph:
    if not 1 <= i <= g.k:
        raise ValueError(f"color {i} out of range [1,{g.k}]")
    return SimpleGraph(
        tuple(g.vertices), tuple((e.id, e.u, e.v) for e in g.edges if e.color == i)
    )


@dataclass(frozen=True)
class Verdict:
    status: str  # "valid" | "not-forest" | "not-properly-colored"
    cycle: tuple[int, ...] = ()  # edge ids of a cycle witness
    conflict: tuple[int, int, int] | None = None  # (vertex, edge id, edge id)

    @property
    def valid(self) -> bool:
        return self.status == "valid"

    def __str__(self):
        if self.status == "not-forest":
            return f"not-forest cycle {' '.join(map(str, self.cycle))}"
        if self.status == "not-properly-colored":
            v, a, b = self.conflict
            return f"not-properly-colored at vertex {v} edges {a} {b}"
        return "valid"


def _tree_path(adj: dict[int, list[tuple[int, int]]], src: int, dst: int) -> list[int]:
    """Edge ids on the unique src-dst path of a forest given by ``adj``."""
    prev: dict[int, tuple[int, int] | None] = {src: None}
    stack = [src]
    while stack:
        x = stack.pop()
        if x == dst:
            break
        for y, eid in adj.get(x, ()):
            if y not in prev:
                prev[y] = (x, eid)
                stack.append(y)
    if dst not in prev:
        return []
    path = []
    x = dst
    while prev[x] is not None:
        x, eid = prev[x]
        path.append(eid)
    return path


def verify_pc_forest(g: ColoredMultigraph, edge_ids: Iterable[int]) -> Verdict:
    """Check that F is acyclic and properly colored, acyclicity first."""
    es = sorted(_checked_ids(g, edge_ids))
    uf = UnionFind()
    adj: dict[int, list[tuple[int, int]]] = defaultdict(list)
    for e in es:
        if not uf.union(e.u, e.v):
            cycle = sorted(_tree_path(adj, e.u, e.v) + [e.id])
            return Verdict("not-forest", cycle=tuple(cycle))
        adj[e.u].append((e.v, e.id))
        adj[e.v].append((e.u, e.id))
    seen: dict[tuple[int, int], int] = {}
    for e in es:
        for x in (e.u, e.v):
            first = seen.setdefault((x, e.color), e.id)
            if first != e.id:
                return Verdict("not-properly-colored", conflict=(x, first, e.id))
    return Verdict("valid")


def is_pc_tree(g: ColoredMultigraph, edge_ids: Iterable[int]) -> bool:
    ids = list(edge_ids)
    return verify_pc_forest(g, ids).valid and len(components(g, ids)) <= 1
