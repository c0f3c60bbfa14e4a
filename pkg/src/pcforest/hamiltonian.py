"""Turning a properly colored path plus disjoint alternating cycles into one path.

Works in 2-edge-colored graphs that are complete on the vertices involved.
Cycles are absorbed one at a time.  For a path p_1..p_s and a cycle C, one of
the following always applies:

* attach C after p_s through an edge whose color differs from the last path
  edge (or any edge when s = 1), then walk around C;
* the same at p_1;
* replace a path edge p_i p_{i+1} of color y by p_i -> c ... c' -> p_{i+1},
  where cc' is a color-y edge of C and both connecting edges have color y.

If the two end attachments fail, every vertex of the path sees C in exactly
one color, and walking the path from p_s backwards finds an edge where the
third move fits.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

from .graph import ColoredMultigraph, Edge, components, verify_pc_forest


class FactorError(ValueError):
    """Input is not a properly colored 1-path-cycle factor of a suitable host."""


@dataclass
class _Walk:
    vertices: list[int]
    edges: list[Edge]  # edges[j] joins vertices[j] and vertices[j+1]


def _edge_of_color(g: ColoredMultigraph, u: int, v: int, color: int) -> Edge | None:
    for e in g.incident(u):
        if e.color == color and e.other(u) == v:
            return e
    return None


def _other(color: int) -> int:
    return 3 - color


def _order_path(g: ColoredMultigraph, ids: Sequence[int]) -> _Walk:
    es = [g.edge(i) for i in ids]
    adj: dict[int, list[Edge]] = {}
    for e in es:
        adj.setdefault(e.u, []).append(e)
        adj.setdefault(e.v, []).append(e)
    ends = sorted(v for v, inc in adj.items() if len(inc) == 1)
    if any(len(inc) > 2 for inc in adj.values()) or len(ends) != 2:
        raise FactorError("path edges do not form a simple path")
    walk = _Walk([ends[0]], [])
    used: set[int] = set()
    x = ends[0]
    while True:
        nxt = [e for e in adj[x] if e.id not in used]
        if not nxt:
            break
        e = nxt[0]
        used.add(e.id)
        x = e.other(x)
        walk.vertices.append(x)
        walk.edges.append(e)
    if len(used) != len(es):
        raise FactorError("path edges are not connected")
    return walk


def _order_cycle(g: ColoredMultigraph, ids: Sequence[int]) -> _Walk:
    """Cyclic order; ``vertices`` has one entry per vertex, edges close the loop."""
    es = [g.edge(i) for i in ids]
    adj: dict[int, list[Edge]] = {}
    for e in es:
        adj.setdefault(e.u, []).append(e)
        adj.setdefault(e.v, []).append(e)
    if len(es) < 2 or any(len(inc) != 2 for inc in adj.values()):
        raise FactorError("cycle edges do not form a cycle")
    start = min(adj)
    walk = _Walk([start], [])
    used: set[int] = set()
    x = start
    while True:
        nxt = sorted((e for e in adj[x] if e.id not in used), key=lambda e: e.id)
        if not nxt:
            break
        e = nxt[0]
        used.add(e.id)
        x = e.other(x)
        walk.edges.append(e)
        if x == start:
            break
        walk.vertices.append(x)
    if len(used) != len(es):
        raise FactorError("cycle edges are not connected")
    return walk


def _check_alternating(walk: _Walk, closed: bool) -> None:
    cols = [e.color for e in walk.edges]
    pairs = list(zip(cols, cols[1:]))
    if closed and cols:
        pairs.append((cols[-1], cols[0]))
    if any(a == b for a, b in pairs):
        raise FactorError("factor component is not properly colored")


def _open_cycle(cyc: _Walk, j: int, entry_color: int) -> tuple[list[int], list[Edge]]:
    """Walk all of C from position j, leaving by the edge whose color is not ``entry_color``."""
    t = len(cyc.vertices)
    forward = cyc.edges[j]  # joins position j and j+1
    if forward.color != entry_color:
        order = [(j + s) % t for s in range(t)]
        edges = [cyc.edges[(j + s) % t] for s in range(t - 1)]
    else:
        order = [(j - s) % t for s in range(t)]
        edges = [cyc.edges[(j - s - 1) % t] for s in range(t - 1)]
    return [cyc.vertices[p] for p in order], edges


def _absorb(g: ColoredMultigraph, path: _Walk, cyc: _Walk) -> _Walk:
    t = len(cyc.vertices)
    s = len(path.vertices)

    # attach after the last vertex, then before the first
    for flip in (False, True):
        p = _Walk(path.vertices[::-1], path.edges[::-1]) if flip else path
        end = p.vertices[-1]
        last = p.edges[-1].color if p.edges else None
        for j in range(t):
            c = cyc.vertices[j]
            for color in (1, 2):
                if color == last:
                    continue
                link = _edge_of_color(g, end, c, color)
                if link is None:
                    continue
                vs, es = _open_cycle(cyc, j, color)
                return _Walk(p.vertices + vs, p.edges + [link] + es)

    # splice into a path edge of color y via a color-y cycle edge
    for i in range(s - 1):
        y = path.edges[i].color
        a, b = path.vertices[i], path.vertices[i + 1]
        for j in range(t):
            c = cyc.vertices[j]
            fwd, back = cyc.edges[j], cyc.edges[(j - 1) % t]
            if fwd.color == y:
                mate = cyc.vertices[(j + 1) % t]
            elif back.color == y:
                mate = cyc.vertices[(j - 1) % t]
            else:
                continue
            into = _edge_of_color(g, a, c, y)
            out = _edge_of_color(g, mate, b, y)
            if into is None or out is None:
                continue
            vs, es = _open_cycle(cyc, j, y)
            assert vs[-1] == mate
            return _Walk(
                path.vertices[: i + 1] + vs + path.vertices[i + 1 :],
                path.edges[:i] + [into] + es + [out] + path.edges[i + 1 :],
            )
    raise FactorError("no absorbing move exists; host is not complete and 2-colored here")


def merge_path_cycle_factor(
    g: ColoredMultigraph,
    path: Iterable[int],
    cycles: Sequence[Iterable[int]],
    start: int | None = None,
) -> tuple[int, ...]:
    """Properly colored Hamiltonian path on the vertices of a 1-path-cycle factor.

    ``path`` lists edge ids; a single-vertex path is given as ``path=()`` with
    ``start`` set to that vertex.  Returns the edge ids of the merged path.
    """
    path_ids = list(path)
    if path_ids:
        walk = _order_path(g, path_ids)
    elif start is not None:
        walk = _Walk([start], [])
    else:
        raise FactorError("empty path needs a start vertex")
    _check_alternating(walk, closed=False)
    cycs = [_order_cycle(g, list(c)) for c in cycles]
    for c in cycs:
        _check_alternating(c, closed=True)
        if len(c.edges) % 2:
            raise FactorError("alternating cycle of odd length")

    seen = set(walk.vertices)
    for c in cycs:
        if seen & set(c.vertices):
            raise FactorError("factor components share a vertex")
        seen |= set(c.vertices)
    if any(e.color not in (1, 2) for e in g.edges):
        raise FactorError("host graph uses more than two colors")
    verts = sorted(seen)
    for a in range(len(verts)):
        for b in range(a + 1, len(verts)):
            if not g.edges_between(verts[a], verts[b]):
                raise FactorError(f"host is not complete: no edge {verts[a]}-{verts[b]}")

    for c in cycs:
        walk = _absorb(g, walk, c)
        ids = [e.id for e in walk.edges]
        if (
            len(set(walk.vertices)) != len(walk.vertices)
            or not verify_pc_forest(g, ids).valid
            or len(components(g, ids)) != 1
        ):
            raise RuntimeError("absorbing a cycle produced an invalid path")
    if set(walk.vertices) != seen:
        raise RuntimeError("merged path lost vertices")
    return tuple(sorted(e.id for e in walk.edges))
