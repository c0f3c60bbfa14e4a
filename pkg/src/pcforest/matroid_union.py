"""Sum of the matching matroids of the color classes.

A vertex set is *matching-coverable* when one matching per color class can
jointly cover it, i.e. when it is independent in the sum of the k matching
matroids.  Maximum coverable sets are found with the classical matroid
partitioning algorithm: elements are inserted one at a time along shortest
paths in the exchange graph.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from typing import Iterable, Mapping, Sequence

from .graph import ColoredMultigraph, SimpleGraph, color_class
from .matching import covered, covers, max_matching_covering


@dataclass(frozen=True)
class CoverCertificate:
    U: frozenset[int]
    parts: Mapping[int, frozenset[int]]  # color -> U_i
    matchings: Mapping[int, tuple[int, ...]]  # color -> M_i (edge ids)

    def edges(self) -> tuple[int, ...]:
        return tuple(sorted(e for m in self.matchings.values() for e in m))


def _partition(
    ground: Sequence[int], classes: Mapping[int, SimpleGraph], stop_on_failure: bool
) -> tuple[dict[int, set[int]], list[int]]:
    """Greedy matroid partitioning of ``ground`` into per-color independent parts.

    Returns the parts and the elements that could not be inserted.  Colors
    are tried lowest first, and elements are inserted in the given order.
    """
    colors = sorted(classes)
    parts: dict[int, set[int]] = {i: set() for i in colors}
    owner: dict[int, int] = {}
    cache: dict[tuple[int, frozenset[int]], bool] = {}
    degree: dict[int, set[int]] = {}
    for i in colors:
        for _, u, v in classes[i].edges:
            degree.setdefault(u, set()).add(i)
            degree.setdefault(v, set()).add(i)

    def indep(i: int, s: frozenset[int]) -> bool:
        key = (i, s)
        hit = cache.get(key)
        if hit is None:
            hit = cache[key] = covers(classes[i], s)
        return hit

    failed: list[int] = []
    for s in ground:
        if s not in degree:
            failed.append(s)
            if stop_on_failure:
                break
            continue
        prev: dict[int, tuple[int, int] | None] = {s: None}
        queue = deque([s])
        sink: tuple[int, int] | None = None
        while queue and sink is None:
            x = queue.popleft()
            for i in colors:
                if owner.get(x) == i or i not in degree.get(x, ()):
                    continue
                base = frozenset(parts[i])
                if indep(i, base | {x}):
                    sink = (x, i)
                    break
                for y in sorted(base):
                    if y not in prev and indep(i, (base - {y}) | {x}):
                        prev[y] = (x, i)
                        queue.append(y)
        if sink is None:
            failed.append(s)
            if stop_on_failure:
                break
            continue
        x, i = sink
        while True:
            old = owner.get(x)
            if old is not None:
                parts[old].discard(x)
            parts[i].add(x)
            owner[x] = i
            step = prev[x]
            if step is None:
                break
            x, i = step
    return parts, failed


def _witness(classes: Mapping[int, SimpleGraph], parts: Mapping[int, set[int]]) -> dict[int, tuple[int, ...]]:
    out = {}
    for i, part in parts.items():
        m = max_matching_covering(classes[i], part)
        if m is None:
            raise RuntimeError(f"color {i}: part {sorted(part)} lost its covering matching")
        out[i] = m
    return out


def max_coverable_set(g: ColoredMultigraph) -> CoverCertificate:
    """Maximum matching-coverable vertex set with maximum matchings covering it."""
    classes = {i: color_class(g, i) for i in range(1, g.k + 1)}
    parts, _ = _partition(list(g.vertices), classes, stop_on_failure=False)
    matchings = _witness(classes, parts)
    U = frozenset().union(*parts.values()) if parts else frozenset()
    # Each M_i covers U_i; maximality of U means they cover nothing else.
    spanned = set()
    for i, m in matchings.items():
        spanned |= covered(classes[i], m)
    if spanned != U:
        raise RuntimeError("certificate matchings cover vertices outside the maximum set")
    return CoverCertificate(
        U, {i: frozenset(p) for i, p in parts.items()}, matchings
    )


def _coverable_classes(
    classes: Mapping[int, SimpleGraph], target: Iterable[int]
) -> dict[int, tuple[int, ...]] | None:
    t = sorted(set(target))
    parts, failed = _partition(t, classes, stop_on_failure=True)
    if failed:
        return None
    return _witness(classes, parts)


def coverable(g: ColoredMultigraph, target: Iterable[int]) -> dict[int, tuple[int, ...]] | None:
    """Per-color matchings jointly covering ``target``, or None when it is not coverable."""
    t = set(target)
    extra = t.difference(g.vertices)
    if extra:
        raise ValueError(f"vertices {sorted(extra)} are not in the graph")
    classes = {i: color_class(g, i) for i in range(1, g.k + 1)}
    return _coverable_classes(classes, t)


def coverable_with_forced(
    g: ColoredMultigraph,
    restricted: Mapping[int, Iterable[int]],
    forced: Sequence[int],
    target: Iterable[int],
) -> dict[int, tuple[int, ...]] | None:
    """Matchings N_i within ``restricted[i]`` that contain ``forced`` and cover ``target``.

    A forced edge uv of color c pins u and v in class c, so every other
    color-c edge at u or v is dropped and u, v leave the target.
    """
    allowed = {i: set(restricted.get(i, ())) for i in range(1, g.k + 1)}
    fe = [g.edge(e) for e in forced]
    if not 1 <= len(fe) <= 2:
        raise ValueError("need one or two forced edges")
    for e in fe:
        if e.id not in allowed[e.color]:
            raise ValueError(f"forced edge {e.id} is not in its restricted color class")
    if len(fe) == 2:
        a, b = fe
        shared = {a.u, a.v} & {b.u, b.v}
        if len(shared) != 1 or a.color == b.color:
            raise ValueError("two forced edges must share exactly one endpoint and differ in color")

    pinned: dict[int, set[int]] = {}
    for e in fe:
        pinned.setdefault(e.color, set()).update((e.u, e.v))
    classes = {}
    for i in range(1, g.k + 1):
        block = pinned.get(i, set())
        edges = []
        for eid in sorted(allowed[i]):
            e = g.edge(eid)
            if e.color != i:
                raise ValueError(f"edge {eid} listed under color {i} but has color {e.color}")
            if e.u in block or e.v in block:
                continue
            edges.append((eid, e.u, e.v))
        classes[i] = SimpleGraph(tuple(g.vertices), tuple(edges))
    rest = set(target) - {x for e in fe for x in (e.u, e.v)}
    found = _coverable_classes(classes, rest)
    if found is None:
        return None
    for e in fe:
        found[e.color] = tuple(sorted(found[e.color] + (e.id,)))
    return found
