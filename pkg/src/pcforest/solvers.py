"""Max-PF solvers: exact on 2-colored complete multigraphs, approximate elsewhere.

Three algorithms share the same starting point, a family of maximum
matchings (one per color) whose union covers as many vertices as possible:

``solve_complete_2color``
    Exact.  Absorbs the alternating cycles of M1 ∪ M2 into a path.
``solve_general``
    Local improvement on top of the matching union.  5/9 of the optimum in
    general, 4/7 for simple or 3-colored inputs, 3/5 for 2-colored inputs.
``solve_union_matchings``
    Spanning forest of the matching union.  3/4 (k = 2) and 5/8 (k = 3) on
    simple graphs.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Mapping

from .graph import (
    ColoredMultigraph,
    EdgeSubset,
    UnionFind,
    color_class,
    components,
    spanning_forest,
    verify_pc_forest,
)
from .hamiltonian import merge_path_cycle_factor
from .matching import matching_number
from .matroid_union import coverable_with_forced, max_coverable_set

__all__ = [
    "PreconditionError",
    "InvariantError",
    "SolveReport",
    "upper_bound_matchings",
    "solve_complete_2color",
    "merge_path_cycle_factor",
    "solve_general",
    "candidate_edges",
    "solve_union_matchings",
    "ratio_guarantee",
    "meets_ratio",
]


class PreconditionError(ValueError):
    """The instance does not satisfy the algorithm's input requirements."""


class InvariantError(AssertionError):
    """An internal invariant of a solver was violated (a bug, never user error)."""


@dataclass(frozen=True)
class SolveReport:
    forest: EdgeSubset
    size: int
    upper_bounds: tuple[tuple[str, int], ...]
    algorithm: str
    iterations: int = 0
    # Potential |U_s| + |comp(F)| at each pass through the loop head (solve_general only).
    potentials: tuple[int, ...] = field(default=(), compare=False)
    # Which branch produced the answer when an algorithm has several ("exact", "F1+F12", "F2").
    branch: str = ""

    @property
    def upper_bound(self) -> int:
        return min(v for _, v in self.upper_bounds)


def upper_bound_matchings(g: ColoredMultigraph) -> int:
    """Sum over colors of the maximum matching size in that color class."""
    return sum(matching_number(color_class(g, i)) for i in range(1, g.k + 1))


def _report(
    g: ColoredMultigraph, forest: Iterable[int], algorithm: str, U: frozenset[int], **extra
) -> SolveReport:
    ids = tuple(sorted(forest))
    verdict = verify_pc_forest(g, ids)
    if not verdict.valid:
        raise InvariantError(f"{algorithm}: output is not a properly colored forest ({verdict})")
    bounds = (
        ("sum-of-max-matchings", upper_bound_matchings(g)),
        ("coverable-minus-one", max(len(U) - 1, 0)),
    )
    report = SolveReport(ids, len(ids), bounds, algorithm, **extra)
    if report.size > report.upper_bound:
        raise InvariantError(f"{algorithm}: size {report.size} exceeds upper bound {report.upper_bound}")
    return report


# -- exact algorithm for 2-colored complete multigraphs ----------------------


def _split_paths_cycles(g: ColoredMultigraph, ids: Iterable[int]) -> tuple[list[list[int]], list[list[int]]]:
    ids = sorted(ids)
    by_comp: dict[frozenset[int], list[int]] = {}
    comps = components(g, ids)
    where = {v: c for c in comps for v in c}
    for eid in ids:
        by_comp.setdefault(where[g.edge(eid).u], []).append(eid)
    paths, cycles = [], []
    for c in comps:
        es = by_comp.get(c, [])
        (cycles if len(es) == len(c) else paths).append(es)
    return paths, cycles


def solve_complete_2color(g: ColoredMultigraph) -> SolveReport:
    """Maximum properly colored forest of a complete multigraph with at most two colors."""
    if g.k > 2 or any(e.color > 2 for e in g.edges):
        raise PreconditionError(f"needs at most 2 colors, instance declares k={g.k}")
    if not g.is_complete():
        raise PreconditionError("instance is not a complete multigraph")
    cert = max_coverable_set(g)
    F = set(cert.edges())
    if not F:
        return _report(g, (), "complete2", cert.U)
    paths, cycles = _split_paths_cycles(g, F)
    if not paths:
        first = min(F)
        host = next(c for c in cycles if first in c)
        rest = [c for c in cycles if c is not host]
        merged = merge_path_cycle_factor(g, [e for e in host if e != first], rest)
        F = set(merged)
    else:
        path = min(paths, key=min)
        merged = merge_path_cycle_factor(g, path, cycles)
        touched = set(path).union(*cycles)
        F = (F - touched) | set(merged)
    return _report(g, F, "complete2", cert.U)


# -- Algorithm for general multigraphs ---------------------------------------


def _colors_at(g: ColoredMultigraph, F: Iterable[int]) -> dict[int, set[int]]:
    at: dict[int, set[int]] = {}
    for eid in F:
        e = g.edge(eid)
        at.setdefault(e.u, set()).add(e.color)
        at.setdefault(e.v, set()).add(e.color)
    return at


def _check_matchings(g: ColoredMultigraph, F: Iterable[int], where: str) -> None:
    seen: set[tuple[int, int]] = set()
    for eid in F:
        e = g.edge(eid)
        for x in (e.u, e.v):
            if (x, e.color) in seen:
                raise InvariantError(f"{where}: two color-{e.color} edges of F meet at vertex {x}")
            seen.add((x, e.color))


def candidate_edges(
    g: ColoredMultigraph, F: Iterable[int], U_s: Iterable[int], U_r: Iterable[int]
) -> EdgeSubset:
    """Edges inside U_s, plus U_s–U_r edges whose color is free at the U_r end."""
    us, ur = set(U_s), set(U_r)
    if us & ur:
        raise ValueError("U_s and U_r must be disjoint")
    at = _colors_at(g, F)
    out = []
    for e in g.edges:
        if e.u in us and e.v in us:
            out.append(e.id)
        elif e.u in us and e.v in ur:
            if e.color not in at.get(e.v, ()):
                out.append(e.id)
        elif e.v in us and e.u in ur:
            if e.color not in at.get(e.u, ()):
                out.append(e.id)
    return tuple(out)


def _by_color(g: ColoredMultigraph, ids: Iterable[int]) -> dict[int, list[int]]:
    out: dict[int, list[int]] = {i: [] for i in range(1, g.k + 1)}
    for eid in ids:
        out[g.edge(eid).color].append(eid)
    return out


def _try_add_single(g: ColoredMultigraph, F: set[int]) -> int | None:
    """Lowest-id edge outside F whose color is free at both ends and joins two components."""
    at = _colors_at(g, F)
    uf = UnionFind(g.vertices)
    for eid in F:
        e = g.edge(eid)
        uf.union(e.u, e.v)
    for e in g.edges:
        if e.id in F:
            continue
        if e.color in at.get(e.u, ()) or e.color in at.get(e.v, ()):
            continue
        if uf.find(e.u) != uf.find(e.v):
            return e.id
    return None


def solve_general(g: ColoredMultigraph) -> SolveReport:
    """Local-improvement approximation for any edge-colored multigraph."""
    cert = max_coverable_set(g)
    U = cert.U
    F: set[int] = set(cert.edges())
    potentials: list[int] = []
    restarts = 0
    limit = 2 * g.n

    while True:
        comps = components(g, F)
        U_s = {v for c in comps if len(c) == 2 for v in c}
        covered_now = {v for c in comps for v in c}
        if covered_now != set(U):
            raise InvariantError("F no longer covers exactly the maximum coverable set")
        U_r = set(U) - U_s
        potential = len(U_s) + len(comps)
        if potentials and potential >= potentials[-1]:
            raise InvariantError(f"potential did not decrease: {potentials[-1]} -> {potential}")
        potentials.append(potential)
        if restarts > limit:
            raise InvariantError(f"more than {limit} restarts")

        in_r = {eid for eid in F if g.edge(eid).u in U_r}
        F = (F - in_r) | set(spanning_forest(g, in_r))
        F_s = F - in_r

        E_prime = candidate_edges(g, F, U_s, U_r)
        restricted = _by_color(g, E_prime)

        added = _try_add_single(g, F)
        if added is not None:
            F.add(added)
            _check_matchings(g, F, "single-edge step")
            restarts += 1
            continue

        improved = None
        for eid in E_prime:
            e = g.edge(eid)
            if (e.u in U_s) == (e.v in U_s):
                continue
            v = e.v if e.u in U_s else e.u
            found = coverable_with_forced(g, restricted, [eid], U_s | {v})
            if found is not None:
                improved = found
                break
        if improved is not None:
            F = (F - F_s) | {x for m in improved.values() for x in m}
            _check_matchings(g, F, "single-edge improvement")
            restarts += 1
            continue

        inner = [eid for eid in E_prime if g.edge(eid).u in U_s and g.edge(eid).v in U_s]
        inner_restricted = _by_color(g, inner)
        for a_pos, a in enumerate(inner):
            ea = g.edge(a)
            for b in inner[a_pos + 1 :]:
                eb = g.edge(b)
                if ea.color == eb.color or len({ea.u, ea.v} & {eb.u, eb.v}) != 1:
                    continue
                found = coverable_with_forced(g, inner_restricted, [a, b], U_s)
                if found is not None:
                    improved = found
                    break
            if improved is not None:
                break
        if improved is not None:
            F = (F - F_s) | {x for m in improved.values() for x in m}
            _check_matchings(g, F, "edge-pair improvement")
            restarts += 1
            continue
        break

    F_s = {eid for eid in F if g.edge(eid).u in U_s}
    F = (F - F_s) | set(spanning_forest(g, F_s))
    for c in components(g, F - F_s):
        if len(c) < 3 and c <= U_r:
            raise InvariantError(f"component {sorted(c)} of F[U_r] has fewer than 3 vertices")
    return _report(
        g, F, "general", U, iterations=restarts, potentials=tuple(potentials)
    )


# -- union of maximum matchings (simple graphs) ------------------------------


def solve_union_matchings(g: ColoredMultigraph) -> SolveReport:
    """Spanning forest of the coverage-maximizing union of maximum matchings."""
    if not g.is_simple():
        raise PreconditionError("instance has parallel edges; this algorithm needs a simple graph")
    cert = max_coverable_set(g)
    return _report(g, spanning_forest(g, cert.edges()), "simplek", cert.U)


# -- approximation guarantees ------------------------------------------------


def ratio_guarantee(algorithm: str, g: ColoredMultigraph) -> Fraction | None:
    """Proven worst-case ratio of ``algorithm`` on ``g`` (None when no guarantee applies).

    The ratio is keyed on the number of colors actually present, so an
    instance declaring k = 4 but using two colors gets the 2-color bound.
    """
    used = len(g.colors_used())
    if algorithm == "complete2":
        return Fraction(1)
    if algorithm == "general":
        if used <= 2:
            return Fraction(3, 5)
        if used == 3 or g.is_simple():
            return Fraction(4, 7)
        return Fraction(5, 9)
    if algorithm == "simplek":
        if used <= 2:
            return Fraction(3, 4)
        if used == 3:
            return Fraction(5, 8)
        return Fraction(1, 2)
    return None


def meets_ratio(size: int, optimum: int, ratio: Fraction) -> bool:
    """``size >= ceil(ratio * optimum)``, decided with integers only."""
    # size is an integer, so size >= ceil(r*opt) iff size >= r*opt.
    return size * ratio.denominator >= ratio.numerator * optimum
