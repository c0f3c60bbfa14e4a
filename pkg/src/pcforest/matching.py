"""Matchings in general graphs and the matching-matroid rank oracle.

Two engines live here: Edmonds' blossom algorithm for maximum cardinality and
a primal-dual blossom algorithm for maximum weight with integer weights.  Both
are deterministic given the edge order of the input graph.
"""

from __future__ import annotations

from collections import deque
from typing import Iterable, Mapping

from .graph import SimpleGraph


def _index(h: SimpleGraph) -> tuple[dict[int, int], list[tuple[int, int, int]]]:
    pos = {v: i for i, v in enumerate(h.vertices)}
    edges = []
    for eid, u, v in h.edges:
        if u == v:
            raise ValueError(f"loop edge {eid}")
        edges.append((eid, pos[u], pos[v]))
    return pos, edges


def _edge_ids(edges, mate: list[int]) -> tuple[int, ...]:
    return tuple(sorted(eid for eid, a, b in edges if mate[a] == b))


# ---------------------------------------------------------------------------
# maximum cardinality


def _augment_from(root: int, adj: list[list[int]], mate: list[int]) -> bool:
    """Search an augmenting path from the free vertex ``root``; flip it if found."""
    nv = len(adj)
    used = [False] * nv
    parent = [-1] * nv
    base = list(range(nv))
    used[root] = True
    queue = deque([root])

    def lca(a: int, b: int) -> int:
        seen = [False] * nv
        while True:
            a = base[a]
            seen[a] = True
            if mate[a] == -1:
                break
            a = parent[mate[a]]
        while True:
            b = base[b]
            if seen[b]:
                return b
            b = parent[mate[b]]

    def mark(v: int, b: int, child: int, blossom: list[bool]) -> None:
        while base[v] != b:
            blossom[base[v]] = blossom[base[mate[v]]] = True
            parent[v] = child
            child = mate[v]
            v = parent[mate[v]]

    while queue:
        v = queue.popleft()
        for to in adj[v]:
            if base[v] == base[to] or mate[v] == to:
                continue
            if to == root or (mate[to] != -1 and parent[mate[to]] != -1):
                cur = lca(v, to)
                blossom = [False] * nv
                mark(v, cur, to, blossom)
                mark(to, cur, v, blossom)
                for i in range(nv):
                    if blossom[base[i]]:
                        base[i] = cur
                        if not used[i]:
                            used[i] = True
                            queue.append(i)
            elif parent[to] == -1:
                parent[to] = v
                if mate[to] == -1:
                    x = to
                    while x != -1:
                        px = parent[x]
                        nxt = mate[px]
                        mate[x] = px
                        mate[px] = x
                        x = nxt
                    return True
                used[mate[to]] = True
                queue.append(mate[to])
    return False


def _max_cardinality_mate(nv: int, edges: Iterable[tuple[int, int]]) -> list[int]:
    adj: list[list[int]] = [[] for _ in range(nv)]
    mate = [-1] * nv
    for a, b in edges:
        adj[a].append(b)
        adj[b].append(a)
        # greedy start in edge order
        if mate[a] == -1 and mate[b] == -1:
            mate[a], mate[b] = b, a
    for root in range(nv):
        if mate[root] == -1:
            _augment_from(root, adj, mate)
    return mate


def max_matching(h: SimpleGraph) -> tuple[int, ...]:
    """Maximum-cardinality matching of ``h`` as a sorted tuple of edge ids."""
    _, edges = _index(h)
    mate = _max_cardinality_mate(len(h.vertices), ((a, b) for _, a, b in edges))
    return _edge_ids(edges, mate)


def matching_number(h: SimpleGraph) -> int:
    return len(max_matching(h))


# ---------------------------------------------------------------------------
# maximum weight


class _WeightedBlossom:
    """Primal-dual maximum weight matching (Edmonds, with Galil's bookkeeping).

    Dual variables are stored doubled so integer weights keep every quantity
    integral.  Blossoms are numbered ``nv .. 2*nv-1``; an endpoint ``p`` of
    edge ``p // 2`` is vertex ``endpoint[p]``.
    """

    def __init__(self, nv: int, edges: list[tuple[int, int, int]]):
        self.nv = nv
        self.edges = edges
        ne = len(edges)
        maxw = max(0, max(w for _, _, w in edges))
        self.endpoint = [edges[p // 2][p % 2] for p in range(2 * ne)]
        self.neighbend: list[list[int]] = [[] for _ in range(nv)]
        for k, (i, j, _) in enumerate(edges):
            self.neighbend[i].append(2 * k + 1)
            self.neighbend[j].append(2 * k)
        self.mate = [-1] * nv
        self.label = [0] * (2 * nv)
        self.labelend = [-1] * (2 * nv)
        self.inblossom = list(range(nv))
        self.blossomparent = [-1] * (2 * nv)
        self.blossomchilds: list[list[int] | None] = [None] * (2 * nv)
        self.blossombase = list(range(nv)) + [-1] * nv
        self.blossomendps: list[list[int] | None] = [None] * (2 * nv)
        self.bestedge = [-1] * (2 * nv)
        self.blossombestedges: list[list[int] | None] = [None] * (2 * nv)
        self.unusedblossoms = list(range(nv, 2 * nv))
        self.dualvar = [maxw] * nv + [0] * nv
        self.allowedge = [False] * ne
        self.queue: list[int] = []

    def slack(self, k: int) -> int:
        i, j, w = self.edges[k]
        return self.dualvar[i] + self.dualvar[j] - 2 * w

    def leaves(self, b: int):
        if b < self.nv:
            yield b
            return
        for t in self.blossomchilds[b]:
            if t < self.nv:
                yield t
            else:
                yield from self.leaves(t)

    def assign_label(self, w: int, t: int, p: int) -> None:
        b = self.inblossom[w]
        self.label[w] = self.label[b] = t
        self.labelend[w] = self.labelend[b] = p
        self.bestedge[w] = self.bestedge[b] = -1
        if t == 1:
            self.queue.extend(self.leaves(b))
        elif t == 2:
            base = self.blossombase[b]
            mb = self.mate[base]
            self.assign_label(self.endpoint[mb], 1, mb ^ 1)

    def scan_blossom(self, v: int, w: int) -> int:
        """Trace back from v and w; return the new blossom base or -1 on augment."""
        label, labelend, endpoint, inblossom = (
            self.label,
            self.labelend,
            self.endpoint,
            self.inblossom,
        )
        path = []
        base = -1
        while v != -1 or w != -1:
            b = inblossom[v]
            if label[b] & 4:
                base = self.blossombase[b]
                break
            path.append(b)
            label[b] = 5
            if labelend[b] == -1:
                v = -1
            else:
                v = endpoint[labelend[b]]
                b = inblossom[v]
                v = endpoint[labelend[b]]
            if w != -1:
                v, w = w, v
        for b in path:
            label[b] = 1
        return base

    def add_blossom(self, base: int, k: int) -> None:
        v, w, _ = self.edges[k]
        inblossom, labelend, endpoint = self.inblossom, self.labelend, self.endpoint
        bb = inblossom[base]
        bv = inblossom[v]
        bw = inblossom[w]
        b = self.unusedblossoms.pop()
        self.blossombase[b] = base
        self.blossomparent[b] = -1
        self.blossomparent[bb] = b
        path: list[int] = []
        endps: list[int] = []
        while bv != bb:
            self.blossomparent[bv] = b
            path.append(bv)
            endps.append(labelend[bv])
            v = endpoint[labelend[bv]]
            bv = inblossom[v]
        path.append(bb)
        path.reverse()
        endps.reverse()
        endps.append(2 * k)
        while bw != bb:
            self.blossomparent[bw] = b
            path.append(bw)
            endps.append(labelend[bw] ^ 1)
            w = endpoint[labelend[bw]]
            bw = inblossom[w]
        self.blossomchilds[b] = path
        self.blossomendps[b] = endps
        self.label[b] = 1
        labelend[b] = labelend[bb]
        self.dualvar[b] = 0
        for x in list(self.leaves(b)):
            if self.label[inblossom[x]] == 2:
                self.queue.append(x)
            inblossom[x] = b
        bestedgeto = [-1] * (2 * self.nv)
        for sub in path:
            if self.blossombestedges[sub] is None:
                nblists = [[p // 2 for p in self.neighbend[x]] for x in self.leaves(sub)]
            else:
                nblists = [self.blossombestedges[sub]]
            for nblist in nblists:
                for kk in nblist:
                    i, j, _ = self.edges[kk]
                    if inblossom[j] == b:
                        i, j = j, i
                    bj = inblossom[j]
                    if (
                        bj != b
                        and self.label[bj] == 1
                        and (bestedgeto[bj] == -1 or self.slack(kk) < self.slack(bestedgeto[bj]))
                    ):
                        bestedgeto[bj] = kk
            self.blossombestedges[sub] = None
            self.bestedge[sub] = -1
        self.blossombestedges[b] = [kk for kk in bestedgeto if kk != -1]
        self.bestedge[b] = -1
        for kk in self.blossombestedges[b]:
            if self.bestedge[b] == -1 or self.slack(kk) < self.slack(self.bestedge[b]):
                self.bestedge[b] = kk

    def expand_blossom(self, b: int, endstage: bool) -> None:
        nv = self.nv
        label, labelend, endpoint = self.label, self.labelend, self.endpoint
        for s in self.blossomchilds[b]:
            self.blossomparent[s] = -1
            if s < nv:
                self.inblossom[s] = s
            elif endstage and self.dualvar[s] == 0:
                self.expand_blossom(s, endstage)
            else:
                for x in self.leaves(s):
                    self.inblossom[x] = s
        if not endstage and label[b] == 2:
            childs = self.blossomchilds[b]
            endps = self.blossomendps[b]
            entrychild = self.inblossom[endpoint[labelend[b] ^ 1]]
            j = childs.index(entrychild)
            if j & 1:
                j -= len(childs)
                jstep, endptrick = 1, 0
            else:
                jstep, endptrick = -1, 1
            p = labelend[b]
            while j != 0:
                label[endpoint[p ^ 1]] = 0
                label[endpoint[endps[j - endptrick] ^ endptrick ^ 1]] = 0
                self.assign_label(endpoint[p ^ 1], 2, p)
                self.allowedge[endps[j - endptrick] // 2] = True
                j += jstep
                p = endps[j - endptrick] ^ endptrick
                self.allowedge[p // 2] = True
                j += jstep
            bv = childs[j]
            label[endpoint[p ^ 1]] = label[bv] = 2
            labelend[endpoint[p ^ 1]] = labelend[bv] = p
            self.bestedge[bv] = -1
            j += jstep
            while childs[j] != entrychild:
                bv = childs[j]
                if label[bv] == 1:
                    j += jstep
                    continue
                reached = -1
                for x in self.leaves(bv):
                    if label[x] != 0:
                        reached = x
                        break
                if reached != -1:
                    label[reached] = 0
                    label[endpoint[self.mate[self.blossombase[bv]]]] = 0
                    self.assign_label(reached, 2, labelend[reached])
                j += jstep
        label[b] = labelend[b] = -1
        self.blossomchilds[b] = self.blossomendps[b] = None
        self.blossombase[b] = -1
        self.blossombestedges[b] = None
        self.bestedge[b] = -1
        self.unusedblossoms.append(b)

    def augment_blossom(self, b: int, v: int) -> None:
        t = v
        while self.blossomparent[t] != b:
            t = self.blossomparent[t]
        if t >= self.nv:
            self.augment_blossom(t, v)
        childs = self.blossomchilds[b]
        endps = self.blossomendps[b]
        i = j = childs.index(t)
        if i & 1:
            j -= len(childs)
            jstep, endptrick = 1, 0
        else:
            jstep, endptrick = -1, 1
        endpoint = self.endpoint
        while j != 0:
            j += jstep
            t = childs[j]
            p = endps[j - endptrick] ^ endptrick
            if t >= self.nv:
                self.augment_blossom(t, endpoint[p])
            j += jstep
            t = childs[j]
            if t >= self.nv:
                self.augment_blossom(t, endpoint[p ^ 1])
            self.mate[endpoint[p]] = p ^ 1
            self.mate[endpoint[p ^ 1]] = p
        self.blossomchilds[b] = childs[i:] + childs[:i]
        self.blossomendps[b] = endps[i:] + endps[:i]
        self.blossombase[b] = self.blossombase[self.blossomchilds[b][0]]

    def augment_matching(self, k: int) -> None:
        v, w, _ = self.edges[k]
        endpoint, inblossom, labelend = self.endpoint, self.inblossom, self.labelend
        for s, p in ((v, 2 * k + 1), (w, 2 * k)):
            while True:
                bs = inblossom[s]
                if bs >= self.nv:
                    self.augment_blossom(bs, s)
                self.mate[s] = p
                if labelend[bs] == -1:
                    break
                t = endpoint[labelend[bs]]
                bt = inblossom[t]
                s = endpoint[labelend[bt]]
                j = endpoint[labelend[bt] ^ 1]
                if bt >= self.nv:
                    self.augment_blossom(bt, j)
                self.mate[j] = labelend[bt]
                p = labelend[bt] ^ 1

    def run(self) -> list[int]:
        nv = self.nv
        label, inblossom, dualvar = self.label, self.inblossom, self.dualvar
        for _ in range(nv):
            label[:] = [0] * (2 * nv)
            self.bestedge[:] = [-1] * (2 * nv)
            self.blossombestedges[nv:] = [None] * nv
            self.allowedge[:] = [False] * len(self.edges)
            self.queue[:] = []
            for v in range(nv):
                if self.mate[v] == -1 and label[inblossom[v]] == 0:
                    self.assign_label(v, 1, -1)
            augmented = False
            while True:
                while self.queue and not augmented:
                    v = self.queue.pop()
                    for p in self.neighbend[v]:
                        k = p // 2
                        w = self.endpoint[p]
                        if inblossom[v] == inblossom[w]:
                            continue
                        kslack = 0
                        if not self.allowedge[k]:
                            kslack = self.slack(k)
                            if kslack <= 0:
                                self.allowedge[k] = True
                        if self.allowedge[k]:
                            if label[inblossom[w]] == 0:
                                self.assign_label(w, 2, p ^ 1)
                            elif label[inblossom[w]] == 1:
                                base = self.scan_blossom(v, w)
                                if base >= 0:
                                    self.add_blossom(base, k)
                                else:
                                    self.augment_matching(k)
                                    augmented = True
                                    break
                            elif label[w] == 0:
                                label[w] = 2
                                self.labelend[w] = p ^ 1
                        elif label[inblossom[w]] == 1:
                            b = inblossom[v]
                            if self.bestedge[b] == -1 or kslack < self.slack(self.bestedge[b]):
                                self.bestedge[b] = k
                        elif label[w] == 0:
                            if self.bestedge[w] == -1 or kslack < self.slack(self.bestedge[w]):
                                self.bestedge[w] = k
                if augmented:
                    break

                # No augmenting path with tight edges: adjust the duals.
                deltatype = 1
                delta = min(dualvar[:nv])
                deltaedge = deltablossom = -1
                for v in range(nv):
                    if label[inblossom[v]] == 0 and self.bestedge[v] != -1:
                        d = self.slack(self.bestedge[v])
                        if d < delta:
                            delta, deltatype, deltaedge = d, 2, self.bestedge[v]
                for b in range(2 * nv):
                    if self.blossomparent[b] == -1 and label[b] == 1 and self.bestedge[b] != -1:
                        kslack = self.slack(self.bestedge[b])
                        assert kslack % 2 == 0
                        d = kslack // 2
                        if d < delta:
                            delta, deltatype, deltaedge = d, 3, self.bestedge[b]
                for b in range(nv, 2 * nv):
                    if (
                        self.blossombase[b] >= 0
                        and self.blossomparent[b] == -1
                        and label[b] == 2
                        and dualvar[b] < delta
                    ):
                        delta, deltatype, deltablossom = dualvar[b], 4, b
                for v in range(nv):
                    lb = label[inblossom[v]]
                    if lb == 1:
                        dualvar[v] -= delta
                    elif lb == 2:
                        dualvar[v] += delta
                for b in range(nv, 2 * nv):
                    if self.blossombase[b] >= 0 and self.blossomparent[b] == -1:
                        if label[b] == 1:
                            dualvar[b] += delta
                        elif label[b] == 2:
                            dualvar[b] -= delta
                if deltatype == 1:
                    break
                if deltatype == 2:
                    self.allowedge[deltaedge] = True
                    i, j, _ = self.edges[deltaedge]
                    if label[inblossom[i]] == 0:
                        i, j = j, i
                    self.queue.append(i)
                elif deltatype == 3:
                    self.allowedge[deltaedge] = True
                    i, j, _ = self.edges[deltaedge]
                    self.queue.append(i)
                else:
                    self.expand_blossom(deltablossom, False)
            if not augmented:
                break
            for b in range(nv, 2 * nv):
                if (
                    self.blossomparent[b] == -1
                    and self.blossombase[b] >= 0
                    and label[b] == 1
                    and dualvar[b] == 0
                ):
                    self.expand_blossom(b, True)
        return [self.endpoint[p] if p >= 0 else -1 for p in self.mate]


def max_weight_matching(h: SimpleGraph, weights: Mapping[int, int]) -> tuple[int, ...]:
    """Matching of ``h`` maximizing the total of nonnegative integer ``weights``.

    Edges of weight 0 never enter the result.
    """
    pos, indexed = _index(h)
    edges = []
    ids = []
    for eid, a, b in indexed:
        w = weights[eid]
        if w < 0 or w != int(w):
            raise ValueError(f"edge {eid}: weight must be a nonnegative integer")
        if w > 0:
            edges.append((a, b, int(w)))
            ids.append((eid, a, b))
    if not edges:
        return ()
    mate = _WeightedBlossom(len(pos), edges).run()
    return _edge_ids(ids, mate)


# ---------------------------------------------------------------------------
# matching matroid


def covered(h: SimpleGraph, matching: Iterable[int]) -> set[int]:
    ends = {eid: (u, v) for eid, u, v in h.edges}
    out: set[int] = set()
    for eid in matching:
        out.update(ends[eid])
    return out


def matroid_rank(h: SimpleGraph, x: Iterable[int]) -> int:
    """Largest number of vertices of ``x`` that one matching of ``h`` can cover."""
    xs = set(x)
    _check_subset(h, xs)
    w = {eid: (u in xs) + (v in xs) for eid, u, v in h.edges}
    m = max_weight_matching(h, w)
    return sum(w[e] for e in m)


def max_matching_covering(h: SimpleGraph, x: Iterable[int]) -> tuple[int, ...] | None:
    """A maximum-cardinality matching among those covering ``x``; None if none covers it."""
    xs = set(x)
    _check_subset(h, xs)
    big = len(h.edges) + 1
    w = {eid: big * ((u in xs) + (v in xs)) + 1 for eid, u, v in h.edges}
    m = max_weight_matching(h, w)
    if not xs <= covered(h, m):
        return None
    return m


def covers(h: SimpleGraph, x: Iterable[int]) -> bool:
    """Independence test of the matching matroid: is ``x`` covered by some matching?

    Reduced to a perfect-matching question: vertices outside ``x`` may pair
    with fresh filler vertices, and the fillers pair among themselves.
    """
    xs = set(x)
    _check_subset(h, xs)
    if not xs:
        return True
    pos, indexed = _index(h)
    nv = len(pos)
    pairs = [(a, b) for _, a, b in indexed]
    deg = [0] * nv
    for a, b in pairs:
        deg[a] += 1
        deg[b] += 1
    if any(deg[pos[v]] == 0 for v in xs):
        return False
    free = [pos[v] for v in h.vertices if v not in xs]
    nfill = len(free) + (len(xs) % 2)
    fill = range(nv, nv + nfill)
    pairs += [(y, z) for y in free for z in fill]
    pairs += [(z1, z2) for z1 in fill for z2 in fill if z1 < z2]
    mate = _max_cardinality_mate(nv + nfill, pairs)
    return all(m != -1 for m in mate)


def _check_subset(h: SimpleGraph, xs: set[int]) -> None:
    extra = xs.difference(h.vertices)
    if extra:
        raise ValueError(f"vertices {sorted(extra)} are not in the graph")
