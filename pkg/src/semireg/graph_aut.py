"""Automorphism groups and isomorphism testing by individualization-refinement.

The search tree is the usual one: refine to an equitable ordered partition,
pick the first largest non-singleton cell, individualize each of its vertices
in turn and refine again.  Each refinement emits a trace of the splits it
performed; the trace is a label-invariant fingerprint, so two nodes whose
traces differ cannot be related by an isomorphism.

``automorphism_group`` follows the first path to a leaf and then, level by
level from the bottom up, tries every vertex of the target cell that is not
already in the orbit of the first-path vertex.  A successful subtree search
yields an automorphism; a failed one proves the vertex lies in a different
orbit of the stabilizer.  The product of the final orbit sizes is the group
order.
"""
from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from typing import Hashable, Sequence

from ._config import vertex_ceiling
from .errors import TooLargeError
from .graphs import Graph
from .groups import PermutationGroup
from .perm import Permutation

__all__ = ["ColoredGraph", "automorphism_group", "are_isomorphic", "brute_force_automorphisms"]


@dataclass(frozen=True)
class ColoredGraph:
    graph: Graph
    colors: tuple[Hashable, ...]

    def __post_init__(self):
        if len(self.colors) != self.graph.n:
            raise ValueError(f"expected {self.graph.n} colors, got {len(self.colors)}")


class _Partition:
    """Ordered partition; a cell is identified by its start position."""

    __slots__ = ("elems", "pos", "cell_of", "cell_end", "ncells")

    def __init__(self, elems, pos, cell_of, cell_end, ncells):
        self.elems = elems
        self.pos = pos
        self.cell_of = cell_of
        self.cell_end = cell_end
        self.ncells = ncells

    @classmethod
    def from_colors(cls, n: int, colors: Sequence[Hashable] | None) -> "_Partition":
        if colors is None:
            keys = [0] * n
        else:
            ranks = {c: i for i, c in enumerate(sorted(set(colors), key=repr))}
            keys = [ranks[c] for c in colors]
        elems = sorted(range(n), key=lambda v: (keys[v], v))
        pos = [0] * n
        for i, v in enumerate(elems):
            pos[v] = i
        cell_of = [0] * n
        cell_end = [0] * n
        ncells = 0
        i = 0
        while i < n:
            j = i
            while j < n and keys[elems[j]] == keys[elems[i]]:
                cell_of[elems[j]] = i
                j += 1
            cell_end[i] = j
            ncells += 1
            i = j
        return cls(elems, pos, cell_of, cell_end, ncells)

    def copy(self) -> "_Partition":
        return _Partition(self.elems[:], self.pos[:], self.cell_of[:], self.cell_end[:], self.ncells)

    def cells(self) -> list[int]:
        out = []
        i = 0
        n = len(self.elems)
        while i < n:
            out.append(i)
            i = self.cell_end[i]
        return out

    def target(self) -> int:
        """Start of the first largest non-singleton cell, or -1 when discrete."""
        best, best_size = -1, 1
        i = 0
        n = len(self.elems)
        ce = self.cell_end
        while i < n:
            size = ce[i] - i
            if size > best_size:
                best, best_size = i, size
            i = ce[i]
        return best


def _refine(adj, P: _Partition, queue: list[int], cnt: list[int], expected=None):
    """Refine ``P`` in place to the coarsest equitable refinement.

    Returns the trace, or None as soon as it diverges from ``expected``.
    """
    elems, pos, cell_of, cell_end = P.elems, P.pos, P.cell_of, P.cell_end
    n = len(elems)
    in_q = set(queue)
    q = deque(queue)
    trace: list = []
    while q and P.ncells < n:
        s = q.popleft()
        in_q.discard(s)
        touched: list[int] = []
        for w in elems[s : cell_end[s]]:
            for u in adj[w]:
                if cnt[u] == 0:
                    touched.append(u)
                cnt[u] += 1
        by_cell: dict[int, list[int]] = {}
        for u in touched:
            by_cell.setdefault(cell_of[u], []).append(u)
        for c in sorted(by_cell):
            ce = cell_end[c]
            size = ce - c
            if size == 1:
                continue
            us = by_cell[c]
            groups: dict[int, list[int]] = {}
            for u in us:
                groups.setdefault(cnt[u], []).append(u)
            zero = size - len(us)
            if zero == 0 and len(groups) == 1:
                continue
            keys = sorted(groups)
            ptr = ce
            for k in reversed(keys):
                for u in groups[k]:
                    ptr -= 1
                    j = pos[u]
                    w = elems[ptr]
                    elems[ptr] = u
                    pos[u] = ptr
                    elems[j] = w
                    pos[w] = j
            frags = []
            start = c
            if zero:
                frags.append((c, zero))
                start += zero
            for k in keys:
                grp = groups[k]
                frags.append((start, len(grp)))
                for u in grp:
                    cell_of[u] = start
                start += len(grp)
            for fs, ln in frags:
                cell_end[fs] = fs + ln
            P.ncells += len(frags) - 1
            step = (s, c, zero, tuple((k, len(groups[k])) for k in keys))
            if expected is not None:
                t = len(trace)
                if t >= len(expected) or expected[t] != step:
                    for u in touched:
                        cnt[u] = 0
                    return None
            trace.append(step)
            if c in in_q:
                for fs, _ in frags[1:]:
                    q.append(fs)
                    in_q.add(fs)
            else:
                big = 0
                for i in range(1, len(frags)):
                    if frags[i][1] > frags[big][1]:
                        big = i
                for i, (fs, _) in enumerate(frags):
                    if i != big:
                        q.append(fs)
                        in_q.add(fs)
        for u in touched:
            cnt[u] = 0
    if expected is not None and len(trace) != len(expected):
        return None
    return trace


def _individualize(P: _Partition, v: int) -> int:
    c = P.cell_of[v]
    e = P.cell_end[c]
    elems, pos = P.elems, P.pos
    j = pos[v]
    w = elems[c]
    elems[c], elems[j] = v, w
    pos[v], pos[w] = c, j
    P.cell_end[c] = c + 1
    P.cell_end[c + 1] = e
    for u in elems[c + 1 : e]:
        P.cell_of[u] = c + 1
    P.ncells += 1
    return c


@dataclass
class _Level:
    part: _Partition      # partition before individualizing
    target: int
    cell: list[int]
    chosen: int
    trace: list


class _Tree:
    def __init__(self, graph: Graph, colors: Sequence[Hashable] | None):
        self.graph = graph
        self.n = graph.n
        self.adj = graph.adj
        self.cnt = [0] * self.n
        root = _Partition.from_colors(self.n, colors)
        self.root_trace = _refine(self.adj, root, root.cells(), self.cnt)
        self.root = root

    def child(self, P: _Partition, v: int, expected=None):
        Q = P.copy()
        c = _individualize(Q, v)
        tr = _refine(self.adj, Q, [c], self.cnt, expected)
        return Q, tr

    def first_path(self) -> tuple[list[_Level], list[int]]:
        levels = []
        P = self.root
        while True:
            t = P.target()
            if t < 0:
                return levels, P.elems
            cell = sorted(P.elems[t : P.cell_end[t]])
            v = cell[0]
            Q, tr = self.child(P, v)
            levels.append(_Level(P, t, cell, v, tr))
            P = Q


def _orbit_partition(n: int, gens: list[Permutation]) -> list[int]:
    parent = list(range(n))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for g in gens:
        im = g.images
        for i in range(n):
            a, b = find(i), find(im[i])
            if a != b:
                if a < b:
                    parent[b] = a
                else:
                    parent[a] = b
    return [find(i) for i in range(n)]


def _check_size(n: int) -> None:
    limit = vertex_ceiling()
    if n > limit:
        raise TooLargeError("graph for automorphism search", n, limit)


def automorphism_group(graph: Graph, colors: Sequence[Hashable] | None = None) -> PermutationGroup:
    """Full automorphism group of ``graph`` (colour-preserving if ``colors`` given).

    Every generator is checked to preserve the edge set.  The order is the
    product of the orbit sizes found along the first path, and the returned
    group carries that order together with the matching base.
    """
    n = graph.n
    if n < 1:
        raise ValueError("graph must have at least one vertex")
    _check_size(n)
    tree = _Tree(graph, colors)
    levels, leaf1 = tree.first_path()
    k = len(levels)
    gens: list[Permutation] = []

    def search(P: _Partition, i: int, v: int) -> Permutation | None:
        Q, tr = tree.child(P, v, levels[i].trace)
        if tr is None:
            return None
        if i + 1 == k:
            images = [0] * n
            for a, b in zip(leaf1, Q.elems):
                images[a] = b
            g = Permutation._trusted(tuple(images))
            return g if graph.automorphism_violation(g) is None else None
        nxt = levels[i + 1]
        t = Q.target()
        if t != nxt.target:
            return None
        for w in sorted(Q.elems[t : Q.cell_end[t]]):
            g = search(Q, i + 1, w)
            if g is not None:
                return g
        return None

    order = 1
    for i in range(k - 1, -1, -1):
        lv = levels[i]
        root_of = _orbit_partition(n, gens)
        failed: set[int] = set()
        for v in lv.cell:
            if root_of[v] == root_of[lv.chosen] or root_of[v] in failed:
                continue
            g = search(lv.part, i, v)
            if g is None:
                failed.add(root_of[v])
            else:
                gens.append(g)
                root_of = _orbit_partition(n, gens)
                failed = {root_of[x] for x in failed}
        b = root_of[lv.chosen]
        order *= sum(1 for v in range(n) if root_of[v] == b)

    for g in gens:
        bad = graph.automorphism_violation(g)
        if bad is not None:  # pragma: no cover - guarded above
            raise AssertionError(f"search produced a non-automorphism moving edge {bad}")
        if colors is not None and any(colors[x] != colors[g[x]] for x in range(n)):
            raise AssertionError("search produced a colour-changing permutation")
    base = [lv.chosen for lv in levels]
    return PermutationGroup(n, gens, name="Aut", base=base, known_order=order)


def are_isomorphic(
    g1: Graph,
    g2: Graph,
    colors1: Sequence[Hashable] | None = None,
    colors2: Sequence[Hashable] | None = None,
    aut2: PermutationGroup | None = None,
) -> Permutation | None:
    """A bijection ``phi`` with ``{u,v}`` an edge of ``g1`` iff ``{phi(u),phi(v)}`` is an edge of ``g2``.

    Returns None when the graphs are not isomorphic.  The search in ``g2`` is
    pruned by orbits of point stabilizers in ``Aut(g2)``; pass ``aut2`` to
    reuse a precomputed group.
    """
    if g1.n != g2.n or g1.m != g2.m:
        return None
    if sorted(g1.degrees()) != sorted(g2.degrees()):
        return None
    if (colors1 is None) != (colors2 is None):
        raise ValueError("give colours for both graphs or neither")
    if colors1 is not None and sorted(map(repr, colors1)) != sorted(map(repr, colors2)):
        return None
    n = g1.n
    if n == 0:
        return None
    _check_size(n)
    t1 = _Tree(g1, colors1)
    t2 = _Tree(g2, colors2)
    if t1.root_trace != t2.root_trace or t1.root.cells() != t2.root.cells():
        return None
    levels, leaf1 = t1.first_path()
    k = len(levels)
    if aut2 is None:
        aut2 = automorphism_group(g2, colors2)
    stab_cache: dict[tuple[int, ...], list[int]] = {}

    def orbit_roots(prefix: tuple[int, ...]) -> list[int]:
        roots = stab_cache.get(prefix)
        if roots is None:
            stab = aut2.pointwise_stabilizer(list(prefix)) if prefix else aut2
            roots = _orbit_partition(n, list(stab.generators))
            stab_cache[prefix] = roots
        return roots

    es2 = g2.edge_set

    def leaf_map(elems2: list[int]) -> Permutation | None:
        images = [0] * n
        for a, b in zip(leaf1, elems2):
            images[a] = b
        for u, v in g1.edges:
            a, b = images[u], images[v]
            if ((a, b) if a < b else (b, a)) not in es2:
                return None
        return Permutation._trusted(tuple(images))

    def search(P: _Partition, i: int, prefix: tuple[int, ...]) -> Permutation | None:
        if i == k:
            return leaf_map(P.elems)
        lv = levels[i]
        t = P.target()
        if t != lv.target:
            return None
        roots = orbit_roots(prefix)
        tried: set[int] = set()
        for w in sorted(P.elems[t : P.cell_end[t]]):
            if roots[w] in tried:
                continue
            tried.add(roots[w])
            Q, tr = t2.child(P, w, lv.trace)
            if tr is None:
                continue
            res = search(Q, i + 1, prefix + (w,))
            if res is not None:
                return res
        return None

    if k == 0:
        return leaf_map(t2.root.elems)
    return search(t2.root, 0, ())


def brute_force_automorphisms(graph: Graph) -> list[Permutation]:
    """All automorphisms by exhaustive backtracking (oracle for small graphs)."""
    n = graph.n
    adj = [set(a) for a in graph.adj]
    deg = [len(a) for a in adj]
    out: list[Permutation] = []
    images = [-1] * n
    used = [False] * n

    def extend(v: int) -> None:
        if v == n:
            out.append(Permutation(images))
            return
        for w in range(n):
            if used[w] or deg[w] != deg[v]:
                continue
            ok = True
            for u in range(v):
                if (u in adj[v]) != (images[u] in adj[w]):
                    ok = False
                    break
            if ok:
                images[v] = w
                used[w] = True
                extend(v + 1)
                used[w] = False
        images[v] = -1

    extend(0)
    return out
