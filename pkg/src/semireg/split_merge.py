"""Splitting 4-valent graphs along cycle partitions, and merging cubic ones back.

``split(host, partition)`` has one vertex ``(a, C)`` for every vertex ``a``
of the host and each of the two classes ``C`` through it; ``(a, C)`` is
joined to ``(a, D)`` and to ``(b, C)`` whenever ``ab`` is an edge of ``C``.
``merge`` inverts this for a cubic graph with a vertex-transitive group whose
vertex stabilizer fixes exactly one neighbour: the fixed neighbours form a
perfect matching, and contracting it gives the host back.
"""
from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Iterable, Sequence

from .constructions import circular_ladder, mobius_ladder, px, px_groups, px_vertex_index
from .graph_aut import are_isomorphic
from .graphs import Graph, induced_action_on_blocks
from .groups import PermutationGroup
from .perm import Permutation

__all__ = [
    "CyclePartition",
    "split",
    "split_index",
    "lift_to_split",
    "Merged",
    "Degenerate",
    "NotApplicable",
    "merge",
    "s_partition",
    "split_px",
    "split_px_groups",
    "SplitPXGroups",
    "super_flip",
    "round_trip_witness",
]

Edge = tuple[int, int]


def _norm(e: Sequence[int]) -> Edge:
    u, v = int(e[0]), int(e[1])
    return (u, v) if u < v else (v, u)


class CyclePartition:
    """Partition of the edges of a 4-valent graph into cycles.

    Classes are stored as sorted edge tuples and ordered by their least edge.
    """

    def __init__(self, host: Graph, classes: Iterable[Iterable[Sequence[int]]]):
        cls = [tuple(sorted(_norm(e) for e in c)) for c in classes]
        cls.sort(key=lambda c: c[0] if c else (-1, -1))
        self.host = host
        self.classes: tuple[tuple[Edge, ...], ...] = tuple(cls)
        self._validate()
        self.class_of: dict[Edge, int] = {e: k for k, c in enumerate(self.classes) for e in c}

    def _validate(self) -> None:
        host = self.host
        if not host.is_regular(4):
            raise ValueError("host graph must be 4-valent")
        seen: dict[Edge, int] = {}
        for k, c in enumerate(self.classes):
            if not c:
                raise ValueError(f"class {k} is empty")
            for e in c:
                if not host.has_edge(*e):
                    raise ValueError(f"class {k} contains non-edge {e}")
                if e in seen:
                    raise ValueError(f"edge {e} lies in classes {seen[e]} and {k}")
                seen[e] = k
            verts = {v for e in c for v in e}
            sub = Graph(host.n, c)
            if any(sub.valency(v) != 2 for v in verts):
                raise ValueError(f"class {k} is not 2-regular")
            start = c[0][0]
            reach = [v for v, d in enumerate(sub.distances_from(start)) if d >= 0]
            if set(reach) != verts:
                raise ValueError(f"class {k} is not a single cycle")
        if len(seen) != host.m:
            missing = sorted(set(host.edges) - set(seen))[0]
            raise ValueError(f"edge {missing} is in no class")

    def classes_at(self, v: int) -> tuple[int, int]:
        ks = sorted({self.class_of[_norm((v, w))] for w in self.host.neighbors(v)})
        if len(ks) != 2:
            raise ValueError(f"vertex {v} lies on {len(ks)} classes, expected 2")
        return ks[0], ks[1]

    def __len__(self) -> int:
        return len(self.classes)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, CyclePartition):
            return NotImplemented
        return self.host == other.host and self.classes == other.classes

    def image(self, g: Permutation) -> "CyclePartition":
        return CyclePartition(self.host, [[(g[u], g[v]) for u, v in c] for c in self.classes])

    def is_invariant(self, g: Permutation) -> bool:
        return self.image(g).classes == self.classes

    def to_json(self) -> str:
        return json.dumps([[list(e) for e in c] for c in self.classes])

    @classmethod
    def from_json(cls, host: Graph, text: str) -> "CyclePartition":
        return cls(host, json.loads(text))


def split_index(partition: CyclePartition) -> list[tuple[int, int]]:
    """Split vertices ``(base, class)`` in their canonical order."""
    out = []
    for v in range(partition.host.n):
        a, b = partition.classes_at(v)
        out.append((v, a))
        out.append((v, b))
    return out


def split(host: Graph, partition: CyclePartition) -> Graph:
    """The cubic graph s(host, partition) on ``2 |V host|`` vertices."""
    if partition.host != host:
        raise ValueError("partition belongs to a different host graph")
    verts = split_index(partition)
    index = {sv: i for i, sv in enumerate(verts)}
    edges = []
    for v in range(host.n):
        a, b = partition.classes_at(v)
        edges.append((index[(v, a)], index[(v, b)]))
    for k, c in enumerate(partition.classes):
        for u, v in c:
            edges.append((index[(u, k)], index[(v, k)]))
    if host.labels is not None:
        labels = [(host.labels[v], k) for v, k in verts]
    else:
        labels = verts
    g = Graph(len(verts), edges, labels)
    assert g.n == 2 * host.n and g.is_regular(3), "split graph must be cubic on twice the vertices"
    return g


def lift_to_split(g: Permutation, partition: CyclePartition) -> Permutation:
    """Action of a partition-preserving host automorphism on the split graph."""
    verts = split_index(partition)
    index = {sv: i for i, sv in enumerate(verts)}
    host = partition.host
    class_img = {}
    for k, c in enumerate(partition.classes):
        u, v = c[0]
        kk = partition.class_of.get(_norm((g[u], g[v])))
        if kk is None:
            raise ValueError(f"permutation maps edge {(u, v)} to a non-edge")
        class_img[k] = kk
    if host.automorphism_violation(g) is not None or not partition.is_invariant(g):
        raise ValueError("permutation does not preserve the cycle partition")
    return Permutation([index[(g[v], class_img[k])] for v, k in verts])


# -- merging ----------------------------------------------------------------


@dataclass(frozen=True)
class Merged:
    delta: Graph
    partition: CyclePartition
    matching: tuple[Edge, ...]
    block_of: tuple[int, ...]
    action: PermutationGroup
    kernel_order: int


@dataclass(frozen=True)
class Degenerate:
    family: str     # "circular" or "mobius"
    n: int


@dataclass(frozen=True)
class NotApplicable:
    reason: str
    local_orbit_sizes: tuple[int, ...] = field(default=())


def _ladder_family(graph: Graph) -> Degenerate | None:
    if graph.n % 2:
        return None
    h = graph.n // 2
    if h >= 3 and are_isomorphic(graph, circular_ladder(h)) is not None:
        return Degenerate("circular", h)
    if h >= 2 and are_isomorphic(graph, mobius_ladder(h)) is not None:
        return Degenerate("mobius", h)
    return None


def _arc_transitive(graph: Graph, G: PermutationGroup) -> bool:
    if graph.m == 0:
        return True
    u, v = graph.edges[0]
    seen = {(u, v)}
    frontier = [(u, v)]
    gens = G.generators
    while frontier:
        nxt = []
        for a, b in frontier:
            for g in gens:
                arc = (g[a], g[b])
                if arc not in seen:
                    seen.add(arc)
                    nxt.append(arc)
        frontier = nxt
    return len(seen) == 2 * graph.m


def merge(graph: Graph, G: PermutationGroup) -> Merged | Degenerate | NotApplicable:
    """Contract the matching of neighbours fixed by vertex stabilizers.

    Returns :class:`Merged` with the 4-valent graph and its cycle partition,
    :class:`Degenerate` for circular and Mobius ladders, or
    :class:`NotApplicable` when the stabilizer does not act on the three
    neighbours with orbits of sizes 1 and 2.
    """
    if not graph.is_cubic() or not graph.is_connected():
        raise ValueError("merge needs a connected cubic graph")
    if G.degree != graph.n:
        raise ValueError(f"group degree {G.degree} != vertex count {graph.n}")
    for k, g in enumerate(G.generators):
        bad = graph.automorphism_violation(g)
        if bad is not None:
            raise ValueError(f"generator {k} does not preserve edge {bad}")
    if not G.is_transitive():
        raise ValueError("group is not vertex-transitive")

    nbrs = graph.neighbors(0)
    stab = G.stabilizer(0)
    orbits = []
    left = set(nbrs)
    while left:
        w = min(left)
        orb = stab.orbit(w) & set(nbrs)
        orbits.append(sorted(orb))
        left -= orb
    sizes = tuple(sorted(len(o) for o in orbits))
    if sizes != (1, 2):
        return NotApplicable("stabilizer does not fix exactly one neighbour", sizes)
    ladder = _ladder_family(graph)
    if ladder is not None:
        return ladder

    fixed0 = next(o[0] for o in orbits if len(o) == 1)
    # push the fixed neighbour of 0 around a Schreier tree
    mate = [-1] * graph.n
    mate[0] = fixed0
    frontier = [0]
    while frontier:
        nxt = []
        for v in frontier:
            for g in G.generators:
                w = g[v]
                if mate[w] < 0:
                    mate[w] = g[mate[v]]
                    nxt.append(w)
        frontier = nxt
    for v in range(graph.n):
        if mate[mate[v]] != v or not graph.has_edge(v, mate[v]):
            return NotApplicable(f"fixed neighbours do not form a matching at vertex {v}", sizes)
    matching = sorted({_norm((v, mate[v])) for v in range(graph.n)})
    block_of = [0] * graph.n
    for i, (u, v) in enumerate(matching):
        block_of[u] = block_of[v] = i
    factor = [e for e in graph.edges if mate[e[0]] != e[1]]
    fgraph = Graph(graph.n, factor)
    if not fgraph.is_regular(2):  # pragma: no cover - forced by the matching
        raise AssertionError("complement of the matching is not a 2-factor")
    delta_edges = [_norm((block_of[u], block_of[v])) for u, v in factor]
    if len(set(delta_edges)) != len(delta_edges) or any(a == b for a, b in delta_edges):
        return NotApplicable("contracting the matching creates loops or multiple edges", sizes)
    delta = Graph(len(matching), delta_edges)
    classes = []
    for comp in fgraph.components():
        cs = set(comp)
        classes.append([_norm((block_of[u], block_of[v])) for u, v in factor if u in cs])
    partition = CyclePartition(delta, classes)

    action, kernel = induced_action_on_blocks(G, [list(e) for e in matching])
    for k, g in enumerate(action.generators):
        if delta.automorphism_violation(g) is not None:  # pragma: no cover
            raise AssertionError(f"induced generator {k} is not an automorphism of the merged graph")
        if not partition.is_invariant(g):
            raise AssertionError(f"induced generator {k} does not preserve the cycle partition")
    assert kernel.order() == 1, "action on the merged graph is not faithful"
    assert _arc_transitive(delta, action), "action on the merged graph is not arc-transitive"
    return Merged(delta, partition, tuple(matching), tuple(block_of), action, kernel.order())


# -- split Praeger-Xu graphs ------------------------------------------------


def s_partition(r: int, s: int) -> CyclePartition:
    """4-cycles (x;0h) ~ (x+1;h0) ~ (x;1h) ~ (x+1;h1) ~ (x;0h) of C(r, s)."""
    if r < 3 or not 1 <= s <= r - 1:
        raise ValueError(f"need r >= 3 and 1 <= s <= r-1, got r={r}, s={s}")
    host = px(r, s)
    top = 1 << (s - 1)
    classes = []
    for x in range(r):
        for h in range(1 << (s - 1)):
            a = px_vertex_index(r, s, x, h)              # (x; 0h)
            b = px_vertex_index(r, s, x + 1, h << 1)     # (x+1; h0)
            c = px_vertex_index(r, s, x, top | h)        # (x; 1h)
            d = px_vertex_index(r, s, x + 1, (h << 1) | 1)  # (x+1; h1)
            classes.append([(a, b), (b, c), (c, d), (d, a)])
    return CyclePartition(host, classes)


def split_px(r: int, s: int) -> Graph:
    """sC(r, s) = split(C(r, s), S)."""
    part = s_partition(r, s)
    return split(part.host, part)


@dataclass(frozen=True)
class SplitPXGroups:
    graph: Graph
    partition: CyclePartition
    K: PermutationGroup
    H: PermutationGroup
    tau: tuple[Permutation, ...]
    rho: Permutation
    sigma: Permutation


def split_px_groups(r: int, s: int) -> SplitPXGroups:
    """The groups K and H acting on sC(r, s)."""
    part = s_partition(r, s)
    grp = px_groups(r, s)
    tau = tuple(lift_to_split(t, part) for t in grp.tau)
    rho = lift_to_split(grp.rho, part)
    sigma = lift_to_split(grp.sigma, part)
    graph = split(part.host, part)
    n = graph.n
    K = PermutationGroup(n, tau, known_order=grp.K.order())
    H = PermutationGroup(n, list(tau) + [rho, sigma], known_order=grp.H.order())
    return SplitPXGroups(graph, part, K, H, tau, rho, sigma)


def super_flip(r: int, s: int) -> Permutation:
    """rho followed by tau_0, acting on the vertices of sC(r, s)."""
    g = split_px_groups(r, s)
    return g.rho * g.tau[0]


def round_trip_witness(part: CyclePartition, merged: Merged, split_graph: Graph) -> Permutation:
    """Map each merged vertex {(a, C), (a, D)} to ``a`` and check it is an isomorphism.

    The map must send edges onto edges and classes onto classes; raises
    ValueError otherwise.
    """
    verts = split_index(part)
    if split_graph.n != len(verts):
        raise ValueError("split graph does not match the partition")
    images = []
    for u, v in merged.matching:
        a, b = verts[u][0], verts[v][0]
        if a != b:
            raise ValueError(f"matched split vertices {u}, {v} have different bases {a}, {b}")
        images.append(a)
    theta = Permutation(images)
    host = part.host
    mapped = {_norm((theta[u], theta[v])) for u, v in merged.delta.edges}
    if mapped != set(host.edges):
        raise ValueError("theta does not map edges onto edges")
    img = sorted(tuple(sorted(_norm((theta[u], theta[v])) for u, v in c)) for c in merged.partition.classes)
    if img != sorted(part.classes):
        raise ValueError("theta does not map the merged partition onto the original one")
    return theta
