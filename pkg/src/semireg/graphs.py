"""Finite simple graphs and digraphs, normal quotients and block actions.

Canonical text format for a graph: a header line ``"n m"`` followed by ``m``
lines ``"u v"`` with ``u < v``, sorted lexicographically.  The JSON variant
carries the same edge list plus an optional ``labels`` map; structured labels
travel as JSON arrays and come back as tuples.
"""
from __future__ import annotations

import json
from collections import deque
from dataclasses import dataclass
from functools import cached_property
from typing import Any, Hashable, Iterable, Sequence

from .errors import NotAutomorphismError
from .groups import PermutationGroup
from .perm import Permutation

__all__ = [
    "Graph",
    "Digraph",
    "QuotientResult",
    "valency",
    "is_connected",
    "is_cycle_graph",
    "normal_quotient",
    "induced_action_on_blocks",
]


def _freeze(x: Any) -> Any:
    if isinstance(x, list):
        return tuple(_freeze(v) for v in x)
    return x


def _thaw(x: Any) -> Any:
    if isinstance(x, tuple):
        return [_thaw(v) for v in x]
    return x


class Graph:
    """Simple undirected graph on vertices ``0..n-1``.

    ``labels`` is an optional sequence giving a hashable label per vertex.
    """

    __slots__ = ("n", "edges", "labels", "__dict__")

    def __init__(self, n: int, edges: Iterable[Sequence[int]], labels: Sequence[Hashable] | None = None):
        if n < 0:
            raise ValueError("vertex count must be non-negative")
        es = set()
        for e in edges:
            u, v = int(e[0]), int(e[1])
            if u == v:
                raise ValueError(f"loop at vertex {u}")
            if not (0 <= u < n and 0 <= v < n):
                raise ValueError(f"edge {{{u},{v}}} has an endpoint outside 0..{n - 1}")
            es.add((u, v) if u < v else (v, u))
        self.n = n
        self.edges: tuple[tuple[int, int], ...] = tuple(sorted(es))
        if labels is not None:
            labels = tuple(labels)
            if len(labels) != n:
                raise ValueError(f"expected {n} labels, got {len(labels)}")
        self.labels = labels

    # -- structure --------------------------------------------------------
    @property
    def m(self) -> int:
        return len(self.edges)

    @cached_property
    def adj(self) -> tuple[tuple[int, ...], ...]:
        nb: list[list[int]] = [[] for _ in range(self.n)]
        for u, v in self.edges:
            nb[u].append(v)
            nb[v].append(u)
        return tuple(tuple(sorted(x)) for x in nb)

    @cached_property
    def edge_set(self) -> frozenset[tuple[int, int]]:
        return frozenset(self.edges)

    @cached_property
    def label_index(self) -> dict[Hashable, int]:
        if self.labels is None:
            raise ValueError("graph has no labels")
        return {lab: i for i, lab in enumerate(self.labels)}

    def neighbors(self, v: int) -> tuple[int, ...]:
        return self.adj[v]

    def has_edge(self, u: int, v: int) -> bool:
        return ((u, v) if u < v else (v, u)) in self.edge_set

    def valency(self, v: int) -> int:
        if not 0 <= v < self.n:
            raise ValueError(f"vertex {v} outside 0..{self.n - 1}")
        return len(self.adj[v])

    def degrees(self) -> list[int]:
        return [len(a) for a in self.adj]

    def is_regular(self, k: int | None = None) -> bool:
        degs = set(self.degrees())
        if len(degs) > 1:
            return False
        return k is None or degs == {k} or (self.n == 0 and True)

    def is_cubic(self) -> bool:
        return self.n > 0 and self.is_regular(3)

    def components(self) -> list[list[int]]:
        seen = [False] * self.n
        out = []
        for s in range(self.n):
            if seen[s]:
                continue
            seen[s] = True
            comp = [s]
            queue = deque([s])
            while queue:
                u = queue.popleft()
                for w in self.adj[u]:
                    if not seen[w]:
                        seen[w] = True
                        comp.append(w)
                        queue.append(w)
            out.append(sorted(comp))
        return out

    def is_connected(self) -> bool:
        if self.n == 0:
            return True
        return len(self.components()) == 1

    def distances_from(self, s: int) -> list[int]:
        dist = [-1] * self.n
        dist[s] = 0
        queue = deque([s])
        while queue:
            u = queue.popleft()
            for w in self.adj[u]:
                if dist[w] < 0:
                    dist[w] = dist[u] + 1
                    queue.append(w)
        return dist

    # -- permutations -----------------------------------------------------
    def automorphism_violation(self, p: Permutation) -> tuple[int, int] | None:
        """First edge whose image is not an edge, or None when ``p`` is an automorphism."""
        if p.degree != self.n:
            raise ValueError(f"permutation degree {p.degree} != vertex count {self.n}")
        es = self.edge_set
        im = p.images
        for u, v in self.edges:
            a, b = im[u], im[v]
            if ((a, b) if a < b else (b, a)) not in es:
                return (u, v)
        return None

    def is_automorphism(self, p: Permutation) -> bool:
        return self.automorphism_violation(p) is None

    def relabel(self, mapping: Sequence[int], labels: Sequence[Hashable] | None = None) -> "Graph":
        """Graph with vertex ``v`` renamed ``mapping[v]``."""
        if sorted(mapping) != list(range(self.n)):
            raise ValueError("mapping must be a bijection on the vertex set")
        new_labels = labels
        if new_labels is None and self.labels is not None:
            tmp: list[Hashable] = [None] * self.n
            for v, lab in enumerate(self.labels):
                tmp[mapping[v]] = lab
            new_labels = tmp
        return Graph(self.n, ((mapping[u], mapping[v]) for u, v in self.edges), new_labels)

    def subgraph_edges(self, edges: Iterable[tuple[int, int]]) -> "Graph":
        return Graph(self.n, edges)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Graph):
            return NotImplemented
        return self.n == other.n and self.edges == other.edges

    def __hash__(self) -> int:
        return hash((self.n, self.edges))

    def __repr__(self) -> str:
        return f"Graph(n={self.n}, m={self.m})"

    # -- serialization ----------------------------------------------------
    def to_text(self) -> str:
        lines = [f"{self.n} {self.m}"]
        lines.extend(f"{u} {v}" for u, v in self.edges)
        return "\n".join(lines) + "\n"

    @classmethod
    def from_text(cls, text: str) -> "Graph":
        rows = [ln.split() for ln in text.splitlines() if ln.strip() and not ln.lstrip().startswith("#")]
        if not rows or len(rows[0]) != 2:
            raise ValueError("graph text must start with a header line 'n m'")
        n, m = int(rows[0][0]), int(rows[0][1])
        body = rows[1:]
        if len(body) != m:
            raise ValueError(f"header announces {m} edges but {len(body)} edge lines follow")
        edges = []
        for r in body:
            if len(r) != 2:
                raise ValueError(f"bad edge line {' '.join(r)!r}")
            edges.append((int(r[0]), int(r[1])))
        g = cls(n, edges)
        if g.m != m:
            raise ValueError("duplicate edges in graph text")
        return g

    def labels_dict(self) -> dict[str, Any] | None:
        if self.labels is None:
            return None
        return {str(i): _thaw(lab) for i, lab in enumerate(self.labels)}

    def to_dict(self) -> dict[str, Any]:
        out: dict[str, Any] = {"n": self.n, "edges": [list(e) for e in self.edges]}
        if self.labels is not None:
            out["labels"] = self.labels_dict()
        return out

    def to_json(self) -> str:
        return json.dumps(self.to_dict())

    @classmethod
    def from_dict(cls, data: dict[str, Any]) -> "Graph":
        n = int(data["n"])
        labels = None
        if data.get("labels") is not None:
            raw = data["labels"]
            labels = [_freeze(raw[str(i)]) for i in range(n)]
        return cls(n, [tuple(e) for e in data["edges"]], labels)

    @classmethod
    def from_json(cls, text: str) -> "Graph":
        return cls.from_dict(json.loads(text))

    def with_labels(self, labels_json: str | dict | None) -> "Graph":
        """Attach labels from a JSON sidecar (``{"0": label, ...}``)."""
        if labels_json is None:
            return Graph(self.n, self.edges)
        raw = json.loads(labels_json) if isinstance(labels_json, str) else labels_json
        return Graph(self.n, self.edges, [_freeze(raw[str(i)]) for i in range(self.n)])


class Digraph:
    """Loopless digraph on ``0..n-1`` (arcs are ordered pairs)."""

    def __init__(self, n: int, arcs: Iterable[Sequence[int]], labels: Sequence[Hashable] | None = None):
        arcset = set()
        for a in arcs:
            u, v = int(a[0]), int(a[1])
            if u == v:
                raise ValueError(f"loop at vertex {u}")
            if not (0 <= u < n and 0 <= v < n):
                raise ValueError(f"arc ({u},{v}) has an endpoint outside 0..{n - 1}")
            arcset.add((u, v))
        self.n = n
        self.arcs: tuple[tuple[int, int], ...] = tuple(sorted(arcset))
        self.labels = tuple(labels) if labels is not None else None

    @cached_property
    def out_neighbors(self) -> tuple[tuple[int, ...], ...]:
        out: list[list[int]] = [[] for _ in range(self.n)]
        for u, v in self.arcs:
            out[u].append(v)
        return tuple(tuple(x) for x in out)

    @cached_property
    def in_neighbors(self) -> tuple[tuple[int, ...], ...]:
        inn: list[list[int]] = [[] for _ in range(self.n)]
        for u, v in self.arcs:
            inn[v].append(u)
        return tuple(tuple(sorted(x)) for x in inn)

    @cached_property
    def arc_set(self) -> frozenset[tuple[int, int]]:
        return frozenset(self.arcs)

    def underlying(self) -> Graph:
        return Graph(self.n, self.arcs, self.labels)

    def is_automorphism(self, p: Permutation) -> bool:
        im = p.images
        return all((im[u], im[v]) in self.arc_set for u, v in self.arcs)

    def __repr__(self) -> str:
        return f"Digraph(n={self.n}, arcs={len(self.arcs)})"


# ---------------------------------------------------------------------------


def valency(graph: Graph, v: int) -> int:
    return graph.valency(v)


def is_connected(graph: Graph) -> bool:
    return graph.is_connected()


def is_cycle_graph(graph: Graph) -> int | None:
    """Length of the cycle when ``graph`` is connected and 2-regular, else None."""
    if graph.n < 3 or not graph.is_regular(2) or not graph.is_connected():
        return None
    return graph.n


@dataclass(frozen=True)
class QuotientResult:
    quotient: Graph
    block_of: tuple[int, ...]
    blocks: tuple[tuple[int, ...], ...]
    kind: str
    cycle_length: int | None = None


def _classify(q: Graph) -> tuple[str, int | None]:
    r = is_cycle_graph(q)
    if r is not None:
        return "cycle", r
    if q.is_cubic():
        return "cubic", None
    if max(q.degrees(), default=0) <= 2:
        return "valency-2-or-less", None
    return "other", None


def quotient_by_partition(graph: Graph, blocks: Sequence[Sequence[int]]) -> QuotientResult:
    blocks = sorted((tuple(sorted(b)) for b in blocks), key=lambda b: b[0])
    block_of = [-1] * graph.n
    for i, b in enumerate(blocks):
        for v in b:
            if block_of[v] != -1:
                raise ValueError(f"vertex {v} lies in two blocks")
            block_of[v] = i
    if -1 in block_of:
        raise ValueError(f"vertex {block_of.index(-1)} lies in no block")
    qedges = {(block_of[u], block_of[v]) for u, v in graph.edges if block_of[u] != block_of[v]}
    q = Graph(len(blocks), qedges)
    kind, r = _classify(q)
    return QuotientResult(q, tuple(block_of), tuple(blocks), kind, r)


def normal_quotient(graph: Graph, N: PermutationGroup) -> QuotientResult:
    """Quotient graph on the ``N``-orbits.

    Raises :class:`NotAutomorphismError` naming the generator and edge when a
    generator of ``N`` does not preserve ``graph``.
    """
    if N.degree != graph.n:
        raise ValueError(f"group degree {N.degree} != vertex count {graph.n}")
    for k, g in enumerate(N.generators):
        bad = graph.automorphism_violation(g)
        if bad is not None:
            raise NotAutomorphismError(
                f"generator {k} ({g.cycle_string()}) maps edge {bad} to non-edge "
                f"{(g[bad[0]], g[bad[1]])}"
            )
    res = quotient_by_partition(graph, N.orbits())
    q = res.quotient
    if graph.n:
        assert max(q.degrees(), default=0) <= max(graph.degrees()), "quotient valency exceeds graph valency"
    if graph.is_connected():
        assert q.is_connected(), "quotient of a connected graph must be connected"
    return res


def induced_action_on_blocks(
    G: PermutationGroup, blocks: Sequence[Iterable[int]]
) -> tuple[PermutationGroup, PermutationGroup]:
    """Action of ``G`` on a ``G``-invariant partition: ``(image, kernel)``.

    The image acts on block indices (blocks ordered by least point).  The
    kernel is computed as the pointwise stabilizer of the block points in the
    combined action on points and blocks; ``|G| == |image| * |kernel|`` is
    asserted.
    """
    n = G.degree
    blocks = sorted((tuple(sorted(set(int(x) for x in b))) for b in blocks), key=lambda b: b[0])
    block_of = [-1] * n
    for i, b in enumerate(blocks):
        for v in b:
            if block_of[v] != -1:
                raise ValueError(f"point {v} lies in two blocks")
            block_of[v] = i
    if -1 in block_of:
        raise ValueError(f"point {block_of.index(-1)} lies in no block")
    k = len(blocks)
    img_gens = []
    big_gens = []
    for gi, g in enumerate(G.generators):
        act = []
        for bi, b in enumerate(blocks):
            target = block_of[g[b[0]]]
            for v in b:
                if block_of[g[v]] != target:
                    raise ValueError(
                        f"partition is not invariant: generator {gi} splits block {bi} {list(b)}"
                    )
            act.append(target)
        if len(set(act)) != k:
            raise ValueError(f"partition is not invariant under generator {gi}")
        img_gens.append(Permutation(act))
        big_gens.append(list(g.images) + [n + t for t in act])
    image = PermutationGroup(k, img_gens) if k >= 1 else PermutationGroup(1, [])
    combined = PermutationGroup(n + k, big_gens, known_order=G.order())
    stab = combined.pointwise_stabilizer(list(range(n, n + k)))
    kernel_gens = [Permutation(g.images[:n]) for g in stab.generators]
    kernel = PermutationGroup(n, kernel_gens, known_order=stab.order())
    assert G.order() == image.order() * kernel.order(), "block action does not factor |G|"
    return image, kernel
