"""Builders for the concrete graph and group families.

Praeger-Xu vertices ``(x; e0 e1 ... e_{s-1})`` are numbered
``x * 2**s + int(word)`` with ``e0`` the most significant bit, which is the
lexicographic order on ``(x, word)``.  The vertex ``(x; e0 ... e_{s-1})``
stands for the walk ``(x, e0) -> (x+1, e1) -> ... -> (x+s-1, e_{s-1})`` in
``C(r, 1)``; the actions of tau_i, rho and sigma on longer words are obtained
by pushing such walks through their action on ``C(r, 1)``.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Callable, Sequence

from .graphs import Digraph, Graph
from .groups import PermutationGroup, cyclic_group
from .perm import Permutation

__all__ = [
    "PXVertex",
    "PXGroups",
    "px_vertex_index",
    "px_vertex",
    "directed_px",
    "px",
    "px_groups",
    "circular_ladder",
    "mobius_ladder",
    "CayleyGraph",
    "cayley_graph",
    "complete_graph",
    "petersen",
    "generalized_petersen",
    "w_module_group",
    "W_ORDER5_MATRIX",
    "W_INVOLUTION_MATRIX",
]


@dataclass(frozen=True, order=True)
class PXVertex:
    x: int
    word: str

    def label(self) -> tuple[int, str]:
        return (self.x, self.word)


def _check_px(r: int, s: int, *, arc_range: bool = False) -> None:
    if r < 3:
        raise ValueError(f"r must be at least 3, got {r}")
    if s < 1:
        raise ValueError(f"s must be at least 1, got {s}")
    if arc_range and s > r - 1:
        raise ValueError(f"s must satisfy 1 <= s <= r-1 = {r - 1}, got {s}")


def px_vertex_index(r: int, s: int, x: int, word: str | int) -> int:
    w = int(word, 2) if isinstance(word, str) else int(word)
    return (x % r) * (1 << s) + w


def px_vertex(r: int, s: int, index: int) -> PXVertex:
    x, w = divmod(index, 1 << s)
    return PXVertex(x, format(w, f"0{s}b"))


def _px_labels(r: int, s: int) -> list[tuple[int, str]]:
    return [px_vertex(r, s, v).label() for v in range(r << s)]


def directed_px(r: int, s: int) -> Digraph:
    """Directed Praeger-Xu graph: ``(x; e h)`` points to ``(x+1; h0)`` and ``(x+1; h1)``."""
    _check_px(r, s)
    mask = (1 << s) - 1
    arcs = []
    for x in range(r):
        for w in range(1 << s):
            u = px_vertex_index(r, s, x, w)
            nxt = (w << 1) & mask
            for b in (0, 1):
                arcs.append((u, px_vertex_index(r, s, x + 1, nxt | b)))
    return Digraph(r << s, arcs, _px_labels(r, s))


def px(r: int, s: int) -> Graph:
    """Praeger-Xu graph C(r, s): the underlying graph of the directed version."""
    return directed_px(r, s).underlying()


def _lift_to_words(r: int, s: int, f: Callable[[int, int], tuple[int, int]]) -> Permutation:
    """Act on (s-1)-arcs through a map ``f`` on the vertices ``(x, i)`` of C(r, 1).

    ``f`` must send every arc of the directed 1-cycle cover either forwards
    or backwards; backward images are read in reverse.
    """
    images = [0] * (r << s)
    for x in range(r):
        for w in range(1 << s):
            bits = [(w >> (s - 1 - j)) & 1 for j in range(s)]
            walk = [f((x + j) % r, bits[j]) for j in range(s)]
            if s > 1 and all((walk[j + 1][0] - walk[j][0]) % r == 1 for j in range(s - 1)):
                pass
            elif s > 1 and all((walk[j][0] - walk[j + 1][0]) % r == 1 for j in range(s - 1)):
                walk.reverse()
            elif s > 1:
                raise ValueError("map does not send walks to walks")
            word = 0
            for _, b in walk:
                word = (word << 1) | b
            images[px_vertex_index(r, s, x, w)] = px_vertex_index(r, s, walk[0][0], word)
    return Permutation(images)


@dataclass(frozen=True)
class PXGroups:
    r: int
    s: int
    K: PermutationGroup
    Hplus: PermutationGroup
    H: PermutationGroup
    tau: tuple[Permutation, ...]
    rho: Permutation
    sigma: Permutation


def px_groups(r: int, s: int) -> PXGroups:
    """tau_i, rho, sigma on C(r, s) and the groups K, H+ = K<rho>, H = K<rho, sigma>."""
    _check_px(r, s, arc_range=True)
    tau = tuple(
        _lift_to_words(r, s, lambda x, b, i=i: (x, b ^ 1) if x == i else (x, b)) for i in range(r)
    )
    rho = _lift_to_words(r, s, lambda x, b: ((x + 1) % r, b))
    sigma = _lift_to_words(r, s, lambda x, b: ((-x) % r, b))
    graph = px(r, s)
    arcs = directed_px(r, s)
    for name, g in [(f"tau_{i}", t) for i, t in enumerate(tau)] + [("rho", rho), ("sigma", sigma)]:
        bad = graph.automorphism_violation(g)
        if bad is not None:
            raise AssertionError(f"{name} does not preserve edge {bad} of C({r},{s})")
        if name != "sigma" and not arcs.is_automorphism(g):
            raise AssertionError(f"{name} does not preserve arc orientation")
    n = r << s
    K = PermutationGroup(n, tau, name=f"K({r},{s})", known_order=1 << r)
    Hplus = PermutationGroup(n, list(tau) + [rho], name=f"H+({r},{s})", known_order=r << r)
    H = PermutationGroup(n, list(tau) + [rho, sigma], name=f"H({r},{s})", known_order=(2 * r) << r)
    return PXGroups(r, s, K, Hplus, H, tau, rho, sigma)


# -- Cayley graphs ----------------------------------------------------------


@dataclass(frozen=True)
class CayleyGraph:
    graph: Graph
    connected: bool
    generates: bool
    elements: tuple[Permutation, ...]


def cayley_graph(G: PermutationGroup, I: Sequence[Permutation], limit: int | None = None) -> CayleyGraph:
    """Cay(G, I): vertices are elements of ``G``, ``x ~ y`` iff ``y x^-1`` lies in ``I``.

    When ``G`` is regular the element ``x`` is vertex ``0^x`` (so the vertex
    set is the permuted domain); otherwise elements are listed in sorted order.
    """
    I = [g if isinstance(g, Permutation) else Permutation(g) for g in I]
    ident = G.identity()
    if any(g == ident for g in I):
        raise ValueError("connection set contains the identity")
    Iset = set(I)
    if len(Iset) != len(I):
        raise ValueError("connection set has repeated elements")
    for g in I:
        if g.inverse() not in Iset:
            raise ValueError(f"connection set is not inverse-closed: missing inverse of {g.cycle_string()}")
        if g not in G:
            raise ValueError(f"{g.cycle_string()} is not an element of the group")
    elems = G.elements(limit)
    if G.is_regular():
        # sorted order puts the element with 0^x == v at position v
        starts = [g[0] for g in I]
        edges = {(v, x[a]) for v, x in enumerate(elems) for a in starts}
    else:
        index = {x: k for k, x in enumerate(elems)}
        edges = {(k, index[i * x]) for k, x in enumerate(elems) for i in I}
    graph = Graph(len(elems), edges)
    sub = PermutationGroup(G.degree, I)
    return CayleyGraph(graph, graph.is_connected(), sub.order() == G.order(), tuple(elems))


def circular_ladder(n: int) -> Graph:
    """Cay(Z_n x Z_2, {(0,1), (1,0), (-1,0)}); vertex ``(a, b)`` is ``2a + b``."""
    if n < 3:
        raise ValueError(f"circular ladder needs n >= 3, got {n}")
    shift = Permutation([(2 * ((v // 2 + 1) % n)) + v % 2 for v in range(2 * n)])
    swap = Permutation([v ^ 1 for v in range(2 * n)])
    G = PermutationGroup(2 * n, [shift, swap], known_order=2 * n)
    g = cayley_graph(G, [swap, shift, shift.inverse()]).graph
    return Graph(g.n, g.edges, [(v // 2, v % 2) for v in range(2 * n)])


def mobius_ladder(n: int) -> Graph:
    """Cay(Z_2n, {1, -1, n}); n = 2 gives K4."""
    if n < 2:
        raise ValueError(f"Mobius ladder needs n >= 2, got {n}")
    G = cyclic_group(2 * n)
    c = G.generators[0]
    I = [c, c.inverse(), c ** n]
    return cayley_graph(G, I).graph


def complete_graph(n: int) -> Graph:
    return Graph(n, itertools.combinations(range(n), 2))


def petersen() -> Graph:
    """Petersen graph: 2-subsets of {0..4}, adjacent when disjoint."""
    pairs = list(itertools.combinations(range(5), 2))
    edges = [(i, j) for i, j in itertools.combinations(range(10), 2) if not set(pairs[i]) & set(pairs[j])]
    return Graph(10, edges, pairs)


def generalized_petersen(n: int, k: int) -> Graph:
    """GP(n, k): outer cycle ``0..n-1``, spokes ``i ~ n+i``, inner edges ``n+i ~ n+i+k``."""
    if n < 3 or not 1 <= k < n / 2:
        raise ValueError(f"need n >= 3 and 1 <= k < n/2, got n={n}, k={k}")
    edges = []
    for i in range(n):
        edges.append((i, (i + 1) % n))
        edges.append((i, n + i))
        edges.append((n + i, n + (i + k) % n))
    return Graph(2 * n, edges)


# -- the module group W^l x| D ------------------------------------------------

# Row-vector action v -> vM.  The order-5 matrix is the companion matrix of
# x^4 + x^3 + x^2 + x + 1; the involution is the lexicographically least
# involution in GL(4, 2) inverting it by conjugation.
W_ORDER5_MATRIX = ((0, 1, 0, 0), (0, 0, 1, 0), (0, 0, 0, 1), (1, 1, 1, 1))
W_INVOLUTION_MATRIX = ((0, 0, 0, 1), (0, 0, 1, 0), (0, 1, 0, 0), (1, 0, 0, 0))


def _mat_mul(a, b):
    return tuple(
        tuple(sum(a[i][k] & b[k][j] for k in range(4)) & 1 for j in range(4)) for i in range(4)
    )


def _identity4():
    return tuple(tuple(int(i == j) for j in range(4)) for i in range(4))


def _nibble_action(A) -> list[int]:
    # bit 3 of a nibble is coordinate 0
    out = []
    for v in range(16):
        row = [(v >> (3 - i)) & 1 for i in range(4)]
        img = [sum(row[i] & A[i][j] for i in range(4)) & 1 for j in range(4)]
        out.append((img[0] << 3) | (img[1] << 2) | (img[2] << 1) | img[3])
    return out


def dihedral_matrices() -> list[tuple]:
    """The ten elements of D = <M, P>, identity first, in order of discovery."""
    gens = [W_ORDER5_MATRIX, W_INVOLUTION_MATRIX]
    elems = [_identity4()]
    seen = set(elems)
    frontier = list(elems)
    while frontier:
        nxt = []
        for a in frontier:
            for g in gens:
                b = _mat_mul(a, g)
                if b not in seen:
                    seen.add(b)
                    elems.append(b)
                    nxt.append(b)
        frontier = nxt
    return elems


def w_module_group(ell: int) -> PermutationGroup:
    """W^ell x| D in its right regular representation (degree 10 * 16**ell).

    Element ``(t, A)`` with ``t`` in ``F_2^(4 ell)`` and ``A`` in D acting on
    each 4-dimensional block; ``(t1, A1)(t2, A2) = (t1 A2 + t2, A1 A2)``.  The
    element ``(t, D[d])`` is point ``10 * t + d``.
    """
    if ell not in (1, 2):
        raise ValueError(f"ell must be 1 or 2, got {ell}")
    D = dihedral_matrices()
    if len(D) != 10:  # pragma: no cover - fixed data
        raise AssertionError("matrices do not generate a group of order 10")
    d_index = {A: k for k, A in enumerate(D)}
    dmul = [[d_index[_mat_mul(a, b)] for b in D] for a in D]
    act = [_nibble_action(A) for A in D]
    nt = 16 ** ell

    def vec_times(t: int, d: int) -> int:
        out = 0
        for blk in range(ell):
            nib = (t >> (4 * blk)) & 15
            out |= act[d][nib] << (4 * blk)
        return out

    def right_mult(t2: int, d2: int) -> Permutation:
        images = [0] * (10 * nt)
        for t1 in range(nt):
            for d1 in range(10):
                t = vec_times(t1, d2) ^ t2
                images[10 * t1 + d1] = 10 * t + dmul[d1][d2]
        return Permutation(images)

    gens = [right_mult(0, d_index[W_ORDER5_MATRIX]), right_mult(0, d_index[W_INVOLUTION_MATRIX])]
    gens += [right_mult(1 << (4 * blk + 3), 0) for blk in range(ell)]
    return PermutationGroup(10 * nt, gens, name=f"W^{ell}:D10", known_order=10 * nt)
