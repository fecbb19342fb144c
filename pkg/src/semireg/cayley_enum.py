"""Connected cubic Cayley graphs of a regular permutation group, up to isomorphism.

Points of a regular group double as its elements: point ``v`` is the unique
element sending 0 to ``v``.  Connection sets are enumerated as orbit
representatives under a group ``A`` of automorphisms of ``G`` acting on the
points (conjugation alone is always valid; extra automorphisms only shrink
the search).  Graphs are then sorted into isomorphism classes.
"""
from __future__ import annotations

import time
from dataclasses import dataclass, field

import numpy as np

from .constructions import (
    W_INVOLUTION_MATRIX,
    W_ORDER5_MATRIX,
    _identity4,
    _mat_mul,
    _nibble_action,
    dihedral_matrices,
)
from .graph_aut import _Tree, are_isomorphic, automorphism_group
from .graphs import Graph
from .groups import PermutationGroup
from .perm import Permutation

__all__ = [
    "RegularGroupTable",
    "inner_automorphisms",
    "w_group_automorphisms",
    "connection_sets",
    "CayleyClass",
    "CayleyEnumeration",
    "cubic_cayley_graphs",
]


class RegularGroupTable:
    """Multiplication on the points of a regular group: ``mult[v, w]`` is ``v`` then ``w``."""

    def __init__(self, G: PermutationGroup):
        if not G.is_regular():
            raise ValueError("group must act regularly")
        t = G.table
        elems = t.elements
        for v, g in enumerate(elems):
            if g[0] != v:  # pragma: no cover - sorted order guarantees this
                raise AssertionError("element order does not follow the image of 0")
        self.G = G
        self.m = len(elems)
        self.mult = t.mult
        self.inv = t.inv
        self.orders = t.orders
        self.table = t

    def gens_of(self) -> list[int]:
        return [g[0] for g in self.G.generators]

    def generated(self, S) -> bool:
        return bool(self.table.closure(list(S)).sum() == self.m)

    def is_automorphism(self, phi: np.ndarray) -> bool:
        mult = self.mult
        return bool((phi[mult] == mult[phi[:, None], phi[None, :]]).all())


def inner_automorphisms(T: RegularGroupTable) -> list[Permutation]:
    out = []
    allx = np.arange(T.m)
    for g in T.gens_of():
        phi = T.mult[T.mult[T.inv[g], allx], g]
        out.append(Permutation(phi.tolist()))
    return out


def _commuting_matrices(mats) -> list[tuple]:
    # brute force over all 4x4 binary matrices
    out = []
    for bits in range(1 << 16):
        A = tuple(tuple((bits >> (15 - 4 * i - j)) & 1 for j in range(4)) for i in range(4))
        if all(_mat_mul(A, X) == _mat_mul(X, A) for X in mats):
            out.append(A)
    return out


def _mat_inverse(Q) -> tuple | None:
    """Inverse in GL(4, 2) via powers (element orders there are at most 15)."""
    one = _identity4()
    X = Q
    prev = one
    for _ in range(16):
        if X == one:
            return prev
        prev = X
        X = _mat_mul(X, Q)
    return None


def _twisting_matrix(targets) -> tuple:
    """Least invertible Q with X Q = Q Y for each generator X of D and its target Y."""
    gens = [W_ORDER5_MATRIX, W_INVOLUTION_MATRIX]
    for bits in range(1, 1 << 16):
        Q = tuple(tuple((bits >> (15 - 4 * i - j)) & 1 for j in range(4)) for i in range(4))
        if all(_mat_mul(X, Q) == _mat_mul(Q, Y) for X, Y in zip(gens, targets)):
            if _mat_inverse(Q) is not None:
                return Q
    raise AssertionError("no twisting matrix found")


def w_group_automorphisms(ell: int, T: RegularGroupTable) -> list[Permutation]:
    """Automorphisms of W^ell x| D beyond conjugation, each verified on the table.

    These are the D-module automorphisms of W^ell (2x2 matrices over the
    endomorphism field of W, for ell = 2) and one automorphism inducing the
    outer automorphism M -> M^2 of D.
    """
    D = dihedral_matrices()
    d_index = {A: k for k, A in enumerate(D)}
    nt = 16 ** ell
    if T.m != 10 * nt:
        raise ValueError("table does not match the group order")
    field_elems = _commuting_matrices([W_ORDER5_MATRIX, W_INVOLUTION_MATRIX])
    nonzero = [A for A in field_elems if any(any(r) for r in A)]
    acts = {A: _nibble_action(A) for A in field_elems}

    def module_map(block: list[list[tuple]]) -> Permutation:
        # t = (t_0, ..., t_{ell-1}); image block j = sum_i t_i * block[i][j]
        images = [0] * T.m
        for t in range(nt):
            parts = [(t >> (4 * b)) & 15 for b in range(ell)]
            out = 0
            for j in range(ell):
                acc = 0
                for i in range(ell):
                    acc ^= acts[block[i][j]][parts[i]]
                out |= acc << (4 * j)
            for d in range(10):
                images[10 * t + d] = 10 * out + d
        return Permutation(images)

    zero = tuple((0,) * 4 for _ in range(4))
    one = _identity4()
    gens: list[Permutation] = []
    omega = next(A for A in nonzero if A != one)
    if ell == 1:
        gens.append(module_map([[omega]]))
    else:
        gens.append(module_map([[omega, zero], [zero, one]]))
        gens.append(module_map([[zero, one], [one, zero]]))
        gens.append(module_map([[one, one], [zero, one]]))
    # outer automorphism of D: M -> M^2, P -> P
    M2 = _mat_mul(W_ORDER5_MATRIX, W_ORDER5_MATRIX)
    Q = _twisting_matrix([M2, W_INVOLUTION_MATRIX])
    qact = _nibble_action(Q)
    Qinv = _mat_inverse(Q)
    # X Q = Q psi(X), so psi is conjugation by Q
    psi = {k: d_index[_mat_mul(_mat_mul(Qinv, A), Q)] for k, A in enumerate(D)}
    images = [0] * T.m
    for t in range(nt):
        out = 0
        for b in range(ell):
            out |= qact[(t >> (4 * b)) & 15] << (4 * b)
        for d in range(10):
            images[10 * t + d] = 10 * out + psi[d]
    gens.append(Permutation(images))
    for k, g in enumerate(gens):
        if not T.is_automorphism(np.asarray(g.images)):
            raise AssertionError(f"candidate automorphism {k} does not respect multiplication")
    return gens


def _orbit_reps(n: int, gens: list[Permutation], candidates) -> list[int]:
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
                parent[max(a, b)] = min(a, b)
    seen = set()
    reps = []
    for c in sorted(candidates):
        r = find(c)
        if r not in seen:
            seen.add(r)
            reps.append(c)
    return reps


def connection_sets(T: RegularGroupTable, A: PermutationGroup) -> list[tuple[int, ...]]:
    """Generating inverse-closed 3-sets, one per ``A``-orbit of ordered choices.

    Either an involution ``a`` with ``x, x^-1`` of order greater than 2, or
    three involutions.  Different representatives may still give the same
    set up to ``A``; isomorphism testing removes such repeats later.
    """
    orders = T.orders
    invols = [int(v) for v in np.flatnonzero(orders == 2)]
    big = [int(v) for v in np.flatnonzero(orders > 2)]
    n = T.m
    found: dict[frozenset, tuple[int, ...]] = {}
    for a in _orbit_reps(n, list(A.generators), invols):
        Aa = A.stabilizer(a)
        ga = list(Aa.generators)
        for x in _orbit_reps(n, ga, big):
            S = frozenset((a, x, int(T.inv[x])))
            if S not in found and T.generated(S):
                found[S] = tuple(sorted(S))
        for b in _orbit_reps(n, ga, [v for v in invols if v != a]):
            Aab = Aa.stabilizer(b)
            for c in _orbit_reps(n, list(Aab.generators), [v for v in invols if v not in (a, b)]):
                S = frozenset((a, b, c))
                if S not in found and T.generated(S):
                    found[S] = tuple(sorted(S))
    return sorted(found.values())


def _cayley_from_table(T: RegularGroupTable, S) -> Graph:
    mult = T.mult
    edges = set()
    for s in S:
        row = mult[s]
        for x in range(T.m):
            y = int(row[x])
            edges.add((x, y) if x < y else (y, x))
    return Graph(T.m, edges)


def _local_invariant(g: Graph) -> tuple:
    tree = _Tree(g, None)
    _, tr = tree.child(tree.root, 0)
    return (len(tr), hash(tuple(tr)))


@dataclass
class CayleyClass:
    connection_set: tuple[int, ...]
    graph: Graph
    aut_order: int
    members: int = 1
    aut: PermutationGroup | None = field(default=None, repr=False)


@dataclass
class CayleyEnumeration:
    group_order: int
    automorphism_group_order: int
    candidate_sets: int
    classes: list[CayleyClass]
    seconds: float
    complete: bool = True


def cubic_cayley_graphs(
    G: PermutationGroup, extra_automorphisms=(), time_budget: float | None = None
) -> CayleyEnumeration:
    """All connected cubic Cayley graphs of the regular group ``G`` up to isomorphism."""
    start = time.monotonic()
    T = RegularGroupTable(G)
    gens = inner_automorphisms(T) + list(extra_automorphisms)
    A = PermutationGroup(T.m, gens, name="Aut(G)")
    sets = connection_sets(T, A)
    classes: list[CayleyClass] = []
    by_inv: dict[tuple, list[int]] = {}
    complete = True
    for S in sets:
        if time_budget is not None and time.monotonic() - start > time_budget:
            complete = False
            break
        g = _cayley_from_table(T, S)
        key = _local_invariant(g)
        match = None
        for k in by_inv.get(key, []):
            cl = classes[k]
            if are_isomorphic(g, cl.graph, aut2=cl.aut) is not None:
                match = k
                break
        if match is None:
            aut = automorphism_group(g)
            classes.append(CayleyClass(S, g, aut.order(), 1, aut))
            by_inv.setdefault(key, []).append(len(classes) - 1)
        else:
            classes[match].members += 1
    return CayleyEnumeration(T.m, A.order(), len(sets), classes, time.monotonic() - start, complete)
