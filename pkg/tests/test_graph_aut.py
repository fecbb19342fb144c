from __future__ import annotations

import itertools

import networkx as nx
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from semireg import constructions as C
from semireg.errors import TooLargeError
from semireg.graph_aut import are_isomorphic, automorphism_group, brute_force_automorphisms
from semireg.graphs import Graph
from semireg.groups import PermutationGroup
from semireg.perm import Permutation
from semireg.split_merge import split_px

from ._oracles import automorphism_count


def to_nx(g: Graph) -> nx.Graph:
    h = nx.Graph()
    h.add_nodes_from(range(g.n))
    h.add_edges_from(g.edges)
    return h


def nx_automorphism_count(g: Graph) -> int:
    h = to_nx(g)
    return sum(1 for _ in nx.algorithms.isomorphism.GraphMatcher(h, h).isomorphisms_iter())


SMALL_CORPUS = {
    "K4": C.complete_graph(4),
    "prism": C.circular_ladder(3),
    "K33": C.mobius_ladder(3),
    "cube": C.circular_ladder(4),
    "mobius4": C.mobius_ladder(4),
    "mobius5": C.mobius_ladder(5),
    "prism5": C.circular_ladder(5),
    "petersen": C.petersen(),
    "octahedron": C.px(3, 1),
    "C(4,1)": C.px(4, 1),
    "C7": Graph(7, [(i, (i + 1) % 7) for i in range(7)]),
    "path5": Graph(5, [(i, i + 1) for i in range(4)]),
    "K23": Graph(5, [(i, j) for i in range(2) for j in range(2, 5)]),
    "empty3": Graph(3, []),
    "single": Graph(1, []),
    "paw": Graph(4, [(0, 1), (1, 2), (0, 2), (2, 3)]),
}


@pytest.mark.parametrize("name", sorted(SMALL_CORPUS))
def test_matches_brute_force_on_small_corpus(name):
    g = SMALL_CORPUS[name]
    A = automorphism_group(g)
    assert A.order() == automorphism_count(g.n, g.edges)
    assert A.order() == len(brute_force_automorphisms(g))
    for p in A.generators:
        assert g.is_automorphism(p)


def test_known_orders():
    assert automorphism_group(C.complete_graph(4)).order() == 24
    assert automorphism_group(C.px(4, 1)).order() == 1152
    assert automorphism_group(C.petersen()).order() == 120


@pytest.mark.parametrize(
    "name,g",
    [
        ("desargues", C.generalized_petersen(10, 3)),
        ("mobius_kantor", C.generalized_petersen(8, 3)),
        ("dodecahedron", C.generalized_petersen(10, 2)),
        ("nauru", C.generalized_petersen(12, 5)),
        ("C(5,2)", C.px(5, 2)),
        ("sC(3,1)", split_px(3, 1)),
        ("sC(5,1)", split_px(5, 1)),
        ("sC(4,2)", split_px(4, 2)),
    ],
)
def test_matches_networkx_counts(name, g):
    assert automorphism_group(g).order() == nx_automorphism_count(g)


def test_order_independent_of_labelling():
    g = C.generalized_petersen(10, 3)
    perm = list(range(g.n))
    perm = perm[7:] + perm[:7]
    h = g.relabel(perm)
    assert automorphism_group(h).order() == automorphism_group(g).order() == 240


def test_colours_restrict_the_group():
    g = C.circular_ladder(4)
    colors = [v % 2 for v in range(8)]
    A = automorphism_group(g, colors)
    brute = [p for p in brute_force_automorphisms(g) if all(colors[p[v]] == colors[v] for v in range(8))]
    assert A.order() == len(brute)


def test_vertex_transitive_inputs_give_transitive_groups():
    for g in [C.circular_ladder(7), C.mobius_ladder(6), split_px(4, 2), C.px(5, 2)]:
        assert len(automorphism_group(g).orbit(0)) == g.n


def test_isomorphism_examples():
    g = C.petersen()
    w = are_isomorphic(g, g)
    assert w is not None and g.is_automorphism(w)
    Z6 = PermutationGroup(6, [Permutation.parse("(0 1 2 3 4 5)", 6)])
    one = Z6.generators[0]
    cay = C.cayley_graph(Z6, [one, one.inverse(), one**3]).graph
    w = are_isomorphic(C.mobius_ladder(3), cay)
    assert w is not None
    assert {tuple(sorted((w[u], w[v]))) for u, v in C.mobius_ladder(3).edges} == set(cay.edges)
    assert are_isomorphic(C.complete_graph(4), C.circular_ladder(4)) is None


def test_non_isomorphic_same_degrees():
    assert are_isomorphic(C.circular_ladder(4), C.mobius_ladder(4)) is None
    assert are_isomorphic(C.generalized_petersen(10, 2), C.generalized_petersen(10, 3)) is None
    assert are_isomorphic(C.petersen(), C.circular_ladder(5)) is None


def test_size_ceiling(monkeypatch):
    monkeypatch.setenv("SEMIREG_MAX_VERTICES", "5")
    with pytest.raises(TooLargeError):
        automorphism_group(C.circular_ladder(3))
    with pytest.raises(TooLargeError):
        are_isomorphic(C.circular_ladder(3), C.circular_ladder(3))


def small_graphs(max_n=7):
    def build(n):
        pairs = list(itertools.combinations(range(n), 2))
        return st.lists(st.sampled_from(pairs), unique=True, max_size=len(pairs)).map(
            lambda es: Graph(n, es)
        ) if pairs else st.just(Graph(n, []))

    return st.integers(1, max_n).flatmap(build)


@settings(max_examples=80, deadline=None)
@given(small_graphs())
def test_random_small_graphs_match_brute_force(g):
    A = automorphism_group(g)
    assert A.order() == automorphism_count(g.n, g.edges)
    for p in A.generators:
        assert g.is_automorphism(p)


@settings(max_examples=60, deadline=None)
@given(small_graphs(), st.randoms(use_true_random=False))
def test_isomorphism_is_symmetric_and_witnessed(g, rnd):
    perm = list(range(g.n))
    rnd.shuffle(perm)
    h = g.relabel(perm)
    w = are_isomorphic(g, h)
    assert w is not None
    assert {tuple(sorted((w[u], w[v]))) for u, v in g.edges} == set(h.edges)
    assert (are_isomorphic(h, g) is None) == (w is None)


@settings(max_examples=60, deadline=None)
@given(small_graphs(6), small_graphs(6))
def test_isomorphism_agrees_with_networkx(g, h):
    ours = are_isomorphic(g, h) is not None
    assert ours == nx.is_isomorphic(to_nx(g), to_nx(h))
    assert ours == (are_isomorphic(h, g) is not None)
