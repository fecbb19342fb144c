from __future__ import annotations

import networkx as nx
import pytest

from semireg import constructions as C
from semireg.graphs import Graph
from semireg.groups import PermutationGroup, cyclic_group, spectrum
from semireg.perm import Permutation, order


def to_nx(g: Graph) -> nx.Graph:
    h = nx.Graph()
    h.add_nodes_from(range(g.n))
    h.add_edges_from(g.edges)
    return h


@pytest.mark.parametrize("r,s", [(3, 1), (4, 2), (5, 3), (6, 1)])
def test_directed_px_counts(r, s):
    d = C.directed_px(r, s)
    assert d.n == r * 2**s
    assert len(d.arcs) == 2 * d.n
    assert all(len(x) == 2 for x in d.out_neighbors)
    assert all(len(x) == 2 for x in d.in_neighbors)


def test_directed_px_definition_instance():
    d = C.directed_px(3, 1)
    u = C.px_vertex_index(3, 1, 0, "0")
    outs = {C.px_vertex(3, 1, w).label() for w in d.out_neighbors[u]}
    assert outs == {(1, "0"), (1, "1")}


def test_px_errors():
    with pytest.raises(ValueError):
        C.px(2, 1)
    with pytest.raises(ValueError):
        C.px(3, 0)
    with pytest.raises(ValueError):
        C.px_groups(4, 4)


def test_px31_is_octahedron():
    g = C.px(3, 1)
    assert g.n == 6 and g.m == 12 and g.is_regular(4)
    assert nx.is_isomorphic(to_nx(g), nx.complete_multipartite_graph(2, 2, 2))


@pytest.mark.parametrize("r", range(3, 9))
def test_px_vertex_counts_and_valency(r):
    for s in range(1, r):
        g = C.px(r, s)
        assert g.n == r * 2**s
        assert g.is_regular(4) and g.is_connected()


def test_px_examples():
    assert C.px(4, 1).m == 16
    assert C.px(5, 4).n == 80


@pytest.mark.parametrize("r,s", [(3, 1), (4, 2), (5, 2), (5, 4), (6, 3)])
def test_px_groups(r, s):
    g = C.px_groups(r, s)
    graph = C.px(r, s)
    assert g.K.order() == 2**r
    assert g.Hplus.order() == 2**r * r
    # recompute |H| without the order hint
    assert PermutationGroup(g.H.degree, g.H.generators).order() == 2**r * 2 * r
    for t in g.tau:
        assert graph.is_automorphism(t)
    assert graph.is_automorphism(g.rho) and graph.is_automorphism(g.sigma)
    assert order(g.rho) == r
    assert (g.sigma * g.sigma).is_identity()
    # tau_0 conjugated by rho is tau_1
    assert g.rho.inverse() * g.tau[0] * g.rho == g.tau[1]
    assert g.H.is_transitive()
    # <rho, sigma> normalises K
    for x in (g.rho, g.sigma):
        for t in g.tau:
            assert g.K.contains(x.inverse() * t * x)


def test_px31_group_orders():
    g = C.px_groups(3, 1)
    assert (g.K.order(), g.Hplus.order(), g.H.order()) == (8, 24, 48)
    assert C.px_groups(5, 2).H.order() == 320


def test_sigma_negates_the_cycle_coordinate():
    g = C.px_groups(5, 1)
    for v in range(10):
        a = C.px_vertex(5, 1, v)
        b = C.px_vertex(5, 1, g.sigma[v])
        assert b.x == (-a.x) % 5 and b.word == a.word


def test_circular_ladder():
    prism = C.circular_ladder(3)
    assert nx.is_isomorphic(to_nx(prism), nx.circular_ladder_graph(3))
    assert nx.is_isomorphic(to_nx(C.circular_ladder(4)), nx.hypercube_graph(3))
    for n in range(3, 10):
        g = C.circular_ladder(n)
        assert g.n == 2 * n and g.m == 3 * n and g.is_cubic() and g.is_connected()
    with pytest.raises(ValueError):
        C.circular_ladder(2)


def test_mobius_ladder():
    assert nx.is_isomorphic(to_nx(C.mobius_ladder(2)), nx.complete_graph(4))
    assert nx.is_isomorphic(to_nx(C.mobius_ladder(3)), nx.complete_bipartite_graph(3, 3))
    for n in range(2, 10):
        g = C.mobius_ladder(n)
        assert g.n == 2 * n and g.m == 3 * n and g.is_cubic()
        assert nx.is_isomorphic(to_nx(g), nx.circulant_graph(2 * n, [1, n]))
    with pytest.raises(ValueError):
        C.mobius_ladder(1)


def test_petersen_family():
    assert nx.is_isomorphic(to_nx(C.petersen()), nx.petersen_graph())
    assert nx.is_isomorphic(to_nx(C.generalized_petersen(5, 2)), nx.petersen_graph())
    assert nx.is_isomorphic(to_nx(C.generalized_petersen(10, 3)), nx.desargues_graph())
    assert nx.is_isomorphic(to_nx(C.generalized_petersen(8, 3)), nx.moebius_kantor_graph())
    assert nx.is_isomorphic(to_nx(C.generalized_petersen(12, 5)), nx.LCF_graph(24, [5, -9, 7, -7, 9, -5], 4))


def test_cayley_graph_of_z6():
    G = cyclic_group(6)
    one = G.generators[0]
    cg = C.cayley_graph(G, [one, one.inverse(), one**3])
    assert cg.connected and cg.generates
    assert nx.is_isomorphic(to_nx(cg.graph), nx.complete_bipartite_graph(3, 3))
    assert cg.graph.m == 6 * 3 // 2


def test_cayley_graph_disconnected_and_errors():
    G = cyclic_group(6)
    one = G.generators[0]
    cg = C.cayley_graph(G, [one**2, one**4])
    assert not cg.connected and not cg.generates
    with pytest.raises(ValueError):
        C.cayley_graph(G, [one])
    with pytest.raises(ValueError):
        C.cayley_graph(G, [Permutation.identity(6)])


def test_cayley_graph_right_translations_are_automorphisms():
    G = PermutationGroup(4, [Permutation.parse("(0 1 2 3)", 4), Permutation.parse("(0 1)", 4)])
    I = [Permutation.parse("(0 1)", 4), Permutation.parse("(0 1 2 3)", 4), Permutation.parse("(0 3 2 1)", 4)]
    cg = C.cayley_graph(G, I)
    els = list(cg.elements)
    idx = {x: k for k, x in enumerate(els)}
    assert cg.graph.n == 24 and cg.graph.is_cubic() and cg.connected
    for g in G.generators:
        p = Permutation([idx[x * g] for x in els])
        assert cg.graph.is_automorphism(p)


def test_w_module_matrices():
    M, P = C.W_ORDER5_MATRIX, C.W_INVOLUTION_MATRIX
    I = C._identity4()
    mm = C._mat_mul
    M5 = I
    for _ in range(5):
        M5 = mm(M5, M)
    assert M5 == I and M != I
    assert mm(P, P) == I
    # P conjugates M to its inverse
    assert mm(mm(P, M), P) == mm(mm(mm(M, M), M), M)
    assert len(C.dihedral_matrices()) == 10


def test_w_module_group_l1():
    G = C.w_module_group(1)
    assert G.order() == 160 and G.is_regular()
    sp = spectrum(G)
    assert {2, 5} <= sp and 10 not in sp
    assert sp == {1, 2, 4, 5}
    with pytest.raises(ValueError):
        C.w_module_group(3)


@pytest.mark.slow
def test_w_module_group_l2():
    G = C.w_module_group(2)
    assert G.order() == 2560 and G.is_regular()
    assert PermutationGroup(G.degree, G.generators).order() == 2560
    assert spectrum(G) == {1, 2, 4, 5}
