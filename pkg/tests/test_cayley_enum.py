from __future__ import annotations

import numpy as np
import pytest

from semireg.cayley_enum import (
    RegularGroupTable,
    _cayley_from_table,
    _mat_inverse,
    _twisting_matrix,
    connection_sets,
    cubic_cayley_graphs,
    inner_automorphisms,
    w_group_automorphisms,
)
from semireg.constructions import W_INVOLUTION_MATRIX, W_ORDER5_MATRIX, _identity4, _mat_mul, w_module_group
from semireg.graph_aut import are_isomorphic
from semireg.groups import PermutationGroup, cyclic_group, satisfies_property_P, symmetric_group
from semireg.harness import analyze


def _spectrum(g):
    A = np.zeros((g.n, g.n))
    for u, v in g.edges:
        A[u, v] = A[v, u] = 1
    return tuple(np.round(np.linalg.eigvalsh(A), 6))


@pytest.fixture(scope="module")
def w1():
    G = w_module_group(1)
    T = RegularGroupTable(G)
    return G, T


def test_table_requires_regular_group():
    with pytest.raises(ValueError):
        RegularGroupTable(symmetric_group(4))


def test_inner_automorphisms_respect_multiplication(w1):
    _, T = w1
    for phi in inner_automorphisms(T):
        assert T.is_automorphism(np.asarray(phi.images))


def test_twisting_matrix():
    M2 = _mat_mul(W_ORDER5_MATRIX, W_ORDER5_MATRIX)
    Q = _twisting_matrix([M2, W_INVOLUTION_MATRIX])
    Qi = _mat_inverse(Q)
    assert _mat_mul(Q, Qi) == _identity4()
    assert _mat_mul(W_ORDER5_MATRIX, Q) == _mat_mul(Q, M2)
    assert _mat_mul(W_INVOLUTION_MATRIX, Q) == _mat_mul(Q, W_INVOLUTION_MATRIX)


def test_automorphism_group_order_l1(w1):
    # 960 was counted by trying every image of the three generators
    G, T = w1
    A = PermutationGroup(T.m, inner_automorphisms(T) + w_group_automorphisms(1, T))
    assert A.order() == 960
    assert PermutationGroup(T.m, inner_automorphisms(T)).order() == 160


def test_connection_sets_are_valid(w1):
    _, T = w1
    A = PermutationGroup(T.m, inner_automorphisms(T) + w_group_automorphisms(1, T))
    sets = connection_sets(T, A)
    assert len(sets) == 15
    for S in sets:
        assert len(S) == 3 and 0 not in S
        assert {int(T.inv[x]) for x in S} == set(S)
        assert T.generated(S)


def test_cubic_cayley_graphs_l1(w1):
    G, T = w1
    res = cubic_cayley_graphs(G, w_group_automorphisms(1, T))
    assert res.group_order == 160 and res.automorphism_group_order == 960 and res.complete
    assert len(res.classes) == 6
    assert sorted(c.aut_order for c in res.classes) == [160, 160, 320, 320, 320, 320]
    # distinct spectra: the six classes are pairwise non-isomorphic
    assert len({_spectrum(c.graph) for c in res.classes}) == 6
    for c in res.classes:
        assert c.graph.is_cubic() and c.graph.is_connected()
        assert c.graph.n == 160


def test_enumeration_without_outer_automorphisms_agrees(w1):
    G, T = w1
    res = cubic_cayley_graphs(G)
    assert res.automorphism_group_order == 160
    assert len(res.classes) == 6
    assert sum(c.members for c in res.classes) == res.candidate_sets


def test_every_generating_set_lands_in_a_class(w1):
    G, T = w1
    res = cubic_cayley_graphs(G, w_group_automorphisms(1, T))
    rng = np.random.default_rng(11)
    invols = np.flatnonzero(T.orders == 2)
    big = np.flatnonzero(T.orders > 2)
    checked = 0
    while checked < 12:
        a = int(rng.choice(invols))
        x = int(rng.choice(big))
        S = (a, x, int(T.inv[x]))
        if not T.generated(S):
            continue
        g = _cayley_from_table(T, S)
        hits = 0
        for c in res.classes:
            w = are_isomorphic(g, c.graph, aut2=c.aut)
            if w is not None:
                assert {tuple(sorted((w[u], w[v]))) for u, v in g.edges} == set(c.graph.edges)
                hits += 1
        assert hits == 1
        checked += 1


def test_regular_group_of_each_l1_class_is_exceptional(w1):
    G, _ = w1
    assert satisfies_property_P(G)
    assert G.max_semiregular_order() == 5


def test_time_budget_marks_incomplete(w1):
    G, T = w1
    res = cubic_cayley_graphs(G, w_group_automorphisms(1, T), time_budget=0.0)
    assert not res.complete


def test_small_cyclic_group():
    # Cay(Z_8, {1, -1, 4}) is the only connected cubic Cayley graph of Z_8 up to isomorphism
    res = cubic_cayley_graphs(cyclic_group(8))
    assert len(res.classes) == 1
    rep = analyze(res.classes[0].graph)
    assert rep.aut_order == 16


@pytest.mark.slow
def test_w2_automorphisms_and_property_P():
    G = w_module_group(2)
    T = RegularGroupTable(G)
    gens = w_group_automorphisms(2, T)
    for phi in gens:
        assert T.is_automorphism(np.asarray(phi.images))
    assert satisfies_property_P(G)


@pytest.mark.extended
def test_w2_has_exactly_one_cubic_cayley_graph():
    G = w_module_group(2)
    T = RegularGroupTable(G)
    res = cubic_cayley_graphs(G, w_group_automorphisms(2, T))
    assert res.complete and len(res.classes) == 1
    assert res.classes[0].aut_order == 5120
    assert G.max_semiregular_order() < 6
