from __future__ import annotations

import pytest

from semireg import constructions as C
from semireg.graph_aut import are_isomorphic, automorphism_group
from semireg.graphs import Graph
from semireg.groups import PermutationGroup
from semireg.perm import Permutation, cycle_lengths, is_derangement, is_semiregular, order
from semireg.split_merge import (
    CyclePartition,
    Degenerate,
    Merged,
    NotApplicable,
    lift_to_split,
    merge,
    round_trip_witness,
    s_partition,
    split,
    split_index,
    split_px,
    split_px_groups,
    super_flip,
)


def test_partition_validation():
    host = C.px(3, 1)
    good = s_partition(3, 1)
    assert len(good) == 3
    classes = [list(c) for c in good.classes]
    with pytest.raises(ValueError):
        CyclePartition(host, classes[:2])
    with pytest.raises(ValueError):
        CyclePartition(host, [classes[0] + classes[1], classes[2]])
    with pytest.raises(ValueError):
        CyclePartition(C.circular_ladder(4), [])


@pytest.mark.parametrize("r,s,expected", [(3, 1, 3), (4, 2, 8), (5, 3, 20)])
def test_s_partition_class_counts(r, s, expected):
    part = s_partition(r, s)
    assert len(part) == expected == 2 * r * 2**s // 4
    assert all(len(c) == 4 for c in part.classes)


@pytest.mark.parametrize("r,s", [(3, 1), (4, 2), (5, 3), (6, 2)])
def test_s_partition_is_the_two_orbit_partition(r, s):
    part = s_partition(r, s)
    K = C.px_groups(r, s).K
    orbit_of = {}
    for k, orb in enumerate(K.orbits()):
        for v in orb:
            orbit_of[v] = k
    for c in part.classes:
        assert len({orbit_of[v] for e in c for v in e}) == 2
    # any cycle inside two K-orbits lives in the edges between them, and
    # those edges fall apart into exactly the classes above
    host = part.host
    layers = {}
    for u, v in host.edges:
        layers.setdefault(frozenset((orbit_of[u], orbit_of[v])), []).append((u, v))
    comps = []
    for es in layers.values():
        sub = Graph(host.n, es)
        for comp in sub.components():
            if len(comp) > 1:
                cs = set(comp)
                comps.append(tuple(sorted(e for e in es if e[0] in cs)))
    assert sorted(comps) == sorted(part.classes)


@pytest.mark.parametrize("r,s", [(3, 1), (4, 1)])
def test_split_px_small(r, s):
    g = split_px(r, s)
    assert g.n == 2 * C.px(r, s).n
    assert g.is_cubic() and g.is_connected()


def test_split_structure():
    part = s_partition(4, 2)
    g = split(part.host, part)
    verts = split_index(part)
    for i, (a, k) in enumerate(verts):
        same_base = [j for j in g.neighbors(i) if verts[j][0] == a]
        assert len(same_base) == 1
        assert a in {x for e in part.classes[k] for x in e}
    with pytest.raises(ValueError):
        split(C.px(3, 1), part)


@pytest.mark.parametrize("r,s", [(3, 1), (3, 2), (4, 2), (5, 2), (6, 3)])
def test_split_px_group_h(r, s):
    grp = split_px_groups(r, s)
    g = grp.graph
    assert g.n == 2 * r * 2**s
    assert g.is_cubic() and g.is_connected()
    for p in grp.H.generators:
        assert g.is_automorphism(p)
    assert grp.H.is_transitive()
    assert PermutationGroup(g.n, grp.H.generators).order() == 2 ** (r + 1) * r


@pytest.mark.parametrize("r,s", [(3, 1), (4, 3), (5, 2), (6, 1)])
def test_super_flip(r, s):
    f = super_flip(r, s)
    grp = split_px_groups(r, s)
    assert order(f) == 2 * r
    assert is_semiregular(f)
    assert grp.graph.is_automorphism(f)
    prod = Permutation.identity(f.degree)
    for t in grp.tau:
        prod = prod * t
    assert f**r == prod
    hostprod = Permutation.identity(grp.partition.host.n)
    for t in C.px_groups(r, s).tau:
        hostprod = hostprod * t
    assert is_derangement(hostprod)


def test_super_flip_cycle_type_sc61():
    f = super_flip(6, 1)
    assert sorted(set(cycle_lengths(f))) == [12]
    assert f.degree == 24


@pytest.mark.parametrize("r,s", [(3, 1), (4, 1), (4, 2), (5, 2), (5, 4)])
def test_merge_inverts_split(r, s):
    grp = split_px_groups(r, s)
    res = merge(grp.graph, grp.H)
    assert isinstance(res, Merged)
    theta = round_trip_witness(grp.partition, res, grp.graph)
    host = grp.partition.host
    assert {tuple(sorted((theta[u], theta[v]))) for u, v in res.delta.edges} == set(host.edges)
    assert res.kernel_order == 1
    # the matched neighbour is fixed by the point stabilizer, and the edge
    # stabilizer swaps the two ends
    H = grp.H
    u, v = res.matching[0]
    assert H.stabilizer(u).order() == H.pointwise_stabilizer([u, v]).order()
    assert H.setwise_stabilizer({u, v}).order() == 2 * H.stabilizer(u).order()


def test_merge_full_group_sc51():
    g = split_px(5, 1)
    A = automorphism_group(g)
    res = merge(g, A)
    assert isinstance(res, Merged)
    assert are_isomorphic(res.delta, C.px(5, 1)) is not None


def test_merge_ladder_is_degenerate():
    n = 7
    shift = Permutation([2 * ((v // 2 + 1) % n) + v % 2 for v in range(2 * n)])
    refl = Permutation([2 * ((-(v // 2)) % n) + v % 2 for v in range(2 * n)])
    swap = Permutation([v ^ 1 for v in range(2 * n)])
    g = C.circular_ladder(n)
    G = PermutationGroup(2 * n, [shift, refl, swap])
    stab = G.stabilizer(0)
    sizes = sorted(len(stab.orbit(w)) for w in g.neighbors(0))
    assert sizes == [1, 2, 2]
    res = merge(g, G)
    assert res == Degenerate("circular", 7)
    M = C.mobius_ladder(5)
    assert merge(M, automorphism_group(M)) == Degenerate("mobius", 5)


def test_merge_petersen_not_applicable():
    g = C.petersen()
    res = merge(g, automorphism_group(g))
    assert isinstance(res, NotApplicable)
    assert res.local_orbit_sizes == (3,)


def test_merge_preconditions():
    with pytest.raises(ValueError):
        merge(C.px(3, 1), automorphism_group(C.px(3, 1)))
    g = C.circular_ladder(5)
    with pytest.raises(ValueError):
        merge(g, PermutationGroup(10, [Permutation([v ^ 1 for v in range(10)])]))


def test_lift_to_split_rejects_non_invariant_maps():
    part = s_partition(4, 1)
    A = automorphism_group(part.host)
    bad = next(g for g in A.elements() if not part.is_invariant(g))
    with pytest.raises(ValueError):
        lift_to_split(bad, part)


def test_partition_json_round_trip():
    part = s_partition(4, 2)
    assert CyclePartition.from_json(part.host, part.to_json()) == part
