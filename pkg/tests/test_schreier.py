import itertools

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from schreierlab import (
    DisconnectedGraphError,
    Permutation,
    SymmetricMultiset,
    bipartite_criterion,
    catalog_group,
    connectivity_and_bipartiteness,
    dedup_counterexample_search,
    derived_subgroup,
    index2_overgroups,
    right_transversal,
    rs_induce,
    sample_symmetric_multiset,
    schreier_graph,
    spectral_summary,
    symmetrize,
)
from schreierlab.permutations import Transversal


def cycle_pair(group):
    g = group.elements[1]
    return SymmetricMultiset.from_elements([g, g.inverse()])


# ---------------------------------------------------------------------------
# symmetric multisets


def test_symmetrize_order_four_element(c4):
    g = c4.elements[1]
    s = symmetrize([g])
    assert s.size == 2
    assert dict((p.images, m) for p, m in s.entries) == {
        g.images: 1,
        g.inverse().images: 1,
    }


def test_symmetrize_involution_doubles():
    t = Permutation([1, 0])
    s = symmetrize([t])
    assert s.size == 2
    assert s.entries == ((t, 2),)


def test_symmetrize_keeps_multiplicities(c4):
    g = c4.elements[1]
    s = symmetrize([g, g])
    assert s.size == 4
    counts = {p.images: m for p, m in s.entries}
    assert counts == {g.images: 2, g.inverse().images: 2}


def test_asymmetric_multiset_rejected(c4):
    g = c4.elements[1]
    with pytest.raises(ValueError):
        SymmetricMultiset([(g, 1)])
    with pytest.raises(ValueError):
        SymmetricMultiset([(g, 2), (g.inverse(), 1)])


@given(st.lists(st.permutations(list(range(4))), min_size=1, max_size=6))
def test_symmetrize_always_symmetric_and_doubles(images):
    elements = [Permutation(im) for im in images]
    s = symmetrize(elements)
    assert s.size == 2 * len(elements)
    counts = {p.images: m for p, m in s.entries}
    for p, m in s.entries:
        assert counts[p.inverse().images] == m


# ---------------------------------------------------------------------------
# graph construction


def test_cycle_graph_rows(c6):
    graph = schreier_graph(c6, c6.trivial_subgroup(), cycle_pair(c6))
    assert graph.vertex_count == 6 and graph.degree == 2
    for row in graph.walk:
        assert sorted(row) == [0, 0, 0, 0, 0.5, 0.5]
    assert np.array_equal(graph.counts, graph.counts.T)


def test_sym3_natural_all_third(s3):
    transpositions = [
        p for p in s3.elements if sorted(len(c) for c in p.cycles()) == [2]
    ]
    graph = schreier_graph(
        s3, s3.point_stabilizer(0), SymmetricMultiset.from_elements(transpositions)
    )
    assert np.allclose(graph.walk, 1.0 / 3.0)


def test_identity_multiset_gives_loops(s3):
    e = s3.identity
    graph = schreier_graph(s3, s3.trivial_subgroup(), SymmetricMultiset([(e, 2)]))
    assert np.array_equal(graph.walk, np.eye(6))


def test_multiset_element_outside_group_rejected(c4, s3):
    outsider = Permutation([1, 0, 2, 3])
    with pytest.raises(ValueError):
        schreier_graph(c4, c4.trivial_subgroup(), symmetrize([outsider]))


def test_row_sums_and_exact_symmetry_randomized():
    rng = np.random.default_rng(77)
    for name in ("sym:4", "dihedral:12", "heisenberg:3"):
        group = catalog_group(name)
        for size in (2, 3, 5, 8):
            s = sample_symmetric_multiset(group, size, rng)
            y = group.subgroup_generated(
                [group.elements[int(rng.integers(0, group.order))]]
            )
            graph = schreier_graph(group, y, s)
            assert np.all(graph.counts.sum(axis=1) == s.size)
            assert np.abs(graph.walk.sum(axis=1) - 1.0).max() < 1e-12
            assert np.array_equal(graph.counts, graph.counts.T)


# ---------------------------------------------------------------------------
# connectivity and bipartiteness


def test_six_cycle_connected_bipartite(c6):
    report = connectivity_and_bipartiteness(
        schreier_graph(c6, c6.trivial_subgroup(), cycle_pair(c6))
    )
    assert report.connected and report.bipartite
    colors = report.classes
    assert colors is not None and set(colors) == {0, 1}


def test_loop_breaks_bipartiteness(c6):
    g = c6.elements[1]
    s = SymmetricMultiset.from_elements([g, g.inverse(), c6.identity])
    report = connectivity_and_bipartiteness(
        schreier_graph(c6, c6.trivial_subgroup(), s)
    )
    assert report.connected and not report.bipartite


def test_square_multiset_disconnects(c4):
    g = c4.elements[1]
    s = SymmetricMultiset([(g * g, 2)])
    report = connectivity_and_bipartiteness(
        schreier_graph(c4, c4.trivial_subgroup(), s)
    )
    assert not report.connected


# ---------------------------------------------------------------------------
# index-2 avoidance criterion


def test_criterion_on_even_cycle(c6):
    result = bipartite_criterion(c6, c6.trivial_subgroup(), cycle_pair(c6))
    assert result.criterion_holds
    g = c6.elements[1]
    assert result.witness is not None
    assert g * g in result.witness and g not in result.witness


def test_criterion_on_transposition_cayley(s3):
    transpositions = [
        p for p in s3.elements if sorted(len(c) for c in p.cycles()) == [2]
    ]
    result = bipartite_criterion(
        s3, s3.trivial_subgroup(), SymmetricMultiset.from_elements(transpositions)
    )
    assert result.criterion_holds
    assert result.witness.same_elements(derived_subgroup(s3))


def test_criterion_on_odd_cycle():
    c5 = catalog_group("cyclic:5")
    result = bipartite_criterion(c5, c5.trivial_subgroup(), cycle_pair(c5))
    assert not result.criterion_holds and result.witness is None


def test_criterion_requires_connected(c4):
    g = c4.elements[1]
    with pytest.raises(DisconnectedGraphError):
        bipartite_criterion(c4, c4.trivial_subgroup(), SymmetricMultiset([(g * g, 2)]))


def test_criterion_matches_bfs_on_cayley_instances():
    rng = np.random.default_rng(5150)
    for name in ("cyclic:12", "dihedral:12", "sym:3", "elem-abelian:2^3"):
        group = catalog_group(name)
        trivial = group.trivial_subgroup()
        inv = group.inverse_indices()
        classes = sorted({tuple(sorted({i, inv[i]})) for i in range(group.order)})
        for _ in range(60):
            k = int(rng.integers(1, len(classes) + 1))
            chosen = rng.choice(len(classes), size=k, replace=False)
            indices = sorted(
                set(itertools.chain.from_iterable(classes[int(c)] for c in chosen))
            )
            s = SymmetricMultiset.from_elements(group.elements[i] for i in indices)
            graph = schreier_graph(group, trivial, s)
            report = connectivity_and_bipartiteness(graph)
            if not report.connected:
                continue
            assert bipartite_criterion(group, trivial, s).criterion_holds == report.bipartite


def test_bipartite_criterion_limits():
    """With a nontrivial stabilizer only one direction survives: avoidance
    forces bipartiteness, but a bipartite coset graph need not admit any
    avoiding index-2 subgroup.  The degree-4 alternating group on cosets of
    a point stabilizer with two double transpositions is a 4-cycle, yet the
    group has no index-2 subgroup at all."""
    a4 = catalog_group("alt:4")
    y = a4.point_stabilizer(0)
    s = SymmetricMultiset.from_elements(
        [Permutation([1, 0, 3, 2]), Permutation([2, 3, 0, 1])]
    )
    graph = schreier_graph(a4, y, s)
    report = connectivity_and_bipartiteness(graph)
    assert report.connected and report.bipartite
    assert index2_overgroups(a4, y) == []
    assert not bipartite_criterion(a4, y, s).criterion_holds


def test_no_index2_transfer_to_induced_sets():
    """Groups without index-2 subgroups induce non-bipartite Cayley graphs
    in every subgroup, whenever the parent graph is connected."""
    rng = np.random.default_rng(909)
    for name in ("alt:4", "heisenberg:3", "alt:5"):
        group = catalog_group(name)
        assert index2_overgroups(group, group.trivial_subgroup()) == []
        trivial = group.trivial_subgroup()
        for trial in range(25):
            subgroup = group.subgroup_generated(
                [group.elements[int(rng.integers(0, group.order))] for _ in range(2)]
            )
            s = sample_symmetric_multiset(group, 2 + trial % 5, rng)
            parent_graph = schreier_graph(group, trivial, s)
            if not connectivity_and_bipartiteness(parent_graph).connected:
                continue
            induced = rs_induce(
                group, subgroup, right_transversal(group, subgroup), s
            )
            child = schreier_graph(subgroup, trivial, induced)
            child_report = connectivity_and_bipartiteness(child)
            assert child_report.connected
            assert not child_report.bipartite


# ---------------------------------------------------------------------------
# induction to subgroups


def test_rs_induce_c4_example(c4):
    g = c4.elements[1]
    h = c4.subgroup_generated([g * g])
    t = right_transversal(c4, h)
    s = SymmetricMultiset.from_elements([g, g * g * g])
    induced = rs_induce(c4, h, t, s)
    # four (t, s) pairs by hand: e*g -> e, e*g^3 -> g^2, g*g -> g^2, g*g^3 -> e
    assert {(p.images, m) for p, m in induced.entries} == {
        (c4.identity.images, 2),
        ((g * g).images, 2),
    }
    assert induced.size == 4


def test_rs_induce_whole_group_is_identity_map(s3):
    t = right_transversal(s3, s3)
    s = sample_symmetric_multiset(s3, 4, np.random.default_rng(3))
    assert rs_induce(s3, s3, t, s) == s


def test_rs_induce_identity_multiset(s3):
    h = s3.subgroup_generated([Permutation.from_cycles([[0, 1]], 3)])
    t = right_transversal(s3, h)
    s = SymmetricMultiset([(s3.identity, 2)])
    induced = rs_induce(s3, h, t, s)
    assert induced.entries == ((s3.identity, 6),)


def test_rs_size_law_and_symmetry_randomized():
    rng = np.random.default_rng(42)
    for name in ("sym:4", "dihedral:16", "heisenberg:3"):
        group = catalog_group(name)
        for trial in range(20):
            picks = [
                group.elements[int(rng.integers(0, group.order))]
                for _ in range(int(rng.integers(0, 3)))
            ]
            subgroup = group.subgroup_generated(picks)
            t = right_transversal(group, subgroup)
            s = sample_symmetric_multiset(group, 2 + trial % 6, rng)
            induced = rs_induce(group, subgroup, t, s)
            assert induced.size == (group.order // subgroup.order) * s.size
            assert rs_induce(group, subgroup, t, s.inverse()) == induced.inverse()
            assert all(p in subgroup for p in induced.support())


def test_generation_transfers_to_subgroup():
    rng = np.random.default_rng(1234)
    group = catalog_group("sym:4")
    for trial in range(30):
        subgroup = group.subgroup_generated(
            [group.elements[int(rng.integers(0, group.order))] for _ in range(2)]
        )
        y = group.trivial_subgroup()
        s = sample_symmetric_multiset(group, 2 + trial % 5, rng)
        generated = group.subgroup_generated(s.support())
        if generated.order != group.order:
            continue
        induced = rs_induce(group, subgroup, right_transversal(group, subgroup), s)
        assert subgroup.subgroup_generated(induced.support()).order == subgroup.order


def test_rs_induce_with_custom_transversal(d8):
    rotation = d8.generators[0]
    h = d8.subgroup_generated([rotation])
    base = right_transversal(d8, h)
    other_members = [p for p in d8.elements if p not in h]
    custom = Transversal.from_reps(d8, h, [rotation, other_members[-1]])
    s = sample_symmetric_multiset(d8, 4, np.random.default_rng(8))
    induced = rs_induce(d8, h, custom, s)
    assert induced.size == 2 * s.size
    assert rs_induce(d8, h, custom, s.inverse()) == induced.inverse()


# ---------------------------------------------------------------------------
# the dedup counterexample search


def test_dedup_search_trivial_when_subgroup_is_whole_group(c4):
    result = dedup_counterexample_search(c4, c4, c4.trivial_subgroup())
    assert result.witnesses == ()
    assert result.multiset_violations == ()


def test_dedup_search_dihedral_finds_witnesses(d8):
    rotation = d8.generators[0]
    h = d8.subgroup_generated([rotation])
    result = dedup_counterexample_search(d8, h, d8.trivial_subgroup())
    assert len(result.witnesses) >= 1
    assert result.multiset_violations == ()
    for witness in result.witnesses:
        assert all(m == 1 for _, m in witness.connection_set.entries)
        assert witness.induced_set_gap < witness.parent_gap - 1e-9
        assert witness.induced_multiset_gap >= witness.parent_gap - 1e-8


def test_dedup_witness_is_reproducible(d8):
    rotation = d8.generators[0]
    h = d8.subgroup_generated([rotation])
    result = dedup_counterexample_search(d8, h, d8.trivial_subgroup())
    w = result.witnesses[0]
    trivial = d8.trivial_subgroup()
    parent = spectral_summary(schreier_graph(d8, trivial, w.connection_set))
    t = Transversal.from_reps(d8, h, list(w.transversal_reps))
    induced = rs_induce(d8, h, t, w.connection_set)
    dedup = spectral_summary(schreier_graph(h, trivial, induced.as_set()))
    assert parent.gap == pytest.approx(w.parent_gap, abs=1e-12)
    assert dedup.gap == pytest.approx(w.induced_set_gap, abs=1e-12)


def test_dedup_search_class_cap():
    from schreierlab import SearchSpaceError

    group = catalog_group("sym:4")
    with pytest.raises(SearchSpaceError):
        dedup_counterexample_search(
            group, group, group.trivial_subgroup(), class_cap=3
        )
