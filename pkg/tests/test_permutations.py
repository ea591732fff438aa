import itertools
import math

import pytest
from hypothesis import given
from hypothesis import strategies as st

from schreierlab import (
    GroupTooLargeError,
    NotASubgroupError,
    Permutation,
    catalog_group,
    derived_subgroup,
    faithful_reduction,
    group_from_generators,
    index2_overgroups,
    intermediate_subgroups,
    lower_central_series,
    normal_core,
    right_transversal,
)


# ---------------------------------------------------------------------------
# independent oracles, written against raw permutations only


def closure_of(perms):
    """Plain multiplication closure, independent of the library's BFS."""
    degree = perms[0].degree
    members = {Permutation.identity(degree)}
    members.update(perms)
    changed = True
    while changed:
        changed = False
        for a, b in itertools.product(list(members), repeat=2):
            c = a * b
            if c not in members:
                members.add(c)
                changed = True
    return members


def all_subgroups_by_small_seeds(group, max_seed=3):
    """Every subgroup of a group whose subgroups need at most 3 generators."""
    found = set()
    elements = list(group.elements)
    for r in range(0, max_seed + 1):
        for seed in itertools.combinations(elements, r):
            members = closure_of(list(seed) or [group.identity])
            found.add(frozenset(p.images for p in members))
    return found


def brute_derived(group):
    commutators = [
        a.inverse() * b.inverse() * a * b
        for a, b in itertools.product(group.elements, repeat=2)
    ]
    return closure_of(commutators)


def brute_core(group, subgroup):
    members = set(subgroup.elements)
    for g in group.elements:
        conjugate = {g.inverse() * y * g for y in subgroup.elements}
        members &= conjugate
    return members


# ---------------------------------------------------------------------------
# permutation algebra


def test_compose_applies_left_then_right():
    p = Permutation([1, 2, 0])
    q = Permutation([0, 2, 1])
    assert (p * q).images == tuple(q.images[i] for i in p.images)


def test_inverse_of_explicit_tuple():
    # solve images[inv[i]] = i by hand for [1,2,3,0]
    p = Permutation([1, 2, 3, 0])
    assert p.inverse().images == (3, 0, 1, 2)


def test_three_cycle_basics():
    p = Permutation.from_cycles([[0, 1, 2]], 3)
    assert p(0) == 1
    assert (p * p.inverse()).is_identity()


def test_degree_mismatch_and_range_errors():
    p = Permutation([1, 0])
    q = Permutation([1, 2, 0])
    with pytest.raises(ValueError):
        p * q
    with pytest.raises(ValueError):
        p(5)
    with pytest.raises(ValueError):
        Permutation([0, 0, 1])


@given(st.permutations(list(range(6))), st.permutations(list(range(6))))
def test_inverse_cancels(a, b):
    p, q = Permutation(a), Permutation(b)
    assert (p * p.inverse()).is_identity()
    assert ((p * q) * (p * q).inverse()).is_identity()


@given(
    st.permutations(list(range(5))),
    st.permutations(list(range(5))),
    st.permutations(list(range(5))),
)
def test_composition_associative(a, b, c):
    p, q, r = Permutation(a), Permutation(b), Permutation(c)
    assert ((p * q) * r).images == (p * (q * r)).images


def test_cycle_decomposition_round_trip():
    p = Permutation([1, 0, 3, 4, 2, 5])
    assert Permutation.from_cycles(p.cycles(), 6) == p


# ---------------------------------------------------------------------------
# group construction


def test_cyclic_closure_order(c4):
    assert c4.order == 4
    assert c4.identity.is_identity()


def test_sym6_closure_order():
    gens = [
        Permutation.from_cycles([[0, 1]], 6),
        Permutation.from_cycles([[0, 1, 2, 3, 4, 5]], 6),
    ]
    assert group_from_generators(gens).order == math.factorial(6)


def test_identity_generator_gives_trivial_group():
    g = group_from_generators([Permutation.identity(3)])
    assert g.order == 1


def test_cap_is_explicit():
    gens = [
        Permutation.from_cycles([[0, 1]], 6),
        Permutation.from_cycles([[0, 1, 2, 3, 4, 5]], 6),
    ]
    with pytest.raises(GroupTooLargeError):
        group_from_generators(gens, cap=100)


def test_canonical_order_is_bfs_discovery():
    g = catalog_group("cyclic:4")
    gen = g.generators[0]
    expected = [Permutation.identity(4), gen, gen * gen, gen * gen * gen]
    assert list(g.elements) == expected


def test_element_membership_and_index(s3):
    for i, p in enumerate(s3.elements):
        assert s3.index_of(p) == i
    outsider = Permutation([1, 0, 2, 3])
    assert outsider not in s3
    with pytest.raises(ValueError):
        s3.index_of(outsider)


# ---------------------------------------------------------------------------
# transversals


def test_transversal_c4_over_c2(c4):
    g = c4.elements[1]
    h = c4.subgroup_generated([g * g])
    t = right_transversal(c4, h)
    assert t.coset_count == 2
    assert [r.images for r in t.reps] == [c4.identity.images, g.images]
    # every element lands in the subgroup after cancelling its representative
    for x in range(c4.order):
        rep = c4.elements[t.rep_of[x]]
        assert c4.elements[x] * rep.inverse() in h
    # representatives are their own representatives
    for rep_idx in t.rep_indices:
        assert t.rep_of[rep_idx] == rep_idx


def test_transversal_partition_sizes(s3):
    h = s3.subgroup_generated([Permutation.from_cycles([[0, 1]], 3)])
    t = right_transversal(s3, h)
    assert t.coset_count == 3
    slots = {}
    for x in range(s3.order):
        slots.setdefault(t.slot_of[x], set()).add(x)
    assert sorted(len(v) for v in slots.values()) == [2, 2, 2]


def test_whole_group_transversal(s3):
    t = right_transversal(s3, s3)
    assert t.coset_count == 1
    assert t.reps[0].is_identity()


def test_not_a_subgroup_is_rejected(s3, c4):
    transposition_group = group_from_generators([Permutation([1, 0, 2, 3])])
    with pytest.raises(NotASubgroupError):
        right_transversal(c4, transposition_group)
    with pytest.raises(NotASubgroupError):
        right_transversal(s3, catalog_group("cyclic:4"))


# ---------------------------------------------------------------------------
# derived subgroups and the lower central series


def test_derived_subgroup_matches_brute_force(s3, d8):
    for group in (s3, d8, catalog_group("alt:4")):
        expected = {p for p in brute_derived(group)}
        got = derived_subgroup(group)
        assert {p.images for p in got.elements} == {p.images for p in expected}


def test_derived_of_abelian_is_trivial(c6):
    assert derived_subgroup(c6).order == 1


def test_derived_s3_is_alt3(s3):
    assert derived_subgroup(s3).order == 3


def test_derived_d8_is_center(d8):
    derived = derived_subgroup(d8)
    assert derived.order == 2
    center_element = derived.elements[1]
    for g in d8.elements:
        assert g * center_element == center_element * g


def test_lcs_matches_brute_force(d8, s3, heis3):
    for group in (d8, s3, heis3, catalog_group("cyclic:12")):
        term = set(group.elements)
        expected_orders = [len(term)]
        while True:
            commutators = [
                x.inverse() * g.inverse() * x * g
                for x in term
                for g in group.elements
            ]
            nxt = closure_of(commutators)
            if len(nxt) == len(term):
                break
            expected_orders.append(len(nxt))
            term = nxt
            if len(nxt) == 1:
                break
        terms, _ = lower_central_series(group)
        assert [t.order for t in terms] == expected_orders


def test_nilpotency_classes(d8, s3, heis3, c6):
    assert lower_central_series(c6)[1] == 1
    assert lower_central_series(d8)[1] == 2
    assert lower_central_series(heis3)[1] == 2
    assert lower_central_series(s3)[1] is None
    assert lower_central_series(catalog_group("dihedral:16"))[1] == 3


def test_lcs_terms_descending_and_normal(d8, heis3):
    for group in (d8, heis3):
        terms, _ = lower_central_series(group)
        for earlier, later in zip(terms, terms[1:]):
            assert earlier.contains_subgroup(later)
        for term in terms:
            for g in group.generators:
                for x in term.elements:
                    assert g.inverse() * x * g in term


# ---------------------------------------------------------------------------
# normal cores and faithful reduction


def test_normal_core_examples(s3, c4):
    y = s3.subgroup_generated([Permutation.from_cycles([[0, 1]], 3)])
    core = normal_core(s3, y)
    assert {p.images for p in core.elements} == {p.images for p in brute_core(s3, y)}
    assert core.order == 1
    assert normal_core(s3, s3).order == s3.order
    a3 = derived_subgroup(s3)
    assert normal_core(s3, a3).same_elements(a3)


def test_faithful_reduction_examples(s3, c4):
    image, base = faithful_reduction(s3, s3.trivial_subgroup())
    assert image.order == 6 and image.degree == 6

    y = s3.point_stabilizer(0)
    image, base = faithful_reduction(s3, y)
    assert image.order == 6 and image.degree == 3

    g = c4.elements[1]
    c2 = c4.subgroup_generated([g * g])
    image, base = faithful_reduction(c4, c2)
    assert image.order == 2 and image.degree == 2
    assert base == 0


def test_faithful_reduction_order_is_core_index():
    for name in ("sym:4", "dihedral:12", "heisenberg:3"):
        group = catalog_group(name)
        y = group.subgroup_generated([group.elements[group.order // 2]])
        image, _ = faithful_reduction(group, y)
        assert image.order == group.order // normal_core(group, y).order


# ---------------------------------------------------------------------------
# subgroup enumeration


def test_intermediate_subgroups_c4(c4):
    subs = intermediate_subgroups(c4, c4.trivial_subgroup())
    assert [s.order for s in subs] == [1, 2, 4]


def test_intermediate_subgroups_above_floor(s3):
    y = s3.subgroup_generated([Permutation.from_cycles([[0, 1]], 3)])
    subs = intermediate_subgroups(s3, y)
    assert [s.order for s in subs] == [2, 6]
    assert intermediate_subgroups(s3, s3) and len(intermediate_subgroups(s3, s3)) == 1


@pytest.mark.parametrize(
    "name",
    ["cyclic:12", "sym:3", "dihedral:8", "alt:4", "elem-abelian:2^3", "sym:4"],
)
def test_interval_matches_seeded_brute_force(name):
    # oracle sound for groups whose subgroups are all 3-generated; rank-4
    # two-groups like (C2)^4 would need larger seeds
    group = catalog_group(name)
    expected = all_subgroups_by_small_seeds(group)
    got = {
        frozenset(p.images for p in s.elements)
        for s in intermediate_subgroups(group, group.trivial_subgroup())
    }
    assert got == expected


def test_lagrange_for_every_enumerated_subgroup():
    for name in ("sym:4", "dihedral:12", "heisenberg:3"):
        group = catalog_group(name)
        for sub in intermediate_subgroups(group, group.trivial_subgroup()):
            assert group.order % sub.order == 0


# ---------------------------------------------------------------------------
# index-2 overgroups


def test_index2_c4(c4):
    subs = index2_overgroups(c4, c4.trivial_subgroup())
    assert len(subs) == 1 and subs[0].order == 2


def test_index2_klein():
    v4 = catalog_group("elem-abelian:2^2")
    subs = index2_overgroups(v4, v4.trivial_subgroup())
    assert len(subs) == 3
    assert all(s.order == 2 for s in subs)


def test_index2_alt5_empty():
    a5 = catalog_group("alt:5")
    assert a5.order == 60
    assert index2_overgroups(a5, a5.trivial_subgroup()) == []


def test_index2_respects_floor(d8):
    rotation = d8.generators[0]
    floor = d8.subgroup_generated([rotation])
    subs = index2_overgroups(d8, floor)
    assert len(subs) == 1
    assert subs[0].same_elements(floor)
    all_of_them = index2_overgroups(d8, d8.trivial_subgroup())
    assert len(all_of_them) == 3


def test_index2_have_index_two():
    for name in ("sym:4", "dihedral:12", "cyclic:16"):
        group = catalog_group(name)
        for sub in index2_overgroups(group, group.trivial_subgroup()):
            assert sub.order * 2 == group.order


def test_subgroup_enumeration_limit_is_explicit(c4):
    from schreierlab import SubgroupLimitError

    with pytest.raises(SubgroupLimitError):
        intermediate_subgroups(c4, c4.trivial_subgroup(), limit=2)
