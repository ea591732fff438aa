import math

import pytest

from schreierlab import catalog_group, lower_central_series, resolve_action, resolve_group
from schreierlab.catalog import abelian_names_up_to, catalog_generators


@pytest.mark.parametrize(
    "name, order, degree",
    [
        ("cyclic:6", 6, 6),
        ("cyclic:1", 1, 1),
        ("dihedral:8", 8, 4),
        ("dihedral:16", 16, 8),
        ("dihedral:4", 4, 4),
        ("elem-abelian:2^3", 8, 6),
        ("elem-abelian:3^2", 9, 6),
        ("sym:4", 24, 4),
        ("alt:4", 12, 4),
        ("alt:5", 60, 5),
        ("heisenberg:3", 27, 27),
        ("cyclic:2xcyclic:4", 8, 6),
        ("cyclic:2xsym:3", 12, 5),
    ],
)
def test_catalog_orders(name, order, degree):
    group = catalog_group(name)
    assert group.order == order
    assert group.degree == degree


def test_sym_alt_orders():
    for n in (3, 4, 5, 6):
        assert catalog_group(f"sym:{n}").order == math.factorial(n)
        assert catalog_group(f"alt:{n}").order == math.factorial(n) // 2


def test_heisenberg_class_two():
    for p in (3, 5):
        group = catalog_group(f"heisenberg:{p}")
        assert group.order == p**3
        assert lower_central_series(group)[1] == 2


def test_dihedral_classes():
    assert lower_central_series(catalog_group("dihedral:8"))[1] == 2
    assert lower_central_series(catalog_group("dihedral:16"))[1] == 3


def test_unknown_names_rejected():
    for bad in ("nope:3", "cyclic", "elem-abelian:6^2", "dihedral:7", "alt:2"):
        with pytest.raises(ValueError):
            catalog_generators(bad)


def test_abelian_enumeration_counts():
    names = abelian_names_up_to(16)
    # one catalog name per abelian isomorphism type of order 2..16
    orders = {}
    for name in names:
        group = catalog_group(name)
        orders[group.order] = orders.get(group.order, 0) + 1
    assert orders[4] == 2
    assert orders[8] == 3
    assert orders[16] == 5
    assert orders[12] == 2
    assert orders[15] == 1
    assert len(names) == len(set(names))
    # distinct types of one order really are non-isomorphic: the counts of
    # solutions of x^2 = e and x^4 = e separate the five order-16 types
    profiles = set()
    for name in names:
        group = catalog_group(name)
        if group.order == 16:
            squares = sum(1 for p in group.elements if (p * p).is_identity())
            fourths = sum(
                1 for p in group.elements if (p * p * p * p).is_identity()
            )
            profiles.add((squares, fourths))
    assert len(profiles) == 5


def test_natural_action_stabilizer():
    group = catalog_group("sym:4")
    y = resolve_action(group, "natural")
    assert y.order == 6
    assert all(p.images[0] == 0 for p in y.elements)


def test_regular_action_is_trivial_subgroup():
    group = catalog_group("dihedral:8")
    assert resolve_action(group, "regular").order == 1


def test_natural_action_needs_transitivity():
    group = catalog_group("cyclic:2xcyclic:4")
    with pytest.raises(ValueError):
        resolve_action(group, "natural")


def test_cosets_of_file_action(tmp_path):
    path = tmp_path / "sub.txt"
    path.write_text("(1 2 3 4)\n", encoding="utf-8")
    group = catalog_group("dihedral:8")
    y = resolve_action(group, f"cosets-of:{path}")
    assert y.order == 4


def test_group_from_file(tmp_path):
    path = tmp_path / "group.txt"
    path.write_text("# a symmetric group\n(1 2)\n(1 2 3)\n", encoding="utf-8")
    group = resolve_group(str(path))
    assert group.order == 6


def test_disk_cache_round_trip(tmp_path, monkeypatch):
    monkeypatch.setenv("SCHREIERLAB_CACHE_DIR", str(tmp_path))
    first = catalog_group("dihedral:12")
    cached = list(tmp_path.glob("*.json"))
    assert len(cached) == 1
    second = catalog_group("dihedral:12")
    assert first.same_elements(second)
    assert [p.images for p in first.elements] == [p.images for p in second.elements]


def test_natural_action_of_alternating_groups():
    for n, stab_order in ((4, 3), (5, 12)):
        group = catalog_group(f"alt:{n}")
        y = resolve_action(group, "natural")
        assert y.order == stab_order
