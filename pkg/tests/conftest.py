import pytest

from schreierlab import catalog_group


@pytest.fixture(scope="session")
def c4():
    return catalog_group("cyclic:4")


@pytest.fixture(scope="session")
def c6():
    return catalog_group("cyclic:6")


@pytest.fixture(scope="session")
def s3():
    return catalog_group("sym:3")


@pytest.fixture(scope="session")
def d8():
    return catalog_group("dihedral:8")


@pytest.fixture(scope="session")
def heis3():
    return catalog_group("heisenberg:3")
