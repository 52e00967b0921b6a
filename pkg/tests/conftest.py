"""Shared fixtures; the expensive objects are built once per session."""

import pytest

from hleech.diagram import roots14, weyl_data
from hleech.heightred import enumerate_min_height, reduce
from hleech.heisen import generators81
from hleech.isosearch import first_shell_data, reference_basis_change


@pytest.fixture(scope="session")
def roots():
    return roots14()


@pytest.fixture(scope="session")
def wd():
    return weyl_data()


@pytest.fixture(scope="session")
def shell():
    return first_shell_data()


@pytest.fixture(scope="session")
def refbc():
    return reference_basis_change()


@pytest.fixture(scope="session")
def converted(refbc):
    bc, _perm = refbc
    return tuple(bc.convert(g, "to_3e8h") for g in generators81())


@pytest.fixture(scope="session")
def reductions(converted):
    return tuple(reduce(g) for g in converted)


@pytest.fixture(scope="session")
def enum_classes():
    return enumerate_min_height()
