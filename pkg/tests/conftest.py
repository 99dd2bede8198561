"""Shared fixtures: the standard small carriers and their blocks."""

import pytest

from braceblocks.catalog import heisenberg_block, heisenberg_pair
from braceblocks.groups import HeisenbergGroup, SymmetricGroup, cyclic_group


@pytest.fixture(scope="session")
def h3():
    return HeisenbergGroup(3)


@pytest.fixture(scope="session")
def h3_pair():
    return heisenberg_pair(3)


@pytest.fixture(scope="session")
def h3_entry():
    return heisenberg_block(3)


@pytest.fixture(scope="session")
def s3():
    return SymmetricGroup(3)


@pytest.fixture(scope="session")
def c6():
    return cyclic_group(6)
