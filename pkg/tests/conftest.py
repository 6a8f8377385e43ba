import pytest

import qgspectra as q


@pytest.fixture(scope="session")
def debruijn8():
    """Binary de Bruijn graph on 8 vertices (p=1, r=3), B=16."""
    return q.build_binary_graph(1, 3)


@pytest.fixture(scope="session")
def binary6():
    """Binary graph on 6 vertices (p=3, r=1), B=12."""
    return q.build_binary_graph(3, 1)


@pytest.fixture(scope="session")
def scattering8(debruijn8):
    return q.build_bond_scattering(debruijn8)


@pytest.fixture(scope="session")
def scattering6(binary6):
    return q.build_bond_scattering(binary6)


@pytest.fixture(scope="session")
def lengths8(debruijn8):
    return q.sample_bond_lengths(debruijn8, 101)


@pytest.fixture(scope="session")
def lengths6(binary6):
    return q.sample_bond_lengths(binary6, 202)
