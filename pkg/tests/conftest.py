import pytest

from dgtor.field import GF101
from dgtor.rings import as_dg_algebra, from_monomial_ideal


@pytest.fixture(scope="session")
def F():
    return GF101


@pytest.fixture(scope="session")
def ring_x2(F):
    return from_monomial_ideal(F, ["x"], ["x^2"])


@pytest.fixture(scope="session")
def ring_x3(F):
    return from_monomial_ideal(F, ["x"], ["x^3"])


@pytest.fixture(scope="session")
def ring_m2(F):
    # k[x,y]/(x^2, xy, y^2): the maximal ideal squares to zero
    return from_monomial_ideal(F, ["x", "y"], ["x^2", "x*y", "y^2"])


@pytest.fixture(scope="session")
def dga_x2(ring_x2):
    return as_dg_algebra(ring_x2, name="A2")


@pytest.fixture(scope="session")
def dga_x3(ring_x3):
    return as_dg_algebra(ring_x3, name="A3")


@pytest.fixture(scope="session")
def dga_m2(ring_m2):
    return as_dg_algebra(ring_m2, name="Am2")
