import pytest

from trisect import make_h_tilde, make_regular_polygon, make_reuleaux


@pytest.fixture(scope="session")
def triangle():
    return make_regular_polygon(1)


@pytest.fixture(scope="session")
def hexagon():
    return make_regular_polygon(2)


@pytest.fixture(scope="session")
def enneagon():
    return make_regular_polygon(3)


@pytest.fixture(scope="session")
def reuleaux():
    return make_reuleaux()


@pytest.fixture(scope="session")
def h_tilde():
    return make_h_tilde()
