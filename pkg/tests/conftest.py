import pytest

from quiverstab import catalog


@pytest.fixture(scope="session")
def d5():
    return catalog.load("D5tilde")


@pytest.fixture(scope="session")
def a3():
    return catalog.load("A3")


@pytest.fixture(scope="session")
def k2():
    return catalog.load("K2")


@pytest.fixture(scope="session")
def k3():
    return catalog.load("K3")
