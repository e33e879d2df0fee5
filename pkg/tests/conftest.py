import pytest

from touchviz.demo import load_demo


@pytest.fixture(scope="session")
def iris():
    return load_demo("iris")


@pytest.fixture(scope="session")
def population():
    return load_demo("population")


@pytest.fixture(scope="session")
def unemployment():
    return load_demo("unemployment")
