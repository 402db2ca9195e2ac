import pytest

from sqfpairs import parse_alpha


@pytest.fixture(scope="session")
def sqrt2():
    return parse_alpha("sqrt:2")


@pytest.fixture(scope="session")
def golden():
    return parse_alpha("quad:1,1,2,5")


@pytest.fixture(scope="session")
def poly_sqrt2():
    return parse_alpha("poly:-2,0,1@1/1,2/1")
