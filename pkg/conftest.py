import pytest

from algebra.catalog import cached_catalog
from algebra.quiver import parse_algebra
from utils.fixtures import load_algebra, load_complex, load_module


@pytest.fixture(scope="session")
def a3():
    return load_algebra("ALG-A3")


@pytest.fixture(scope="session")
def her4():
    return load_algebra("ALG-HER4")


@pytest.fixture(scope="session")
def gen4():
    return load_algebra("ALG-GEN4")


@pytest.fixture(scope="session")
def ss2():
    return load_algebra("ALG-SS2")


@pytest.fixture(scope="session")
def point():
    return parse_algebra("vertices 1", name="k")


@pytest.fixture(scope="session")
def a3_catalog(a3):
    return cached_catalog(a3)


@pytest.fixture(scope="session")
def gen4_catalog(gen4):
    return cached_catalog(gen4)


@pytest.fixture(scope="session")
def her4_catalog(her4):
    return cached_catalog(her4)


@pytest.fixture(scope="session")
def p41(her4):
    return load_complex("P-41", algebra=her4)


@pytest.fixture(scope="session")
def p42(gen4):
    return load_complex("P-42", algebra=gen4)


@pytest.fixture(scope="session")
def p43(a3):
    return load_complex("P-43", algebra=a3)


@pytest.fixture(scope="session")
def t41(her4):
    return load_module("T-41", algebra=her4)
