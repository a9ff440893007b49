import random

import pytest

from x3y9z2.arith.numberfield import NumberField
from x3y9z2.arith.poly import UPoly
from x3y9z2.dataio import load_descent_data, load_mw_data, load_tables, quartic_field


@pytest.fixture(scope="session")
def K():
    return quartic_field()


@pytest.fixture(scope="session")
def descent_data():
    return load_descent_data()


@pytest.fixture(scope="session")
def mw_data():
    return load_mw_data()


@pytest.fixture(scope="session")
def tables():
    return load_tables()


@pytest.fixture()
def rng():
    return random.Random(239)
