"""Shared fixtures."""

import warnings

import pytest
from hypothesis import settings

from src.errors import RegimeWarning
from src.field import make_field
from src.moments import MomentTable, moment_table

settings.register_profile("fast", max_examples=50, deadline=None)
settings.load_profile("fast")


@pytest.fixture(scope="session")
def f3():
    return make_field(3)


@pytest.fixture(scope="session")
def f5():
    return make_field(5)


@pytest.fixture(scope="session")
def f7():
    return make_field(7)


@pytest.fixture(scope="session")
def f9():
    return make_field(3, 2)


@pytest.fixture(scope="session")
def table_q3():
    """E_1..E_4 at q = n = 3, k = 1 (E_2 = 2/3, E_4 = 10/9)."""
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", RegimeWarning)
        return moment_table(3, 3, 1)


@pytest.fixture(scope="session")
def table_q5():
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", RegimeWarning)
        return moment_table(5, 5, 1)


@pytest.fixture(scope="session")
def limit_table():
    """Gaussian limit for k = 1: E_2 = 1, E_4 = 3."""
    return MomentTable.limit(1)
