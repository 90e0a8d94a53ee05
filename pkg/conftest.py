"""
Shared Hall sets, generated once per test session
"""

import os
import sys

import pytest

sys.path.insert(0, os.path.dirname(os.path.abspath(__file__)))

from hall_kernel.hall import generate
from hall_kernel.order import HallOrderSpec, OrderKind


def _hall_set(kind: OrderKind, k: int, max_len: int, n=None):
    return generate(HallOrderSpec(kind, k, n), max_len)


@pytest.fixture(scope="session")
def length2():
    return _hall_set(OrderKind.LENGTH_LEX, 2, 8)


@pytest.fixture(scope="session")
def length3():
    return _hall_set(OrderKind.LENGTH_LEX, 3, 6)


@pytest.fixture(scope="session")
def lyndon2():
    return _hall_set(OrderKind.LYNDON, 2, 8)


@pytest.fixture(scope="session")
def lyndon3():
    return _hall_set(OrderKind.LYNDON, 3, 6)


@pytest.fixture(scope="session")
def fibo():
    return _hall_set(OrderKind.FIBO_MIN, 2, 8)


@pytest.fixture(scope="session")
def supergeom():
    return _hall_set(OrderKind.SUPER_GEOM, 2, 8)


@pytest.fixture(scope="session")
def sharp3():
    return _hall_set(OrderKind.SHARP_EN1, 4, 5, 3)


@pytest.fixture(scope="session")
def two_letter_sets(length2, lyndon2, fibo, supergeom):
    return {"length": length2, "lyndon": lyndon2, "fibo": fibo, "supergeom": supergeom}


@pytest.fixture(params=["length", "lyndon", "fibo", "supergeom"])
def any_two_letter(request, two_letter_sets):
    return two_letter_sets[request.param]
