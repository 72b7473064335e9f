import pytest

from coxtools.classify import build_named
from coxtools.engine import enumerate_group


_CACHE = {}


def group_of(name: str):
    """Session-cached enumerated group of a catalog type name."""
    if name not in _CACHE:
        _CACHE[name] = enumerate_group(build_named(name), cap=20_000)
    return _CACHE[name]


@pytest.fixture
def a2():
    return group_of("A2")


@pytest.fixture
def a3():
    return group_of("A3")


@pytest.fixture
def b2():
    return group_of("B2")


@pytest.fixture
def b3():
    return group_of("B3")


@pytest.fixture
def h3():
    return group_of("H3")


@pytest.fixture
def d4():
    return group_of("D4")
