import json
from pathlib import Path

import pytest

from torslat import load_algebra, type_a_document
from torslat.cosilting import CosiltingEngine
from torslat.lattice import TorsLattice

FIXTURES = Path(__file__).parent / "fixtures"


def fixture_path(name: str) -> Path:
    return FIXTURES / name


@pytest.fixture(scope="session")
def a1():
    return load_algebra(type_a_document(1))


@pytest.fixture(scope="session")
def a2():
    return load_algebra(type_a_document(2))


@pytest.fixture(scope="session")
def a3():
    return load_algebra(type_a_document(3))


@pytest.fixture(scope="session")
def a3_alt():
    return load_algebra(type_a_document(3, ["right", "left"]))


@pytest.fixture(scope="session")
def a3_rel():
    return load_algebra(json.loads(fixture_path("a3_rel.json").read_text()))


@pytest.fixture(scope="session")
def lat2(a2):
    return TorsLattice(a2)


@pytest.fixture(scope="session")
def lat3(a3):
    return TorsLattice(a3)


@pytest.fixture(scope="session")
def eng2(lat2):
    return CosiltingEngine(lat2)


@pytest.fixture(scope="session")
def eng3(lat3):
    return CosiltingEngine(lat3)
