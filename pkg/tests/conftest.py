import pytest

from bigalg.lie import TypeA
from bigalg.reps import build_irrep
from bigalg.bigalgebra import BigGenerators


@pytest.fixture(scope="session")
def L2():
    return TypeA(2)


@pytest.fixture(scope="session")
def L3():
    return TypeA(3)


@pytest.fixture(scope="session")
def L4():
    return TypeA(4)


@pytest.fixture(scope="session")
def octet(L3):
    return build_irrep(L3, (1, 1))


@pytest.fixture(scope="session")
def decuplet(L3):
    return build_irrep(L3, (3, 0))


@pytest.fixture(scope="session")
def sl3_standard(L3):
    return build_irrep(L3, (1, 0))


@pytest.fixture(scope="session")
def sl2_sym4(L2):
    return build_irrep(L2, (4,))


@pytest.fixture(scope="session")
def octet_gens(octet):
    return BigGenerators(octet)


@pytest.fixture(scope="session")
def decuplet_gens(decuplet):
    return BigGenerators(decuplet)


@pytest.fixture(scope="session")
def sl2_sym4_gens(sl2_sym4):
    return BigGenerators(sl2_sym4)
