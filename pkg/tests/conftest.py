import pytest

import concentrators as C
from concentrators.permgroup import closure, from_cycles


@pytest.fixture(scope="session")
def s3():
    return C.symmetric_group(3)


@pytest.fixture(scope="session")
def s4():
    return C.symmetric_group(4)


@pytest.fixture(scope="session")
def a3():
    return C.alternating_group(3)


@pytest.fixture(scope="session")
def swap01():
    """The order-2 subgroup of S3 generated by the transposition (0 1)."""
    return closure(3, [from_cycles([(0, 1)], 3)], name="swap01")


@pytest.fixture(scope="session")
def z4():
    return C.cyclic_group(4)


@pytest.fixture(scope="session")
def z5():
    return C.cyclic_group(5)


@pytest.fixture(scope="session")
def z6():
    return C.cyclic_group(6)


@pytest.fixture(scope="session")
def mathieu_chain():
    return C.mathieu12_designs()


@pytest.fixture(scope="session")
def witt24():
    return C.golay_witt_design()


@pytest.fixture(scope="session")
def m12():
    return C.mathieu12_group()


@pytest.fixture(scope="session")
def s3_table(s3):
    return C.character_table(s3)


@pytest.fixture(scope="session")
def s4_table(s4):
    return C.character_table(s4)
