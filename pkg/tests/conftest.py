import pytest

from hochcalc.algebra import (
    dual_numbers,
    exterior_line,
    square_zero_tower,
    truncated_skew_laurent,
)
from hochcalc.exactla import PrimeField, Rationals


@pytest.fixture(scope="session")
def QQ():
    return Rationals()


@pytest.fixture(scope="session")
def F2():
    return PrimeField(2)


@pytest.fixture(scope="session")
def F3():
    return PrimeField(3)


@pytest.fixture(scope="session")
def F5():
    return PrimeField(5)


@pytest.fixture(scope="session")
def dual_q(QQ):
    return dual_numbers(QQ)


@pytest.fixture(scope="session")
def ext_q(QQ):
    return exterior_line(QQ)


@pytest.fixture(scope="session")
def tower_f2(F2):
    """Unit plus generators in degrees 1, 4, 7 with zero products; its
    (3,-1) cohomology is 4-dimensional and every cochain is a cocycle."""
    return square_zero_tower(F2, [1, 4, 7])


@pytest.fixture(scope="session")
def trunc_f2(F2):
    return truncated_skew_laurent(F2, 4)


@pytest.fixture(scope="session")
def trunc_f3(F3):
    return truncated_skew_laurent(F3, 4)
