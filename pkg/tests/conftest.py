import pytest

from obstruction_lab.cli import load_instance
from obstruction_lab.multipoly import MultiPoly
from obstruction_lab.obstruction import QuaternionAlgebraSpec


def quartic_f():
    # -2x^4 - y^4 + 18z^4
    return MultiPoly([(-2, (4, 0, 0)), (-1, (0, 4, 0)), (18, (0, 0, 4))])


def quartic_g():
    return MultiPoly([(-28, (2, 0, 0)), (-36, (1, 1, 0)), (7, (0, 2, 0)),
                      (72, (0, 0, 2))])


def quartic_h():
    return MultiPoly([(-25, (2, 0, 0)), (16, (1, 1, 0)), (-22, (0, 2, 0)),
                      (81, (0, 0, 2))])


def cubic_f():
    # y^2 z - (4x - z)(16x^2 + 20xz + 7z^2)
    return MultiPoly([(1, (0, 2, 1)), (-64, (3, 0, 0)), (-64, (2, 0, 1)),
                      (-8, (1, 0, 2)), (7, (0, 0, 3))])


@pytest.fixture(scope="session")
def fq():
    return quartic_f()


@pytest.fixture(scope="session")
def gq():
    return quartic_g()


@pytest.fixture(scope="session")
def hq():
    return quartic_h()


@pytest.fixture(scope="session")
def fc():
    return cubic_f()


@pytest.fixture(scope="session")
def quartic_algebra(fq, gq, hq):
    return QuaternionAlgebraSpec(fq * hq, -1 * (gq * hq))


@pytest.fixture(scope="session")
def cubic_algebra(fc):
    z = MultiPoly([(1, (0, 0, 1))])
    second = MultiPoly([(4, (1, 0, 1)), (-1, (0, 0, 2))])
    return QuaternionAlgebraSpec(z * fc, second)


@pytest.fixture(scope="session")
def quartic_instance():
    return load_instance("quartic")


@pytest.fixture(scope="session")
def cubic_instance():
    return load_instance("cubic")
