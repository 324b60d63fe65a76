"""Shared fixtures: the worked 4x4 example, its reference R(z) and L(z), and random problems."""

import random
from fractions import Fraction

import pytest

from analysis.essentials import EssentialSet
from analysis.sequence import TphProblem, build_generating_sequence
from exact.laurent import LaurentMatrix
from exact.matrix import ExactMatrix
from scripts.random_suite import random_problem

WORKED_A = (1, -1, 0, 1, 1, 1, -1)  # a_(-3) .. a_3
WORKED_B = (1, 0, -1, 1, 0, 0, 1)  # b_0 .. b_6
WORKED_MU = (-1, 0, 0, 1)

# R(z) = [R^1; R^2], one row each, columns 1..4 by power of z
REFERENCE_R1 = {
    0: (-1, -2, -2, 0),
    1: (-4, 5, 3, -1),
    2: (2, 1, 0, 0),
    3: (-11, -4, -2, 0),
    4: (0, 4, 1, 0),
    5: (0, 0, 0, 1),
}
REFERENCE_R2 = {
    0: (11, -4, -2, 2),
    1: (-2, -11, -5, 2),
    2: (4, 0, 0, 0),
    3: (1, 0, 0, 0),
    4: (0, 0, 1, 0),
}

# L(z) = [L^1 L^2], one column each, rows 1..4 by power of z, scaled by 1/180
REFERENCE_L1 = {
    0: (-4, -12, 4, 0),
    -1: (4, 0, 12, 0),
    -2: (-1, 6, -23, 0),
    -3: (-21, 6, -35, -180),
    -4: (-18, -84, 76, 0),
    -5: (16, 0, 0, 0),
}
REFERENCE_L2 = {
    0: (25, 30, -25, 180),
    -1: (26, 108, -126, 0),
    -2: (-11, 30, -43, 0),
    -3: (-6, -24, 32, 0),
    -4: (10, 24, -26, 0),
    -5: (4, 0, 0, 0),
}


def scaled(rows, factor):
    return ExactMatrix([[Fraction(x, factor) for x in row] for row in rows])


def _reference_r():
    zero = (0, 0, 0, 0)
    powers = sorted(set(REFERENCE_R1) | set(REFERENCE_R2))
    coeffs = {k: ExactMatrix([REFERENCE_R1.get(k, zero), REFERENCE_R2.get(k, zero)]) for k in powers}
    return LaurentMatrix(coeffs, 2, 4)


def _reference_l():
    coeffs = {
        k: ExactMatrix([[Fraction(x, 180), Fraction(y, 180)] for x, y in zip(REFERENCE_L1[k], REFERENCE_L2[k])])
        for k in REFERENCE_L1
    }
    return LaurentMatrix(coeffs, 4, 2)


@pytest.fixture
def worked_problem():
    return TphProblem.from_scalars(3, 3, WORKED_A, WORKED_B)


@pytest.fixture
def worked_sequence(worked_problem):
    return build_generating_sequence(worked_problem)


@pytest.fixture
def reference_r():
    return _reference_r()


@pytest.fixture
def reference_l():
    return _reference_l()


@pytest.fixture
def reference_essentials(reference_r):
    return EssentialSet(R=reference_r, column_index=WORKED_MU, p=1, q=1, n=3, m=3)


@pytest.fixture
def worked_t_plus_h():
    return ExactMatrix([[2, 0, -2, 2], [1, 0, 1, -1], [0, 2, 1, 0], [0, 1, 1, 2]])


@pytest.fixture
def worked_t_minus_h():
    return ExactMatrix([[0, 0, 0, 0], [1, 2, -1, -1], [2, 0, 1, 0], [-2, 1, 1, 0]])


@pytest.fixture
def worked_plus_inverse():
    return scaled([[5, 10, 0, 0], [2, -4, 12, -4], [-4, 8, -4, 8], [1, -2, -4, 8]], 20)


@pytest.fixture
def worked_minus_inverse():
    return scaled(
        [[-113, 2, 50, -32], [88, 8, 20, 52], [-134, -4, 80, 64], [17, -158, 10, 8]],
        180,
    )


@pytest.fixture
def problem_factory():
    """Seeded random problems: factory(p, q, n, m, seed=0)."""

    def make(p, q, n, m, seed=0):
        return random_problem(random.Random(seed), p, q, n, m)

    return make
