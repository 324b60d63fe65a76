import random
from fractions import Fraction

import pytest
import sympy

from errors import IndexRangeError, NotUnimodular, ShapeMismatch
from exact.laurent import LaurentMatrix, lmul, polymat_det, polymat_inverse_unimodular
from exact.matrix import ExactMatrix


def poly(coeffs):
    """Scalar-entry LaurentMatrix from {power: nested list}."""
    first = next(iter(coeffs.values()))
    rows, cols = len(first), len(first[0])
    return LaurentMatrix({k: ExactMatrix(v) for k, v in coeffs.items()}, rows, cols)


def sympy_det_in_w(u):
    """Determinant of u at z = 1/w computed symbolically, as {power of z: coefficient}."""
    w = sympy.Symbol("w")
    entries = [
        [sum(sympy.Rational(str(u.coeff(k)[i, j])) * w ** (-k) for k in u.powers()) for j in range(u.cols)]
        for i in range(u.rows)
    ]
    det = sympy.Poly(sympy.expand(sympy.Matrix(entries).det()), w)
    return {-k: Fraction(str(c)) for (k,), c in det.terms() if c != 0}


def test_zero_function_bounds():
    zero = LaurentMatrix.zero(2, 2)
    assert zero.is_zero()
    assert (zero.lo, zero.hi) == (0, -1)
    assert list(range(zero.lo, zero.hi + 1)) == []


def test_zero_coefficients_are_dropped():
    p = LaurentMatrix({0: ExactMatrix([[1]]), 3: ExactMatrix([[0]])}, 1, 1)
    assert p.powers() == [0]
    assert p.hi == 0


def test_coefficient_shape_is_checked():
    with pytest.raises(ShapeMismatch):
        LaurentMatrix({0: ExactMatrix([[1, 2]])}, 1, 1)


def test_lmul_collects_powers():
    a = poly({0: [[1]], 1: [[1]]})
    b = poly({-1: [[1]], 0: [[-1]]})
    # (1 + z)(z^-1 - 1) = z^-1 - z
    assert lmul(a, b) == poly({-1: [[1]], 1: [[-1]]})


def test_shift_and_truncate():
    a = poly({0: [[1]], 2: [[3]]})
    assert a.shift(-2) == poly({-2: [[1]], 0: [[3]]})
    assert a.truncate(1, 5) == poly({2: [[3]]})


def test_stacking():
    a = poly({0: [[1]], -1: [[2]]})
    b = poly({0: [[5]]})
    assert LaurentMatrix.hstack([a, b], 1) == poly({0: [[1, 5]], -1: [[2, 0]]})
    assert LaurentMatrix.vstack([a, b], 1) == poly({0: [[1], [5]], -1: [[2], [0]]})


def test_det_of_constant_is_constant():
    u = LaurentMatrix.constant(ExactMatrix([[2, 1], [1, 1]]))
    assert polymat_det(u) == poly({0: [[1]]})


def test_det_matches_sympy_on_a_nonconstant_matrix():
    u = poly({0: [[1, 2, 0], [0, 1, 3], [1, 0, 1]], -1: [[0, 1, 0], [2, 0, 0], [0, 0, 1]], -2: [[0, 0, 0], [0, 0, 1], [1, 0, 0]]})
    det = polymat_det(u)
    expected = sympy_det_in_w(u)
    assert {k: c[0, 0] for k, c in det.items()} == expected


def test_det_rejects_positive_powers():
    with pytest.raises(IndexRangeError):
        polymat_det(poly({1: [[1]]}))


def test_inverse_of_two_by_two_unimodular():
    # [[1, z^-1], [0, 1]] has inverse [[1, -z^-1], [0, 1]]
    u = poly({0: [[1, 0], [0, 1]], -1: [[0, 1], [0, 0]]})
    v = polymat_inverse_unimodular(u)
    assert v == poly({0: [[1, 0], [0, 1]], -1: [[0, -1], [0, 0]]})
    assert lmul(u, v) == LaurentMatrix.identity(2)
    assert lmul(v, u) == LaurentMatrix.identity(2)


def test_inverse_with_singular_leading_coefficient_block():
    a0 = ExactMatrix([[0, 1], [1, 0]])
    eye = ExactMatrix.identity(2)
    u = LaurentMatrix(
        {
            -1: ExactMatrix.block([[eye, None], [None, None]], [2, 2], [2, 2]),
            0: ExactMatrix.block([[None, eye], [a0, None]], [2, 2], [2, 2]),
        },
        4,
        4,
    )
    v = polymat_inverse_unimodular(u)
    assert lmul(u, v) == LaurentMatrix.identity(4)
    assert v.coeff(0) == ExactMatrix.block([[None, a0], [eye, None]], [2, 2], [2, 2])
    assert v.coeff(-1) == ExactMatrix.block([[None, None], [None, -a0]], [2, 2], [2, 2])


def test_non_unimodular_is_rejected():
    with pytest.raises(NotUnimodular):
        polymat_inverse_unimodular(poly({0: [[1, 0], [0, 0]], -1: [[0, 0], [0, 1]]}))
    with pytest.raises(NotUnimodular):
        polymat_inverse_unimodular(LaurentMatrix.constant(ExactMatrix([[1, 1], [1, 1]])))


def random_laurent(rng, rows, cols):
    powers = rng.sample(range(-3, 3), rng.randint(1, 3))
    coeffs = {k: ExactMatrix([[rng.randint(-3, 3) for _ in range(cols)] for _ in range(rows)]) for k in powers}
    return LaurentMatrix(coeffs, rows, cols)


@pytest.mark.parametrize("seed", range(15))
def test_lmul_is_associative_and_distributive(seed):
    rng = random.Random(seed)
    p, q, r, s = (rng.randint(1, 3) for _ in range(4))
    a = random_laurent(rng, p, q)
    b, b2 = random_laurent(rng, q, r), random_laurent(rng, q, r)
    c = random_laurent(rng, r, s)
    assert lmul(lmul(a, b), c) == lmul(a, lmul(b, c))
    assert lmul(a, b + b2) == lmul(a, b) + lmul(a, b2)
    assert lmul(b + b2, c) == lmul(b, c) + lmul(b2, c)
    assert lmul(a.shift(2), b) == lmul(a, b).shift(2)
