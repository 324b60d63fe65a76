"""
The mosaic matrix M_A = P1 T_A P2 and its reduction to diag(T+H, T-H).

The row unshuffle P1 and column unshuffle P2 regroup the 2p-tall block rows
and 2q-wide block columns of T_A by their first and second halves.
"""

import logging
from fractions import Fraction

from analysis.sequence import build_generating_sequence, dense_tph, toeplitz_tk
from assembly.bands import exchange
from exact.matrix import ExactMatrix

logger = logging.getLogger(__name__)

HALF = Fraction(1, 2)


def _unshuffle(count, half):
    """Old position of every new position when 2*half-wide blocks are split by halves."""
    order = []
    for part in range(2):
        for blk in range(count):
            order.extend(blk * 2 * half + part * half + t for t in range(half))
    return order


def permutation_p1(prob):
    """Row permutation: (P1 T_A)[new, :] = T_A[old, :]."""
    order = _unshuffle(prob.n + 1, prob.p)
    size = len(order)
    return ExactMatrix(((1 if j == order[i] else 0 for j in range(size)) for i in range(size)), size, size)


def permutation_p2(prob):
    """Column permutation: (T_A P2)[:, new] = T_A[:, old]."""
    order = _unshuffle(prob.m + 1, prob.q)
    size = len(order)
    return ExactMatrix(((1 if i == order[j] else 0 for j in range(size)) for i in range(size)), size, size)


def build_mosaic(prob):
    """
    2p(n+1) x 2q(m+1) mosaic matrix.

    Top rows i = 0..n: [b_(n-i+j) | a_(n-m-i+j)]; bottom rows: [a_(i-j) | b_(m+i-j)].
    """
    n, m = prob.n, prob.m
    rows, cols = n + 1, m + 1
    grid = []
    for i in range(rows):
        grid.append(
            [prob.b_block(n - i + j) for j in range(cols)]
            + [prob.a_block(n - m - i + j) for j in range(cols)]
        )
    for i in range(rows):
        grid.append(
            [prob.a_block(i - j) for j in range(cols)]
            + [prob.b_block(m + i - j) for j in range(cols)]
        )
    return ExactMatrix.block(grid, [prob.p] * (2 * rows), [prob.q] * (2 * cols))


def _merchant_factors(prob):
    n, m, p, q = prob.n, prob.m, prob.p, prob.q
    row_size, col_size = (n + 1) * p, (m + 1) * q
    jp, ip = exchange(n + 1, p), ExactMatrix.identity(row_size)
    jq, iq = exchange(m + 1, q), ExactMatrix.identity(col_size)
    left = ExactMatrix.block([[jp, jp], [ip, -ip]], [row_size] * 2, [row_size] * 2)
    right = ExactMatrix.block([[iq, jq], [-iq, jq]], [col_size] * 2, [col_size] * 2)
    return left, right


def merchant_factor_check(prob):
    """M_A == 1/2 [[J, J], [I, -I]] diag(T+H, T-H) [[I, J], [-I, J]]."""
    left, right = _merchant_factors(prob)
    row_size, col_size = prob.tph_shape
    middle = ExactMatrix.block(
        [[dense_tph(prob, "plus"), None], [None, dense_tph(prob, "minus")]],
        [row_size] * 2,
        [col_size] * 2,
    )
    reduced = (left @ middle @ right).scale(HALF)
    return reduced == build_mosaic(prob)


def mosaic_identity_holds(prob):
    """M_A == P1 T_A P2."""
    t_a = toeplitz_tk(build_generating_sequence(prob), 0)
    return permutation_p1(prob) @ t_a @ permutation_p2(prob) == build_mosaic(prob)


def mosaic_g_blocks(prob, ta_pinv):
    """
    Blocks of G = 1/2 [[I, J], [-I, J]] M_A^dagger [[J, J], [I, -I]] with
    M_A^dagger = P2^T T_A^dagger P1^T.

    Returns:
        tuple: (G11, G12, G21, G22), each (m+1)q x (n+1)p.
    """
    left_outer, right_outer = _merchant_factors(prob)
    m_pinv = permutation_p2(prob).T @ ta_pinv @ permutation_p1(prob).T
    # the outer factors of G are the Merchant factors in swapped order
    g = (right_outer @ m_pinv @ left_outer).scale(HALF)
    rows, cols = prob.pinv_shape
    return (
        g.submatrix(0, rows, 0, cols),
        g.submatrix(0, rows, cols, 2 * cols),
        g.submatrix(rows, 2 * rows, 0, cols),
        g.submatrix(rows, 2 * rows, cols, 2 * cols),
    )
