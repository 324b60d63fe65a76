"""
Dense oracle for generalized inverses.

The oracle works on sympy matrices so that it shares no elimination code with
the structured pipeline it checks.
"""

import logging
from dataclasses import dataclass
from fractions import Fraction

import sympy

from errors import InternalConsistencyError, ShapeMismatch
from exact.matrix import ExactMatrix

logger = logging.getLogger(__name__)


def to_sympy(matrix):
    return sympy.Matrix(
        matrix.rows,
        matrix.cols,
        [sympy.Rational(x.numerator, x.denominator) for row in matrix.entries for x in row],
    )


def _fraction(value):
    value = sympy.Rational(value)
    return Fraction(int(value.p), int(value.q))


def from_sympy(matrix):
    return ExactMatrix(
        [[_fraction(matrix[i, j]) for j in range(matrix.cols)] for i in range(matrix.rows)],
        matrix.rows,
        matrix.cols,
    )


def oracle_rank(matrix):
    """Rank computed by sympy, independent of exact.matrix.rref."""
    if matrix.rows == 0 or matrix.cols == 0:
        return 0
    return to_sympy(matrix).rank()


def one_inverse_oracle(matrix):
    """
    Moore-Penrose inverse over the rationals via a full-rank factorization.

    A = F G with F the pivot columns of A and G the nonzero rows of rref(A);
    X = G^T (G G^T)^-1 (F^T F)^-1 F^T.

    Args:
        matrix (ExactMatrix): any rational matrix.

    Returns:
        ExactMatrix: X of the transposed shape; the zero matrix maps to zero.
    """
    if matrix.is_zero():
        return ExactMatrix.zeros(matrix.cols, matrix.rows)
    dense = to_sympy(matrix)
    reduced, pivots = dense.rref()
    rank = len(pivots)
    f = dense.extract(list(range(dense.rows)), list(pivots))
    g = reduced.extract(list(range(rank)), list(range(dense.cols)))
    try:
        result = g.T * (g * g.T).inv() * (f.T * f).inv() * f.T
    except ValueError as exc:
        raise InternalConsistencyError(f"Full-rank factor is singular: {exc}") from exc
    logger.debug("oracle inverse of a %dx%d matrix of rank %d", matrix.rows, matrix.cols, rank)
    return from_sympy(result)


@dataclass(frozen=True)
class OracleReport:
    """
    Outcome of checking X against A.

    satisfies_mp holds (AXA = A, XAX = X, (AX)^T = AX, (XA)^T = XA).
    """

    is_g_inverse: bool
    satisfies_mp: tuple
    rank: int
    invertible: bool

    def as_dict(self):
        return {
            "is_g_inverse": self.is_g_inverse,
            "axa_equals_a": self.satisfies_mp[0],
            "xax_equals_x": self.satisfies_mp[1],
            "ax_symmetric": self.satisfies_mp[2],
            "xa_symmetric": self.satisfies_mp[3],
            "rank": self.rank,
            "invertible": self.invertible,
        }


def is_g_inverse(a, x):
    """Exact check of the generalized-inverse identity and the other Penrose conditions."""
    if x.shape != (a.cols, a.rows):
        raise ShapeMismatch(f"X must be {a.cols}x{a.rows} to invert a {a.rows}x{a.cols} matrix, got {x.rows}x{x.cols}")
    ax = a @ x
    xa = x @ a
    axa = ax @ a == a
    conditions = (axa, xa @ x == x, ax.T == ax, xa.T == xa)
    rank = oracle_rank(a)
    return OracleReport(
        is_g_inverse=axa,
        satisfies_mp=conditions,
        rank=rank,
        invertible=a.rows == a.cols and rank == a.rows,
    )
