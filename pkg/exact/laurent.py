"""
Matrix Laurent polynomials: finitely many ExactMatrix coefficients indexed by
integer powers of z.

Polynomials in z^-1 (all powers <= 0) are handled internally as polynomials in
w = z^-1; the coefficient of w^k is the coefficient of z^-k.
"""

import logging

from errors import IndexRangeError, NotUnimodular, ShapeMismatch
from exact.matrix import ZERO, ExactMatrix, determinant, inverse

logger = logging.getLogger(__name__)


class LaurentMatrix:
    """
    Immutable map from powers of z to equally shaped ExactMatrix coefficients.

    Zero coefficients are never stored. The zero function reports
    ``lo = 0`` and ``hi = -1`` so that ``range(lo, hi + 1)`` is empty.
    """

    __slots__ = ("rows", "cols", "_coeffs")

    def __init__(self, coeffs, rows, cols):
        stored = {}
        for power, coeff in dict(coeffs).items():
            if coeff.shape != (rows, cols):
                raise ShapeMismatch(
                    f"Coefficient at z^{power} is {coeff.rows}x{coeff.cols}, expected {rows}x{cols}"
                )
            if not coeff.is_zero():
                stored[int(power)] = coeff
        self.rows = rows
        self.cols = cols
        self._coeffs = stored

    @classmethod
    def zero(cls, rows, cols):
        return cls({}, rows, cols)

    @classmethod
    def constant(cls, matrix):
        return cls({0: matrix}, matrix.rows, matrix.cols)

    @classmethod
    def monomial(cls, matrix, power):
        return cls({power: matrix}, matrix.rows, matrix.cols)

    @classmethod
    def identity(cls, size):
        return cls.constant(ExactMatrix.identity(size))

    @classmethod
    def hstack(cls, blocks, rows):
        blocks = list(blocks)
        powers = sorted({k for blk in blocks for k in blk.powers()})
        cols = sum(blk.cols for blk in blocks)
        return cls(
            {k: ExactMatrix.hstack([blk.coeff(k) for blk in blocks], rows) for k in powers},
            rows,
            cols,
        )

    @classmethod
    def vstack(cls, blocks, cols):
        blocks = list(blocks)
        powers = sorted({k for blk in blocks for k in blk.powers()})
        rows = sum(blk.rows for blk in blocks)
        return cls(
            {k: ExactMatrix.vstack([blk.coeff(k) for blk in blocks], cols) for k in powers},
            rows,
            cols,
        )

    @property
    def shape(self):
        return self.rows, self.cols

    @property
    def lo(self):
        return min(self._coeffs) if self._coeffs else 0

    @property
    def hi(self):
        return max(self._coeffs) if self._coeffs else -1

    def powers(self):
        return sorted(self._coeffs)

    def coeff(self, power):
        found = self._coeffs.get(power)
        return found if found is not None else ExactMatrix.zeros(self.rows, self.cols)

    def is_zero(self):
        return not self._coeffs

    def items(self):
        return [(k, self._coeffs[k]) for k in self.powers()]

    def shift(self, power):
        """Multiply by z^power."""
        return LaurentMatrix({k + power: c for k, c in self._coeffs.items()}, self.rows, self.cols)

    def truncate(self, lo, hi):
        """Keep only the coefficients with lo <= power <= hi."""
        return LaurentMatrix(
            {k: c for k, c in self._coeffs.items() if lo <= k <= hi}, self.rows, self.cols
        )

    def select_columns(self, indices):
        indices = list(indices)
        return LaurentMatrix(
            {k: c.select_columns(indices) for k, c in self._coeffs.items()}, self.rows, len(indices)
        )

    def select_rows(self, indices):
        indices = list(indices)
        return LaurentMatrix(
            {k: c.select_rows(indices) for k, c in self._coeffs.items()}, len(indices), self.cols
        )

    def column(self, j):
        return self.select_columns([j])

    def scale(self, factor):
        return LaurentMatrix({k: c.scale(factor) for k, c in self._coeffs.items()}, self.rows, self.cols)

    def transpose(self):
        return LaurentMatrix({k: c.T for k, c in self._coeffs.items()}, self.cols, self.rows)

    def _combine(self, other, sign):
        if self.shape != other.shape:
            raise ShapeMismatch(f"Shapes {self.shape} and {other.shape} differ")
        merged = dict(self._coeffs)
        for k, c in other._coeffs.items():
            term = c if sign > 0 else -c
            merged[k] = merged[k] + term if k in merged else term
        return LaurentMatrix(merged, self.rows, self.cols)

    def __add__(self, other):
        return self._combine(other, 1)

    def __sub__(self, other):
        return self._combine(other, -1)

    def __neg__(self):
        return self.scale(-1)

    def __eq__(self, other):
        if not isinstance(other, LaurentMatrix):
            return NotImplemented
        return self.shape == other.shape and self._coeffs == other._coeffs

    def __hash__(self):
        return hash((self.rows, self.cols, tuple(self.items())))

    def __repr__(self):
        terms = ", ".join(f"z^{k}: {c!r}" for k, c in self.items())
        return f"LaurentMatrix({self.rows}x{self.cols}; {terms or 'zero'})"

    def evaluate_inverse_power(self, w):
        """Value at z = 1/w of a polynomial in z^-1, i.e. sum of coeff(-k) * w^k."""
        if self.hi > 0:
            raise IndexRangeError(f"Not a polynomial in z^-1: highest power is {self.hi}")
        total = ExactMatrix.zeros(self.rows, self.cols)
        for k, c in self._coeffs.items():
            total = total + c.scale(w ** (-k))
        return total

    def column_degrees(self):
        """Per column, the highest power of w = z^-1 with a nonzero entry (0 for a zero column)."""
        degrees = [0] * self.cols
        for k, c in self._coeffs.items():
            for j in range(self.cols):
                if -k > degrees[j] and any(c.column(j)):
                    degrees[j] = -k
        return degrees


def lmul(a, b):
    """
    Product of two matrix Laurent polynomials.

    The coefficient at z^k is sum_j a_j @ b_(k-j).
    """
    if a.cols != b.rows:
        raise ShapeMismatch(f"Cannot multiply {a.shape} by {b.shape}")
    result = {}
    for i, left in a.items():
        for j, right in b.items():
            term = left @ right
            k = i + j
            result[k] = result[k] + term if k in result else term
    return LaurentMatrix(result, a.rows, b.cols)


def _interpolate_integer_nodes(values):
    """
    Monomial coefficients of the polynomial through (0, v0), (1, v1), ...

    Newton divided differences; nodes are consecutive integers, so the
    divisor at level j is j.
    """
    coeffs = list(values)
    size = len(coeffs)
    for level in range(1, size):
        for i in range(size - 1, level - 1, -1):
            coeffs[i] = (coeffs[i] - coeffs[i - 1]) / level
    poly = [coeffs[-1]] if coeffs else []
    for i in range(size - 2, -1, -1):
        # poly * (w - i) + coeffs[i]
        shifted = [ZERO] + poly
        for k in range(len(poly)):
            shifted[k] -= i * poly[k]
        shifted[0] += coeffs[i]
        poly = shifted
    while len(poly) > 1 and poly[-1] == 0:
        poly.pop()
    return poly


def polymat_det(u):
    """
    Exact determinant of a square polynomial matrix in z^-1.

    Evaluates at w = 0..D for the degree bound D = sum of column degrees and
    interpolates, returning a 1x1 LaurentMatrix in z^-1.
    """
    if u.rows != u.cols:
        raise ShapeMismatch(f"Determinant of a non-square {u.shape} polynomial matrix")
    if u.hi > 0:
        raise IndexRangeError(f"Determinant needs a polynomial in z^-1, got highest power {u.hi}")
    bound = sum(u.column_degrees())
    values = [determinant(u.evaluate_inverse_power(w)) for w in range(bound + 1)]
    poly = _interpolate_integer_nodes(values)
    logger.debug("polymat_det: size %d, degree bound %d, degree %d", u.rows, bound, len(poly) - 1)
    return LaurentMatrix({-k: ExactMatrix([[c]], 1, 1) for k, c in enumerate(poly)}, 1, 1)


def polymat_inverse_unimodular(u):
    """
    Exact inverse of a unimodular polynomial matrix in z^-1.

    Since det U(w) is a nonzero constant c, U(0) is invertible and the power
    series of U(w)^-1 terminates. The inverse equals adj(U)/c, whose degree is
    at most the sum of the column degrees minus the smallest one, so the
    series is computed up to that degree.

    :param u: square LaurentMatrix with powers <= 0.
    :return: V with lmul(u, V) = lmul(V, u) = identity.
    :raises NotUnimodular: if the determinant is zero or not constant.
    """
    det = polymat_det(u)
    if det.is_zero() or det.powers() != [0]:
        raise NotUnimodular(f"Determinant is not a nonzero constant: {det!r}")
    size = u.rows
    if size == 0:
        return LaurentMatrix.zero(0, 0)
    degrees = u.column_degrees()
    bound = sum(degrees) - min(degrees)
    head_inverse = inverse(u.coeff(0))
    series = [head_inverse]
    for k in range(1, bound + 1):
        acc = ExactMatrix.zeros(size, size)
        for i in range(1, min(k, -u.lo) + 1):
            left = u.coeff(-i)
            if not left.is_zero():
                acc = acc + left @ series[k - i]
        series.append(-(head_inverse @ acc))
    logger.debug("polymat_inverse_unimodular: size %d, det %s, degree bound %d", size, det.coeff(0)[0, 0], bound)
    return LaurentMatrix({-k: c for k, c in enumerate(series)}, size, size)
