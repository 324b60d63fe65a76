"""Right essential polynomials: deterministic bases of the complements H_(k+1)."""

import logging
from dataclasses import dataclass

from errors import DefectUnsupported, InternalConsistencyError
from exact.laurent import LaurentMatrix, lmul
from exact.matrix import ZERO, EchelonSpan, ExactMatrix
from analysis.indices import kernel_bases

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class EssentialSet:
    """
    Matrix R(z) of right essential polynomials (2q x 2(p+q)) and the index of
    every column, in ascending order.
    """

    R: LaurentMatrix
    column_index: tuple
    p: int
    q: int
    n: int
    m: int

    @property
    def s(self):
        return 2 * (self.p + self.q)

    def column(self, j):
        return self.R.column(j)


def polynomial_from_vector(vector, block):
    """Column polynomial sum_l r_l z^l from the stacked coefficients r_0, r_1, ..."""
    coeffs = {}
    for power in range(len(vector) // block):
        chunk = vector[power * block:(power + 1) * block]
        coeffs[power] = ExactMatrix([[x] for x in chunk], block, 1)
    return LaurentMatrix(coeffs, block, 1)


def _shifted_span(basis, block):
    """Echelon span of N_k + zN_k inside the coefficient space of N_(k+1)."""
    length = basis.rows + block
    span = EchelonSpan(length)
    padding = (ZERO,) * block
    for j in range(basis.cols):
        vector = basis.column(j)
        span.add(vector + padding)
        span.add(padding + vector)
    return span


def _candidates(kernels, k, block, n, m):
    """Canonical basis of N_k as coefficient vectors; N_(n+1) is the whole space."""
    if k == n + 1:
        length = block * (n + m + 2)
        for i in range(length):
            yield tuple(1 if j == i else 0 for j in range(length))
    else:
        basis = kernels[k]
        for j in range(basis.cols):
            yield basis.column(j)


def compute_right_essential_polys(seq, table, kernels=None):
    """
    Full set of 2(p+q) right essential polynomials.

    For each k = -m-1..n the canonical kernel basis of N_(k+1) is scanned in
    order and a vector is kept whenever it raises the rank of the span of
    N_k + zN_k plus the vectors already kept; the kept vectors get index k.

    :raises DefectUnsupported: if omega > 0.
    """
    if table.omega > 0:
        raise DefectUnsupported(
            f"Sequence is right defective (omega = {table.omega}); the full set of right "
            "essential polynomials is not available",
            table.omega,
            table,
        )
    if kernels is None:
        kernels = kernel_bases(seq)
    n, m, block = seq.n, seq.m, 2 * seq.q
    columns = []
    indices = []
    previous = ExactMatrix.zeros(0, 0)
    for k in range(-m - 1, n + 1):
        needed = table.delta[k + 1] - (table.delta[k] if k >= -m else 0)
        span = _shifted_span(previous, block) if k >= -m else EchelonSpan(block)
        chosen = []
        if needed:
            for vector in _candidates(kernels, k + 1, block, n, m):
                if span.add(vector):
                    chosen.append(vector)
                    if len(chosen) == needed:
                        break
        if len(chosen) != needed:
            raise InternalConsistencyError(
                f"Complement H_{k + 1} has {len(chosen)} basis vectors, expected {needed}"
            )
        for vector in chosen:
            columns.append(polynomial_from_vector(vector, block))
            indices.append(k)
        if k + 1 <= n:
            previous = kernels[k + 1]
    if not columns:
        r = LaurentMatrix.zero(block, 0)
    else:
        r = LaurentMatrix.hstack(columns, block)
    logger.debug("essential polynomials: %d columns, indices %s", r.cols, indices)
    return EssentialSet(r, tuple(indices), seq.p, seq.q, n, m)


def essentiality_defects(seq, ess):
    """
    (column, power) pairs where A(z)R_j(z) has a nonzero coefficient at a
    power in [mu_j + 1, n]. Empty for a valid essential set.
    """
    product = lmul(seq.generator, ess.R)
    defects = []
    for j, mu in enumerate(ess.column_index):
        for power in range(mu + 1, seq.n + 1):
            if any(row[j] for row in product.coeff(power).entries):
                defects.append((j, power))
    return defects
