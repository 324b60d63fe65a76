"""
Conforming left essential polynomials.

A(z)R(z) splits as alpha_-(z)d(z) - z^(n+1)beta_+(z); stacking
R_-(z) = z^(-m-1)R(z)d^(-1)(z) over alpha_-(z) gives the unimodular U_-(z),
and the last 2p columns of its inverse form L(z).
"""

import logging
from dataclasses import dataclass
from fractions import Fraction

from errors import EssentialityViolation, NotUnimodular, ShapeMismatch
from exact.laurent import LaurentMatrix, lmul, polymat_det, polymat_inverse_unimodular
from exact.matrix import ExactMatrix

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class ConformationData:
    dz: LaurentMatrix
    alpha_minus: LaurentMatrix
    beta_plus: LaurentMatrix
    u_minus: LaurentMatrix
    u_minus_inverse: LaurentMatrix
    det_const: Fraction
    L: LaurentMatrix


def _from_column_terms(terms, rows, cols):
    """
    LaurentMatrix from per-column coefficient maps.

    :param terms: list (one per column) of dicts power -> tuple of ``rows`` entries.
    """
    powers = sorted({k for column in terms for k in column})
    zero = (0,) * rows
    coeffs = {
        k: ExactMatrix.from_columns([column.get(k, zero) for column in terms], rows)
        for k in powers
    }
    return LaurentMatrix(coeffs, rows, cols)


def diagonal_powers(indices):
    """d(z) = diag(z^mu_1, ..., z^mu_s)."""
    size = len(indices)
    coeffs = {}
    for mu in set(indices):
        coeffs[mu] = ExactMatrix.diagonal([1 if x == mu else 0 for x in indices])
    return LaurentMatrix(coeffs, size, size)


def split_decomposition(seq, ess):
    """
    Split A(z)R(z) column by column.

    Terms of column j with power <= mu_j, shifted by z^(-mu_j), go to
    alpha_minus; terms with power >= n+1, shifted by z^(-(n+1)) and negated,
    go to beta_plus.

    Returns:
        tuple: (alpha_minus, beta_plus), both 2p x 2(p+q).

    Raises:
        EssentialityViolation: a coefficient at a power in [mu_j + 1, n] is nonzero.
    """
    product = lmul(seq.generator, ess.R)
    n = seq.n
    alpha_terms, beta_terms = [], []
    for j, mu in enumerate(ess.column_index):
        alpha_col, beta_col = {}, {}
        for power, coeff in product.items():
            values = coeff.column(j)
            if not any(values):
                continue
            if power <= mu:
                alpha_col[power - mu] = values
            elif power >= n + 1:
                beta_col[power - n - 1] = tuple(-x for x in values)
            else:
                raise EssentialityViolation(
                    f"Column {j} (index {mu}) of A(z)R(z) has a nonzero coefficient at z^{power}"
                )
        alpha_terms.append(alpha_col)
        beta_terms.append(beta_col)
    rows, cols = product.rows, product.cols
    return _from_column_terms(alpha_terms, rows, cols), _from_column_terms(beta_terms, rows, cols)


def build_u_minus(ess, alpha_minus):
    """Stack R_-(z) = z^(-m-1)R(z)d^(-1)(z) over alpha_-(z)."""
    if alpha_minus.cols != ess.R.cols:
        raise ShapeMismatch(f"alpha_- has {alpha_minus.cols} columns, R has {ess.R.cols}")
    shifted = [
        ess.R.column(j).shift(-ess.m - 1 - mu) for j, mu in enumerate(ess.column_index)
    ]
    r_minus = LaurentMatrix.hstack(shifted, ess.R.rows)
    return LaurentMatrix.vstack([r_minus, alpha_minus], ess.R.cols)


def conform_left(seq, ess):
    """
    Run the conformation: split, build U_-, check unimodularity, invert, and
    pick the left essential matrix L(z).
    """
    if ess.R.cols != seq.s:
        raise ShapeMismatch(f"Conformation needs {seq.s} essential columns, got {ess.R.cols}")
    alpha_minus, beta_plus = split_decomposition(seq, ess)
    u_minus = build_u_minus(ess, alpha_minus)
    det = polymat_det(u_minus)
    if det.is_zero() or det.powers() != [0]:
        raise NotUnimodular(f"U_-(z) has determinant {det!r}")
    det_const = det.coeff(0)[0, 0]
    logger.debug("U_-(z) is unimodular with determinant %s", det_const)
    u_inverse = polymat_inverse_unimodular(u_minus)
    left = u_inverse.select_columns(range(seq.s - 2 * seq.p, seq.s))
    return ConformationData(
        dz=diagonal_powers(ess.column_index),
        alpha_minus=alpha_minus,
        beta_plus=beta_plus,
        u_minus=u_minus,
        u_minus_inverse=u_inverse,
        det_const=det_const,
        L=left,
    )


def reconstruction_holds(seq, ess, conf):
    """A(z)R(z) == alpha_-(z)d(z) - z^(n+1)beta_+(z), coefficient by coefficient."""
    lhs = lmul(seq.generator, ess.R)
    rhs = lmul(conf.alpha_minus, conf.dz) - conf.beta_plus.shift(seq.n + 1)
    return lhs == rhs
