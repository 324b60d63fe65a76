from exact.matrix import (
    EchelonSpan,
    ExactMatrix,
    determinant,
    format_rational,
    inverse,
    rank,
    rational,
    right_kernel_basis,
    rref,
)
from exact.laurent import LaurentMatrix, lmul, polymat_det, polymat_inverse_unimodular
