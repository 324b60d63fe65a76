"""
Generalized inverses of T_A and of T +- H.

T_A^dagger = T_R Pi T_L, and
(T +- H)^dagger = 1/2 (T_R1 +- H_R2) Pi (T_L2 +- H_L1),
either directly or summed over the column groups with pi_j.
"""

import logging
from dataclasses import dataclass, field
from fractions import Fraction

from analysis.conformation import ConformationData, conform_left, reconstruction_holds
from analysis.essentials import EssentialSet, compute_right_essential_polys
from analysis.indices import IndexTable, compute_index_table, kernel_bases
from analysis.sequence import (
    ASequence,
    TphProblem,
    build_generating_sequence,
    dense_tph,
    transpose_problem,
)
from assembly.bands import band_toeplitz, build_band_factors, exchange, partition_essentials
from assembly.pi import build_pi, pi_from_indices
from errors import DefectUnsupported
from exact.laurent import LaurentMatrix, lmul
from exact.matrix import ExactMatrix
from oracle.verify import is_g_inverse, oracle_rank

logger = logging.getLogger(__name__)

HALF = Fraction(1, 2)
SIGNS = ("plus", "minus")
METHODS = ("direct", "blockwise")


@dataclass(frozen=True)
class PinvOptions:
    method: str = "direct"
    check: bool = False
    allow_transpose_fallback: bool = False

    def __post_init__(self):
        if self.method not in METHODS:
            raise ValueError(f"Unknown method {self.method!r}; expected one of {METHODS}")


@dataclass(frozen=True)
class PipelineState:
    """Everything computed upstream of the assembly formulas."""

    problem: TphProblem
    sequence: ASequence
    table: IndexTable
    essentials: EssentialSet
    conformation: ConformationData


@dataclass
class TphResult:
    """
    A generalized inverse with its provenance.

    ``table`` is None when the zero-matrix short-circuit was taken;
    ``transposed`` is True when the transpose fallback produced the result.
    ``table`` always describes the problem as given, so it keeps its omega
    after the fallback; ``transposed_table`` then holds the indices of the
    transposed problem that was actually solved.
    """

    pinv: ExactMatrix
    sign: str
    table: IndexTable = None
    det_const: Fraction = None
    transposed: bool = False
    invertible: bool = False
    checks: dict = field(default_factory=dict)
    transposed_table: IndexTable = None

    @property
    def checks_passed(self):
        return all(self.checks.values())


def _left_matrix(conf):
    return conf if isinstance(conf, LaurentMatrix) else conf.L


def _check_sign(sign):
    if sign not in SIGNS:
        raise ValueError(f"Unknown sign {sign!r}; expected one of {SIGNS}")
    return 1 if sign == "plus" else -1


def run_pipeline(prob):
    """
    Sequence, index table, right essential polynomials and conformation.

    :raises ZeroSequence: all generating blocks vanish.
    :raises DefectUnsupported: omega > 0.
    """
    seq = build_generating_sequence(prob)
    kernels = kernel_bases(seq)
    table = compute_index_table(seq, kernels)
    logger.info("indices %s (alpha %d, omega %d)", list(table.mu), table.alpha, table.omega)
    ess = compute_right_essential_polys(seq, table, kernels)
    conf = conform_left(seq, ess)
    return PipelineState(prob, seq, table, ess, conf)


def pinv_block_toeplitz(seq, ess, conf, table):
    """T_A^dagger from R_0..R_m, Pi and L_0..L_(-n); shape 2q(m+1) x 2p(n+1)."""
    n, m = seq.n, seq.m
    pi = build_pi(table, (seq.p, seq.q, n, m))
    t_r = band_toeplitz(ess.R, m + 1, lower=True)
    t_l = band_toeplitz(_left_matrix(conf), n + 1, lower=False)
    return t_r @ pi.assembled @ t_l


def pinv_tph_from_essentials(prob, ess, conf, table, sign):
    """
    Evaluate 1/2 (T_R1 +- H_R2) Pi (T_L2 +- H_L1) with the given data.

    :param conf: ConformationData, or the left essential matrix L(z) itself.
    """
    factor = _check_sign(sign)
    parts = partition_essentials(ess, _left_matrix(conf))
    bands = build_band_factors(parts, prob.p, prob.q, prob.n, prob.m)
    pi = build_pi(table, (prob.p, prob.q, prob.n, prob.m))
    if factor > 0:
        left, right = bands.t_r1 + bands.h_r2, bands.t_l2 + bands.h_l1
    else:
        left, right = bands.t_r1 - bands.h_r2, bands.t_l2 - bands.h_l1
    return (left @ pi.assembled @ right).scale(HALF)


def pinv_tph_blockwise_from_essentials(prob, ess, conf, table, sign):
    """
    The same inverse summed over the column groups j = 1..4:

    1/2 [sum T_R1j pi_j T_Lj2 + sum H_R2j pi_j H_Lj1
         +- (sum T_R1j pi_j H_Lj1 + sum H_R2j pi_j T_Lj2)]

    pi_j is built from the column indices d_j of ``ess``; ``table`` is not read.
    """
    factor = _check_sign(sign)
    p, q, n, m = prob.p, prob.q, prob.n, prob.m
    parts = partition_essentials(ess, _left_matrix(conf))
    jq, jp = exchange(m + 1, q), exchange(n + 1, p)
    rows, cols = prob.pinv_shape
    even = ExactMatrix.zeros(rows, cols)
    odd = ExactMatrix.zeros(rows, cols)
    for j, d_j in enumerate(parts.d_groups, start=1):
        pi_j = pi_from_indices(d_j, n, m)
        t_r1j = band_toeplitz(parts.r_fine[1, j], m + 1, lower=True)
        h_r2j = jq @ band_toeplitz(parts.r_fine[2, j], m + 1, lower=True)
        t_lj2 = band_toeplitz(parts.l_fine[j, 2], n + 1, lower=False)
        h_lj1 = band_toeplitz(parts.l_fine[j, 1], n + 1, lower=False) @ jp
        even = even + t_r1j @ pi_j @ t_lj2 + h_r2j @ pi_j @ h_lj1
        odd = odd + t_r1j @ pi_j @ h_lj1 + h_r2j @ pi_j @ t_lj2
    total = even + odd if factor > 0 else even - odd
    return total.scale(HALF)


def _assemble(state, sign, method):
    assemble = pinv_tph_from_essentials if method == "direct" else pinv_tph_blockwise_from_essentials
    return assemble(state.problem, state.essentials, state.conformation, state.table, sign)


def _is_invertible(tph):
    return tph.rows == tph.cols and oracle_rank(tph) == tph.rows


def _run_checks(state, tph, x, sign):
    checks = {}
    report = is_g_inverse(tph, x)
    checks["g_inverse"] = report.is_g_inverse
    if report.invertible:
        size = tph.rows
        identity = ExactMatrix.identity(size)
        checks["two_sided_inverse"] = x @ tph == identity and tph @ x == identity
    if state is not None:
        seq, ess, conf = state.sequence, state.essentials, state.conformation
        checks["reconstruction"] = reconstruction_holds(seq, ess, conf)
        checks["unimodular_inverse"] = lmul(conf.u_minus, conf.u_minus_inverse) == LaurentMatrix.identity(seq.s)
        checks["blockwise_equals_direct"] = _assemble(state, sign, "direct") == _assemble(state, sign, "blockwise")
    return checks


def _finish(state, prob, sign, options, original_table, transposed):
    tph = dense_tph(prob, sign)
    x = _assemble(state, sign, options.method)
    checks = _run_checks(state, tph, x, sign) if options.check else {}
    if transposed:
        x = x.T
    return TphResult(
        pinv=x,
        sign=sign,
        table=original_table,
        det_const=state.conformation.det_const,
        transposed=transposed,
        transposed_table=state.table if transposed else None,
        invertible=_is_invertible(tph),
        checks=checks,
    )


def _zero_result(prob, sign, options):
    rows, cols = prob.pinv_shape
    x = ExactMatrix.zeros(rows, cols)
    tph = dense_tph(prob, sign)
    checks = _run_checks(None, tph, x, sign) if options.check else {}
    return TphResult(pinv=x, sign=sign, invertible=_is_invertible(tph), checks=checks)


def _pipeline_with_fallback(prob, options):
    """
    Run the pipeline, retrying on the transposed problem when allowed.

    Returns (state, original_table, transposed); original_table is the index
    table of ``prob`` itself.
    """
    try:
        state = run_pipeline(prob)
        return state, state.table, False
    except DefectUnsupported as exc:
        if not options.allow_transpose_fallback:
            raise
        logger.warning("omega = %d; retrying on the transposed problem", exc.omega)
        try:
            return run_pipeline(transpose_problem(prob)), exc.table, True
        except DefectUnsupported as inner:
            raise DefectUnsupported(
                f"Both the problem (omega = {exc.omega}) and its transpose (omega = {inner.omega}) "
                "are right defective",
                exc.omega,
                exc.table,
            ) from inner


def pinv_tph(prob, sign, options=None):
    """
    Generalized inverse of T+H (sign "plus") or T-H (sign "minus").

    A zero T +- H maps to the zero matrix of the transposed shape without
    running the pipeline.

    Args:
        prob (TphProblem): the problem.
        sign (str): "plus" or "minus".
        options (PinvOptions): method, self-checks and transpose fallback.

    Returns:
        TphResult: the inverse with index table and check results.
    """
    options = options or PinvOptions()
    _check_sign(sign)
    if dense_tph(prob, sign).is_zero():
        logger.info("T %s H is zero; returning the zero matrix", "+" if sign == "plus" else "-")
        return _zero_result(prob, sign, options)
    state, original_table, transposed = _pipeline_with_fallback(prob, options)
    return _finish(state, state.problem, sign, options, original_table, transposed)


def pinv_tph_pair(prob, options=None):
    """Both signs from one run of the shared upstream pipeline."""
    options = options or PinvOptions()
    zero = {sign: dense_tph(prob, sign).is_zero() for sign in SIGNS}
    if all(zero.values()):
        return tuple(_zero_result(prob, sign, options) for sign in SIGNS)
    state, original_table, transposed = _pipeline_with_fallback(prob, options)
    return tuple(
        _zero_result(prob, sign, options)
        if zero[sign]
        else _finish(state, state.problem, sign, options, original_table, transposed)
        for sign in SIGNS
    )


def pinv_tph_blockwise(prob, sign, options=None):
    """pinv_tph through the pi_j formula; returns the matrix only."""
    options = options or PinvOptions()
    blockwise = PinvOptions(
        method="blockwise",
        check=options.check,
        allow_transpose_fallback=options.allow_transpose_fallback,
    )
    return pinv_tph(prob, sign, blockwise).pinv
