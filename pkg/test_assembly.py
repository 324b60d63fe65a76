from fractions import Fraction

import pytest

from analysis.indices import compute_index_table
from analysis.sequence import TphProblem, dense_tph, toeplitz_tk
from assembly.bands import band_toeplitz, exchange, partition_essentials
from assembly.inverse import (
    PinvOptions,
    pinv_block_toeplitz,
    pinv_tph,
    pinv_tph_blockwise,
    pinv_tph_from_essentials,
    pinv_tph_pair,
    run_pipeline,
)
from assembly.mosaic import (
    build_mosaic,
    merchant_factor_check,
    mosaic_g_blocks,
    mosaic_identity_holds,
)
from assembly.pi import build_pi, pi_from_indices
from errors import DefectUnsupported
from exact.laurent import LaurentMatrix
from exact.matrix import ExactMatrix
from oracle.verify import is_g_inverse


def test_pi_blocks_of_worked_example(worked_sequence):
    pi = build_pi(compute_index_table(worked_sequence), (1, 1, 3, 3))
    assert pi.blocks[1] == ExactMatrix.diagonal([1, 0, 0, 0])
    assert pi.blocks[0] == ExactMatrix.diagonal([0, 1, 1, 0])
    assert pi.blocks[-1] == ExactMatrix.diagonal([0, 0, 0, 1])
    for k in (-3, -2, 2, 3):
        assert pi.blocks[k].is_zero()
    assert pi.assembled.shape == (16, 16)
    # block (r, c) = Pi_(r - c)
    assert pi.assembled.submatrix(4, 8, 0, 4) == pi.blocks[1]
    assert [g.shape for g in pi.groups] == [(4, 4)] * 4


def test_pi_groups_come_from_column_indices(worked_sequence, reference_essentials, reference_l):
    parts = partition_essentials(reference_essentials, reference_l)
    assert parts.d_groups == ((-1,), (0,), (0,), (1,))
    pi = build_pi(compute_index_table(worked_sequence), (1, 1, 3, 3))
    assert pi.groups == tuple(pi_from_indices(d, 3, 3) for d in parts.d_groups)
    # the last group has index 1, so its only one sits on block (r, c) with r - c = -1
    assert pi.groups[3] == pi_from_indices((1,), 3, 3)
    assert pi.groups[3].submatrix(0, 1, 1, 2) == ExactMatrix([[1]])
    assert pi.groups[3].submatrix(1, 2, 0, 1) == ExactMatrix([[0]])


def test_exchange_and_bands():
    assert exchange(2, 1) == ExactMatrix([[0, 1], [1, 0]])
    r = LaurentMatrix({0: ExactMatrix([[1]]), 1: ExactMatrix([[2]]), 5: ExactMatrix([[7]])}, 1, 1)
    assert band_toeplitz(r, 3, lower=True) == ExactMatrix([[1, 0, 0], [2, 1, 0], [0, 2, 1]])
    l = LaurentMatrix({0: ExactMatrix([[1]]), -1: ExactMatrix([[3]])}, 1, 1)
    assert band_toeplitz(l, 2, lower=False) == ExactMatrix([[1, 3], [0, 1]])


def test_assembly_from_reference_data(
    worked_problem, worked_sequence, reference_essentials, reference_l, worked_plus_inverse, worked_minus_inverse
):
    table = compute_index_table(worked_sequence)
    plus = pinv_tph_from_essentials(worked_problem, reference_essentials, reference_l, table, "plus")
    minus = pinv_tph_from_essentials(worked_problem, reference_essentials, reference_l, table, "minus")
    assert plus == worked_plus_inverse
    assert minus == worked_minus_inverse


def test_end_to_end_worked_example(worked_problem, worked_plus_inverse, worked_t_minus_h):
    plus = pinv_tph(worked_problem, "plus", PinvOptions(check=True))
    assert plus.pinv == worked_plus_inverse
    assert plus.invertible
    assert plus.checks_passed
    assert plus.table.mu == (-1, 0, 0, 1)

    minus = pinv_tph(worked_problem, "minus", PinvOptions(check=True))
    assert not minus.invertible
    assert worked_t_minus_h @ minus.pinv @ worked_t_minus_h == worked_t_minus_h
    assert minus.checks["g_inverse"]
    assert "two_sided_inverse" not in minus.checks
    assert minus.checks_passed


def test_block_toeplitz_inverse_is_a_g_inverse(worked_problem, worked_sequence):
    state = run_pipeline(worked_problem)
    x = pinv_block_toeplitz(state.sequence, state.essentials, state.conformation, state.table)
    t_a = toeplitz_tk(worked_sequence, 0)
    assert x.shape == (8, 8)
    assert t_a @ x @ t_a == t_a


def test_mosaic_identities(worked_problem):
    mosaic = build_mosaic(worked_problem)
    assert [str(x) for x in mosaic.row(0)] == ["1", "0", "0", "1", "1", "1", "1", "-1"]
    assert mosaic_identity_holds(worked_problem)
    assert merchant_factor_check(worked_problem)


def test_mosaic_blocks_match_direct_formula(worked_problem):
    state = run_pipeline(worked_problem)
    ta_pinv = pinv_block_toeplitz(state.sequence, state.essentials, state.conformation, state.table)
    g11, _, _, g22 = mosaic_g_blocks(worked_problem, ta_pinv)
    assert g11 == pinv_tph(worked_problem, "plus").pinv
    assert g22 == pinv_tph(worked_problem, "minus").pinv


def test_blockwise_equals_direct(worked_problem, problem_factory):
    for prob in (worked_problem, problem_factory(2, 1, 2, 1, seed=5), problem_factory(1, 2, 1, 2, seed=6)):
        for sign in ("plus", "minus"):
            assert pinv_tph_blockwise(prob, sign) == pinv_tph(prob, sign).pinv


def test_pair_matches_single_runs(worked_problem):
    plus, minus = pinv_tph_pair(worked_problem)
    assert plus.pinv == pinv_tph(worked_problem, "plus").pinv
    assert minus.pinv == pinv_tph(worked_problem, "minus").pinv
    assert (plus.sign, minus.sign) == ("plus", "minus")


def test_scalar_problems():
    prob = TphProblem.from_scalars(0, 0, [2], [1])
    assert pinv_tph(prob, "plus").pinv == ExactMatrix([[Fraction(1, 3)]])
    assert pinv_tph(prob, "minus").pinv == ExactMatrix([[1]])

    antidiagonal = TphProblem.from_scalars(0, 0, [1], [0])
    assert pinv_tph(antidiagonal, "plus").pinv == ExactMatrix([[1]])
    assert pinv_tph(antidiagonal, "minus").pinv == ExactMatrix([[1]])


def test_identity_block_toeplitz():
    prob = TphProblem.from_scalars(0, 0, [0], [1])
    state = run_pipeline(prob)
    x = pinv_block_toeplitz(state.sequence, state.essentials, state.conformation, state.table)
    assert x == ExactMatrix.identity(2)


def test_zero_matrix_short_circuit():
    zero = TphProblem.from_scalars(0, 0, [1], [-1])
    result = pinv_tph(zero, "plus", PinvOptions(check=True))
    assert result.table is None
    assert result.pinv == ExactMatrix([[0]])
    assert result.checks == {"g_inverse": True}


def test_defective_problem_and_transpose_fallback():
    prob = TphProblem.from_scalars(0, 0, [1], [1])
    with pytest.raises(DefectUnsupported):
        pinv_tph(prob, "plus")
    with pytest.raises(DefectUnsupported) as info:
        pinv_tph(prob, "plus", PinvOptions(allow_transpose_fallback=True))
    assert "transpose" in str(info.value)


def test_transpose_fallback_is_transparent():
    # equal rows in every A_j: right defective, while the transpose is not
    prob = TphProblem.from_scalars(1, 0, [1, 2], [2, 1])
    with pytest.raises(DefectUnsupported):
        run_pipeline(prob)
    for sign in ("plus", "minus"):
        result = pinv_tph(prob, sign, PinvOptions(allow_transpose_fallback=True, check=True))
        assert result.transposed
        assert result.table.omega == 1
        assert result.transposed_table.omega == 0
        assert len(result.transposed_table.mu) == 2 * (1 + 1)
        assert result.pinv.shape == (1, 2)
        assert is_g_inverse(dense_tph(prob, sign), result.pinv).is_g_inverse
        assert result.checks_passed


def test_unknown_options_are_rejected(worked_problem):
    with pytest.raises(ValueError):
        PinvOptions(method="fast")
    with pytest.raises(ValueError):
        pinv_tph(worked_problem, "times")
