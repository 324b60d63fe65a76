"""Band block Toeplitz factors built from the essential matrices R(z) and L(z)."""

from dataclasses import dataclass

from exact.laurent import LaurentMatrix
from exact.matrix import ExactMatrix
from assembly.pi import column_groups, index_groups


def exchange(count, block):
    """J: identity blocks of size ``block`` on the block anti-diagonal of a count x count grid."""
    size = count * block
    return ExactMatrix(
        ((1 if (i // block) + (j // block) == count - 1 and i % block == j % block else 0 for j in range(size))
         for i in range(size)),
        size,
        size,
    )


def band_toeplitz(poly, count, lower):
    """
    count x count block Toeplitz matrix with block (i, j) = coeff(i - j).

    ``lower`` keeps i >= j (R-coefficients R_0..R_(count-1)); otherwise
    i <= j is kept (L-coefficients L_0..L_(-(count-1))).
    """
    grid = []
    for i in range(count):
        row = []
        for j in range(count):
            keep = i >= j if lower else i <= j
            row.append(poly.coeff(i - j) if keep else None)
        grid.append(row)
    return ExactMatrix.block(grid, [poly.rows] * count, [poly.cols] * count)


@dataclass(frozen=True)
class PartitionedEssentials:
    """
    R(z) split into rows R^1, R^2 (q each) and L(z) into columns L^1, L^2
    (p each); the fine blocks R_ij, L_ij further split the 2(p+q) direction
    into column groups of widths q, q, p, p. d_groups holds the column
    indices of each group.
    """

    r1: LaurentMatrix
    r2: LaurentMatrix
    l1: LaurentMatrix
    l2: LaurentMatrix
    r_fine: dict
    l_fine: dict
    d_groups: tuple


def partition_essentials(ess, left):
    p, q = ess.p, ess.q
    r1 = ess.R.select_rows(range(q))
    r2 = ess.R.select_rows(range(q, 2 * q))
    l1 = left.select_columns(range(p))
    l2 = left.select_columns(range(p, 2 * p))
    groups = column_groups(p, q)
    r_fine, l_fine = {}, {}
    for j, group in enumerate(groups, start=1):
        r_fine[1, j] = r1.select_columns(group)
        r_fine[2, j] = r2.select_columns(group)
        l_fine[j, 1] = l1.select_rows(group)
        l_fine[j, 2] = l2.select_rows(group)
    return PartitionedEssentials(r1, r2, l1, l2, r_fine, l_fine, index_groups(ess.column_index, p, q))


@dataclass(frozen=True)
class BandFactors:
    t_r1: ExactMatrix
    t_r2: ExactMatrix
    t_l1: ExactMatrix
    t_l2: ExactMatrix
    h_r2: ExactMatrix
    h_l1: ExactMatrix


def build_band_factors(parts, p, q, n, m):
    """T_R1, T_R2 from R_0..R_m; T_L1, T_L2 from L_0..L_(-n); H_R2 = J T_R2, H_L1 = T_L1 J."""
    t_r1 = band_toeplitz(parts.r1, m + 1, lower=True)
    t_r2 = band_toeplitz(parts.r2, m + 1, lower=True)
    t_l1 = band_toeplitz(parts.l1, n + 1, lower=False)
    t_l2 = band_toeplitz(parts.l2, n + 1, lower=False)
    return BandFactors(
        t_r1=t_r1,
        t_r2=t_r2,
        t_l1=t_l1,
        t_l2=t_l2,
        h_r2=exchange(m + 1, q) @ t_r2,
        h_l1=t_l1 @ exchange(n + 1, p),
    )
