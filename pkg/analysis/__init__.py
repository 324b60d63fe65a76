from analysis.sequence import (
    ASequence,
    TphProblem,
    build_generating_sequence,
    dense_h,
    dense_t,
    dense_tph,
    sigma_r,
    toeplitz_tk,
    transpose_problem,
)
from analysis.indices import IndexTable, compute_index_table, kernel_bases
from analysis.essentials import EssentialSet, compute_right_essential_polys, essentiality_defects
from analysis.conformation import (
    ConformationData,
    build_u_minus,
    conform_left,
    reconstruction_holds,
    split_decomposition,
)
