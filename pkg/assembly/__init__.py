from assembly.bands import (
    BandFactors,
    PartitionedEssentials,
    band_toeplitz,
    build_band_factors,
    exchange,
    partition_essentials,
)
from assembly.inverse import (
    METHODS,
    SIGNS,
    PinvOptions,
    PipelineState,
    TphResult,
    pinv_block_toeplitz,
    pinv_tph,
    pinv_tph_blockwise,
    pinv_tph_blockwise_from_essentials,
    pinv_tph_from_essentials,
    pinv_tph_pair,
    run_pipeline,
)
from assembly.mosaic import (
    build_mosaic,
    merchant_factor_check,
    mosaic_g_blocks,
    mosaic_identity_holds,
    permutation_p1,
    permutation_p2,
)
from assembly.pi import PiStructure, build_pi, column_groups, index_groups, pi_from_indices
