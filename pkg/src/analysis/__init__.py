from .measures import (
    ZMatrix,
    SyncResult,
    z_matrix,
    sync_measure,
    sync_measure_direct,
    sync_max
)
from .coherence import (
    LIMIT_CYCLE_SETS,
    l1_coherence,
    rel_entropy_sync,
    trace_distance_sync
)
from .blockade import (
    group_sums,
    blockade_residual,
    max_residual,
    phase_functional_gram,
    spin32_conditions
)
from .composite import (
    SyncBlock,
    split_block_state,
    composite_sync,
    composite_sync_max
)

__all__ = [
    'ZMatrix',
    'SyncResult',
    'z_matrix',
    'sync_measure',
    'sync_measure_direct',
    'sync_max',
    'LIMIT_CYCLE_SETS',
    'l1_coherence',
    'rel_entropy_sync',
    'trace_distance_sync',
    'group_sums',
    'blockade_residual',
    'max_residual',
    'phase_functional_gram',
    'spin32_conditions',
    'SyncBlock',
    'split_block_state',
    'composite_sync',
    'composite_sync_max'
]
