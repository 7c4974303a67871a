from .models import (
    spin1_model,
    spin1_ratio_model,
    spin32_model,
    su3_thermal_model,
    su4_su2_composite_model,
    isolated_level_model,
    MODEL_BUILDERS,
    COMPOSITE_MODELS,
    get_builder
)
from .sweep import (
    MEASURES,
    SOLVERS,
    SweepAxis,
    SweepSpec,
    SweepTable,
    family_and_z,
    solve_point,
    evaluate_state,
    run_sweep,
    write_sweep_csv,
    read_sweep_csv
)
from .locus import locate_blockade
from .verification import (
    CHECKS,
    CHECK_FUNCTIONS,
    run_all_checks
)

__all__ = [
    'spin1_model',
    'spin1_ratio_model',
    'spin32_model',
    'su3_thermal_model',
    'su4_su2_composite_model',
    'isolated_level_model',
    'MODEL_BUILDERS',
    'COMPOSITE_MODELS',
    'get_builder',
    'MEASURES',
    'SOLVERS',
    'SweepAxis',
    'SweepSpec',
    'SweepTable',
    'family_and_z',
    'solve_point',
    'evaluate_state',
    'run_sweep',
    'write_sweep_csv',
    'read_sweep_csv',
    'locate_blockade',
    'CHECKS',
    'CHECK_FUNCTIONS',
    'run_all_checks'
]
