from .families import (
    CoherentFamily,
    as_angles,
    canonical_difference,
    phase_groups,
    make_spin_family,
    make_su3_family,
    family_by_name
)
from .quadrature import (
    Quadrature,
    minimum_phase_grid,
    default_phase_grid,
    gauss_legendre,
    make_quadrature,
    theta_points,
    phase_points,
    population_overlaps,
    phase_averages,
    theta_volume,
    normalization_from_volume,
    completeness_matrix,
    verify_completeness
)
from .qfunction import (
    state_entries,
    q_function,
    q_function_offdiag
)

__all__ = [
    'CoherentFamily',
    'as_angles',
    'canonical_difference',
    'phase_groups',
    'make_spin_family',
    'make_su3_family',
    'family_by_name',
    'Quadrature',
    'minimum_phase_grid',
    'default_phase_grid',
    'gauss_legendre',
    'make_quadrature',
    'theta_points',
    'phase_points',
    'population_overlaps',
    'phase_averages',
    'theta_volume',
    'normalization_from_volume',
    'completeness_matrix',
    'verify_completeness',
    'state_entries',
    'q_function',
    'q_function_offdiag'
]
