from .grids import (
    qfunc_grid,
    offdiag_theta_integral,
    sweep_heatmap
)

__all__ = [
    'qfunc_grid',
    'offdiag_theta_integral',
    'sweep_heatmap'
]
