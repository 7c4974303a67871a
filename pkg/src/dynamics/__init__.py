from .model import (
    HamiltonianTerm,
    Dissipator,
    LindbladModel,
    DensityMatrix
)
from .liouvillian import (
    vectorize,
    unvectorize,
    hamiltonian_superoperator,
    dissipator_superoperator,
    build_liouvillian,
    apply_master_equation,
    residual_diagnostics,
    steady_state,
    solve_steady_state,
    linear_response
)
from .evolution import evolve

__all__ = [
    'HamiltonianTerm',
    'Dissipator',
    'LindbladModel',
    'DensityMatrix',
    'vectorize',
    'unvectorize',
    'hamiltonian_superoperator',
    'dissipator_superoperator',
    'build_liouvillian',
    'apply_master_equation',
    'residual_diagnostics',
    'steady_state',
    'solve_steady_state',
    'linear_response',
    'evolve'
]
