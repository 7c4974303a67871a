from .blocks import (
    coupling_graph,
    connectivity_blocks
)
from .closure import (
    gell_mann_basis,
    chain_generators,
    lie_closure
)
from .report import (
    AlgebraReport,
    phase_independence,
    model_generators,
    algebra_label,
    analyze
)

__all__ = [
    'coupling_graph',
    'connectivity_blocks',
    'gell_mann_basis',
    'chain_generators',
    'lie_closure',
    'AlgebraReport',
    'phase_independence',
    'model_generators',
    'algebra_label',
    'analyze'
]
