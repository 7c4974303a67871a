from .algebra import (
    Operator,
    as_operator,
    is_hermitian,
    identity,
    spin_operators,
    transition_op,
    commutator,
    anticommutator,
    frobenius_inner,
    embed_operator,
    real_vectorize,
    from_real_vector,
    orthonormal_rows,
    hermitian_orthonormalize
)

__all__ = [
    'Operator',
    'as_operator',
    'is_hermitian',
    'identity',
    'spin_operators',
    'transition_op',
    'commutator',
    'anticommutator',
    'frobenius_inner',
    'embed_operator',
    'real_vectorize',
    'from_real_vector',
    'orthonormal_rows',
    'hermitian_orthonormalize'
]
