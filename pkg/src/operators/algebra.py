import numpy as np
from typing import Dict, List, Sequence
from pathlib import Path

import sys
sys.path.insert(0, str(Path(__file__).resolve().parent.parent.parent))

from config.settings import TOLERANCES
from ..errors import InvalidDimensionError, DimensionMismatchError

# Operators are plain complex numpy arrays of shape (dim, dim); level k of the
# toolkit is row/column k-1, ordered from the highest Sz eigenvalue down.
Operator = np.ndarray


def as_operator(matrix, dim: int = None) -> Operator:
    op = np.asarray(matrix, dtype=np.complex128)
    if op.ndim != 2 or op.shape[0] != op.shape[1]:
        raise InvalidDimensionError(f"Operator must be square, got shape {op.shape}")
    if dim is not None and op.shape[0] != dim:
        raise DimensionMismatchError(f"Operator has dim {op.shape[0]}, expected {dim}")
    return op


def is_hermitian(op: Operator, tol: float = None) -> bool:
    tol = tol or TOLERANCES['operator_hermitian']
    return bool(np.max(np.abs(op - op.conj().T), initial=0.0) <= tol)


def identity(dim: int) -> Operator:
    return np.eye(dim, dtype=np.complex128)


def spin_operators(dim: int) -> Dict[str, Operator]:
    """
    Angular-momentum matrices for spin j = (dim-1)/2 in the basis |j>, ..., |-j>.

    Returns:
        Dict with keys Sx, Sy, Sz, Splus, Sminus
    """
    if not isinstance(dim, (int, np.integer)) or dim < 2:
        raise InvalidDimensionError(f"Spin operators need dim >= 2, got {dim}")

    j = (dim - 1) / 2
    m = j - np.arange(dim)

    splus = np.zeros((dim, dim), dtype=np.complex128)
    for col in range(1, dim):
        splus[col - 1, col] = np.sqrt(j * (j + 1) - m[col] * (m[col] + 1))
    sminus = splus.conj().T

    return {
        'Sx': (splus + sminus) / 2,
        'Sy': (splus - sminus) / 2j,
        'Sz': np.diag(m).astype(np.complex128),
        'Splus': splus,
        'Sminus': sminus,
    }


def transition_op(dim: int, j: int, k: int) -> Operator:
    if not 1 <= j <= dim or not 1 <= k <= dim:
        raise InvalidDimensionError(f"Level indices ({j}, {k}) out of range 1..{dim}")
    op = np.zeros((dim, dim), dtype=np.complex128)
    op[j - 1, k - 1] = 1.0
    return op


def _check_pair(a: Operator, b: Operator) -> None:
    if a.shape != b.shape:
        raise DimensionMismatchError(f"Operator shapes differ: {a.shape} vs {b.shape}")


def commutator(a: Operator, b: Operator) -> Operator:
    _check_pair(a, b)
    return a @ b - b @ a


def anticommutator(a: Operator, b: Operator) -> Operator:
    _check_pair(a, b)
    return a @ b + b @ a


def frobenius_inner(a: Operator, b: Operator) -> complex:
    _check_pair(a, b)
    return complex(np.trace(a.conj().T @ b))


def embed_operator(op: Operator, levels: Sequence[int], dim: int) -> Operator:
    """Place a block operator on the given 1-based levels of a dim-level system."""
    op = as_operator(op)
    if op.shape[0] != len(levels):
        raise DimensionMismatchError(
            f"Block operator has dim {op.shape[0]} but {len(levels)} levels were given"
        )
    index = np.asarray(levels, dtype=int) - 1
    if index.min(initial=0) < 0 or index.max(initial=0) >= dim:
        raise InvalidDimensionError(f"Levels {list(levels)} out of range 1..{dim}")
    full = np.zeros((dim, dim), dtype=np.complex128)
    full[np.ix_(index, index)] = op
    return full


def real_vectorize(op: Operator) -> np.ndarray:
    # Re Tr(A^dagger B) is the Euclidean product of these vectors
    flat = np.asarray(op).ravel()
    return np.concatenate([flat.real, flat.imag])


def from_real_vector(vec: np.ndarray, dim: int) -> Operator:
    half = dim * dim
    return (vec[:half] + 1j * vec[half:]).reshape(dim, dim)


def orthonormal_rows(vectors: List[np.ndarray], basis: List[np.ndarray], tol: float) -> List[np.ndarray]:
    """Gram-Schmidt (two passes) of ``vectors`` against ``basis``; appends survivors in place."""
    added = []
    for vec in vectors:
        residual = np.array(vec, dtype=float)
        if basis:
            stack = np.asarray(basis)
            for _ in range(2):
                residual -= stack.T @ (stack @ residual)
        norm = np.linalg.norm(residual)
        if norm >= tol:
            unit = residual / norm
            basis.append(unit)
            added.append(unit)
    return added


def hermitian_orthonormalize(operators: Sequence[Operator], tol: float = None) -> List[Operator]:
    tol = tol or TOLERANCES['orthonormalize']
    if len(operators) == 0:
        return []

    dim = np.asarray(operators[0]).shape[0]
    for op in operators:
        if np.asarray(op).shape != (dim, dim):
            raise DimensionMismatchError("All operators must share the same dimension")

    basis: List[np.ndarray] = []
    orthonormal_rows([real_vectorize(op) for op in operators], basis, tol)
    return [from_real_vector(vec, dim) for vec in basis]
