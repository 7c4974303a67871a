import logging
import numpy as np
from typing import List, Sequence, Tuple
from pathlib import Path

import sys
sys.path.insert(0, str(Path(__file__).resolve().parent.parent.parent))

from config.settings import TOLERANCES
from ..errors import ClosureOverflowError, DimensionMismatchError, InvalidDimensionError
from ..operators import (
    Operator,
    as_operator,
    commutator,
    from_real_vector,
    is_hermitian,
    orthonormal_rows,
    real_vectorize,
    transition_op,
)

logger = logging.getLogger(__name__)


def gell_mann_basis(dim: int) -> List[Operator]:
    """
    Generalized Gell-Mann matrices: symmetric, antisymmetric, then diagonal.

    All dim**2 - 1 elements are traceless, Hermitian and satisfy Tr(a b) = 2 delta_ab.
    """
    if dim < 2:
        raise InvalidDimensionError(f"Gell-Mann basis needs dim >= 2, got {dim}")
    symmetric, antisymmetric, diagonal = [], [], []
    for j in range(1, dim + 1):
        for k in range(j + 1, dim + 1):
            symmetric.append(transition_op(dim, j, k) + transition_op(dim, k, j))
            antisymmetric.append(-1j * transition_op(dim, j, k) + 1j * transition_op(dim, k, j))
    for level in range(1, dim):
        entries = [1.0] * level + [-float(level)] + [0.0] * (dim - level - 1)
        diagonal.append(np.sqrt(2 / (level * (level + 1))) * np.diag(entries).astype(np.complex128))
    return symmetric + antisymmetric + diagonal


def chain_generators(dim: int, energies: Sequence[float] = None, couplings: Sequence[float] = None) -> List[Operator]:
    """
    Nearest-neighbour chain: diagonal generators plus real couplings between adjacent levels.

    Without ``energies`` the dim - 1 diagonal Gell-Mann matrices are used; with
    them a single diagonal Hamiltonian diag(energies) stands in for the level
    structure.
    """
    if dim < 2:
        raise InvalidDimensionError(f"Chain needs dim >= 2, got {dim}")
    couplings = list(couplings) if couplings is not None else [1.0] * (dim - 1)
    if len(couplings) != dim - 1:
        raise DimensionMismatchError(f"Chain of dim {dim} needs {dim - 1} couplings, got {len(couplings)}")

    if energies is None:
        generators = gell_mann_basis(dim)[-(dim - 1):]
    else:
        if len(energies) != dim:
            raise DimensionMismatchError(f"Chain of dim {dim} needs {dim} energies, got {len(energies)}")
        generators = [np.diag(np.asarray(energies, dtype=float)).astype(np.complex128)]

    for j, g in enumerate(couplings, start=1):
        if g != 0:
            generators.append(g * (transition_op(dim, j, j + 1) + transition_op(dim, j + 1, j)))
    return generators


def _traceless(op: Operator) -> Operator:
    dim = op.shape[0]
    return op - np.trace(op) / dim * np.eye(dim)


def _unit_vectors(operators: Sequence[Operator]) -> List[np.ndarray]:
    vectors = []
    for op in operators:
        vec = real_vectorize(_traceless(op))
        norm = np.linalg.norm(vec)
        if norm > 1e-14:
            vectors.append(vec / norm)
    return vectors


def lie_closure(generators: Sequence[Operator], max_dim: int = None, tol: float = None) -> Tuple[int, List[Operator]]:
    """
    Dimension and orthonormal basis of the real Lie algebra spanned by i[A, B] closure.

    The identity component is projected out, so a full algebra on dim levels
    reports dim**2 - 1. New elements are commuted against the whole basis until
    a round adds nothing.

    Raises:
        ClosureOverflowError: basis grows beyond ``max_dim``
    """
    tol = tol or TOLERANCES['orthonormalize']
    operators = [as_operator(g) for g in generators]
    if not operators:
        return 0, []

    dim = operators[0].shape[0]
    for op in operators:
        if op.shape != (dim, dim):
            raise DimensionMismatchError("All generators must share the same dimension")
        if not is_hermitian(op, TOLERANCES['hermitian']):
            raise ValueError("Lie closure needs Hermitian generators")
    max_dim = max_dim or dim * dim - 1

    basis: List[np.ndarray] = []
    frontier = orthonormal_rows(_unit_vectors(operators), basis, tol)
    rounds = 0
    while frontier:
        rounds += 1
        current = [from_real_vector(vec, dim) for vec in basis]
        candidates = []
        for vec in frontier:
            a = from_real_vector(vec, dim)
            candidates.extend(1j * commutator(a, b) for b in current)
        frontier = orthonormal_rows(_unit_vectors(candidates), basis, tol)
        if len(basis) > max_dim:
            raise ClosureOverflowError(f"Lie closure exceeded {max_dim} elements in dim {dim}")

    logger.debug("Lie closure in dim %d: %d elements after %d rounds", dim, len(basis), rounds)
    return len(basis), [from_real_vector(vec, dim) for vec in basis]
