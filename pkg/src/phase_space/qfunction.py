import numpy as np
from typing import Sequence, Union
from pathlib import Path

import sys
sys.path.insert(0, str(Path(__file__).resolve().parent.parent.parent))

from ..errors import DimensionMismatchError
from ..dynamics import DensityMatrix
from .families import CoherentFamily

StateLike = Union[DensityMatrix, np.ndarray]


def state_entries(rho: StateLike, dim: int = None) -> np.ndarray:
    entries = rho.entries if isinstance(rho, DensityMatrix) else np.asarray(rho, dtype=np.complex128)
    if dim is not None and entries.shape != (dim, dim):
        raise DimensionMismatchError(f"State has shape {entries.shape}, family dim is {dim}")
    return entries


def _expectation(family: CoherentFamily, entries: np.ndarray, thetas, phis) -> np.ndarray:
    alpha = family.components(thetas, phis)
    value = family.norm_const * np.einsum('j...,jk,k...->...', alpha.conj(), entries, alpha)
    return np.real(value)


def q_function(family: CoherentFamily, rho: StateLike, thetas: Sequence, phis: Sequence):
    """
    Husimi function N <alpha|rho|alpha> on broadcastable angle arrays.

    Args:
        thetas: population angles, a single array for spin families or a tuple per angle
        phis: free phases in the same layout
    """
    entries = state_entries(rho, family.dim)
    return _expectation(family, entries, thetas, phis)


def q_function_offdiag(family: CoherentFamily, rho: StateLike, thetas: Sequence, phis: Sequence):
    entries = state_entries(rho, family.dim)
    return _expectation(family, entries - np.diag(np.diag(entries)), thetas, phis)
