import logging
import numpy as np
from typing import Tuple
from scipy.optimize import minimize_scalar
from pathlib import Path

import sys
sys.path.insert(0, str(Path(__file__).resolve().parent.parent.parent))

from config.settings import TOLERANCES
from ..phase_space import state_entries

logger = logging.getLogger(__name__)

LIMIT_CYCLE_SETS = ['diagonal']


def l1_coherence(rho) -> float:
    """Sum of |rho_jk| over j != k."""
    entries = state_entries(rho)
    off = entries - np.diag(np.diag(entries))
    return float(np.sum(np.abs(off)))


def _entropy(eigenvalues: np.ndarray, floor: float) -> float:
    p = np.clip(np.real(eigenvalues), floor, None)
    return float(-np.sum(p * np.log(p)))


def rel_entropy_sync(rho, limit_cycle_set: str = 'diagonal', floor: float = None) -> Tuple[float, np.ndarray]:
    """
    Relative-entropy distance to the set of diagonal states.

    The closest diagonal state is diag(rho), so the distance reduces to
    S(diag rho) - S(rho) in nats. Eigenvalues are floored before the logarithm.

    Returns:
        (distance, minimizing diagonal state)
    """
    if limit_cycle_set not in LIMIT_CYCLE_SETS:
        raise ValueError(
            f"Unsupported limit-cycle set '{limit_cycle_set}'. Available: {', '.join(LIMIT_CYCLE_SETS)}"
        )
    floor = floor or TOLERANCES['entropy_floor']
    entries = state_entries(rho)
    hermitian = (entries + entries.conj().T) / 2
    sigma = np.diag(np.real(np.diag(hermitian))).astype(np.complex128)

    value = _entropy(np.diag(sigma), floor) - _entropy(np.linalg.eigvalsh(hermitian), floor)
    return max(value, 0.0), sigma


def _trace_distance(entries: np.ndarray, p: np.ndarray) -> float:
    return 0.5 * float(np.sum(np.abs(np.linalg.eigvalsh(entries - np.diag(p)))))


def trace_distance_sync(rho, tol: float = None, max_sweeps: int = 200) -> Tuple[float, np.ndarray]:
    """
    Trace distance to the closest diagonal state.

    Coordinate descent on the probability simplex: each step moves weight
    between one pair of levels and minimizes the distance along that line.
    Slower than ``rel_entropy_sync``; there is no closed form.
    """
    tol = tol or TOLERANCES['simplex_descent']
    entries = state_entries(rho)
    entries = (entries + entries.conj().T) / 2
    dim = entries.shape[0]

    p = np.clip(np.real(np.diag(entries)), 0.0, None)
    p = p / p.sum() if p.sum() > 0 else np.full(dim, 1.0 / dim)
    best = _trace_distance(entries, p)

    for sweep in range(max_sweeps):
        previous = best
        for a in range(dim):
            for b in range(a + 1, dim):
                if p[a] + p[b] <= 0:
                    continue

                def along(t, a=a, b=b):
                    trial = p.copy()
                    trial[a] += t
                    trial[b] -= t
                    return _trace_distance(entries, trial)

                result = minimize_scalar(along, bounds=(-p[a], p[b]), method='bounded', options={'xatol': tol})
                if result.fun < best:
                    p[a] += result.x
                    p[b] -= result.x
                    best = float(result.fun)
        if previous - best <= tol:
            break
    else:
        logger.warning("⚠ Trace-distance descent stopped after %d sweeps", max_sweeps)

    return best, np.diag(p).astype(np.complex128)
