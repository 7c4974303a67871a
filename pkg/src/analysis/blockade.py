import logging
import numpy as np
from typing import Dict, List
from pathlib import Path

import sys
sys.path.insert(0, str(Path(__file__).resolve().parent.parent.parent))

from ..errors import DimensionMismatchError, ResolutionError
from ..phase_space import (
    CoherentFamily,
    Quadrature,
    default_phase_grid,
    minimum_phase_grid,
    phase_groups,
    phase_points,
    state_entries,
)
from .measures import ZMatrix, z_matrix

logger = logging.getLogger(__name__)


def group_sums(family: CoherentFamily, rho, z: ZMatrix = None, quad: Quadrature = None) -> Dict[tuple, complex]:
    """Complex sum of z_jk rho_jk over each phase group (conjugated for sign-flipped members)."""
    z = z or z_matrix(family, quad)
    entries = state_entries(rho, family.dim)
    sums = {}
    for key, members in phase_groups(family).items():
        total = 0j
        for j, k, sign in members:
            value = entries[j - 1, k - 1]
            total += z.z(j, k) * (value if sign > 0 else np.conj(value))
        sums[key] = complex(total)
    return sums


def blockade_residual(family: CoherentFamily, rho, z: ZMatrix = None, quad: Quadrature = None) -> List[Dict]:
    """
    Per-group residuals |sum_group z_jk rho_jk|.

    All residuals vanish exactly when S(phi) is identically zero. A group whose
    difference vector is zero contributes a phase-independent constant, so
    only its real part counts.
    """
    z = z or z_matrix(family, quad)
    groups = phase_groups(family)
    sums = group_sums(family, rho, z)

    report = []
    for key, members in groups.items():
        total = sums[key]
        residual = abs(total.real) if not any(key) else abs(total)
        report.append({
            'difference': list(key),
            'pairs': [[j, k] for j, k, _ in members],
            'signs': [sign for _, _, sign in members],
            'repeated': len(members) > 1,
            'sum': [total.real, total.imag],
            'residual': float(residual),
        })
    return report


def max_residual(report: List[Dict]) -> float:
    return max((g['residual'] for g in report), default=0.0)


def phase_functional_gram(family: CoherentFamily, grid: int = None) -> Dict:
    """
    Gram matrix of the cos and sin harmonics carried by each coherence pair.

    Rows are cos(d_jk . phi) and sin(d_jk . phi) for every pair j < k, averaged
    over a uniform phase grid fine enough to make the averages exact. Full rank
    means no nonzero set of coherences can cancel S for all phases.
    """
    required = minimum_phase_grid(family)
    grid = grid or default_phase_grid(family)
    if grid < required:
        raise ResolutionError(f"Phase grid {grid} too coarse for the Gram matrix; need >= {required}")

    points = phase_points(family.n_phases, grid)
    rows, labels = [], []
    for (j, k), diff in family.differences():
        argument = points @ diff
        rows.append(np.cos(argument))
        rows.append(np.sin(argument))
        labels.extend([f"cos({j},{k})", f"sin({j},{k})"])

    functionals = np.array(rows)
    gram = functionals @ functionals.T / points.shape[0]
    singular = np.linalg.svd(gram, compute_uv=False)
    rank = int(np.linalg.matrix_rank(gram, tol=1e-10))
    condition = float(singular[0] / singular[-1]) if singular[-1] > 1e-14 else float('inf')

    logger.debug("Gram matrix for %s (dim %d): rank %d of %d", family.name, family.dim, rank, len(rows))
    return {
        'gram': gram,
        'labels': labels,
        'n_functionals': len(rows),
        'rank': rank,
        'condition': condition,
        'full_rank': rank == len(rows),
    }


def _wrapped(angle: float) -> float:
    return float(abs(np.angle(np.exp(1j * angle))))


def spin32_conditions(rho, z: ZMatrix = None) -> Dict:
    """
    Blockade conditions for a four-level spin-3/2 state.

    The adjacent harmonic cancels when 5*sqrt(3)*(R12 + R34) = 9*R23 with
    chi34 = chi12 and chi23 = chi12 + pi; the second harmonic cancels when
    rho13 = -rho24.
    """
    entries = state_entries(rho)
    if entries.shape != (4, 4):
        raise DimensionMismatchError(f"Spin-3/2 conditions need a 4-level state, got {entries.shape}")

    def R(j, k):
        return float(abs(entries[j - 1, k - 1]))

    def chi(j, k):
        return float(-np.angle(entries[j - 1, k - 1]))

    amplitude = 5 * np.sqrt(3) * (R(1, 2) + R(3, 4)) - 9 * R(2, 3)
    result = {
        'amplitude_residual': float(abs(amplitude)),
        'amplitude_scale': float(5 * np.sqrt(3) * (R(1, 2) + R(3, 4)) + 9 * R(2, 3)),
        'chi34_error': _wrapped(chi(3, 4) - chi(1, 2)),
        'chi23_error': _wrapped(chi(2, 3) - chi(1, 2) - np.pi),
        'next_nearest_sum': float(abs(entries[0, 2] + entries[1, 3])),
        'extremal': R(1, 4),
    }
    if z is not None:
        adjacent = z.z(1, 2) * entries[0, 1] + z.z(2, 3) * entries[1, 2] + z.z(3, 4) * entries[2, 3]
        result['adjacent_group_residual'] = float(abs(adjacent))
    return result
