import logging
import numpy as np
from dataclasses import dataclass, field
from typing import Callable, Dict, Sequence, Tuple
from scipy.optimize import minimize, minimize_scalar
from pathlib import Path

import sys
sys.path.insert(0, str(Path(__file__).resolve().parent.parent.parent))

from config.settings import TOLERANCES
from ..errors import ResolutionError, DimensionMismatchError
from ..phase_space import (
    CoherentFamily,
    Quadrature,
    as_angles,
    make_quadrature,
    minimum_phase_grid,
    default_phase_grid,
    phase_points,
    population_overlaps,
    theta_points,
    q_function,
    state_entries,
)

logger = logging.getLogger(__name__)


@dataclass(frozen=True, eq=False)
class ZMatrix:
    """Population overlaps z_jk = integral of r_j r_k over dOmega_theta (levels 1-based in ``z``)."""
    values: np.ndarray
    provenance: Dict = field(default_factory=dict)

    def z(self, j: int, k: int) -> float:
        return float(self.values[j - 1, k - 1])

    @property
    def dim(self) -> int:
        return self.values.shape[0]


@dataclass
class SyncResult:
    value: float
    max_abs: float
    argmax: Tuple[float, ...]
    constant: float
    max_value: float = 0.0
    min_value: float = 0.0
    grid_size: int = 0
    max_point: Tuple[float, ...] = ()

    def to_dict(self) -> Dict:
        return {
            'value': self.value,
            'max_abs': self.max_abs,
            'argmax': list(self.argmax),
            'constant': self.constant,
            'max_value': self.max_value,
            'min_value': self.min_value,
            'grid_size': self.grid_size,
            'max_point': list(self.max_point),
        }


def z_matrix(family: CoherentFamily, quad: Quadrature = None) -> ZMatrix:
    quad = quad or make_quadrature(family)
    values = population_overlaps(family, quad)
    values = (values + values.T) / 2
    values.setflags(write=False)
    return ZMatrix(values=values, provenance={'family': family.name, 'dim': family.dim, **quad.describe()})


def _pair_arrays(family: CoherentFamily):
    upper = np.triu_indices(family.dim, k=1)
    diffs = family.phase_coeffs[upper[0]] - family.phase_coeffs[upper[1]]
    return upper, diffs


def sync_measure(family: CoherentFamily, z: ZMatrix, rho, phis):
    """
    S(phi) = 2 N sum_{j<k} z_jk Re(rho_jk exp(i (c_j - c_k) . phi)).

    ``phis`` follows the family layout (one array for spin families, a tuple
    of arrays otherwise) and broadcasts.
    """
    entries = state_entries(rho, family.dim)
    if z.dim != family.dim:
        raise DimensionMismatchError(f"ZMatrix dim {z.dim} does not match family dim {family.dim}")
    phis = as_angles(phis, family.n_phases)
    shape = np.broadcast_shapes(*[np.shape(p) for p in phis])

    (rows, cols), diffs = _pair_arrays(family)
    if rows.size == 0:
        return np.zeros(shape) if shape else 0.0

    phase = np.zeros((rows.size,) + shape)
    for axis, phi in enumerate(phis):
        phase = phase + diffs[:, axis].reshape((-1,) + (1,) * len(shape)) * phi
    coeffs = (z.values[rows, cols] * entries[rows, cols]).reshape((-1,) + (1,) * len(shape))
    value = 2 * family.norm_const * np.sum(np.real(coeffs * np.exp(1j * phase)), axis=0)
    return float(value) if value.ndim == 0 else value


def sync_measure_direct(family: CoherentFamily, rho, phis, quad: Quadrature = None):
    """Population-integrated Husimi function minus the uniform level (1/2pi)^n_phases."""
    quad = quad or make_quadrature(family)
    phis = as_angles(phis, family.n_phases)
    shape = np.broadcast_shapes(*[np.shape(p) for p in phis])

    thetas, weights = theta_points(family, quad)
    thetas = tuple(t.reshape((-1,) + (1,) * len(shape)) for t in thetas)
    phis = tuple(np.broadcast_to(p, shape)[np.newaxis, ...] for p in phis)
    q = q_function(family, rho, thetas if family.n_theta > 1 else thetas[0], phis if family.n_phases > 1 else phis[0])
    value = np.tensordot(weights, q, axes=(0, 0)) - family.phase_constant
    return float(value) if np.ndim(value) == 0 else value


def _refine_maximum(fn: Callable, x0: np.ndarray, step: float, tol: float) -> Tuple[np.ndarray, float]:
    best_x, best_value = np.asarray(x0, dtype=float), float(fn(x0))
    if best_x.size == 1:
        result = minimize_scalar(
            lambda x: -fn(np.array([x])),
            bounds=(best_x[0] - step, best_x[0] + step),
            method='bounded',
            options={'xatol': tol},
        )
        candidate, value = np.array([result.x]), -float(result.fun)
    else:
        result = minimize(
            lambda x: -fn(x),
            best_x,
            method='Nelder-Mead',
            options={'xatol': tol, 'fatol': 1e-16, 'initial_simplex': _simplex(best_x, step / 2)},
        )
        candidate, value = result.x, -float(result.fun)
    if value >= best_value:
        return np.mod(candidate, 2 * np.pi), value
    return best_x, best_value


def _simplex(x0: np.ndarray, step: float) -> np.ndarray:
    return np.vstack([x0] + [x0 + step * np.eye(x0.size)[i] for i in range(x0.size)])


def sync_max(family: CoherentFamily, z: ZMatrix, rho, phase_grid_size: int = None, tol: float = None) -> SyncResult:
    """
    Maximum of |S| over the free phases.

    A uniform grid of ``phase_grid_size`` points per phase locates the peak
    (lowest grid index wins ties); bounded Brent (one phase) or Nelder-Mead
    (several phases) then refines it to ``tol``.
    """
    tol = tol or TOLERANCES['sync_refine']
    required = minimum_phase_grid(family)
    grid = phase_grid_size or default_phase_grid(family)
    if grid < required:
        raise ResolutionError(f"Phase grid {grid} below the exact resolution {required} for family '{family.name}'")

    entries = state_entries(rho, family.dim)
    points = phase_points(family.n_phases, grid)
    values = sync_measure(family, z, entries, tuple(points.T) if family.n_phases > 1 else points[:, 0])
    values = np.atleast_1d(values)

    def evaluate(x):
        x = np.atleast_1d(x)
        return sync_measure(family, z, entries, tuple(x) if family.n_phases > 1 else x[0])

    step = 2 * np.pi / grid
    if np.max(np.abs(values)) == 0.0:
        return SyncResult(value=0.0, max_abs=0.0, argmax=tuple(points[0]), constant=family.phase_constant,
                          grid_size=grid, max_point=tuple(points[0]))

    hi_x, hi = _refine_maximum(evaluate, points[int(np.argmax(values))], step, tol)
    lo_x, neg_lo = _refine_maximum(lambda x: -evaluate(x), points[int(np.argmin(values))], step, tol)
    lo = -neg_lo

    if hi >= -lo:
        argmax, value = hi_x, hi
    else:
        argmax, value = lo_x, lo
    return SyncResult(
        value=float(value),
        max_abs=float(abs(value)),
        argmax=tuple(float(a) for a in argmax),
        constant=family.phase_constant,
        max_value=float(hi),
        min_value=float(lo),
        grid_size=grid,
        max_point=tuple(float(a) for a in hi_x),
    )
