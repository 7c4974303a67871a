import logging
import numpy as np
from dataclasses import dataclass
from typing import List, Tuple
from scipy.special import roots_legendre
from pathlib import Path

import sys
sys.path.insert(0, str(Path(__file__).resolve().parent.parent.parent))

from config.settings import QUADRATURE
from ..errors import ResolutionError
from .families import CoherentFamily

logger = logging.getLogger(__name__)


@dataclass(frozen=True, eq=False)
class Quadrature:
    """Gauss-Legendre nodes per population angle and a uniform grid per free phase."""
    nodes: Tuple[np.ndarray, ...]
    weights: Tuple[np.ndarray, ...]
    phase_grid: int

    @property
    def theta_nodes(self) -> int:
        return len(self.nodes[0])

    def describe(self) -> dict:
        return {'theta_nodes': self.theta_nodes, 'phase_grid': self.phase_grid}


def minimum_phase_grid(family: CoherentFamily) -> int:
    return int(np.ceil(2 * family.max_difference())) + 1


def default_phase_grid(family: CoherentFamily) -> int:
    return max(QUADRATURE['phase_grid_factor'] * family.dim, minimum_phase_grid(family))


def gauss_legendre(n: int, lower: float, upper: float) -> Tuple[np.ndarray, np.ndarray]:
    x, w = roots_legendre(n)
    half = (upper - lower) / 2
    return lower + half * (x + 1), half * w


def make_quadrature(family: CoherentFamily, theta_nodes: int = None, phase_grid: int = None) -> Quadrature:
    theta_nodes = theta_nodes or QUADRATURE['theta_nodes']
    if theta_nodes < 2:
        raise ResolutionError(f"Need at least 2 Gauss-Legendre nodes, got {theta_nodes}")

    required = minimum_phase_grid(family)
    if phase_grid is None:
        phase_grid = default_phase_grid(family)
    elif phase_grid < required:
        raise ResolutionError(
            f"Phase grid {phase_grid} too coarse for family '{family.name}' (dim {family.dim}); need >= {required}"
        )

    nodes, weights = [], []
    for lower, upper in family.theta_domain:
        x, w = gauss_legendre(theta_nodes, lower, upper)
        nodes.append(x)
        weights.append(w)
    return Quadrature(nodes=tuple(nodes), weights=tuple(weights), phase_grid=int(phase_grid))


def theta_points(family: CoherentFamily, quad: Quadrature) -> Tuple[List[np.ndarray], np.ndarray]:
    """Flattened tensor grid of population angles and the dOmega_theta weights (measure included)."""
    grids = np.meshgrid(*quad.nodes, indexing='ij')
    weight_grids = np.meshgrid(*quad.weights, indexing='ij')
    thetas = [g.ravel() for g in grids]
    weights = np.prod([w.ravel() for w in weight_grids], axis=0) * family.measure_weight(*thetas)
    return thetas, weights


def phase_points(n_phases: int, grid: int) -> np.ndarray:
    axis = 2 * np.pi * np.arange(grid) / grid
    mesh = np.meshgrid(*([axis] * n_phases), indexing='ij')
    return np.stack([m.ravel() for m in mesh], axis=1)


def population_overlaps(family: CoherentFamily, quad: Quadrature) -> np.ndarray:
    # integral of r_j r_k against dOmega_theta
    thetas, weights = theta_points(family, quad)
    r = family.amplitude(*thetas)
    return np.einsum('jn,kn,n->jk', r, r, weights)


def phase_averages(family: CoherentFamily, quad: Quadrature) -> np.ndarray:
    """Grid mean of exp(-i (c_j - c_k) . phi); exact for the invariant grid size."""
    phis = phase_points(family.n_phases, quad.phase_grid)
    diff = family.phase_coeffs[:, np.newaxis, :] - family.phase_coeffs[np.newaxis, :, :]
    return np.exp(-1j * np.einsum('jkp,np->jkn', diff, phis)).mean(axis=2)


def theta_volume(family: CoherentFamily, quad: Quadrature) -> float:
    _, weights = theta_points(family, quad)
    return float(weights.sum())


def normalization_from_volume(family: CoherentFamily, quad: Quadrature) -> float:
    return family.dim / ((2 * np.pi) ** family.n_phases * theta_volume(family, quad))


def completeness_matrix(family: CoherentFamily, quad: Quadrature) -> np.ndarray:
    return (
        family.norm_const
        * (2 * np.pi) ** family.n_phases
        * population_overlaps(family, quad)
        * phase_averages(family, quad)
    )


def verify_completeness(family: CoherentFamily, quad: Quadrature) -> float:
    deviation = completeness_matrix(family, quad) - np.eye(family.dim)
    max_dev = float(np.max(np.abs(deviation)))
    logger.debug("Completeness deviation for %s (dim %d): %.3e", family.name, family.dim, max_dev)
    return max_dev
