import logging
import numpy as np
import pandas as pd
from typing import Sequence, Union
from pathlib import Path

import sys
sys.path.insert(0, str(Path(__file__).resolve().parent.parent.parent))

from ..phase_space import (
    CoherentFamily,
    Quadrature,
    as_angles,
    make_quadrature,
    q_function,
    q_function_offdiag,
    theta_points,
)

logger = logging.getLogger(__name__)


def _angle_names(prefix: str, count: int):
    return [prefix] if count == 1 else [f"{prefix}{i + 1}" for i in range(count)]


def qfunc_grid(family: CoherentFamily, rho, n_theta: int = 60, n_phi: int = 120) -> pd.DataFrame:
    """
    Husimi function and its off-diagonal part on a regular angle grid.

    Population angles run over their closed domains with ``n_theta`` points
    each, free phases over [0, 2pi) with ``n_phi`` points each. One row per
    grid point, population angles varying slowest.
    """
    theta_axes = [np.linspace(lo, hi, n_theta) for lo, hi in family.theta_domain]
    phi_axes = [2 * np.pi * np.arange(n_phi) / n_phi] * family.n_phases
    mesh = np.meshgrid(*theta_axes, *phi_axes, indexing='ij')
    flat = [m.ravel() for m in mesh]
    thetas, phis = flat[:family.n_theta], flat[family.n_theta:]

    theta_arg = thetas[0] if family.n_theta == 1 else tuple(thetas)
    phi_arg = phis[0] if family.n_phases == 1 else tuple(phis)
    columns = dict(zip(_angle_names('theta', family.n_theta), thetas))
    columns.update(zip(_angle_names('phi', family.n_phases), phis))
    columns['Q'] = q_function(family, rho, theta_arg, phi_arg)
    columns['Q_offdiag'] = q_function_offdiag(family, rho, theta_arg, phi_arg)
    logger.debug("Q-function grid for %s: %d points", family.name, len(flat[0]))
    return pd.DataFrame(columns)


def offdiag_theta_integral(family: CoherentFamily, rho, phis: Union[np.ndarray, Sequence],
                           quad: Quadrature = None) -> pd.DataFrame:
    """Population integral of the off-diagonal Husimi part at each phase point."""
    quad = quad or make_quadrature(family)
    phis = as_angles(phis, family.n_phases)
    phis = [np.ravel(p) for p in np.broadcast_arrays(*phis)]

    thetas, weights = theta_points(family, quad)
    theta_arg = tuple(t[:, np.newaxis] for t in thetas)
    phi_arg = tuple(p[np.newaxis, :] for p in phis)
    values = q_function_offdiag(
        family, rho,
        theta_arg[0] if family.n_theta == 1 else theta_arg,
        phi_arg[0] if family.n_phases == 1 else phi_arg,
    )
    columns = dict(zip(_angle_names('phi', family.n_phases), phis))
    columns['offdiag_integral'] = weights @ values
    return pd.DataFrame(columns)


def sweep_heatmap(frame: pd.DataFrame, value: str, index: str, columns: str) -> pd.DataFrame:
    """Pivot a sweep table into a 2-D panel (rows ``index``, columns ``columns``)."""
    if hasattr(frame, 'frame'):
        frame = frame.frame
    missing = [c for c in (value, index, columns) if c not in frame]
    if missing:
        raise ValueError(f"Sweep table has no column(s) {missing}")
    return frame.pivot_table(index=index, columns=columns, values=value, aggfunc='first')
