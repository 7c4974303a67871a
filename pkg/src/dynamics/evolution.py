import logging
import numpy as np
from pathlib import Path

import sys
sys.path.insert(0, str(Path(__file__).resolve().parent.parent.parent))

from config.settings import SOLVER
from ..errors import InstabilityError
from .model import LindbladModel, DensityMatrix
from .liouvillian import build_liouvillian, vectorize, unvectorize

logger = logging.getLogger(__name__)


def _rk4_step(liouvillian: np.ndarray, vec: np.ndarray, dt: float) -> np.ndarray:
    k1 = liouvillian @ vec
    k2 = liouvillian @ (vec + 0.5 * dt * k1)
    k3 = liouvillian @ (vec + 0.5 * dt * k2)
    k4 = liouvillian @ (vec + dt * k3)
    return vec + (dt / 6.0) * (k1 + 2 * k2 + 2 * k3 + k4)


def evolve(model: LindbladModel, rho0: DensityMatrix, t_final: float, dt: float = None) -> DensityMatrix:
    """
    Fixed-step fourth-order Runge-Kutta integration of the master equation.

    The step is shortened slightly so that an integer number of steps lands on
    ``t_final``. No renormalization is applied between steps.
    """
    dt = dt or SOLVER['rk4_dt']
    if dt <= 0:
        raise ValueError(f"Time step must be positive, got {dt}")
    if t_final < 0:
        raise ValueError(f"Final time must be nonnegative, got {t_final}")
    if t_final == 0:
        return rho0

    liouvillian = build_liouvillian(model)
    n_steps = int(np.ceil(t_final / dt))
    step = t_final / n_steps
    check_every = SOLVER['evolve_check_every']

    vec = vectorize(rho0.entries)
    for i in range(n_steps):
        vec = _rk4_step(liouvillian, vec, step)
        if (i + 1) % check_every == 0 or i == n_steps - 1:
            if not np.all(np.isfinite(vec)):
                raise InstabilityError(
                    f"Integration produced non-finite entries at t={(i + 1) * step:.4g}; use a smaller dt than {dt}"
                )

    rho = unvectorize(vec, model.dim)
    logger.debug("Integrated %d RK4 steps of size %.4g", n_steps, step)
    return DensityMatrix.from_array(
        rho,
        diagnostics={'t_final': float(t_final), 'steps': n_steps, 'trace_error': float(abs(np.trace(rho) - 1.0))},
    )
