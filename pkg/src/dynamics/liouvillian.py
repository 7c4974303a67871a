import logging
import numpy as np
from typing import Dict
from pathlib import Path

import sys
sys.path.insert(0, str(Path(__file__).resolve().parent.parent.parent))

from config.settings import TOLERANCES
from ..errors import DegenerateSteadyStateError, TracelessNullVectorError
from ..operators import Operator, as_operator
from .model import LindbladModel, DensityMatrix

logger = logging.getLogger(__name__)

# Column stacking throughout: vec(A X B) = (B^T kron A) vec(X).


def vectorize(rho) -> np.ndarray:
    return np.asarray(rho, dtype=np.complex128).flatten(order='F')


def unvectorize(vec: np.ndarray, dim: int = None) -> np.ndarray:
    dim = dim or int(round(np.sqrt(vec.shape[0])))
    return np.asarray(vec, dtype=np.complex128).reshape((dim, dim), order='F')


def hamiltonian_superoperator(h: Operator) -> np.ndarray:
    h = as_operator(h)
    eye = np.eye(h.shape[0], dtype=np.complex128)
    return -1j * (np.kron(eye, h) - np.kron(h.T, eye))


def dissipator_superoperator(jump: Operator, rate: float) -> np.ndarray:
    jump = as_operator(jump)
    eye = np.eye(jump.shape[0], dtype=np.complex128)
    jdj = jump.conj().T @ jump
    return rate * (
        np.kron(jump.conj(), jump)
        - 0.5 * (np.kron(eye, jdj) + np.kron(jdj.T, eye))
    )


def build_liouvillian(model: LindbladModel, include_drives: bool = True) -> np.ndarray:
    liouvillian = hamiltonian_superoperator(model.hamiltonian(include_drives=include_drives))
    for dissipator in model.dissipators:
        if dissipator.rate == 0:
            continue
        liouvillian = liouvillian + dissipator_superoperator(dissipator.op, dissipator.rate)
    return liouvillian


def apply_master_equation(model: LindbladModel, rho) -> np.ndarray:
    """Right-hand side of the master equation evaluated with plain matrix products."""
    rho = as_operator(rho, dim=model.dim)
    h = model.hamiltonian()
    drho = -1j * (h @ rho - rho @ h)
    for dissipator in model.dissipators:
        jump = as_operator(dissipator.op)
        jd = jump.conj().T
        jdj = jd @ jump
        drho = drho + dissipator.rate * (jump @ rho @ jd - 0.5 * (jdj @ rho + rho @ jdj))
    return drho


def residual_diagnostics(liouvillian: np.ndarray, rho: np.ndarray) -> Dict:
    scale = np.linalg.norm(liouvillian, 2)
    residual = np.linalg.norm(liouvillian @ vectorize(rho))
    eigenvalues = np.linalg.eigvalsh((rho + rho.conj().T) / 2)
    return {
        'residual': float(residual / scale) if scale > 0 else float(residual),
        'trace_error': float(abs(np.trace(rho) - 1.0)),
        'min_eigenvalue': float(eigenvalues.min()),
        'eigenvalues': [float(e) for e in eigenvalues],
    }


def steady_state(liouvillian: np.ndarray, degeneracy_ratio: float = None) -> DensityMatrix:
    degeneracy_ratio = degeneracy_ratio or TOLERANCES['degeneracy_ratio']
    n = liouvillian.shape[0]
    dim = int(round(np.sqrt(n)))
    if dim * dim != n or liouvillian.shape != (n, n):
        raise ValueError(f"Liouvillian shape {liouvillian.shape} is not dim^2 x dim^2")

    _, singular_values, vh = np.linalg.svd(liouvillian)
    if n > 1 and singular_values[-2] <= degeneracy_ratio * singular_values[0]:
        raise DegenerateSteadyStateError(
            f"Steady state is not unique: second-smallest singular value {singular_values[-2]:.3e} "
            f"vs largest {singular_values[0]:.3e}"
        )

    rho = unvectorize(vh[-1].conj(), dim)
    trace = np.trace(rho)
    if abs(trace) < TOLERANCES['traceless']:
        raise TracelessNullVectorError("Null vector of the Liouvillian has vanishing trace")

    rho = rho / trace
    rho = (rho + rho.conj().T) / 2

    diagnostics = residual_diagnostics(liouvillian, rho)
    diagnostics['singular_gap'] = float(singular_values[-2] / singular_values[0])
    if diagnostics['residual'] > TOLERANCES['residual']:
        logger.warning("⚠ Steady-state residual %.3e exceeds %.1e", diagnostics['residual'], TOLERANCES['residual'])
    return DensityMatrix.from_array(rho, diagnostics=diagnostics)


def solve_steady_state(model: LindbladModel) -> DensityMatrix:
    return steady_state(build_liouvillian(model))


def linear_response(model: LindbladModel) -> DensityMatrix:
    """
    Steady state to first order in the drive terms.

    Solves L0 rho1 = -L_drive rho0 with Tr rho1 = 0, where rho0 is the steady
    state of the bare model. The returned state is Hermitian with unit trace;
    its ``order`` is 'linear' and positivity is not enforced.
    """
    bare_liouvillian = build_liouvillian(model.bare())
    rho0 = steady_state(bare_liouvillian)
    if not model.has_drive:
        return rho0

    dim = model.dim
    drive_liouvillian = hamiltonian_superoperator(model.drive_hamiltonian())
    rhs = -drive_liouvillian @ vectorize(rho0.entries)

    trace_row = vectorize(np.eye(dim))[np.newaxis, :]
    system = np.vstack([bare_liouvillian, trace_row])
    target = np.concatenate([rhs, [0.0]])
    correction, *_ = np.linalg.lstsq(system, target, rcond=None)

    rho = rho0.entries + unvectorize(correction, dim)
    rho = (rho + rho.conj().T) / 2

    diagnostics = residual_diagnostics(build_liouvillian(model), rho)
    diagnostics['first_order_residual'] = float(
        np.linalg.norm(bare_liouvillian @ correction - rhs) / max(np.linalg.norm(bare_liouvillian, 2), 1e-300)
    )
    return DensityMatrix.from_array(rho, order='linear', diagnostics=diagnostics)
