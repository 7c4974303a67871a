import numpy as np
from dataclasses import dataclass
from functools import partial
from typing import Callable, Dict, List, Sequence, Tuple
from scipy.special import comb
from pathlib import Path

import sys
sys.path.insert(0, str(Path(__file__).resolve().parent.parent.parent))

from config.settings import FAMILIES
from ..errors import InvalidDimensionError


@dataclass(frozen=True, eq=False)
class CoherentFamily:
    """
    Coherent-state family with components r_j(theta) * exp(-i c_j . phi).

    ``amplitude`` and ``measure_weight`` take one array per population angle and
    broadcast; ``amplitude`` returns shape (dim, *broadcast_shape). The Haar
    measure splits as dOmega = w(theta) dtheta dphi.
    """
    name: str
    dim: int
    n_theta: int
    n_phases: int
    amplitude: Callable
    phase_coeffs: np.ndarray
    theta_domain: Tuple[Tuple[float, float], ...]
    measure_weight: Callable
    norm_const: float

    def components(self, thetas: Sequence, phis: Sequence) -> np.ndarray:
        thetas = as_angles(thetas, self.n_theta)
        phis = as_angles(phis, self.n_phases)
        r = self.amplitude(*thetas)
        shape = np.broadcast_shapes(*[np.shape(p) for p in phis])
        phase = np.zeros((self.dim,) + shape)
        for axis, phi in enumerate(phis):
            phase = phase + self.phase_coeffs[:, axis].reshape((-1,) + (1,) * len(shape)) * phi
        # align the angle axes of both factors behind the component axis
        full = np.broadcast_shapes(r.shape[1:], shape)
        r = r.reshape((self.dim,) + (1,) * (len(full) - r.ndim + 1) + r.shape[1:])
        phase = phase.reshape((self.dim,) + (1,) * (len(full) - len(shape)) + shape)
        return r * np.exp(-1j * phase)

    def differences(self) -> List[Tuple[Tuple[int, int], np.ndarray]]:
        out = []
        for j in range(self.dim):
            for k in range(j + 1, self.dim):
                out.append(((j + 1, k + 1), self.phase_coeffs[j] - self.phase_coeffs[k]))
        return out

    def max_difference(self) -> float:
        diffs = [np.max(np.abs(d)) for _, d in self.differences()]
        return float(max(diffs)) if diffs else 0.0

    @property
    def phase_constant(self) -> float:
        return (1.0 / (2 * np.pi)) ** self.n_phases


def canonical_difference(diff: np.ndarray) -> Tuple[Tuple[float, ...], int]:
    """Sign-normalized difference vector (first nonzero entry positive) and the flip applied."""
    rounded = np.round(np.asarray(diff, dtype=float), 9) + 0.0
    nonzero = np.flatnonzero(rounded)
    sign = -1 if nonzero.size and rounded[nonzero[0]] < 0 else 1
    return tuple(float(x) + 0.0 for x in sign * rounded), sign


def phase_groups(family: CoherentFamily, levels: Sequence[int] = None) -> Dict[Tuple[float, ...], List[Tuple[int, int, int]]]:
    """
    Coherence pairs grouped by their free-phase dependence.

    Pairs (j, k), j < k, whose difference vectors c_j - c_k agree up to sign
    carry the same harmonic. Each member is (j, k, sign); sign -1 means the
    pair enters the group through the complex conjugate of rho_jk.
    """
    levels = sorted(levels) if levels is not None else list(range(1, family.dim + 1))
    groups: Dict[Tuple[float, ...], List[Tuple[int, int, int]]] = {}
    for a, j in enumerate(levels):
        for k in levels[a + 1:]:
            key, sign = canonical_difference(family.phase_coeffs[j - 1] - family.phase_coeffs[k - 1])
            groups.setdefault(key, []).append((j, k, sign))
    return groups


def as_angles(values, count: int) -> Tuple[np.ndarray, ...]:
    """One array per angle. Single-angle families take any array-like; only a tuple is unpacked."""
    if count == 1 and not isinstance(values, tuple):
        return (np.asarray(values, dtype=float),)
    values = tuple(np.asarray(v, dtype=float) for v in values)
    if len(values) != count:
        raise ValueError(f"Expected {count} angle arrays, got {len(values)}")
    return values


def _spin_amplitude(dim: int, theta: np.ndarray) -> np.ndarray:
    n = dim - 1
    half = np.asarray(theta, dtype=float) / 2
    cos_half, sin_half = np.cos(half), np.sin(half)
    return np.stack([
        np.sqrt(comb(n, k)) * cos_half ** (n - k) * sin_half ** k
        for k in range(dim)
    ])


def _sin_weight(theta: np.ndarray) -> np.ndarray:
    return np.sin(theta)


def make_spin_family(dim: int) -> CoherentFamily:
    if not isinstance(dim, (int, np.integer)) or dim < 2:
        raise InvalidDimensionError(f"Spin families need dim >= 2, got {dim}")
    j = (dim - 1) / 2
    coeffs = (j - np.arange(dim)).reshape(dim, 1)
    return CoherentFamily(
        name='spin',
        dim=int(dim),
        n_theta=1,
        n_phases=1,
        amplitude=partial(_spin_amplitude, int(dim)),
        phase_coeffs=coeffs,
        theta_domain=((0.0, np.pi),),
        measure_weight=_sin_weight,
        norm_const=dim / (4 * np.pi),
    )


def _su3_amplitude(theta1: np.ndarray, theta2: np.ndarray) -> np.ndarray:
    theta1, theta2 = np.broadcast_arrays(np.asarray(theta1, dtype=float), np.asarray(theta2, dtype=float))
    return np.stack([
        np.cos(theta1),
        np.cos(theta2) * np.sin(theta1),
        np.sin(theta2) * np.sin(theta1),
    ])


def _su3_weight(theta1: np.ndarray, theta2: np.ndarray) -> np.ndarray:
    # Fubini-Study volume element of this parameterization
    return np.sin(theta1) ** 3 * np.cos(theta1) * np.sin(theta2) * np.cos(theta2)


def make_su3_family() -> CoherentFamily:
    return CoherentFamily(
        name='su3',
        dim=3,
        n_theta=2,
        n_phases=2,
        amplitude=_su3_amplitude,
        phase_coeffs=np.array([[0.0, 0.0], [1.0, 0.0], [0.0, 1.0]]),
        theta_domain=((0.0, np.pi / 2), (0.0, np.pi / 2)),
        measure_weight=_su3_weight,
        norm_const=6 / np.pi ** 2,
    )


def family_by_name(name: str, dim: int = None) -> CoherentFamily:
    if name == 'spin':
        if dim is None:
            raise ValueError("Spin family needs a dimension")
        return make_spin_family(dim)
    if name == 'su3':
        if dim not in (None, 3):
            raise InvalidDimensionError(f"SU(3) family has dim 3, model dim is {dim}")
        return make_su3_family()
    raise ValueError(f"Unknown coherent family '{name}'. Available: {', '.join(FAMILIES)}")
