import logging
import numpy as np
from typing import Dict, List, NamedTuple, Sequence, Tuple
from pathlib import Path

import sys
sys.path.insert(0, str(Path(__file__).resolve().parent.parent.parent))

from config.settings import TOLERANCES
from ..errors import WeightError
from ..phase_space import CoherentFamily, state_entries
from .measures import ZMatrix, sync_measure, sync_max

logger = logging.getLogger(__name__)


class SyncBlock(NamedTuple):
    family: CoherentFamily
    z: ZMatrix
    rho: np.ndarray
    weight: float


def _check_weights(blocks: Sequence[SyncBlock]) -> None:
    total = sum(float(b[3]) for b in blocks)
    if abs(total - 1.0) > TOLERANCES['normalization']:
        raise WeightError(f"Block weights sum to {total:.15g}, expected 1")


def split_block_state(rho, blocks: Sequence[Sequence[int]]) -> List[Tuple[np.ndarray, float]]:
    """
    Cut a global state into renormalized diagonal blocks (1-based level sets).

    Returns (rho_block, weight) pairs with weight = block trace. A block of
    zero weight gets the maximally mixed state.
    """
    entries = state_entries(rho)
    cross = entries.copy()
    parts = []
    for levels in blocks:
        idx = np.array(sorted(levels)) - 1
        block = entries[np.ix_(idx, idx)]
        weight = float(np.real(np.trace(block)))
        if weight > 0:
            parts.append((block / weight, weight))
        else:
            parts.append((np.eye(len(idx), dtype=np.complex128) / len(idx), 0.0))
        cross[np.ix_(idx, idx)] = 0

    leaked = float(np.max(np.abs(cross), initial=0.0))
    if leaked > TOLERANCES['hermitian']:
        logger.warning("⚠ State has coherences of size %.3e between blocks; they do not enter the composite measure",
                       leaked)
    return parts


def composite_sync(blocks: Sequence[SyncBlock], phis: Sequence) -> float:
    """Weighted sum of per-block measures, each block at its own free phases."""
    _check_weights(blocks)
    if len(phis) != len(blocks):
        raise ValueError(f"Got {len(phis)} phase points for {len(blocks)} blocks")
    return float(sum(
        weight * sync_measure(family, z, rho, phi)
        for (family, z, rho, weight), phi in zip(blocks, phis)
    ))


def composite_sync_max(blocks: Sequence[SyncBlock], phase_grid_size: int = None) -> Dict:
    """
    Maximum of the composite measure.

    The block phases are independent, so the maximum is the weighted sum of
    the per-block maxima, attained at the per-block argmax points.
    """
    _check_weights(blocks)
    per_block = [sync_max(family, z, rho, phase_grid_size) for family, z, rho, _ in blocks]
    total = sum(weight * result.max_value for (_, _, _, weight), result in zip(blocks, per_block))
    total_min = sum(weight * result.min_value for (_, _, _, weight), result in zip(blocks, per_block))
    return {
        'max_value': float(total),
        'min_value': float(total_min),
        'max_abs': float(max(total, -total_min)),
        'argmax': [list(result.max_point) for result in per_block],
        'blocks': [result.to_dict() for result in per_block],
        'weights': [float(b[3]) for b in blocks],
    }
