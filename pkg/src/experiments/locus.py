import logging
import itertools
import numpy as np
import pandas as pd
from typing import Dict, List, Optional, Sequence, Tuple
from scipy.optimize import brentq
from pathlib import Path

import sys
sys.path.insert(0, str(Path(__file__).resolve().parent.parent.parent))

from ..errors import NumericalError
from ..phase_space import canonical_difference, phase_groups
from ..analysis import (
    blockade_residual,
    group_sums,
    l1_coherence,
    spin32_conditions,
    sync_max,
)
from .models import get_builder
from .sweep import SweepSpec, family_and_z, solve_point

logger = logging.getLogger(__name__)


def _pick_group(family, sums: Dict[tuple, np.ndarray]) -> tuple:
    # the repeated group that actually carries coherence on this grid
    repeated = [key for key, members in phase_groups(family).items() if len(members) > 1]
    if not repeated:
        raise ValueError(f"Family '{family.name}' (dim {family.dim}) has no repeated phase group")
    return max(repeated, key=lambda key: float(np.nanmean(np.abs(sums[key]))))


def locate_blockade(spec: SweepSpec, group: Optional[Sequence[float]] = None, xtol: float = 1e-14) -> pd.DataFrame:
    """
    Points where one phase group's coherence sum vanishes.

    The last swept axis is scanned for each combination of the other axes.
    Where the group sum turns around (Re(s_a conj(s_b)) < 0) the projection of
    the sum onto the direction of s_a is a real function with a sign change,
    and brentq refines its root. Each locus point is re-solved and reported
    with its residuals, l1 coherence and S_max.
    """
    family, z, grid = family_and_z(*spec.family_args(), spec.theta_nodes, spec.phase_grid)
    builder = get_builder(spec.builder)
    outer_axes, inner_axis = spec.axes[:-1], spec.axes[-1]
    inner_values = inner_axis.values()
    keys = list(phase_groups(family))

    def state_at(params: Dict[str, float]):
        return solve_point(builder(**params), spec.solver)

    def sums_at(params: Dict[str, float]) -> Dict[tuple, complex]:
        return group_sums(family, state_at(params), z)

    outer_combos = list(itertools.product(*(a.values() for a in outer_axes)))
    scans = []
    for combo in outer_combos:
        base = {**spec.fixed, **{a.name: float(v) for a, v in zip(outer_axes, combo)}}
        line = {key: np.full(len(inner_values), np.nan, dtype=complex) for key in keys}
        for i, x in enumerate(inner_values):
            try:
                point_sums = sums_at({**base, inner_axis.name: float(x)})
            except NumericalError as e:
                logger.warning("⚠ Locus scan skipped %s=%g: %s", inner_axis.name, x, e)
                continue
            for key in keys:
                line[key][i] = point_sums[key]
        scans.append((base, line))

    if group is None:
        stacked = {key: np.concatenate([line[key] for _, line in scans]) for key in keys}
        key = _pick_group(family, stacked)
    else:
        key, _ = canonical_difference(np.asarray(group, dtype=float))
        if key not in keys:
            raise ValueError(f"No phase group with difference {list(key)}; available: {[list(k) for k in keys]}")

    rows: List[Dict] = []
    for base, line in scans:
        sums = line[key]
        for i in range(len(inner_values) - 1):
            s_a, s_b = sums[i], sums[i + 1]
            if np.isnan(s_a) or np.isnan(s_b) or s_a == 0:
                continue
            if np.real(s_a * np.conj(s_b)) >= 0:
                continue

            direction = np.exp(-1j * np.angle(s_a))

            def projected(x, base=base, direction=direction):
                return float(np.real(sums_at({**base, inner_axis.name: float(x)})[key] * direction))

            try:
                root = brentq(projected, inner_values[i], inner_values[i + 1], xtol=xtol)
                rows.append(_locus_row(family, z, grid, state_at({**base, inner_axis.name: root}),
                                       base, inner_axis.name, root, key))
            except (NumericalError, ValueError) as e:
                logger.warning("⚠ Locus refinement failed near %s=%g: %s", inner_axis.name, inner_values[i], e)

    logger.info("✓ Found %d blockade locus points for group %s", len(rows), list(key))
    return pd.DataFrame(rows)


def _locus_row(family, z, grid, rho, base: Dict, inner_name: str, root: float, key: Tuple) -> Dict:
    residuals = blockade_residual(family, rho, z)
    target = next(g for g in residuals if tuple(g['difference']) == key)
    row = {
        **base,
        inner_name: float(root),
        'group': '_'.join(f"{x:g}" for x in key),
        'group_residual': target['residual'],
        'residual_max': max(g['residual'] for g in residuals),
        'l1': l1_coherence(rho),
        'S_max': sync_max(family, z, rho, grid).max_abs,
        'order': rho.order,
    }
    if family.dim == 4:
        for name, value in spin32_conditions(rho, z).items():
            row[f"spin32_{name}"] = value
    return row
