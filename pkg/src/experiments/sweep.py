import inspect
import json
import logging
import itertools
import numpy as np
import pandas as pd
from concurrent.futures import ProcessPoolExecutor, as_completed
from dataclasses import asdict, dataclass, field
from datetime import datetime, timezone
from functools import lru_cache
from typing import Dict, List, Optional, Tuple
from sklearn.preprocessing import MaxAbsScaler
from pathlib import Path

import sys
sys.path.insert(0, str(Path(__file__).resolve().parent.parent.parent))

from config.settings import QUADRATURE, SWEEP, VERSION
from ..errors import NumericalError
from ..dynamics import DensityMatrix, LindbladModel, linear_response, solve_steady_state
from ..phase_space import CoherentFamily, family_by_name, make_quadrature
from ..analysis import (
    ZMatrix,
    blockade_residual,
    l1_coherence,
    rel_entropy_sync,
    spin32_conditions,
    sync_max,
    trace_distance_sync,
    z_matrix,
)
from .models import MODEL_BUILDERS, get_builder

logger = logging.getLogger(__name__)

MEASURES = ['S_max', 'l1', 'rel_entropy', 'residuals', 'trace_distance', 'spin32']
SOLVERS = ['steady', 'linear_response']
SCALES = ['linear', 'log']


@dataclass
class SweepAxis:
    name: str
    min: float
    max: float
    count: int
    scale: str = 'linear'

    def __post_init__(self):
        if self.scale not in SCALES:
            raise ValueError(f"Axis '{self.name}': scale must be one of {SCALES}, got '{self.scale}'")
        if self.count < 1:
            raise ValueError(f"Axis '{self.name}': count must be positive, got {self.count}")
        if self.count == 1 and self.min != self.max:
            raise ValueError(f"Axis '{self.name}': a single-point axis needs min == max")
        if self.count >= 2 and not self.min < self.max:
            raise ValueError(f"Axis '{self.name}': min must be below max, got [{self.min}, {self.max}]")
        if self.scale == 'log' and self.min <= 0:
            raise ValueError(f"Axis '{self.name}': log scale needs positive bounds")

    def values(self) -> np.ndarray:
        if self.count == 1:
            return np.array([float(self.min)])
        if self.scale == 'log':
            return np.geomspace(self.min, self.max, self.count)
        return np.linspace(self.min, self.max, self.count)


@dataclass
class SweepSpec:
    """
    Grid sweep over a registered model builder.

    Swept and fixed parameters together must cover the builder's required
    arguments. ``family`` defaults to the builder's natural family.
    """
    builder: str
    axes: List[SweepAxis]
    fixed: Dict[str, float] = field(default_factory=dict)
    measures: List[str] = field(default_factory=lambda: list(SWEEP['measures']))
    family: Optional[str] = None
    solver: str = SWEEP['solver']
    theta_nodes: Optional[int] = None
    phase_grid: Optional[int] = None
    threshold: float = SWEEP['threshold']
    workers: int = SWEEP['workers']

    def __post_init__(self):
        self.axes = [a if isinstance(a, SweepAxis) else SweepAxis(**a) for a in self.axes]
        builder = get_builder(self.builder)
        params = inspect.signature(builder).parameters
        names = [a.name for a in self.axes]

        if not names:
            raise ValueError("A sweep needs at least one axis")
        if len(set(names)) != len(names):
            raise ValueError(f"Duplicate swept parameters: {names}")
        unknown = [n for n in names + list(self.fixed) if n not in params]
        if unknown:
            raise ValueError(f"Unknown parameters for '{self.builder}': {unknown}")
        overlap = set(names) & set(self.fixed)
        if overlap:
            raise ValueError(f"Parameters both swept and fixed: {sorted(overlap)}")
        missing = [n for n, p in params.items()
                   if p.default is inspect.Parameter.empty and n not in names and n not in self.fixed]
        if missing:
            raise ValueError(f"Missing parameters for '{self.builder}': {missing}")

        bad = [m for m in self.measures if m not in MEASURES]
        if bad:
            raise ValueError(f"Unknown measures {bad}. Available: {', '.join(MEASURES)}")
        if self.solver not in SOLVERS:
            raise ValueError(f"Unknown solver '{self.solver}'. Available: {', '.join(SOLVERS)}")
        if self.workers < 1:
            raise ValueError(f"workers must be positive, got {self.workers}")
        self.family = self.family or MODEL_BUILDERS[self.builder]['family'][0]

    @property
    def shape(self) -> Tuple[int, ...]:
        return tuple(a.count for a in self.axes)

    def family_args(self) -> Tuple[str, int]:
        return self.family, MODEL_BUILDERS[self.builder]['family'][1]

    def points(self) -> List[Dict[str, float]]:
        """Grid points in row-major order (first axis slowest)."""
        names = [a.name for a in self.axes]
        return [
            {**self.fixed, **dict(zip(names, (float(v) for v in combo)))}
            for combo in itertools.product(*(a.values() for a in self.axes))
        ]

    def to_dict(self) -> Dict:
        return asdict(self)

    @classmethod
    def from_dict(cls, data: Dict) -> 'SweepSpec':
        return cls(**data)


@dataclass
class SweepTable:
    frame: pd.DataFrame
    metadata: Dict

    def __len__(self) -> int:
        return len(self.frame)

    @property
    def ok(self) -> pd.DataFrame:
        return self.frame[self.frame['status'] == 'ok']


@lru_cache(maxsize=8)
def family_and_z(family_name: str, dim: int, theta_nodes: Optional[int], phase_grid: Optional[int]):
    family = family_by_name(family_name, dim)
    quad = make_quadrature(family, theta_nodes, phase_grid)
    return family, z_matrix(family, quad), quad.phase_grid


def solve_point(model: LindbladModel, solver: str = 'steady') -> DensityMatrix:
    if solver == 'linear_response':
        return linear_response(model)
    return solve_steady_state(model)


def evaluate_state(family: CoherentFamily, z: ZMatrix, rho: DensityMatrix, measures: List[str],
                   phase_grid: int = None) -> Dict:
    """Requested measures for one state as a flat dict of row values."""
    row = {}
    if 'S_max' in measures:
        result = sync_max(family, z, rho, phase_grid)
        row['S_max'] = result.max_abs
        row['S_argmax'] = result.argmax[0] if len(result.argmax) == 1 else json.dumps(list(result.argmax))
    if 'l1' in measures:
        row['l1'] = l1_coherence(rho)
    if 'rel_entropy' in measures:
        row['rel_entropy'] = rel_entropy_sync(rho)[0]
    if 'trace_distance' in measures:
        row['trace_distance'] = trace_distance_sync(rho)[0]
    if 'residuals' in measures:
        groups = blockade_residual(family, rho, z)
        for group in groups:
            key = '_'.join(f"{x:g}" for x in group['difference'])
            row[f"residual_{key}"] = group['residual']
        row['residual_max'] = max((g['residual'] for g in groups), default=0.0)
    if 'spin32' in measures and family.dim == 4:
        for name, value in spin32_conditions(rho, z).items():
            row[f"spin32_{name}"] = value
    return row


def _evaluate_point(args: Tuple) -> Tuple[int, Dict]:
    index, builder, params, measures, family_args, solver, theta_nodes, phase_grid = args
    family, z, grid = family_and_z(*family_args, theta_nodes, phase_grid)
    row = {'status': 'ok', 'message': ''}
    try:
        model = get_builder(builder)(**params)
        rho = solve_point(model, solver)
        row['solver_residual'] = rho.diagnostics.get('residual', np.nan)
        row['min_eigenvalue'] = rho.diagnostics.get('min_eigenvalue', np.nan)
        row.update(evaluate_state(family, z, rho, measures, grid))
    except NumericalError as e:
        row['status'] = 'error'
        row['message'] = f"{type(e).__name__}: {e}"
    return index, row


def run_sweep(spec: SweepSpec, workers: int = None) -> SweepTable:
    """
    Evaluate every grid point of ``spec``.

    Points are independent; with more than one worker they run in a process
    pool and are merged back by grid index. Solver failures are recorded in
    the row's status and message columns.
    """
    workers = workers or spec.workers
    points = spec.points()
    tasks = [
        (index, spec.builder, params, list(spec.measures), spec.family_args(), spec.solver,
         spec.theta_nodes, spec.phase_grid)
        for index, params in enumerate(points)
    ]
    logger.info("Running %s sweep over %s grid (%d points, %d workers)",
                spec.builder, 'x'.join(map(str, spec.shape)), len(points), workers)

    results: Dict[int, Dict] = {}
    if workers > 1 and len(tasks) > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            futures = [pool.submit(_evaluate_point, task) for task in tasks]
            for future in as_completed(futures):
                index, row = future.result()
                results[index] = row
    else:
        for task in tasks:
            index, row = _evaluate_point(task)
            results[index] = row

    rows = []
    for index, params in enumerate(points):
        row = results[index]
        if row['status'] != 'ok':
            logger.warning("⚠ Point %d %s failed: %s", index, params, row['message'])
        rows.append({'index': index, **{a.name: params[a.name] for a in spec.axes}, **row})
    frame = pd.DataFrame(rows)

    for column in ('S_max', 'l1'):
        if column in frame:
            frame[f"{column}_scaled"] = MaxAbsScaler().fit_transform(frame[[column]].astype(float)).ravel()
    if 'S_max' in frame and 'l1' in frame:
        frame['blockade'] = (frame['S_max'] <= spec.threshold) & (frame['l1'] > spec.threshold)

    _, _, grid = family_and_z(*spec.family_args(), spec.theta_nodes, spec.phase_grid)
    metadata = {
        'spec': spec.to_dict(),
        'quadrature': {'theta_nodes': spec.theta_nodes or QUADRATURE['theta_nodes'], 'phase_grid': grid},
        'version': VERSION,
        'timestamp': datetime.now(timezone.utc).isoformat(),
        'rows': len(frame),
        'errors': int((frame['status'] != 'ok').sum()),
    }
    logger.info("✓ Sweep finished: %d points, %d errors", metadata['rows'], metadata['errors'])
    return SweepTable(frame=frame, metadata=metadata)


def write_sweep_csv(table: SweepTable, path, sidecar: bool = True) -> Path:
    """CSV with a leading '# ' metadata line; optional JSON sidecar at '<path>.json'."""
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    with open(path, 'w', newline='') as fh:
        fh.write('# ' + json.dumps(table.metadata, sort_keys=True) + '\n')
        table.frame.to_csv(fh, index=False, float_format=SWEEP['float_format'])
    if sidecar:
        with open(Path(f"{path}.json"), 'w') as fh:
            json.dump(table.metadata, fh, indent=2, sort_keys=True)
    logger.info("✓ Wrote %d rows to %s", len(table), path)
    return path


def read_sweep_csv(path) -> pd.DataFrame:
    return pd.read_csv(path, skiprows=1, float_precision='round_trip')
