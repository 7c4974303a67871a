import logging
import numpy as np
from typing import Callable, Dict, List, Tuple
from pathlib import Path

import sys
sys.path.insert(0, str(Path(__file__).resolve().parent.parent.parent))

from ..dynamics import linear_response, solve_steady_state
from ..phase_space import (
    make_quadrature,
    make_spin_family,
    make_su3_family,
    population_overlaps,
    verify_completeness,
)
from ..analysis import (
    SyncBlock,
    blockade_residual,
    composite_sync,
    composite_sync_max,
    l1_coherence,
    phase_functional_gram,
    sync_max,
    sync_measure,
    sync_measure_direct,
    z_matrix,
)
from ..symmetry import analyze, chain_generators, lie_closure
from ..operators import spin_operators
from .models import isolated_level_model, spin1_model, su3_thermal_model, su4_su2_composite_model
from .sweep import SweepSpec, run_sweep
from .locus import locate_blockade

logger = logging.getLogger(__name__)

CHECKS = {
    "z_matrix": {
        "description": "Population overlaps reproduce the closed-form measure coefficients",
        "metric": "max |2 N z_jk - closed form| over spin-1, spin-3/2 and SU(3)",
        "tolerance": 1e-10,
    },
    "completeness": {
        "description": "Coherent families resolve the identity under the quadrature",
        "metric": "max deviation of the completeness matrix from I, spin dims 2-6 and SU(3)",
        "tolerance": 1e-8,
    },
    "normalization": {
        "description": "N times the population integral of r_j^2 equals (1/2pi)^n_phases",
        "metric": "max deviation over all components",
        "tolerance": 1e-10,
    },
    "oracle": {
        "description": "Coherence-sum measure agrees with direct integration of the Husimi function",
        "metric": "max |S - S_direct| on random Hermitian unit-trace states",
        "tolerance": 1e-10,
    },
    "spin1_blockade": {
        "description": "Spin-1 with equal gain and damping shows blockade with nonzero coherence",
        "metric": "S_max of the first-order state, l1 and the adjacent group residual",
        "tolerance": 1e-9,
    },
    "spin1_off_blockade": {
        "description": "Spin-1 with unequal gain and damping synchronizes",
        "metric": "S_max at gamma_d = gamma_g / 2",
        "tolerance": 1e-6,
    },
    "spin1_sweep_shape": {
        "description": "Spin-1 sweep minimum sits on the gamma_g / gamma_d = 1 column for every drive strength",
        "metric": "rows whose S_max argmin misses the ratio-1 column; min l1 on that column must stay >= 1e-5",
        "tolerance": 0,
    },
    "spin32_loci": {
        "description": "Spin-3/2 blockade loci exist under both drive variants",
        "metric": "count of missing loci (Sx drive: amplitude and chi relations; Sx^2 drive: next-nearest sum)",
        "tolerance": 0,
    },
    "su3_independence": {
        "description": "The three SU(3) coherence harmonics are linearly independent",
        "metric": "rank of the phase-functional Gram matrix",
        "tolerance": 0,
    },
    "su3_no_blockade": {
        "description": "No driven thermal-machine grid point is coherent yet unsynchronized",
        "metric": "grid points with S_max <= 1e-9 and l1 >= 1e-6",
        "tolerance": 0,
    },
    "closure": {
        "description": "Lie closure dimensions of chains, {Sz, Sx} and composite generator sets",
        "metric": "closure dimensions against d^2 - 1, 3, {15, 3} and u(1) + su(7)",
        "tolerance": 0,
    },
    "additivity": {
        "description": "Composite measure is the weighted sum of block measures",
        "metric": "|composite - weighted sum| and |max - sum of block maxima|",
        "tolerance": 1e-12,
    },
    "solver": {
        "description": "Steady states satisfy the master equation and are valid density matrices",
        "metric": "Liouvillian residual, trace error, min eigenvalue",
        "tolerance": 1e-10,
    },
}


def _result(name: str, value: float, passed: bool, **details) -> Dict:
    return {
        'check': name,
        'status': 'pass' if passed else 'fail',
        'value': float(value),
        'tolerance': CHECKS[name]['tolerance'],
        **details,
    }


def _random_state(dim: int, rng: np.random.Generator) -> np.ndarray:
    a = rng.normal(size=(dim, dim)) + 1j * rng.normal(size=(dim, dim))
    h = (a + a.conj().T) / 2
    return h + (1 - np.trace(h).real) / dim * np.eye(dim)


def check_z_matrix(theta_nodes: int = 64) -> Dict:
    expected = {
        'spin1': (make_spin_family(3), {(1, 2): np.pi / (4 * np.sqrt(2)), (2, 3): np.pi / (4 * np.sqrt(2)),
                                        (1, 3): 1 / 3}),
        'spin32': (make_spin_family(4), {(1, 2): 5 * np.sqrt(3) * np.pi / 64, (2, 3): 9 * np.pi / 64,
                                         (3, 4): 5 * np.sqrt(3) * np.pi / 64, (1, 3): np.sqrt(3) / 6,
                                         (2, 4): np.sqrt(3) / 6, (1, 4): 3 * np.pi / 64}),
        'su3': (make_su3_family(), {(1, 2): np.pi / 96, (1, 3): np.pi / 96, (2, 3): np.pi / 96}),
    }
    deviations = {}
    for label, (family, closed) in expected.items():
        z = z_matrix(family, make_quadrature(family, theta_nodes))
        deviations[label] = max(2 * family.norm_const * abs(z.z(j, k) - v) for (j, k), v in closed.items())
    worst = max(deviations.values())
    return _result('z_matrix', worst, worst <= CHECKS['z_matrix']['tolerance'], per_family=deviations)


def check_completeness(theta_nodes: int = 64) -> Dict:
    families = [make_spin_family(d) for d in range(2, 7)] + [make_su3_family()]
    deviations = {f"{f.name}{f.dim}": verify_completeness(f, make_quadrature(f, theta_nodes)) for f in families}
    worst = max(deviations.values())
    return _result('completeness', worst, worst <= CHECKS['completeness']['tolerance'], per_family=deviations)


def check_normalization(theta_nodes: int = 64) -> Dict:
    families = [make_spin_family(d) for d in range(2, 7)] + [make_su3_family()]
    worst = 0.0
    for family in families:
        diag = np.diag(population_overlaps(family, make_quadrature(family, theta_nodes)))
        worst = max(worst, float(np.max(np.abs(family.norm_const * diag - family.phase_constant))))
    return _result('normalization', worst, worst <= CHECKS['normalization']['tolerance'])


def check_oracle(n_states: int = 20, seed: int = 7, theta_nodes: int = 64) -> Dict:
    rng = np.random.default_rng(seed)
    worst = 0.0
    for family in (make_spin_family(3), make_spin_family(4), make_su3_family()):
        quad = make_quadrature(family, theta_nodes)
        z = z_matrix(family, quad)
        for _ in range(n_states):
            rho = _random_state(family.dim, rng)
            phis = rng.uniform(0, 2 * np.pi, size=family.n_phases)
            phis = phis[0] if family.n_phases == 1 else tuple(phis)
            diff = abs(sync_measure(family, z, rho, phis) - sync_measure_direct(family, rho, phis, quad))
            worst = max(worst, diff)
    return _result('oracle', worst, worst <= CHECKS['oracle']['tolerance'], states_per_family=n_states)


def check_spin1_blockade() -> Dict:
    family = make_spin_family(3)
    z = z_matrix(family)
    rho = linear_response(spin1_model(0.0, 0.01, 0.1, 0.1))
    s_max = sync_max(family, z, rho).max_abs
    l1 = l1_coherence(rho)
    residual = max(g['residual'] for g in blockade_residual(family, rho, z))
    tol = CHECKS['spin1_blockade']['tolerance']
    return _result('spin1_blockade', s_max, s_max <= tol and l1 >= 1e-4 and residual <= tol,
                   l1=l1, group_residual=residual)


def check_spin1_off_blockade() -> Dict:
    family = make_spin_family(3)
    rho = solve_steady_state(spin1_model(0.0, 0.01, 0.1, 0.05))
    s_max = sync_max(family, z_matrix(family), rho).max_abs
    return _result('spin1_off_blockade', s_max, s_max >= CHECKS['spin1_off_blockade']['tolerance'])


def check_su3_independence() -> Dict:
    family = make_su3_family()
    gram = phase_functional_gram(family)
    rho = solve_steady_state(su3_thermal_model(0.0, 0.01, 0.1, 0.1, 2.0, 0.1))
    s_max = sync_max(family, z_matrix(family), rho).max_abs
    return _result('su3_independence', gram['rank'], gram['full_rank'] and s_max > 0,
                   condition=gram['condition'], S_max=s_max, l1=l1_coherence(rho))


def check_spin1_sweep_shape() -> Dict:
    spec = SweepSpec(
        builder='spin1_ratio',
        axes=[
            {'name': 'eps_ratio', 'min': 0.01, 'max': 0.2, 'count': 5},
            {'name': 'ratio', 'min': 0.5, 'max': 2.0, 'count': 7},
        ],
        fixed={'gamma_g': 0.1, 'delta': 0.0},
        measures=['S_max', 'l1'],
        solver='linear_response',
    )
    frame = run_sweep(spec, workers=1).frame
    ratios = np.unique(frame['ratio'])
    column = ratios[np.argmin(np.abs(ratios - 1.0))]

    misses = 0
    for _, row in frame.groupby('eps_ratio'):
        if row.loc[row['S_max'].idxmin(), 'ratio'] != column:
            misses += 1
    min_l1 = float(frame.loc[frame['ratio'] == column, 'l1'].min())
    ok = bool((frame['status'] == 'ok').all())
    return _result('spin1_sweep_shape', misses, ok and misses == 0 and min_l1 >= 1e-5,
                   column=float(column), min_l1=min_l1, rows=len(frame))


def _spin32_locus(gamma1d: float, gamma2d: Tuple[float, float], eps: float, g: float, group: List[int]):
    spec = SweepSpec(
        builder='spin32',
        axes=[
            {'name': 'gamma1d', 'min': gamma1d, 'max': gamma1d, 'count': 1},
            {'name': 'gamma2d', 'min': gamma2d[0], 'max': gamma2d[1], 'count': 8, 'scale': 'log'},
        ],
        fixed={'delta': 0.0, 'eps': eps, 'g': g, 'gamma1p': 0.1, 'gamma2p': 1.0},
        solver='linear_response',
    )
    return locate_blockade(spec, group=group)


def check_spin32_loci() -> Dict:
    adjacent = _spin32_locus(1.0, (0.01, 0.05), eps=0.01, g=0.0, group=[1])
    next_nearest = _spin32_locus(0.5, (0.08, 0.12), eps=0.0, g=0.01, group=[2])

    v1 = [] if adjacent.empty else adjacent[
        (adjacent['spin32_amplitude_residual'] <= 1e-7 * adjacent['spin32_amplitude_scale'])
        & (adjacent['spin32_chi34_error'] <= 1e-6)
        & (adjacent['spin32_chi23_error'] <= 1e-6)
        & (adjacent['l1'] >= 1e-5)
    ]['gamma2d'].tolist()
    v2 = [] if next_nearest.empty else next_nearest[
        (next_nearest['group_residual'] <= 1e-8)
        & (next_nearest['spin32_next_nearest_sum'] <= 1e-8)
        & (next_nearest['l1'] >= 1e-5)
    ]['gamma2d'].tolist()

    missing = int(not v1) + int(not v2)
    return _result('spin32_loci', missing, missing == 0, adjacent_gamma2d=v1, next_nearest_gamma2d=v2)


def check_su3_no_blockade() -> Dict:
    spec = SweepSpec(
        builder='su3_thermal',
        axes=[
            {'name': 'eps', 'min': 0.001, 'max': 0.05, 'count': 4},
            {'name': 'n_h', 'min': 0.1, 'max': 5.0, 'count': 4},
            {'name': 'gamma_c', 'min': 0.05, 'max': 0.5, 'count': 2},
        ],
        fixed={'delta': 0.0, 'gamma_h': 0.1, 'n_c': 0.1},
        measures=['S_max', 'l1'],
        solver='steady',
    )
    frame = run_sweep(spec, workers=1).frame
    solved = frame[frame['status'] == 'ok']
    hidden = int(((solved['S_max'] <= 1e-9) & (solved['l1'] >= 1e-6)).sum())
    gram = phase_functional_gram(make_su3_family())
    passed = hidden == 0 and len(solved) > 0 and gram['full_rank']
    return _result('su3_no_blockade', hidden, passed, points=len(frame), solved=len(solved),
                   min_S_max=float(solved['S_max'].min()) if len(solved) else None,
                   gram_condition=gram['condition'])


def check_closure() -> Dict:
    dims = {f"chain{d}": lie_closure(chain_generators(d))[0] for d in range(2, 7)}
    s = spin_operators(4)
    dims['Sz_Sx'] = lie_closure([s['Sz'], s['Sx']])[0]
    composite = analyze(su4_su2_composite_model())
    isolated = analyze(isolated_level_model())

    passed = (
        all(dims[f"chain{d}"] == d * d - 1 for d in range(2, 7))
        and dims['Sz_Sx'] == 3
        and composite.closure_dims == [15, 3]
        and composite.blockade_feasible == [False, True]
        and isolated.block_dims == [1, 7]
        and isolated.labels == ['u(1)', 'full su(7)']
    )
    return _result('closure', 0 if passed else 1, passed, closure_dims=dims,
                   composite=composite.to_dict(), isolated=isolated.to_dict())


def check_additivity(seed: int = 11) -> Dict:
    rng = np.random.default_rng(seed)
    spin1, spin32 = make_spin_family(3), make_spin_family(4)
    z1, z2 = z_matrix(spin1), z_matrix(spin32)
    rho1, rho2 = _random_state(3, rng), _random_state(4, rng)
    blocks = [SyncBlock(spin1, z1, rho1, 0.3), SyncBlock(spin32, z2, rho2, 0.7)]

    phis = [rng.uniform(0, 2 * np.pi), rng.uniform(0, 2 * np.pi)]
    total = composite_sync(blocks, phis)
    expected = 0.3 * sync_measure(spin1, z1, rho1, phis[0]) + 0.7 * sync_measure(spin32, z2, rho2, phis[1])
    maxima = composite_sync_max(blocks)
    block_sum = 0.3 * sync_max(spin1, z1, rho1).max_value + 0.7 * sync_max(spin32, z2, rho2).max_value

    worst = max(abs(total - expected), abs(maxima['max_value'] - block_sum))
    return _result('additivity', worst, worst <= CHECKS['additivity']['tolerance'])


def check_solver() -> Dict:
    states = [
        solve_steady_state(spin1_model(0.0, 0.01, 0.1, 0.1)),
        solve_steady_state(spin1_model(0.0, 0.01, 0.1, 0.05)),
        solve_steady_state(su3_thermal_model(0.0, 0.01, 0.1, 0.1, 2.0, 0.1)),
    ]
    residual = max(rho.diagnostics['residual'] for rho in states)
    trace_error = max(rho.diagnostics['trace_error'] for rho in states)
    min_eig = min(rho.diagnostics['min_eigenvalue'] for rho in states)
    tol = CHECKS['solver']['tolerance']
    return _result('solver', residual, residual <= tol and trace_error <= tol and min_eig >= -1e-9,
                   trace_error=trace_error, min_eigenvalue=min_eig)


CHECK_FUNCTIONS: Dict[str, Callable[[], Dict]] = {
    'z_matrix': check_z_matrix,
    'completeness': check_completeness,
    'normalization': check_normalization,
    'oracle': check_oracle,
    'spin1_blockade': check_spin1_blockade,
    'spin1_off_blockade': check_spin1_off_blockade,
    'spin1_sweep_shape': check_spin1_sweep_shape,
    'spin32_loci': check_spin32_loci,
    'su3_independence': check_su3_independence,
    'su3_no_blockade': check_su3_no_blockade,
    'closure': check_closure,
    'additivity': check_additivity,
    'solver': check_solver,
}


def run_all_checks() -> Dict[str, Dict]:
    results = {}
    for name, check in CHECK_FUNCTIONS.items():
        try:
            results[name] = check()
        except Exception as e:
            results[name] = {'check': name, 'status': 'fail', 'error': f"{type(e).__name__}: {e}"}
        status = results[name]['status']
        mark = '✓' if status == 'pass' else '✗'
        logger.info("%s %s: %s", mark, name, results[name].get('value', results[name].get('error')))
    return results
