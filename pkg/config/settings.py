import logging
import sys
from pathlib import Path

BASE_DIR = Path(__file__).resolve().parent.parent
DATA_DIR = BASE_DIR / "data"
MODELS_DIR = DATA_DIR / "models"
SWEEPS_DIR = DATA_DIR / "sweeps"

VERSION = "0.3.0"

TOLERANCES = {
    'hermitian': 1e-10,
    'operator_hermitian': 1e-12,
    'trace': 1e-10,
    'min_eigenvalue': -1e-9,
    'degeneracy_ratio': 1e-8,
    'traceless': 1e-12,
    'residual': 1e-10,
    'orthonormalize': 1e-9,
    'connectivity': 1e-12,
    'entropy_floor': 1e-14,
    'simplex_descent': 1e-8,
    'sync_refine': 1e-10,
    'normalization': 1e-12,
}

QUADRATURE = {
    'theta_nodes': 64,
    'phase_grid_factor': 4,
}

SOLVER = {
    'rk4_dt': 0.1,
    'evolve_check_every': 100,
}

SWEEP = {
    'workers': 1,
    'float_format': '%.17g',
    'threshold': 1e-9,
    'measures': ['S_max', 'l1', 'rel_entropy', 'residuals'],
    'solver': 'steady',
}

EXIT_CODES = {
    'ok': 0,
    'numerical': 1,
    'input': 2,
    'verify_failed': 3,
}

LOGGING = {
    'level': 'INFO',
    'format': '%(asctime)s %(levelname)s %(name)s: %(message)s',
    'datefmt': '%H:%M:%S',
}

NAMED_OPERATORS = ['Sz', 'Sx', 'Sy', 'Sx2', 'Splus', 'Sminus', 'I']

FAMILIES = ['spin', 'su3']


def configure_logging(level: str = None) -> None:
    level = level or LOGGING['level']
    # status marks must not crash a non-UTF-8 console
    reconfigure = getattr(sys.stderr, 'reconfigure', None)
    if reconfigure is not None:
        reconfigure(errors='backslashreplace')
    logging.basicConfig(
        level=getattr(logging, level.upper(), logging.INFO),
        format=LOGGING['format'],
        datefmt=LOGGING['datefmt'],
        stream=sys.stderr,
        force=True,
    )
