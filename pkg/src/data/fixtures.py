from typing import Dict, List, Optional
from pathlib import Path

import sys
sys.path.insert(0, str(Path(__file__).resolve().parent.parent.parent))

from config.settings import MODELS_DIR, SWEEPS_DIR

MODEL_FIXTURES = {
    "spin1_blockade": {
        "file": "spin1_blockade.json",
        "description": "Spin-1 at delta=0, gamma_g=gamma_d=0.1, eps=0.01: blockade with nonzero coherence",
        "family": "spin",
        "expected_feasible": True,
    },
    "spin1_offblockade": {
        "file": "spin1_offblockade.json",
        "description": "Spin-1 with gamma_d=0.05: synchronizes",
        "family": "spin",
        "expected_feasible": True,
    },
    "spin32_v1": {
        "file": "spin32_v1.json",
        "description": "Spin-3/2 under the Sx drive (eps=0.01, g=0), gamma1p=0.1, gamma2p=1",
        "family": "spin",
        "expected_feasible": True,
    },
    "spin32_v2": {
        "file": "spin32_v2.json",
        "description": "Spin-3/2 under the Sx^2 drive (eps=0, g=0.01), gamma1p=0.1, gamma2p=1",
        "family": "spin",
        "expected_feasible": True,
    },
    "su3_thermal": {
        "file": "su3_thermal.json",
        "description": "Three-level thermal machine, hot and cold baths, drive on the upper pair",
        "family": "su3",
        "expected_feasible": False,
    },
    "composite_su4_su2": {
        "file": "composite_su4_su2.json",
        "description": "Eight levels: full su(4) chain on 1-4 and {Sz, Sx} spin-3/2 on 5-8",
        "family": None,
        "expected_feasible": True,
    },
    "composite_isolated_level": {
        "file": "composite_isolated_level.json",
        "description": "Eight levels with level 1 disconnected from a seven-level chain",
        "family": None,
        "expected_feasible": False,
    },
}

SWEEP_FIXTURES = {
    "spin1_ratio": {
        "file": "spin1_ratio.json",
        "description": "gamma_g/gamma_d in [0.5, 2] (41) x eps/gamma_g in [0.01, 0.2] (21)",
    },
    "spin32_v1_locus": {
        "file": "spin32_v1_locus.json",
        "description": "Sx drive, (gamma1d, gamma2d) log grid on [0.01, 1]^2, first-order states",
    },
    "spin32_v2_locus": {
        "file": "spin32_v2_locus.json",
        "description": "Sx^2 drive, (gamma1d, gamma2d) log grid on [0.01, 1]^2, first-order states",
    },
    "su3_thermal_grid": {
        "file": "su3_thermal_grid.json",
        "description": "Thermal machine over eps x n_h x gamma_c",
    },
}


def get_fixture_list(kind: str = 'model') -> List[str]:
    return list(_registry(kind).keys())


def get_fixture_info(name: str, kind: str = 'model') -> Optional[Dict]:
    return _registry(kind).get(name)


def get_fixture_path(name: str, kind: str = 'model') -> Path:
    info = get_fixture_info(name, kind)
    if info is None:
        raise ValueError(f"Unknown {kind} fixture '{name}'. Available: {', '.join(get_fixture_list(kind))}")
    base = MODELS_DIR if kind == 'model' else SWEEPS_DIR
    return base / info['file']


def _registry(kind: str) -> Dict:
    if kind == 'model':
        return MODEL_FIXTURES
    if kind == 'sweep':
        return SWEEP_FIXTURES
    raise ValueError(f"Fixture kind must be 'model' or 'sweep', got '{kind}'")
