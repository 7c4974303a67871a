import sys
from pathlib import Path

import numpy as np
import pytest

sys.path.insert(0, str(Path(__file__).resolve().parent.parent))

from src.phase_space import make_spin_family, make_su3_family
from src.analysis import z_matrix


def hermitian_unit_trace(dim: int, rng: np.random.Generator) -> np.ndarray:
    a = rng.normal(size=(dim, dim)) + 1j * rng.normal(size=(dim, dim))
    h = (a + a.conj().T) / 2
    return h + (1 - np.trace(h).real) / dim * np.eye(dim)


def random_density_matrix(dim: int, rng: np.random.Generator) -> np.ndarray:
    a = rng.normal(size=(dim, dim)) + 1j * rng.normal(size=(dim, dim))
    rho = a @ a.conj().T
    return rho / np.trace(rho)


@pytest.fixture
def rng():
    return np.random.default_rng(1234)


@pytest.fixture(scope="session")
def spin1():
    family = make_spin_family(3)
    return family, z_matrix(family)


@pytest.fixture(scope="session")
def spin32():
    family = make_spin_family(4)
    return family, z_matrix(family)


@pytest.fixture(scope="session")
def su3():
    family = make_su3_family()
    return family, z_matrix(family)
