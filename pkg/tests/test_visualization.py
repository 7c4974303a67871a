import numpy as np
import pandas as pd
import pytest
from numpy.testing import assert_allclose

from conftest import random_density_matrix
from src.dynamics import linear_response
from src.analysis import sync_measure
from src.experiments import spin1_model
from src.phase_space import make_spin_family, make_su3_family
from src.visualization import offdiag_theta_integral, qfunc_grid, sweep_heatmap


class TestQFunctionGrid:
    def test_spin_grid_layout(self):
        family = make_spin_family(3)
        frame = qfunc_grid(family, np.eye(3) / 3, n_theta=4, n_phi=6)
        assert list(frame.columns) == ['theta', 'phi', 'Q', 'Q_offdiag']
        assert len(frame) == 24
        assert frame['theta'].iloc[0] == 0.0 and frame['theta'].iloc[-1] == pytest.approx(np.pi)
        assert frame['phi'].max() < 2 * np.pi
        assert_allclose(frame['Q'], family.norm_const / 3, atol=1e-14)

    def test_su3_grid_layout(self, rng):
        frame = qfunc_grid(make_su3_family(), random_density_matrix(3, rng), n_theta=3, n_phi=4)
        assert list(frame.columns) == ['theta1', 'theta2', 'phi1', 'phi2', 'Q', 'Q_offdiag']
        assert len(frame) == 3 * 3 * 4 * 4
        assert (frame['Q'] >= -1e-12).all()


class TestOffdiagIntegral:
    def test_matches_sync_measure(self, spin1, rng):
        family, z = spin1
        rho = random_density_matrix(3, rng)
        phis = np.linspace(0, 2 * np.pi, 7)
        frame = offdiag_theta_integral(family, rho, phis)
        assert_allclose(frame['offdiag_integral'], sync_measure(family, z, rho, phis), atol=1e-10)

    def test_vanishes_at_blockade(self):
        family = make_spin_family(3)
        rho = linear_response(spin1_model(0.0, 0.01, 0.1, 0.1))
        frame = offdiag_theta_integral(family, rho, np.linspace(0, 2 * np.pi, 13))
        assert np.max(np.abs(frame['offdiag_integral'])) <= 1e-10

    def test_su3_columns(self, rng):
        frame = offdiag_theta_integral(make_su3_family(), random_density_matrix(3, rng), ([0.0, 1.0], [0.5, 2.0]))
        assert list(frame.columns) == ['phi1', 'phi2', 'offdiag_integral']
        assert len(frame) == 2


class TestSweepHeatmap:
    def test_pivot(self):
        frame = pd.DataFrame({
            'eps': [0.1, 0.1, 0.2, 0.2],
            'ratio': [1.0, 2.0, 1.0, 2.0],
            'S_max': [0.0, 0.3, 0.0, 0.6],
        })
        panel = sweep_heatmap(frame, 'S_max', index='eps', columns='ratio')
        assert panel.shape == (2, 2)
        assert panel.loc[0.2, 2.0] == 0.6

    def test_missing_column(self):
        with pytest.raises(ValueError):
            sweep_heatmap(pd.DataFrame({'eps': [0.1]}), 'S_max', index='eps', columns='ratio')
