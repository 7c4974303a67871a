import numpy as np
import pandas as pd
import pytest
from numpy.testing import assert_allclose

from src.dynamics import linear_response, solve_steady_state
from src.analysis import l1_coherence, sync_max
from src.experiments import (
    CHECK_FUNCTIONS,
    MODEL_BUILDERS,
    SweepAxis,
    SweepSpec,
    family_and_z,
    get_builder,
    locate_blockade,
    read_sweep_csv,
    run_all_checks,
    run_sweep,
    spin1_ratio_model,
    spin32_model,
    su3_thermal_model,
    write_sweep_csv,
)
import src.experiments.verification as verification

SPIN32_BATHS = {'gamma1p': 0.1, 'gamma2p': 1.0}


def spin1_ratio_spec(**overrides) -> SweepSpec:
    settings = dict(
        builder='spin1_ratio',
        axes=[
            {'name': 'eps_ratio', 'min': 0.01, 'max': 0.2, 'count': 3},
            {'name': 'ratio', 'min': 0.5, 'max': 1.5, 'count': 5},
        ],
        fixed={'gamma_g': 0.1, 'delta': 0.0},
        measures=['S_max', 'l1', 'rel_entropy', 'residuals'],
        solver='linear_response',
        workers=1,
    )
    settings.update(overrides)
    return SweepSpec(**settings)


class TestModels:
    def test_registry_matches_signatures(self):
        for name, entry in MODEL_BUILDERS.items():
            assert get_builder(name) is entry['builder']

    def test_unknown_builder(self):
        with pytest.raises(ValueError):
            get_builder('spin2')

    def test_ratio_model_rates(self):
        model = spin1_ratio_model(2.0, 0.1)
        assert [d.rate for d in model.dissipators] == [0.1, 0.05]
        assert model.hamiltonian_terms[1].coeff == pytest.approx(0.01)

    def test_negative_rate_rejected(self):
        with pytest.raises(ValueError):
            spin32_model(0.0, 0.01, 0.0, -0.1, 1.0, 1.0, 0.02)
        with pytest.raises(ValueError):
            spin1_ratio_model(0.0, 0.1)

    def test_spin32_sx_drive_couples_neighbours_only(self):
        rho = linear_response(spin32_model(0.0, 0.01, 0.0, gamma1d=1.0, gamma2d=0.02, **SPIN32_BATHS)).entries
        for j, k in [(1, 3), (2, 4), (1, 4)]:
            assert abs(rho[j - 1, k - 1]) <= 1e-12
        assert abs(rho[0, 1]) > 1e-5

    def test_spin32_sx2_drive_keeps_parity_blocks(self):
        rho = solve_steady_state(spin32_model(0.0, 0.0, 0.01, gamma1d=0.5, gamma2d=0.1, **SPIN32_BATHS)).entries
        for j, k in [(1, 2), (2, 3), (3, 4), (1, 4)]:
            assert abs(rho[j - 1, k - 1]) <= 1e-10
        assert abs(rho[0, 2]) > 1e-6

    def test_thermal_machine_without_drive_is_diagonal(self):
        rho = solve_steady_state(su3_thermal_model(0.0, 0.0, 0.1, 0.1, 2.0, 0.1))
        assert l1_coherence(rho) <= 1e-10

    @pytest.mark.parametrize("eps", [0.005, 0.02])
    @pytest.mark.parametrize("n_h", [0.5, 3.0])
    def test_thermal_machine_synchronizes(self, su3, eps, n_h):
        family, z = su3
        rho = solve_steady_state(su3_thermal_model(0.0, eps, 0.1, 0.2, n_h, 0.1))
        assert sync_max(family, z, rho).max_abs > 1e-6


class TestSweepSpec:
    def test_axis_values(self):
        assert_allclose(SweepAxis('x', 0.0, 1.0, 5).values(), [0, 0.25, 0.5, 0.75, 1.0])
        assert_allclose(SweepAxis('x', 0.01, 1.0, 3, 'log').values(), [0.01, 0.1, 1.0])
        assert_allclose(SweepAxis('x', 0.3, 0.3, 1).values(), [0.3])

    @pytest.mark.parametrize("kwargs", [
        dict(min=0.0, max=1.0, count=0),
        dict(min=1.0, max=0.0, count=3),
        dict(min=0.0, max=1.0, count=1),
        dict(min=0.0, max=1.0, count=3, scale='log'),
        dict(min=0.1, max=1.0, count=3, scale='cubic'),
    ])
    def test_invalid_axis(self, kwargs):
        with pytest.raises(ValueError):
            SweepAxis('x', **kwargs)

    def test_points_are_row_major(self):
        spec = spin1_ratio_spec()
        points = spec.points()
        assert spec.shape == (3, 5)
        assert len(points) == 15
        assert [p['ratio'] for p in points[:5]] == list(np.linspace(0.5, 1.5, 5))
        assert points[4]['eps_ratio'] == points[0]['eps_ratio'] < points[5]['eps_ratio']
        assert all(p['gamma_g'] == 0.1 for p in points)

    def test_default_family(self):
        assert spin1_ratio_spec().family == 'spin'
        assert spin1_ratio_spec().family_args() == ('spin', 3)

    @pytest.mark.parametrize("overrides", [
        dict(fixed={'gamma_g': 0.1, 'delta': 0.0, 'kappa': 1.0}),
        dict(fixed={'gamma_g': 0.1, 'ratio': 1.0}),
        dict(measures=['S_max', 'purity']),
        dict(solver='euler'),
        dict(workers=0),
        dict(axes=[]),
    ])
    def test_invalid_spec(self, overrides):
        with pytest.raises(ValueError):
            spin1_ratio_spec(**overrides)

    def test_missing_parameter(self):
        with pytest.raises(ValueError, match="Missing"):
            SweepSpec(builder='spin1', axes=[{'name': 'eps', 'min': 0.0, 'max': 0.1, 'count': 2}],
                      fixed={'delta': 0.0})


class TestRunSweep:
    def test_blockade_line(self):
        frame = run_sweep(spin1_ratio_spec()).frame
        assert len(frame) == 15
        assert (frame['status'] == 'ok').all()
        on_line = frame[np.isclose(frame['ratio'], 1.0)]
        assert (on_line['S_max'] <= 1e-9).all()
        assert (on_line['l1'] > 1e-5).all()
        assert on_line['blockade'].all()
        assert not frame.loc[~np.isclose(frame['ratio'], 1.0), 'blockade'].any()
        for _, row in frame.groupby('eps_ratio'):
            assert row.loc[row['S_max'].idxmin(), 'ratio'] == pytest.approx(1.0)
        assert frame['S_max_scaled'].max() == pytest.approx(1.0)
        assert 'residual_1' in frame and 'residual_2' in frame

    def test_single_point_matches_direct_evaluation(self, spin1):
        family, z = spin1
        spec = SweepSpec(
            builder='spin1',
            axes=[{'name': 'gamma_d', 'min': 0.05, 'max': 0.05, 'count': 1}],
            fixed={'delta': 0.0, 'eps': 0.01, 'gamma_g': 0.1},
            measures=['S_max', 'l1'],
        )
        row = run_sweep(spec).frame.iloc[0]
        rho = solve_steady_state(get_builder('spin1')(0.0, 0.01, 0.1, 0.05))
        assert row['S_max'] == pytest.approx(sync_max(family, z, rho).max_abs, rel=1e-12)
        assert row['l1'] == pytest.approx(l1_coherence(rho), rel=1e-12)

    def test_worker_pool_is_deterministic(self):
        serial = run_sweep(spin1_ratio_spec(), workers=1)
        pooled = run_sweep(spin1_ratio_spec(), workers=2)
        pd.testing.assert_frame_equal(serial.frame, pooled.frame)

    def test_failed_points_are_recorded(self):
        spec = SweepSpec(
            builder='spin1',
            axes=[{'name': 'gamma_d', 'min': 0.0, 'max': 0.1, 'count': 2}],
            fixed={'delta': 0.0, 'eps': 0.0, 'gamma_g': 0.1},
            measures=['S_max', 'l1'],
        )
        table = run_sweep(spec)
        assert list(table.frame['status']) == ['error', 'ok']
        assert 'DegenerateSteadyStateError' in table.frame.loc[0, 'message']
        assert table.metadata['errors'] == 1
        assert len(table.ok) == 1

    def test_metadata(self):
        table = run_sweep(spin1_ratio_spec())
        assert table.metadata['rows'] == 15
        assert table.metadata['quadrature']['phase_grid'] == 12
        assert table.metadata['spec']['builder'] == 'spin1_ratio'

    def test_csv_round_trip(self, tmp_path):
        table = run_sweep(spin1_ratio_spec())
        path = write_sweep_csv(table, tmp_path / 'out' / 'sweep.csv')
        assert path.read_text().startswith('# {')
        assert (tmp_path / 'out' / 'sweep.csv.json').exists()
        frame = read_sweep_csv(path)
        assert list(frame.columns) == list(table.frame.columns)
        assert_allclose(frame['S_max'], table.frame['S_max'], rtol=0, atol=0)
        assert_allclose(frame['l1'], table.frame['l1'], rtol=0, atol=0)

    def test_without_sidecar(self, tmp_path):
        write_sweep_csv(run_sweep(spin1_ratio_spec()), tmp_path / 'sweep.csv', sidecar=False)
        assert not (tmp_path / 'sweep.csv.json').exists()

    def test_repeat_runs_write_identical_csv(self, tmp_path):
        first = write_sweep_csv(run_sweep(spin1_ratio_spec()), tmp_path / 'first.csv', sidecar=False)
        second = write_sweep_csv(run_sweep(spin1_ratio_spec(), workers=2), tmp_path / 'second.csv', sidecar=False)
        first_lines = first.read_text().splitlines()
        second_lines = second.read_text().splitlines()
        assert first_lines[0].startswith('# ') and second_lines[0].startswith('# ')
        assert first_lines[1:] == second_lines[1:]

    def test_family_cache(self):
        first = family_and_z('spin', 3, None, None)
        assert family_and_z('spin', 3, None, None) is first
        assert first[2] == 12


class TestLocus:
    def test_spin1_ratio_root(self):
        spec = spin1_ratio_spec(axes=[
            {'name': 'eps_ratio', 'min': 0.05, 'max': 0.05, 'count': 1},
            {'name': 'ratio', 'min': 0.6, 'max': 1.7, 'count': 4},
        ])
        locus = locate_blockade(spec, group=[1])
        assert len(locus) == 1
        assert locus.loc[0, 'ratio'] == pytest.approx(1.0, abs=1e-10)
        assert locus.loc[0, 'S_max'] <= 1e-9
        assert locus.loc[0, 'order'] == 'linear'

    def test_spin32_adjacent_locus(self):
        spec = SweepSpec(
            builder='spin32',
            axes=[
                {'name': 'gamma1d', 'min': 1.0, 'max': 1.0, 'count': 1},
                {'name': 'gamma2d', 'min': 0.01, 'max': 0.05, 'count': 8, 'scale': 'log'},
            ],
            fixed={'delta': 0.0, 'eps': 0.01, 'g': 0.0, **SPIN32_BATHS},
            solver='linear_response',
        )
        locus = locate_blockade(spec, group=[1])
        assert len(locus) == 1
        row = locus.iloc[0]
        assert row['group_residual'] <= 1e-8
        assert row['l1'] >= 1e-5
        assert row['spin32_amplitude_residual'] <= 1e-7 * row['spin32_amplitude_scale']
        assert abs(row['spin32_chi34_error']) <= 1e-6
        assert abs(row['spin32_chi23_error']) <= 1e-6

    def test_spin32_next_nearest_locus(self):
        spec = SweepSpec(
            builder='spin32',
            axes=[
                {'name': 'gamma1d', 'min': 0.5, 'max': 0.5, 'count': 1},
                {'name': 'gamma2d', 'min': 0.08, 'max': 0.12, 'count': 9},
            ],
            fixed={'delta': 0.0, 'eps': 0.0, 'g': 0.01, **SPIN32_BATHS},
            solver='linear_response',
        )
        locus = locate_blockade(spec, group=[2])
        assert len(locus) >= 1
        for _, row in locus.iterrows():
            assert row['group_residual'] <= 1e-8
            assert row['spin32_next_nearest_sum'] <= 1e-7
            assert row['l1'] >= 1e-5

    def test_unknown_group(self):
        spec = spin1_ratio_spec()
        with pytest.raises(ValueError):
            locate_blockade(spec, group=[5])

    def test_no_repeated_group(self):
        spec = SweepSpec(
            builder='su3_thermal',
            axes=[{'name': 'eps', 'min': 0.01, 'max': 0.02, 'count': 2}],
            fixed={'delta': 0.0, 'gamma_h': 0.1, 'gamma_c': 0.1, 'n_h': 2.0, 'n_c': 0.1},
            solver='linear_response',
        )
        with pytest.raises(ValueError):
            locate_blockade(spec)


class TestVerification:
    @pytest.mark.parametrize("name", sorted(CHECK_FUNCTIONS))
    def test_check_passes(self, name):
        result = CHECK_FUNCTIONS[name]()
        assert result['status'] == 'pass', result

    def test_acceptance_checks_registered(self):
        assert {'spin1_sweep_shape', 'spin32_loci', 'su3_no_blockade'} <= set(CHECK_FUNCTIONS)

    def test_spin32_loci_report_roots(self):
        result = CHECK_FUNCTIONS['spin32_loci']()
        assert result['value'] == 0
        assert result['adjacent_gamma2d'][0] == pytest.approx(0.0233, rel=2e-2)
        assert result['next_nearest_gamma2d'][0] == pytest.approx(0.1013, rel=2e-2)

    def test_sweep_shape_column(self):
        result = CHECK_FUNCTIONS['spin1_sweep_shape']()
        assert result['column'] == pytest.approx(1.0)
        assert result['min_l1'] >= 1e-5

    def test_su3_grid_has_no_hidden_points(self):
        result = CHECK_FUNCTIONS['su3_no_blockade']()
        assert result['points'] == 32
        assert result['solved'] > 0
        assert result['value'] == 0

    def test_crashing_check_is_reported(self, monkeypatch):
        def broken():
            raise RuntimeError("boom")

        monkeypatch.setattr(verification, 'CHECK_FUNCTIONS', {'z_matrix': broken})
        results = run_all_checks()
        assert results['z_matrix']['status'] == 'fail'
        assert 'boom' in results['z_matrix']['error']
