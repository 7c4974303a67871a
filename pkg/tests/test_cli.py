import io
import json
import logging
import sys

import pandas as pd
import pytest

from app import build_parser, main
from config.settings import configure_logging
from src.data import get_fixture_path


def model_path(name: str) -> str:
    return str(get_fixture_path(name))


def run_json(capsys, argv):
    code = main(argv)
    return code, json.loads(capsys.readouterr().out)


class TestSymmetry:
    def test_spin1_is_feasible(self, capsys):
        code, report = run_json(capsys, ['symmetry', '--config', model_path('spin1_blockade')])
        assert code == 0
        assert report['feasible'] is True
        assert report['closure_dims'] == [8]

    def test_thermal_machine_is_not(self, capsys):
        code, report = run_json(capsys, ['symmetry', '--config', model_path('su3_thermal')])
        assert code == 0
        assert report['feasible'] is False

    def test_malformed_config(self, capsys, tmp_path):
        path = tmp_path / 'broken.json'
        path.write_text('{"dim": 3,')
        assert main(['symmetry', '--config', str(path)]) == 2
        assert capsys.readouterr().out == ''

    def test_missing_file(self, capsys, tmp_path):
        assert main(['symmetry', '--config', str(tmp_path / 'absent.json')]) == 2
        assert capsys.readouterr().out == ''


class TestSteadyAndSync:
    def test_steady_state_output(self, capsys):
        code, data = run_json(capsys, ['steady', '--config', model_path('spin1_offblockade')])
        assert code == 0
        assert data['diagnostics']['residual'] <= 1e-10

    def test_blockade_sync(self, capsys):
        code, data = run_json(capsys, ['sync', '--config', model_path('spin1_blockade'), '--linear-response'])
        assert code == 0
        assert data['S_max'] <= 1e-9
        assert data['l1'] > 1e-4
        assert data['order'] == 'linear'
        assert data['quadrature'] == {'theta_nodes': 64, 'phase_grid': 12}

    def test_off_blockade_sync(self, capsys):
        code, data = run_json(capsys, ['sync', '--config', model_path('spin1_offblockade')])
        assert code == 0
        assert data['S_max'] > 1e-6

    def test_degenerate_model_is_numerical_failure(self, capsys, tmp_path):
        path = tmp_path / 'dephasing.json'
        path.write_text(json.dumps({'dim': 3, 'dissipators': [{'op': 'Sz', 'rate': 0.5}], 'family': 'spin'}))
        assert main(['steady', '--config', str(path)]) == 1
        assert capsys.readouterr().out == ''

    def test_sync_needs_family(self, capsys):
        assert main(['sync', '--config', model_path('composite_su4_su2')]) == 2

    def test_coarse_phase_grid(self, capsys):
        assert main(['sync', '--config', model_path('spin32_v1'), '--phase-grid', '3']) == 2

    def test_output_file(self, capsys, tmp_path):
        out = tmp_path / 'sync.json'
        assert main(['sync', '--config', model_path('spin1_offblockade'), '--out', str(out)]) == 0
        assert capsys.readouterr().out == ''
        assert json.loads(out.read_text())['S_max'] > 1e-6


class TestQFunction:
    def test_grid_csv(self, capsys):
        code = main(['qfunc', '--config', model_path('spin1_blockade'), '--resolution', '5', '8'])
        assert code == 0
        frame = pd.read_csv(io.StringIO(capsys.readouterr().out))
        assert list(frame.columns) == ['theta', 'phi', 'Q', 'Q_offdiag']
        assert len(frame) == 40
        assert (frame['Q'] >= -1e-12).all()


class TestSweep:
    @pytest.fixture
    def small_sweep(self, tmp_path):
        path = tmp_path / 'sweep.json'
        path.write_text(json.dumps({
            'builder': 'spin1',
            'axes': [{'name': 'gamma_d', 'min': 0.05, 'max': 0.05, 'count': 1}],
            'fixed': {'delta': 0.0, 'eps': 0.01, 'gamma_g': 0.1},
            'measures': ['S_max', 'l1', 'rel_entropy'],
        }))
        return str(path)

    def test_single_point_matches_sync(self, capsys, small_sweep):
        _, sync = run_json(capsys, ['sync', '--config', model_path('spin1_offblockade')])
        assert main(['sweep', '--config', small_sweep]) == 0
        out = capsys.readouterr().out
        assert out.startswith('# ')
        row = pd.read_csv(io.StringIO(out), skiprows=1).iloc[0]
        assert row['S_max'] == pytest.approx(sync['S_max'], rel=1e-12)
        assert row['l1'] == pytest.approx(sync['l1'], rel=1e-12)
        assert row['rel_entropy'] == pytest.approx(sync['rel_entropy'], rel=1e-12)

    def test_writes_csv_and_sidecar(self, capsys, small_sweep, tmp_path):
        out = tmp_path / 'result' / 'sweep.csv'
        assert main(['sweep', '--config', small_sweep, '--out', str(out)]) == 0
        assert out.exists()
        assert json.loads((tmp_path / 'result' / 'sweep.csv.json').read_text())['rows'] == 1

    def test_locus(self, capsys, tmp_path):
        path = tmp_path / 'locus.json'
        path.write_text(json.dumps({
            'builder': 'spin1_ratio',
            'axes': [
                {'name': 'eps_ratio', 'min': 0.1, 'max': 0.1, 'count': 1},
                {'name': 'ratio', 'min': 0.6, 'max': 1.7, 'count': 4},
            ],
            'fixed': {'gamma_g': 0.1, 'delta': 0.0},
            'solver': 'linear_response',
            'locus_group': [1],
        }))
        assert main(['sweep', '--config', str(path), '--locus']) == 0
        frame = pd.read_csv(io.StringIO(capsys.readouterr().out))
        assert frame['ratio'].tolist() == pytest.approx([1.0], abs=1e-10)

    def test_invalid_spec(self, capsys, tmp_path):
        path = tmp_path / 'bad.json'
        path.write_text(json.dumps({'builder': 'spin1', 'axes': []}))
        assert main(['sweep', '--config', str(path)]) == 2


class TestMisc:
    def test_fixture_listing(self, capsys):
        code, listing = run_json(capsys, ['fixtures'])
        assert code == 0
        assert 'spin1_blockade' in listing['models']
        assert 'spin1_ratio' in listing['sweeps']

    def test_verify(self, capsys):
        code, report = run_json(capsys, ['verify'])
        assert code == 0
        assert report['passed'] is True
        assert all(check['status'] == 'pass' for check in report['checks'].values())

    def test_config_is_required(self):
        with pytest.raises(SystemExit):
            build_parser().parse_args(['sync'])

    def test_logging_survives_ascii_console(self, monkeypatch):
        console = io.TextIOWrapper(io.BytesIO(), encoding='ascii')
        monkeypatch.setattr(sys, 'stderr', console)
        configure_logging('INFO')
        handler = logging.getLogger().handlers[0]
        try:
            logging.getLogger('src.experiments').info("✓ %s", 'done')
            handler.flush()
            assert b'\\u2713 done' in console.buffer.getvalue()
        finally:
            logging.getLogger().removeHandler(handler)
