import json

import numpy as np
import pytest
from numpy.testing import assert_allclose

from src.errors import ConfigError
from src.dynamics import build_liouvillian
from src.operators import spin_operators
from src.data import (
    MODEL_FIXTURES,
    SWEEP_FIXTURES,
    get_fixture_info,
    get_fixture_list,
    get_fixture_path,
    load_model_config,
    load_sweep_data,
    load_sweep_spec,
    model_to_config,
    parse_model_config,
    parse_sweep_spec,
)
from src.experiments import spin1_model, spin32_model
from src.symmetry import analyze


def write_json(tmp_path, text: str):
    path = tmp_path / 'config.json'
    path.write_text(text)
    return path


class TestModelFixtures:
    @pytest.mark.parametrize("name", sorted(MODEL_FIXTURES))
    def test_fixture_parses(self, name):
        config = load_model_config(get_fixture_path(name))
        assert config.family == MODEL_FIXTURES[name]['family']
        assert config.description

    @pytest.mark.parametrize("name", sorted(MODEL_FIXTURES))
    def test_fixture_feasibility(self, name):
        config = load_model_config(get_fixture_path(name))
        report = analyze(config.model, config.coherent_family())
        assert report.feasible == MODEL_FIXTURES[name]['expected_feasible']

    def test_blockade_fixture_matches_builder(self):
        config = load_model_config(get_fixture_path('spin1_blockade'))
        assert_allclose(build_liouvillian(config.model), build_liouvillian(spin1_model(0.0, 0.01, 0.1, 0.1)),
                        atol=1e-15)

    def test_quadrature_settings(self):
        config = load_model_config(get_fixture_path('spin1_blockade'))
        quad = config.quadrature_for()
        assert (quad.theta_nodes, quad.phase_grid) == (64, 12)
        assert config.quadrature_for(phase_grid=16).phase_grid == 16

    def test_composite_has_no_family(self):
        config = load_model_config(get_fixture_path('composite_su4_su2'))
        assert config.coherent_family() is None
        with pytest.raises(ConfigError):
            config.quadrature_for()


class TestOperatorSyntax:
    def test_products_and_sums(self):
        config = parse_model_config({
            'dim': 3,
            'hamiltonian': [{'op': 'sigma 2 3 + sigma 3 2'}],
            'dissipators': [{'op': 'Splus*Sz', 'rate': 0.1}],
        })
        s = spin_operators(3)
        h = config.model.hamiltonian_terms[0]
        assert h.coeff == 1.0 and not h.drive
        assert_allclose(h.op, [[0, 0, 0], [0, 0, 1], [0, 1, 0]])
        assert_allclose(config.model.dissipators[0].op, s['Splus'] @ s['Sz'])
        assert config.model.dissipators[0].label == 'Splus*Sz'

    def test_levels_embedding(self):
        config = parse_model_config({'dim': 4, 'hamiltonian': [{'op': 'Sx', 'levels': [2, 4]}]})
        op = config.model.hamiltonian_terms[0].op
        assert op[1, 3] == pytest.approx(0.5)
        assert op[3, 1] == pytest.approx(0.5)
        assert np.count_nonzero(op) == 2

    def test_inline_complex_matrix(self):
        config = parse_model_config({'dim': 2, 'hamiltonian': [{'op': [[0, [0, -1]], [[0, 1], 0]]}]})
        assert_allclose(config.model.hamiltonian_terms[0].op, [[0, -1j], [1j, 0]])

    def test_round_trip(self):
        model = spin32_model(0.2, 0.01, 0.003, 0.1, 1.0, 0.5, 0.02)
        data = json.loads(json.dumps(model_to_config(model, family='spin', quadrature={'theta_nodes': 32})))
        config = parse_model_config(data)
        assert config.family == 'spin'
        assert config.quadrature == {'theta_nodes': 32}
        for original, parsed in zip(model.hamiltonian_terms, config.model.hamiltonian_terms):
            assert_allclose(parsed.op, original.op, rtol=0, atol=0)
            assert (parsed.coeff, parsed.drive, parsed.label) == (original.coeff, original.drive, original.label)
        for original, parsed in zip(model.dissipators, config.model.dissipators):
            assert_allclose(parsed.op, original.op, rtol=0, atol=0)
            assert (parsed.rate, parsed.label) == (original.rate, original.label)


class TestConfigErrors:
    def test_unknown_field_reports_line(self, tmp_path):
        text = '\n'.join([
            '{',
            '  "dim": 3,',
            '  "hamiltonian": [',
            '    {"op": "Sz", "coeff": 1.0},',
            '    {"op": "Sx", "coef": 0.5}',
            '  ]',
            '}',
        ])
        with pytest.raises(ConfigError) as info:
            load_model_config(write_json(tmp_path, text))
        assert info.value.field == 'hamiltonian[1].coef'
        assert info.value.line == 5

    def test_malformed_json(self, tmp_path):
        with pytest.raises(ConfigError, match="Invalid JSON") as info:
            load_model_config(write_json(tmp_path, '{\n  "dim": 3,\n  "hamiltonian": [\n}'))
        assert info.value.line is not None

    @pytest.mark.parametrize("data, field", [
        ({'hamiltonian': []}, 'dim'),
        ({'dim': 0}, 'dim'),
        ({'dim': 3, 'hamiltonian': [{'op': 'Sq'}]}, 'hamiltonian[0].op'),
        ({'dim': 3, 'hamiltonian': [{'op': 'sigma 1 4'}]}, 'hamiltonian[0].op'),
        ({'dim': 3, 'hamiltonian': [{'op': 'Sz', 'drive': 'yes'}]}, 'hamiltonian[0].drive'),
        ({'dim': 3, 'hamiltonian': [{'op': 'Sz', 'levels': [0, 1]}]}, 'hamiltonian[0].levels'),
        ({'dim': 3, 'dissipators': [{'op': 'Sminus', 'rate': -0.1}]}, 'dissipators[0].rate'),
        ({'dim': 3, 'dissipators': [{'op': 'Sminus'}]}, 'dissipators[0].rate'),
        ({'dim': 3, 'family': 'heisenberg'}, 'family'),
        ({'dim': 3, 'quadrature': {'theta_nodes': 0}}, 'quadrature.theta_nodes'),
    ])
    def test_invalid_model(self, data, field):
        with pytest.raises(ConfigError) as info:
            parse_model_config(data)
        assert info.value.field == field

    def test_family_dimension_mismatch(self):
        with pytest.raises(ConfigError):
            parse_model_config({'dim': 4, 'family': 'su3'})

    def test_is_value_error(self):
        with pytest.raises(ValueError):
            parse_model_config({'dim': 3, 'bogus': 1})


class TestSweepFixtures:
    @pytest.mark.parametrize("name", sorted(SWEEP_FIXTURES))
    def test_fixture_parses(self, name):
        spec = load_sweep_spec(get_fixture_path(name, 'sweep'))
        assert len(spec.points()) == int(np.prod(spec.shape))

    def test_ratio_grid(self):
        spec = load_sweep_spec(get_fixture_path('spin1_ratio', 'sweep'))
        assert spec.shape == (21, 41)
        assert spec.solver == 'linear_response'
        ratios = spec.axes[1].values()
        assert ratios[np.argmin(np.abs(ratios - 1.0))] == pytest.approx(0.9875)

    def test_raw_data_keeps_locus_group(self):
        assert load_sweep_data(get_fixture_path('spin32_v2_locus', 'sweep'))['locus_group'] == [2]

    def test_invalid_sweep(self):
        base = {'builder': 'spin1', 'axes': [{'name': 'eps', 'min': 0.0, 'max': 0.1, 'count': 2}],
                'fixed': {'delta': 0.0, 'gamma_g': 0.1, 'gamma_d': 0.1}}
        parse_sweep_spec(base)
        with pytest.raises(ConfigError):
            parse_sweep_spec({**base, 'builder': 'spin7'})
        with pytest.raises(ConfigError):
            parse_sweep_spec({**base, 'axes': [{'name': 'eps', 'min': 0.0, 'max': 0.1, 'count': 2, 'step': 1}]})
        with pytest.raises(ConfigError):
            parse_sweep_spec({**base, 'grid': 'fine'})


class TestFixtureRegistry:
    def test_paths_exist(self):
        for kind in ('model', 'sweep'):
            for name in get_fixture_list(kind):
                assert get_fixture_path(name, kind).exists()

    def test_info(self):
        assert get_fixture_info('su3_thermal')['family'] == 'su3'
        assert get_fixture_info('nonexistent') is None

    def test_unknown_names(self):
        with pytest.raises(ValueError):
            get_fixture_path('nonexistent')
        with pytest.raises(ValueError):
            get_fixture_list('table')
