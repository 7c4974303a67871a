from .loader import (
    ModelConfig,
    parse_model_config,
    load_model_config,
    model_to_config,
    parse_sweep_spec,
    load_sweep_spec,
    load_sweep_data
)
from .fixtures import (
    MODEL_FIXTURES,
    SWEEP_FIXTURES,
    get_fixture_list,
    get_fixture_info,
    get_fixture_path
)

__all__ = [
    'ModelConfig',
    'parse_model_config',
    'load_model_config',
    'model_to_config',
    'parse_sweep_spec',
    'load_sweep_spec',
    'load_sweep_data',
    'MODEL_FIXTURES',
    'SWEEP_FIXTURES',
    'get_fixture_list',
    'get_fixture_info',
    'get_fixture_path'
]
