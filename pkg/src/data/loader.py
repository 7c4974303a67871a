import json
import logging
import re
import numpy as np
from dataclasses import dataclass, field
from functools import reduce
from pathlib import Path
from typing import Dict, List, Optional, Sequence

import sys
sys.path.insert(0, str(Path(__file__).resolve().parent.parent.parent))

from config.settings import FAMILIES, NAMED_OPERATORS
from ..errors import ConfigError
from ..dynamics import Dissipator, HamiltonianTerm, LindbladModel
from ..operators import Operator, embed_operator, identity, spin_operators, transition_op
from ..phase_space import CoherentFamily, Quadrature, family_by_name, make_quadrature
from ..experiments import SweepSpec

logger = logging.getLogger(__name__)

MODEL_FIELDS = {'dim', 'description', 'hamiltonian', 'dissipators', 'family', 'quadrature'}
TERM_FIELDS = {'op', 'coeff', 'drive', 'label', 'levels'}
DISSIPATOR_FIELDS = {'op', 'rate', 'label', 'levels'}
QUADRATURE_FIELDS = {'theta_nodes', 'phase_grid'}
SWEEP_FIELDS = {'builder', 'axes', 'fixed', 'measures', 'family', 'solver', 'theta_nodes', 'phase_grid',
                'threshold', 'workers', 'description', 'locus_group'}

SIGMA_PATTERN = re.compile(r'^sigma\s+(\d+)\s+(\d+)$')


@dataclass
class ModelConfig:
    model: LindbladModel
    family: Optional[str] = None
    quadrature: Dict = field(default_factory=dict)
    description: str = ''
    source: str = ''

    def coherent_family(self) -> Optional[CoherentFamily]:
        if self.family is None:
            return None
        return family_by_name(self.family, self.model.dim)

    def quadrature_for(self, theta_nodes: int = None, phase_grid: int = None) -> Quadrature:
        family = self.coherent_family()
        if family is None:
            raise ConfigError("Model config has no coherent family", field='family')
        return make_quadrature(
            family,
            theta_nodes or self.quadrature.get('theta_nodes'),
            phase_grid or self.quadrature.get('phase_grid'),
        )


def _line_of(text: Optional[str], path: Sequence) -> Optional[int]:
    # line of the innermost key named in ``path``, following list indices by occurrence
    if not text:
        return None
    position = 0
    key = None
    for part in path:
        if isinstance(part, int):
            if key is None:
                continue
            for _ in range(part + 1):
                found = text.find('{', position + 1)
                if found < 0:
                    break
                position = found
            continue
        key = part
        found = text.find(f'"{part}"', position)
        if found < 0:
            break
        position = found
    return text.count('\n', 0, position) + 1


def _path_name(path: Sequence) -> str:
    name = ''
    for part in path:
        name += f"[{part}]" if isinstance(part, int) else (f".{part}" if name else part)
    return name


def _fail(message: str, path: Sequence, text: Optional[str]):
    raise ConfigError(message, field=_path_name(path), line=_line_of(text, path))


def _check_fields(data, allowed: set, path: Sequence, text: Optional[str]) -> None:
    if not isinstance(data, dict):
        _fail(f"Expected an object, got {type(data).__name__}", path, text)
    unknown = sorted(set(data) - allowed)
    if unknown:
        _fail(f"Unknown field(s) {unknown}; allowed: {sorted(allowed)}", list(path) + [unknown[0]], text)


def _real(value, path: Sequence, text: Optional[str]) -> float:
    if isinstance(value, bool) or not isinstance(value, (int, float)):
        _fail(f"Expected a real number, got {value!r}", path, text)
    return float(value)


def _single_operator(token: str, dim: int, path: Sequence, text: Optional[str]) -> Operator:
    match = SIGMA_PATTERN.match(token)
    if match:
        j, k = int(match.group(1)), int(match.group(2))
        if not (1 <= j <= dim and 1 <= k <= dim):
            _fail(f"Transition '{token}' out of range 1..{dim}", path, text)
        return transition_op(dim, j, k)
    if token == 'I':
        return identity(dim)
    if token in NAMED_OPERATORS:
        if dim < 2:
            _fail(f"Spin operator '{token}' needs dim >= 2", path, text)
        s = spin_operators(dim)
        return s['Sx'] @ s['Sx'] if token == 'Sx2' else s[token]
    _fail(f"Unknown operator '{token}'. Named operators: {', '.join(NAMED_OPERATORS)} or 'sigma j k'", path, text)


def _named_operator(name: str, dim: int, path: Sequence, text: Optional[str]) -> Operator:
    """'A*B' multiplies, 'A + B' adds; tokens are named spin operators, 'I' or 'sigma j k'."""
    total = np.zeros((dim, dim), dtype=np.complex128)
    for summand in name.split('+'):
        factors = [_single_operator(tok.strip(), dim, path, text) for tok in summand.split('*')]
        total = total + reduce(np.matmul, factors)
    return total


def _inline_matrix(value, dim: int, path: Sequence, text: Optional[str]) -> Operator:
    if not isinstance(value, list) or len(value) != dim or any(not isinstance(r, list) or len(r) != dim for r in value):
        _fail(f"Inline matrix must be {dim}x{dim}", path, text)
    matrix = np.zeros((dim, dim), dtype=np.complex128)
    for j, row in enumerate(value):
        for k, entry in enumerate(row):
            if isinstance(entry, list):
                if len(entry) != 2:
                    _fail("Complex entries are [re, im] pairs", path, text)
                matrix[j, k] = _real(entry[0], path, text) + 1j * _real(entry[1], path, text)
            else:
                matrix[j, k] = _real(entry, path, text)
    return matrix


def _parse_operator(entry: Dict, dim: int, path: Sequence, text: Optional[str]) -> Operator:
    if 'op' not in entry:
        _fail("Missing 'op'", list(path) + ['op'], text)
    levels = entry.get('levels')
    block_dim = dim
    if levels is not None:
        if (not isinstance(levels, list) or not levels
                or any(isinstance(x, bool) or not isinstance(x, int) or not 1 <= x <= dim for x in levels)
                or len(set(levels)) != len(levels)):
            _fail(f"'levels' must be distinct integers in 1..{dim}", list(path) + ['levels'], text)
        block_dim = len(levels)

    op_path = list(path) + ['op']
    raw = entry['op']
    if isinstance(raw, str):
        op = _named_operator(raw, block_dim, op_path, text)
    else:
        op = _inline_matrix(raw, block_dim, op_path, text)
    return embed_operator(op, levels, dim) if levels is not None else op


def parse_model_config(data: Dict, text: Optional[str] = None, source: str = '') -> ModelConfig:
    _check_fields(data, MODEL_FIELDS, [], text)
    if 'dim' not in data:
        _fail("Missing 'dim'", ['dim'], text)
    dim = data['dim']
    if isinstance(dim, bool) or not isinstance(dim, int) or dim < 1:
        _fail(f"'dim' must be a positive integer, got {dim!r}", ['dim'], text)

    terms = []
    for i, entry in enumerate(data.get('hamiltonian', [])):
        path = ['hamiltonian', i]
        _check_fields(entry, TERM_FIELDS, path, text)
        op = _parse_operator(entry, dim, path, text)
        coeff = _real(entry.get('coeff', 1.0), path + ['coeff'], text)
        drive = entry.get('drive', False)
        if not isinstance(drive, bool):
            _fail("'drive' must be true or false", path + ['drive'], text)
        label = entry.get('label', entry['op'] if isinstance(entry['op'], str) else f"H{i}")
        terms.append(HamiltonianTerm(op, coeff, drive=drive, label=label))

    dissipators = []
    for i, entry in enumerate(data.get('dissipators', [])):
        path = ['dissipators', i]
        _check_fields(entry, DISSIPATOR_FIELDS, path, text)
        op = _parse_operator(entry, dim, path, text)
        if 'rate' not in entry:
            _fail("Missing 'rate'", path + ['rate'], text)
        rate = _real(entry['rate'], path + ['rate'], text)
        if rate < 0:
            _fail(f"Rate must be nonnegative, got {rate}", path + ['rate'], text)
        label = entry.get('label', entry['op'] if isinstance(entry['op'], str) else f"L{i}")
        dissipators.append(Dissipator(op, rate, label=label))

    family = data.get('family')
    if family is not None and family not in FAMILIES:
        _fail(f"Unknown family '{family}'. Available: {', '.join(FAMILIES)}", ['family'], text)

    quadrature = data.get('quadrature', {})
    _check_fields(quadrature, QUADRATURE_FIELDS, ['quadrature'], text)
    for key, value in quadrature.items():
        if isinstance(value, bool) or not isinstance(value, int) or value < 1:
            _fail(f"'{key}' must be a positive integer", ['quadrature', key], text)

    try:
        model = LindbladModel(dim=dim, hamiltonian_terms=terms, dissipators=dissipators)
        if family is not None:
            family_by_name(family, dim)
    except ValueError as e:
        raise ConfigError(str(e)) from e

    return ModelConfig(model=model, family=family, quadrature=dict(quadrature),
                       description=data.get('description', ''), source=source)


def _read_json(path) -> tuple:
    path = Path(path)
    text = path.read_text(encoding='utf-8')
    try:
        return json.loads(text), text
    except json.JSONDecodeError as e:
        raise ConfigError(f"Invalid JSON: {e.msg}", line=e.lineno) from e


def load_model_config(path) -> ModelConfig:
    data, text = _read_json(path)
    config = parse_model_config(data, text, source=str(path))
    logger.debug("Loaded model config %s (dim %d)", path, config.model.dim)
    return config


def _matrix_to_json(op: Operator) -> List:
    return [[[float(z.real), float(z.imag)] for z in row] for row in np.asarray(op)]


def model_to_config(model: LindbladModel, family: str = None, quadrature: Dict = None,
                    description: str = '') -> Dict:
    """Serialize a model with inline [re, im] matrices; parsing the result reproduces it exactly."""
    data = {
        'dim': model.dim,
        'hamiltonian': [
            {'op': _matrix_to_json(t.op), 'coeff': float(t.coeff), 'drive': t.drive, 'label': t.label}
            for t in model.hamiltonian_terms
        ],
        'dissipators': [
            {'op': _matrix_to_json(d.op), 'rate': float(d.rate), 'label': d.label}
            for d in model.dissipators
        ],
    }
    if description:
        data['description'] = description
    if family is not None:
        data['family'] = family
    if quadrature:
        data['quadrature'] = dict(quadrature)
    return data


def parse_sweep_spec(data: Dict, text: Optional[str] = None) -> SweepSpec:
    _check_fields(data, SWEEP_FIELDS, [], text)
    for i, axis in enumerate(data.get('axes', [])):
        _check_fields(axis, {'name', 'min', 'max', 'count', 'scale'}, ['axes', i], text)
    spec_fields = {k: v for k, v in data.items() if k not in ('description', 'locus_group')}
    try:
        return SweepSpec.from_dict(spec_fields)
    except (TypeError, ValueError) as e:
        raise ConfigError(str(e)) from e


def load_sweep_spec(path) -> SweepSpec:
    data, text = _read_json(path)
    return parse_sweep_spec(data, text)


def load_sweep_data(path) -> Dict:
    """Raw sweep JSON (validated), for callers that need extra keys such as 'locus_group'."""
    data, text = _read_json(path)
    parse_sweep_spec(data, text)
    return data
