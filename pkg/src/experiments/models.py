"""Builders for the three case-study models, keyed by name in MODEL_BUILDERS."""
from typing import Callable, Dict

from ..dynamics import Dissipator, HamiltonianTerm, LindbladModel
from ..operators import embed_operator, spin_operators, transition_op
from ..symmetry import chain_generators


def _check_nonnegative(**values) -> None:
    for name, value in values.items():
        if value < 0:
            raise ValueError(f"{name} must be nonnegative, got {value}")


def spin1_model(delta: float, eps: float, gamma_g: float, gamma_d: float) -> LindbladModel:
    """Spin-1 with H = delta Sz + eps Sy, gain S+ Sz and damping S- Sz."""
    _check_nonnegative(gamma_g=gamma_g, gamma_d=gamma_d)
    s = spin_operators(3)
    return LindbladModel(
        dim=3,
        hamiltonian_terms=[
            HamiltonianTerm(s['Sz'], delta, label='Sz'),
            HamiltonianTerm(s['Sy'], eps, drive=True, label='Sy'),
        ],
        dissipators=[
            Dissipator(s['Splus'] @ s['Sz'], gamma_g, label='Splus*Sz'),
            Dissipator(s['Sminus'] @ s['Sz'], gamma_d, label='Sminus*Sz'),
        ],
    )


def spin1_ratio_model(ratio: float, eps_ratio: float, gamma_g: float = 0.1, delta: float = 0.0) -> LindbladModel:
    """Spin-1 parameterized by gamma_g / gamma_d and eps / gamma_g."""
    if ratio <= 0:
        raise ValueError(f"ratio must be positive, got {ratio}")
    return spin1_model(delta, eps_ratio * gamma_g, gamma_g, gamma_g / ratio)


def spin32_model(delta: float, eps: float, g: float, gamma1p: float, gamma2p: float,
                 gamma1d: float, gamma2d: float) -> LindbladModel:
    """
    Spin-3/2 with levels ordered 3/2, 1/2, -1/2, -3/2.

    H = delta Sz + eps Sx + g Sx^2; the four baths pump -3/2 -> -1/2 and
    -1/2 -> 3/2, and damp 3/2 -> 1/2 and 1/2 -> -3/2.
    """
    _check_nonnegative(gamma1p=gamma1p, gamma2p=gamma2p, gamma1d=gamma1d, gamma2d=gamma2d)
    s = spin_operators(4)
    return LindbladModel(
        dim=4,
        hamiltonian_terms=[
            HamiltonianTerm(s['Sz'], delta, label='Sz'),
            HamiltonianTerm(s['Sx'], eps, drive=True, label='Sx'),
            HamiltonianTerm(s['Sx'] @ s['Sx'], g, drive=True, label='Sx2'),
        ],
        dissipators=[
            Dissipator(transition_op(4, 3, 4), gamma1p, label='sigma 3 4'),
            Dissipator(transition_op(4, 1, 3), gamma2p, label='sigma 1 3'),
            Dissipator(transition_op(4, 2, 1), gamma1d, label='sigma 2 1'),
            Dissipator(transition_op(4, 4, 2), gamma2d, label='sigma 4 2'),
        ],
    )


def su3_thermal_model(delta: float, eps: float, gamma_h: float, gamma_c: float,
                      n_h: float, n_c: float) -> LindbladModel:
    """
    Three-level thermal machine: hot bath on the 1-3 transition, cold bath on 1-2,
    drive eps (sigma23 + sigma32). Baths obey detailed balance with occupations n_h, n_c.
    """
    _check_nonnegative(gamma_h=gamma_h, gamma_c=gamma_c, n_h=n_h, n_c=n_c)
    return LindbladModel(
        dim=3,
        hamiltonian_terms=[
            HamiltonianTerm(transition_op(3, 3, 3), delta, label='sigma 3 3'),
            HamiltonianTerm(transition_op(3, 2, 3) + transition_op(3, 3, 2), eps, drive=True, label='sigma 2 3 + h.c.'),
        ],
        dissipators=[
            Dissipator(transition_op(3, 1, 3), gamma_h * (n_h + 1), label='sigma 1 3'),
            Dissipator(transition_op(3, 3, 1), gamma_h * n_h, label='sigma 3 1'),
            Dissipator(transition_op(3, 1, 2), gamma_c * (n_c + 1), label='sigma 1 2'),
            Dissipator(transition_op(3, 2, 1), gamma_c * n_c, label='sigma 2 1'),
        ],
    )


MODEL_BUILDERS: Dict[str, Dict] = {
    'spin1': {
        'builder': spin1_model,
        'params': ['delta', 'eps', 'gamma_g', 'gamma_d'],
        'family': ('spin', 3),
        'description': 'Spin-1 with gain and damping into the middle level, drive eps Sy',
    },
    'spin1_ratio': {
        'builder': spin1_ratio_model,
        'params': ['ratio', 'eps_ratio', 'gamma_g', 'delta'],
        'family': ('spin', 3),
        'description': 'Spin-1 on the gamma_g/gamma_d and eps/gamma_g axes',
    },
    'spin32': {
        'builder': spin32_model,
        'params': ['delta', 'eps', 'g', 'gamma1p', 'gamma2p', 'gamma1d', 'gamma2d'],
        'family': ('spin', 4),
        'description': 'Spin-3/2 with four baths, drives eps Sx and g Sx^2',
    },
    'su3_thermal': {
        'builder': su3_thermal_model,
        'params': ['delta', 'eps', 'gamma_h', 'gamma_c', 'n_h', 'n_c'],
        'family': ('su3', 3),
        'description': 'Three-level thermal machine with hot and cold baths',
    },
}


def get_builder(name: str) -> Callable[..., LindbladModel]:
    if name not in MODEL_BUILDERS:
        raise ValueError(f"Unknown model builder '{name}'. Available: {', '.join(MODEL_BUILDERS)}")
    return MODEL_BUILDERS[name]['builder']


def su4_su2_composite_model() -> LindbladModel:
    """
    Eight levels split into two uncoupled blocks: a fully controllable
    four-level chain on levels 1-4 and a spin-3/2 driven only by Sz and Sx on 5-8.
    """
    upper = [HamiltonianTerm(embed_operator(op, [1, 2, 3, 4], 8), 1.0, label=f"chain{i}")
             for i, op in enumerate(chain_generators(4))]
    s = spin_operators(4)
    lower = [HamiltonianTerm(embed_operator(s[name], [5, 6, 7, 8], 8), 1.0, label=name) for name in ('Sz', 'Sx')]
    return LindbladModel(dim=8, hamiltonian_terms=upper + lower)


def isolated_level_model(dim: int = 8) -> LindbladModel:
    """A (dim - 1)-level chain on levels 2..dim with level 1 carrying only its energy."""
    levels = list(range(2, dim + 1))
    terms = [HamiltonianTerm(transition_op(dim, 1, 1), 1.0, label='sigma 1 1')]
    terms += [HamiltonianTerm(embed_operator(op, levels, dim), 1.0, label=f"chain{i}")
              for i, op in enumerate(chain_generators(dim - 1))]
    return LindbladModel(dim=dim, hamiltonian_terms=terms)


COMPOSITE_MODELS: Dict[str, Dict] = {
    'su4_su2': {
        'builder': su4_su2_composite_model,
        'description': 'Uncoupled four-level chain plus spin-3/2 with {Sz, Sx}',
    },
    'isolated_level': {
        'builder': isolated_level_model,
        'description': 'Eight levels with one level disconnected from a seven-level chain',
    },
}
