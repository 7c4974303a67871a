import numpy as np
from dataclasses import dataclass, field
from typing import Dict, List, Optional
from pathlib import Path

import sys
sys.path.insert(0, str(Path(__file__).resolve().parent.parent.parent))

from config.settings import TOLERANCES
from ..errors import DimensionMismatchError, InvalidDimensionError, PositivityError
from ..operators import Operator, as_operator


@dataclass(frozen=True, eq=False)
class HamiltonianTerm:
    op: Operator
    coeff: float
    drive: bool = False
    label: str = ''


@dataclass(frozen=True, eq=False)
class Dissipator:
    op: Operator
    rate: float
    label: str = ''


@dataclass(frozen=True, eq=False)
class LindbladModel:
    """
    Hamiltonian terms (Hermitian operator times real coefficient) plus
    jump operators with nonnegative rates. Terms flagged ``drive`` form the
    coherent drive; the remaining terms are the bare Hamiltonian.
    """
    dim: int
    hamiltonian_terms: List[HamiltonianTerm] = field(default_factory=list)
    dissipators: List[Dissipator] = field(default_factory=list)

    def __post_init__(self):
        if self.dim < 1:
            raise InvalidDimensionError(f"Model dimension must be positive, got {self.dim}")
        tol = TOLERANCES['hermitian']
        for term in self.hamiltonian_terms:
            op = as_operator(term.op)
            if op.shape[0] != self.dim:
                raise DimensionMismatchError(
                    f"Hamiltonian term '{term.label}' has dim {op.shape[0]}, model dim is {self.dim}"
                )
            if np.max(np.abs(op - op.conj().T)) > tol:
                raise ValueError(f"Hamiltonian term '{term.label}' is not Hermitian")
            if not np.isfinite(term.coeff):
                raise ValueError(f"Hamiltonian term '{term.label}' has a non-finite coefficient")
        for dissipator in self.dissipators:
            op = as_operator(dissipator.op)
            if op.shape[0] != self.dim:
                raise DimensionMismatchError(
                    f"Jump operator '{dissipator.label}' has dim {op.shape[0]}, model dim is {self.dim}"
                )
            if not np.isfinite(dissipator.rate) or dissipator.rate < 0:
                raise ValueError(f"Rate of '{dissipator.label}' must be nonnegative, got {dissipator.rate}")

    def hamiltonian(self, include_drives: bool = True) -> Operator:
        h = np.zeros((self.dim, self.dim), dtype=np.complex128)
        for term in self.hamiltonian_terms:
            if term.drive and not include_drives:
                continue
            h = h + term.coeff * as_operator(term.op)
        return h

    def drive_hamiltonian(self) -> Operator:
        h = np.zeros((self.dim, self.dim), dtype=np.complex128)
        for term in self.hamiltonian_terms:
            if term.drive:
                h = h + term.coeff * as_operator(term.op)
        return h

    @property
    def has_drive(self) -> bool:
        return any(term.drive and term.coeff != 0 for term in self.hamiltonian_terms)

    def bare(self) -> 'LindbladModel':
        return LindbladModel(
            dim=self.dim,
            hamiltonian_terms=[t for t in self.hamiltonian_terms if not t.drive],
            dissipators=list(self.dissipators),
        )

    @property
    def max_rate(self) -> float:
        rates = [d.rate for d in self.dissipators]
        return max(rates) if rates else 0.0


@dataclass(frozen=True, eq=False)
class DensityMatrix:
    """
    Density matrix with polar accessors rho_jk = R_jk * exp(-i chi_jk), levels 1-based.

    ``order`` is 'exact' for null-space or integrated states and 'linear' for
    first-order drive expansions, which are Hermitian and unit-trace but need not
    be positive.
    """
    entries: np.ndarray
    order: str = 'exact'
    diagnostics: Dict = field(default_factory=dict, compare=False)

    @classmethod
    def from_array(cls, matrix, order: str = 'exact', validate: bool = True,
                   diagnostics: Optional[Dict] = None) -> 'DensityMatrix':
        entries = as_operator(matrix).copy()
        entries.setflags(write=False)
        rho = cls(entries=entries, order=order, diagnostics=diagnostics or {})
        if validate:
            rho.validate(check_positivity=(order == 'exact'))
        return rho

    @property
    def dim(self) -> int:
        return self.entries.shape[0]

    def R(self, j: int, k: int) -> float:
        return float(abs(self.entries[j - 1, k - 1]))

    def chi(self, j: int, k: int) -> float:
        return float(-np.angle(self.entries[j - 1, k - 1]))

    def eigenvalues(self) -> np.ndarray:
        return np.linalg.eigvalsh((self.entries + self.entries.conj().T) / 2)

    def diagonal_part(self) -> np.ndarray:
        return np.diag(np.diag(self.entries))

    def offdiagonal_part(self) -> np.ndarray:
        return self.entries - self.diagonal_part()

    def is_diagonal(self, tol: float = 1e-12) -> bool:
        return bool(np.max(np.abs(self.offdiagonal_part()), initial=0.0) <= tol)

    def validate(self, check_positivity: bool = True) -> None:
        rho = self.entries
        hermitian_error = np.max(np.abs(rho - rho.conj().T))
        if hermitian_error > TOLERANCES['hermitian']:
            raise ValueError(f"Density matrix is not Hermitian (deviation {hermitian_error:.3e})")
        trace_error = abs(np.trace(rho) - 1.0)
        if trace_error > TOLERANCES['trace']:
            raise ValueError(f"Density matrix trace deviates from 1 by {trace_error:.3e}")
        if check_positivity:
            min_eig = float(self.eigenvalues().min())
            if min_eig < TOLERANCES['min_eigenvalue']:
                raise PositivityError(f"Density matrix has eigenvalue {min_eig:.3e} below tolerance")

    def to_dict(self) -> Dict:
        return {
            'dim': self.dim,
            'order': self.order,
            'entries': [[[float(z.real), float(z.imag)] for z in row] for row in self.entries],
        }
