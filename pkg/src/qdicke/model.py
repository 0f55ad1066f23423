"""Excitation ladder |s,m> and the interaction-picture Hamiltonian.

The ladder basis ``|s,m> = |s-m>_atoms (x) |m>_field`` is indexed by the
photon number ``m = 0..s``; ``s - m`` atoms are excited. With exact
resonance (omega_f = omega = 1, hbar = 1) and the free part removed, the
Hamiltonian on the ladder is real, symmetric, tridiagonal and has zero
diagonal. The coupling between sites ``m`` and ``m + 1`` is

    g * f(m+1) * sqrt((m+1) (s-m) (N-s+m+1)).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property

import numpy as np
from scipy.linalg import eigh_tridiagonal

from .deformation import DeformationFunction, DeformationSpec, make_deformation

__all__ = [
    "OMEGA_FIELD",
    "OMEGA_ATOM",
    "HBAR",
    "ParameterError",
    "ModelParams",
    "LadderHamiltonian",
    "StateVector",
    "coupling_elements",
    "build_hamiltonian",
    "eigenfrequencies",
]

# resonance and unit conventions; fixed for the whole package
OMEGA_FIELD = 1.0
OMEGA_ATOM = 1.0
HBAR = 1.0


class ParameterError(ValueError):
    """Model parameters violate their constraints."""


@dataclass(frozen=True)
class ModelParams:
    """One physical configuration.

    Attributes
    ----------
    N : int
        Total number of two-level atoms.
    s : int
        Number of atoms initially excited, ``1 <= s <= N``.
    g : float
        Atom-field coupling (inverse time units).
    deformation : DeformationSpec
        Field nonlinearity; defaults to the undeformed oscillator.
    """

    N: int
    s: int
    g: float = 1.0
    deformation: DeformationSpec = field(default_factory=DeformationSpec.identity)

    def __post_init__(self) -> None:
        for name in ("N", "s"):
            value = getattr(self, name)
            if isinstance(value, bool) or int(value) != value:
                raise ParameterError(f"{name} must be an integer, got {value!r}")
            object.__setattr__(self, name, int(value))
        if self.N < 1:
            raise ParameterError(f"N must satisfy N >= 1, got N={self.N}")
        if not 1 <= self.s <= self.N:
            raise ParameterError(f"s must satisfy 1 <= s <= N, got s={self.s}, N={self.N}")
        g = float(self.g)
        if not np.isfinite(g) or g <= 0.0:
            raise ParameterError(f"g must satisfy g > 0, got g={self.g!r}")
        object.__setattr__(self, "g", g)
        if not isinstance(self.deformation, DeformationSpec):
            raise ParameterError("deformation must be a DeformationSpec")

    @classmethod
    def qdeformed(cls, N: int, s: int, q: float, g: float = 1.0) -> ModelParams:
        return cls(N, s, g, DeformationSpec.qdeformed(q))

    @cached_property
    def f(self) -> DeformationFunction:
        return make_deformation(self.deformation)

    @property
    def dim(self) -> int:
        return self.s + 1


@dataclass(frozen=True, eq=False)
class LadderHamiltonian:
    """Real symmetric tridiagonal Hamiltonian with zero diagonal.

    ``off_diagonal[m]`` couples ladder sites ``m`` and ``m + 1``.
    """

    off_diagonal: np.ndarray

    def __post_init__(self) -> None:
        off = np.array(self.off_diagonal, dtype=float).reshape(-1)
        if off.size < 1:
            raise ParameterError("ladder needs at least one coupling")
        if not np.all(np.isfinite(off)) or np.any(off <= 0.0):
            raise ParameterError("ladder couplings must be finite and strictly positive")
        off.setflags(write=False)
        object.__setattr__(self, "off_diagonal", off)

    @property
    def dim(self) -> int:
        return self.off_diagonal.size + 1

    @property
    def diagonal(self) -> np.ndarray:
        return np.zeros(self.dim)

    def dense(self) -> np.ndarray:
        return np.diag(self.off_diagonal, 1) + np.diag(self.off_diagonal, -1)

    def gershgorin_bound(self) -> float:
        """Upper bound on the spectral radius from Gershgorin discs."""
        row = np.zeros(self.dim)
        row[:-1] += self.off_diagonal
        row[1:] += self.off_diagonal
        return float(row.max())

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, LadderHamiltonian):
            return NotImplemented
        return np.array_equal(self.off_diagonal, other.off_diagonal)

    __hash__ = None


@dataclass(frozen=True, eq=False)
class StateVector:
    """Complex amplitudes ``C_m`` over the ladder, indexed by photon number m."""

    amplitudes: np.ndarray

    def __post_init__(self) -> None:
        amps = np.array(self.amplitudes, dtype=complex).reshape(-1)
        if amps.size < 2:
            raise ParameterError("a ladder state has at least two amplitudes")
        if not np.all(np.isfinite(amps)):
            raise ParameterError("state amplitudes must be finite")
        amps.setflags(write=False)
        object.__setattr__(self, "amplitudes", amps)

    @property
    def s(self) -> int:
        return self.amplitudes.size - 1

    @property
    def dim(self) -> int:
        return self.amplitudes.size

    def norm(self) -> float:
        return float(np.sum(np.abs(self.amplitudes) ** 2))

    def norm_error(self) -> float:
        return abs(self.norm() - 1.0)

    def populations(self) -> np.ndarray:
        return np.abs(self.amplitudes) ** 2

    def excitation_order(self) -> np.ndarray:
        """Amplitudes ordered by excited-atom count, ``C_k`` with ``m = s - k``."""
        return self.amplitudes[::-1].copy()

    def __getitem__(self, m: int) -> complex:
        return complex(self.amplitudes[m])

    def __len__(self) -> int:
        return self.amplitudes.size

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, StateVector):
            return NotImplemented
        return np.array_equal(self.amplitudes, other.amplitudes)

    __hash__ = None


def coupling_elements(params: ModelParams) -> np.ndarray:
    """Ladder matrix elements without the factor g.

    ``kappa_m = f(m+1) sqrt((m+1)(s-m)(N-s+m+1))`` for ``m = 0..s-1``.
    """
    N, s, f = params.N, params.s, params.f
    return np.array([f(m + 1) * np.sqrt((m + 1) * (s - m) * (N - s + m + 1)) for m in range(s)])


def build_hamiltonian(params: ModelParams) -> LadderHamiltonian:
    return LadderHamiltonian(params.g * coupling_elements(params))


def eigenfrequencies(h: LadderHamiltonian) -> np.ndarray:
    """All eigenvalues of the ladder Hamiltonian, ascending."""
    return eigh_tridiagonal(h.diagonal, h.off_diagonal, eigvals_only=True)
