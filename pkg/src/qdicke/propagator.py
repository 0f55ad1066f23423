"""Numerical propagation of ``i dC/dt = H C`` on the ladder, for any s.

Two independent methods are provided:

* ``Method.EIGEN`` diagonalizes the tridiagonal Hamiltonian once and applies
  the phase rotation ``exp(-i lambda_k t)`` in the eigenbasis. Exact up to
  round-off.
* ``Method.RK4`` is classical fixed-step fourth-order Runge-Kutta. The norm
  is never renormalized, so its drift can be inspected.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from functools import cached_property

import numpy as np
from scipy.linalg import eigh_tridiagonal

from .model import LadderHamiltonian, ModelParams, ParameterError, StateVector

__all__ = [
    "Method",
    "TimeGrid",
    "Trajectory",
    "RK4_MAX_STEP",
    "initial_state",
    "evolve",
    "propagate",
    "rk4_substeps",
]

#: stability guard for RK4, in units of ``dt * ||H||`` (Gershgorin bound)
RK4_MAX_STEP = 0.1


class Method(str, enum.Enum):
    EIGEN = "eigen"
    RK4 = "rk4"


@dataclass(frozen=True)
class TimeGrid:
    """Uniform grid of ``n_points`` times from ``t_start`` to ``t_end``.

    A single-point grid with ``t_end == t_start`` is allowed and denotes
    zero elapsed time.
    """

    t_start: float
    t_end: float
    n_points: int

    def __post_init__(self) -> None:
        t0, t1 = float(self.t_start), float(self.t_end)
        if not (math.isfinite(t0) and math.isfinite(t1)):
            raise ParameterError("time grid bounds must be finite")
        n = int(self.n_points)
        if n != self.n_points:
            raise ParameterError(f"n_points must be an integer, got {self.n_points!r}")
        if n == 1:
            if t1 != t0:
                raise ParameterError("a single-point grid needs t_end == t_start")
        elif n < 2:
            raise ParameterError(f"n_points must be >= 2, got {n}")
        elif not t1 > t0:
            raise ParameterError(f"time grid needs t_end > t_start, got [{t0}, {t1}]")
        object.__setattr__(self, "t_start", t0)
        object.__setattr__(self, "t_end", t1)
        object.__setattr__(self, "n_points", n)

    @property
    def dt(self) -> float:
        if self.n_points == 1:
            return 0.0
        return (self.t_end - self.t_start) / (self.n_points - 1)

    @property
    def span(self) -> float:
        return self.t_end - self.t_start

    def times(self) -> np.ndarray:
        return np.linspace(self.t_start, self.t_end, self.n_points)


@dataclass(frozen=True, eq=False)
class Trajectory:
    """States on a time grid.

    ``amplitudes`` has shape ``(n_points, s + 1)``; ``traj[i]`` returns the
    i-th :class:`StateVector`.
    """

    grid: TimeGrid
    amplitudes: np.ndarray
    params: ModelParams | None = None
    method: str = ""

    @cached_property
    def times(self) -> np.ndarray:
        return self.grid.times()

    @property
    def states(self) -> list[StateVector]:
        return [StateVector(row) for row in self.amplitudes]

    @property
    def s(self) -> int:
        return self.amplitudes.shape[1] - 1

    def __len__(self) -> int:
        return self.amplitudes.shape[0]

    def __getitem__(self, i: int) -> StateVector:
        return StateVector(self.amplitudes[i])

    def populations(self) -> np.ndarray:
        return np.abs(self.amplitudes) ** 2

    def norm_error(self) -> np.ndarray:
        return np.abs(self.populations().sum(axis=1) - 1.0)


def initial_state(s: int) -> StateVector:
    """All ``s`` atoms excited, no photon."""
    if int(s) != s or s < 1:
        raise ParameterError(f"s must be a positive integer, got {s!r}")
    amps = np.zeros(int(s) + 1, dtype=complex)
    amps[0] = 1.0
    return StateVector(amps)


def _check_inputs(h: LadderHamiltonian, psi0: StateVector) -> np.ndarray:
    if psi0.dim != h.dim:
        raise ParameterError(f"state dimension {psi0.dim} does not match Hamiltonian dimension {h.dim}")
    return np.asarray(psi0.amplitudes, dtype=complex)


def _eigen(h: LadderHamiltonian, psi: np.ndarray, elapsed: np.ndarray) -> np.ndarray:
    w, v = eigh_tridiagonal(h.diagonal, h.off_diagonal)
    coeff = v.T @ psi
    phases = np.exp(-1j * np.outer(elapsed, w))
    return (phases * coeff) @ v.T


def rk4_substeps(h: LadderHamiltonian, dt: float, max_step: float = RK4_MAX_STEP) -> int:
    """Smallest number of RK4 substeps per grid step with ``dt_sub ||H|| <= max_step``."""
    return max(1, math.ceil(abs(dt) * h.gershgorin_bound() / max_step - 1e-12))


def _rk4(h: LadderHamiltonian, psi: np.ndarray, grid: TimeGrid, substeps: int) -> np.ndarray:
    out = np.empty((grid.n_points, psi.size), dtype=complex)
    out[0] = psi
    if grid.n_points == 1:
        return out
    dt = grid.dt / substeps
    off = h.off_diagonal

    def rhs(c: np.ndarray) -> np.ndarray:
        hc = np.zeros_like(c)
        hc[:-1] += off * c[1:]
        hc[1:] += off * c[:-1]
        return -1j * hc

    c = psi.copy()
    for i in range(1, grid.n_points):
        for _ in range(substeps):
            k1 = rhs(c)
            k2 = rhs(c + 0.5 * dt * k1)
            k3 = rhs(c + 0.5 * dt * k2)
            k4 = rhs(c + dt * k3)
            c = c + (dt / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4)
        out[i] = c
    return out


def evolve(
    h: LadderHamiltonian,
    psi0: StateVector,
    grid: TimeGrid,
    method: Method | str = Method.EIGEN,
    *,
    substeps: int = 1,
    params: ModelParams | None = None,
) -> Trajectory:
    """Propagate ``psi0`` (the state at ``grid.t_start``) over ``grid``.

    Parameters
    ----------
    h : LadderHamiltonian
    psi0 : StateVector
        Must have ``h.dim`` amplitudes.
    grid : TimeGrid
    method : Method or str
        ``"eigen"`` (exact) or ``"rk4"``.
    substeps : int
        RK4 steps per grid interval. The RK4 step must satisfy
        ``dt * ||H|| <= RK4_MAX_STEP``; otherwise a ``ParameterError``
        suggests the required number of substeps. Ignored for ``"eigen"``.
    params : ModelParams, optional
        Attached to the returned trajectory for bookkeeping.
    """
    method = Method(method)
    psi = _check_inputs(h, psi0)
    if method is Method.EIGEN:
        amps = _eigen(h, psi, grid.times() - grid.t_start)
        amps[0] = psi
    else:
        substeps = int(substeps)
        if substeps < 1:
            raise ParameterError("substeps must be >= 1")
        step = grid.dt / substeps * h.gershgorin_bound()
        if step > RK4_MAX_STEP:
            need = rk4_substeps(h, grid.dt)
            raise ParameterError(
                f"RK4 step too large: dt*||H|| = {step:.3g} > {RK4_MAX_STEP}; "
                f"use substeps >= {need} or a finer grid"
            )
        amps = _rk4(h, psi, grid, substeps)
    return Trajectory(grid, amps, params=params, method=method.value)


def propagate(h: LadderHamiltonian, psi0: StateVector, t: float) -> StateVector:
    """Exact propagation by a single (possibly negative) time ``t``."""
    psi = _check_inputs(h, psi0)
    if not math.isfinite(t):
        raise ParameterError("propagation time must be finite")
    return StateVector(_eigen(h, psi, np.array([float(t)]))[0])
