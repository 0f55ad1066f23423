"""Closed-form amplitudes for s = 1, 2, 3 excitations.

All formulas are written in terms of the ladder couplings, so the coupling
constant ``g`` appears explicitly. Amplitudes are indexed by photon number;
``StateVector.excitation_order()`` gives the ordering by excited atoms.

On the ladder the amplitude of site ``m`` carries the phase ``(-i)**m``:
even sites are real and odd sites are purely imaginary.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .model import ModelParams, ParameterError, StateVector, coupling_elements

__all__ = [
    "FrequencySpectrum",
    "omega_s1",
    "omega_s2",
    "omega_pm_s3",
    "frequencies",
    "amplitudes_s1",
    "amplitudes_s2",
    "amplitudes_s3",
    "amplitudes",
    "solve_s1",
    "solve_s2",
    "solve_s3",
    "solve",
    "ANALYTIC_S",
]

ANALYTIC_S = (1, 2, 3)


@dataclass(frozen=True)
class FrequencySpectrum:
    """Positive eigenfrequencies of one excitation sector.

    s = 1 and s = 2 carry a single frequency, s = 3 carries
    ``(Omega_plus, Omega_minus)`` with ``Omega_plus > Omega_minus``.
    """

    s: int
    frequencies: tuple[float, ...]


def _require_s(params: ModelParams, s: int) -> None:
    if params.s != s:
        raise ParameterError(f"this solver needs s={s}, got s={params.s}")


def _scaled_couplings(params: ModelParams) -> np.ndarray:
    return params.g * coupling_elements(params)


def omega_s1(params: ModelParams) -> float:
    """Rabi frequency ``g sqrt(N)`` of the single-excitation sector."""
    _require_s(params, 1)
    return params.g * math.sqrt(params.N)


def omega_s2(params: ModelParams) -> float:
    """``g sqrt(2 f(2)^2 N + 2 (N - 1))``."""
    _require_s(params, 2)
    b, a = _scaled_couplings(params)
    return math.hypot(a, b)


def omega_pm_s3(params: ModelParams) -> tuple[float, float]:
    """Frequencies ``(Omega_plus, Omega_minus)`` of the four-site ladder.

    They are the positive roots of ``x^4 - (a^2+b^2+c^2) x^2 + a^2 c^2``,
    with couplings ``c, b, a`` from the zero-photon end of the ladder.
    """
    _require_s(params, 3)
    c, b, a = _scaled_couplings(params)
    a2, b2, c2 = a * a, b * b, c * c
    total = a2 + b2 + c2
    disc = math.sqrt((total - 2 * a * c) * (total + 2 * a * c))
    plus2 = 0.5 * (total + disc)
    # Vieta form for the small root avoids cancellation
    minus2 = a2 * c2 / plus2
    return math.sqrt(plus2), math.sqrt(minus2)


def frequencies(params: ModelParams) -> FrequencySpectrum:
    if params.s == 1:
        return FrequencySpectrum(1, (omega_s1(params),))
    if params.s == 2:
        return FrequencySpectrum(2, (omega_s2(params),))
    if params.s == 3:
        return FrequencySpectrum(3, omega_pm_s3(params))
    raise ParameterError(f"closed forms exist for s in {ANALYTIC_S}, got s={params.s}; use the numerical propagator")


def amplitudes_s1(params: ModelParams, t) -> np.ndarray:
    _require_s(params, 1)
    t = np.asarray(t, dtype=float)
    phase = omega_s1(params) * t
    return np.stack([np.cos(phase) + 0j, -1j * np.sin(phase)], axis=-1)


def amplitudes_s2(params: ModelParams, t) -> np.ndarray:
    _require_s(params, 2)
    b, a = _scaled_couplings(params)
    omega2 = a * a + b * b
    omega = math.sqrt(omega2)
    t = np.asarray(t, dtype=float)
    cos, sin = np.cos(omega * t), np.sin(omega * t)
    c0 = (a * a + b * b * cos) / omega2
    c1 = -1j * (b / omega) * sin
    c2 = (a * b / omega2) * (cos - 1.0)
    return np.stack([c0 + 0j, c1, c2 + 0j], axis=-1)


def _s3_modes(params: ModelParams):
    c, b, a = _scaled_couplings(params)
    modes = []
    for lam in omega_pm_s3(params):
        # unnormalised eigenvector (v_0 = 1) for eigenvalue +lam
        u = np.array([1.0, lam / c, (lam * lam - c * c) / (b * c), a * (lam * lam - c * c) / (b * c * lam)])
        # +lam and -lam contribute with equal weight
        weight = 2.0 / float(u @ u)
        modes.append((lam, weight * u))
    return modes


def amplitudes_s3(params: ModelParams, t) -> np.ndarray:
    _require_s(params, 3)
    t = np.asarray(t, dtype=float)
    out = np.zeros(t.shape + (4,), dtype=complex)
    for lam, wu in _s3_modes(params):
        cos, sin = np.cos(lam * t), np.sin(lam * t)
        out[..., 0] += wu[0] * cos
        out[..., 1] += -1j * wu[1] * sin
        out[..., 2] += wu[2] * cos
        out[..., 3] += -1j * wu[3] * sin
    return out


_AMPLITUDES = {1: amplitudes_s1, 2: amplitudes_s2, 3: amplitudes_s3}


def amplitudes(params: ModelParams, t) -> np.ndarray:
    """Closed-form amplitudes at time(s) ``t``; shape ``t.shape + (s+1,)``."""
    try:
        fn = _AMPLITUDES[params.s]
    except KeyError:
        raise ParameterError(
            f"closed forms exist for s in {ANALYTIC_S}, got s={params.s}; use the numerical propagator"
        ) from None
    return fn(params, t)


def solve_s1(params: ModelParams, t: float) -> StateVector:
    return StateVector(amplitudes_s1(params, float(t)))


def solve_s2(params: ModelParams, t: float) -> StateVector:
    return StateVector(amplitudes_s2(params, float(t)))


def solve_s3(params: ModelParams, t: float) -> StateVector:
    return StateVector(amplitudes_s3(params, float(t)))


def solve(params: ModelParams, t: float) -> StateVector:
    return StateVector(amplitudes(params, float(t)))
