"""Observables and dynamical diagnostics on ladder states and trajectories."""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field

import numpy as np
from numpy.lib.stride_tricks import sliding_window_view
from scipy.linalg import eigh_tridiagonal
from scipy.signal import find_peaks

from .model import LadderHamiltonian, ParameterError, StateVector
from .propagator import TimeGrid, Trajectory

__all__ = [
    "Label",
    "ObservableSeries",
    "BeatReport",
    "NORM_TOL",
    "atomic_inversion_group",
    "atomic_inversion_full",
    "photon_number",
    "interaction_energy",
    "inversion_group_series",
    "inversion_full_series",
    "photon_number_series",
    "interaction_energy_series",
    "observable_series",
    "oscillation_extrema",
    "beat_analysis",
    "is_commensurate",
    "moving_rms_envelope",
]

NORM_TOL = 1e-8


class Label(str, enum.Enum):
    INVERSION_GROUP = "inv_group"
    INVERSION_FULL = "inv_full"
    PHOTON_NUMBER = "n_photon"
    INTERACTION_ENERGY = "v_energy"


@dataclass(frozen=True, eq=False)
class ObservableSeries:
    grid: TimeGrid
    values: np.ndarray
    label: Label

    def __post_init__(self) -> None:
        values = np.asarray(self.values, dtype=float).reshape(-1)
        if values.size != self.grid.n_points:
            raise ParameterError(f"series has {values.size} values for {self.grid.n_points} grid points")
        object.__setattr__(self, "values", values)
        object.__setattr__(self, "label", Label(self.label))

    @property
    def times(self) -> np.ndarray:
        return self.grid.times()


@dataclass(frozen=True)
class BeatReport:
    """Spectral content and modulation of a trajectory.

    ``dominant_frequencies`` are the oscillation frequencies of the
    amplitudes, i.e. the distinct ``|lambda_k| > 0`` of the Hamiltonian,
    weighted by the initial-state populations of the corresponding
    eigenvectors. ``inversion_components`` lists every pairwise difference
    ``|lambda_i - lambda_j|`` that appears in the inversion, with its
    amplitude.
    """

    dominant_frequencies: tuple[tuple[float, float], ...]
    envelope_period: float | None
    modulation_depth: float
    commensurate: bool
    commensurability_note: str
    inversion_components: tuple[tuple[float, float], ...] = field(default=())

    def as_dict(self) -> dict:
        return {
            "dominant_frequencies": [list(p) for p in self.dominant_frequencies],
            "envelope_period": self.envelope_period,
            "modulation_depth": self.modulation_depth,
            "commensurate": self.commensurate,
            "commensurability_note": self.commensurability_note,
            "inversion_components": [list(p) for p in self.inversion_components],
        }


# -- single-state observables -------------------------------------------------


def _populations(amps: np.ndarray) -> np.ndarray:
    pops = np.abs(amps) ** 2
    err = np.abs(pops.sum(axis=-1) - 1.0)
    if np.any(err > NORM_TOL):
        raise ParameterError(f"state is not normalized (norm error {float(np.max(err)):.3g} > {NORM_TOL})")
    return pops


def _weights_group(s: int) -> np.ndarray:
    return 0.5 * s - np.arange(s + 1)


def atomic_inversion_group(state: StateVector) -> float:
    """``<S^z> = sum_m (s/2 - m) |C_m|^2`` for the group of s atoms."""
    return float(_populations(state.amplitudes) @ _weights_group(state.s))


def atomic_inversion_full(state: StateVector, N: int) -> float:
    """``<S^(3)>`` for all N atoms; equals the group inversion plus ``(s - N)/2``."""
    return atomic_inversion_group(state) + 0.5 * (state.s - N)


def photon_number(state: StateVector) -> float:
    return float(_populations(state.amplitudes) @ np.arange(state.dim))


def _check_dim(h: LadderHamiltonian, dim: int) -> None:
    if h.dim != dim:
        raise ParameterError(f"state dimension {dim} does not match Hamiltonian dimension {h.dim}")


def interaction_energy(state: StateVector, h: LadderHamiltonian) -> float:
    _check_dim(h, state.dim)
    c = state.amplitudes
    return float(2.0 * np.sum(h.off_diagonal * np.real(np.conj(c[:-1]) * c[1:])))


# -- series ------------------------------------------------------------------


def inversion_group_series(traj: Trajectory) -> ObservableSeries:
    values = _populations(traj.amplitudes) @ _weights_group(traj.s)
    return ObservableSeries(traj.grid, values, Label.INVERSION_GROUP)


def inversion_full_series(traj: Trajectory, N: int) -> ObservableSeries:
    values = _populations(traj.amplitudes) @ _weights_group(traj.s) + 0.5 * (traj.s - N)
    return ObservableSeries(traj.grid, values, Label.INVERSION_FULL)


def photon_number_series(traj: Trajectory) -> ObservableSeries:
    values = _populations(traj.amplitudes) @ np.arange(traj.s + 1)
    return ObservableSeries(traj.grid, values, Label.PHOTON_NUMBER)


def interaction_energy_series(traj: Trajectory, h: LadderHamiltonian) -> ObservableSeries:
    _check_dim(h, traj.s + 1)
    c = traj.amplitudes
    values = 2.0 * np.real(np.conj(c[:, :-1]) * c[:, 1:]) @ h.off_diagonal
    return ObservableSeries(traj.grid, values, Label.INTERACTION_ENERGY)


def observable_series(
    traj: Trajectory, label: Label | str, *, N: int | None = None, h: LadderHamiltonian | None = None
) -> ObservableSeries:
    label = Label(label)
    if label is Label.INVERSION_GROUP:
        return inversion_group_series(traj)
    if label is Label.PHOTON_NUMBER:
        return photon_number_series(traj)
    if label is Label.INVERSION_FULL:
        if N is None:
            raise ParameterError("full inversion needs the total atom number N")
        return inversion_full_series(traj, N)
    if h is None:
        raise ParameterError("interaction energy needs the Hamiltonian")
    return interaction_energy_series(traj, h)


# -- diagnostics ---------------------------------------------------------------

_MIN_POINTS = 16
# local maxima below this fraction of the series range are ignored
_PEAK_PROMINENCE = 1e-3


def _refined_peak_times(t: np.ndarray, x: np.ndarray, idx: np.ndarray) -> np.ndarray:
    # vertex of the parabola through each discrete peak and its neighbours
    idx = idx[(idx > 0) & (idx < x.size - 1)]
    y0, y1, y2 = x[idx - 1], x[idx], x[idx + 1]
    denom = y0 - 2.0 * y1 + y2
    with np.errstate(divide="ignore", invalid="ignore"):
        shift = np.where(denom != 0.0, 0.5 * (y0 - y2) / denom, 0.0)
    dt = t[1] - t[0]
    return t[idx] + shift * dt


def oscillation_extrema(series: ObservableSeries) -> tuple[float, float, float | None]:
    """Minimum, maximum and mean spacing of successive maxima.

    The period estimate is ``None`` when fewer than two maxima are found.
    Maxima are located on the grid and refined by a parabolic fit.
    """
    x = series.values
    if x.size < _MIN_POINTS:
        raise ParameterError(f"series too short for extrema analysis ({x.size} < {_MIN_POINTS} points)")
    lo, hi = float(x.min()), float(x.max())
    span = hi - lo
    if span <= 1e-14 * max(1.0, abs(hi)):
        return lo, hi, None
    idx, _ = find_peaks(x, prominence=_PEAK_PROMINENCE * span)
    times = _refined_peak_times(series.times, x, idx)
    if times.size < 2:
        return lo, hi, None
    return lo, hi, float((times[-1] - times[0]) / (times.size - 1))


def is_commensurate(ratio: float, max_int: int = 32, tol: float = 1e-6) -> bool:
    """Whether ``ratio`` is within ``tol`` of some ``p/q`` with ``p, q <= max_int``."""
    for q in range(1, max_int + 1):
        p = round(ratio * q)
        if 1 <= p <= max_int and abs(ratio - p / q) < tol:
            return True
    return False


def moving_rms_envelope(x: np.ndarray, window: int) -> np.ndarray:
    """Root-mean-square of ``x - mean(x)`` over a sliding window of ``window`` samples."""
    x = np.asarray(x, dtype=float)
    window = int(min(max(window, 2), x.size))
    centered = x - x.mean()
    return np.sqrt(np.mean(sliding_window_view(centered * centered, window), axis=1))


def _group(values: np.ndarray, weights: np.ndarray, tol: float) -> list[tuple[float, float]]:
    order = np.argsort(values)
    groups: list[list[float]] = []
    for i in order:
        if groups and abs(values[i] - groups[-1][0]) <= tol:
            groups[-1][1] += weights[i]
        else:
            groups.append([float(values[i]), float(weights[i])])
    return [(f, w) for f, w in groups]


def beat_analysis(
    traj: Trajectory,
    h: LadderHamiltonian,
    *,
    window_periods: float = 3.0,
    max_int: int = 32,
    tol: float = 1e-6,
) -> BeatReport:
    """Beat structure of a trajectory.

    Frequencies come from the exact spectrum of ``h`` and the overlaps of
    the first state with its eigenvectors. The modulation depth is
    ``(max - min) / max`` of the moving-RMS envelope of the group
    inversion, with a window of ``window_periods`` periods of the
    largest-weight frequency. It therefore only sees modulation that
    develops within the trajectory's time span.
    """
    if len(traj) < 2:
        raise ParameterError("beat analysis needs a trajectory with at least two points")
    _check_dim(h, traj.s + 1)
    w, v = eigh_tridiagonal(h.diagonal, h.off_diagonal)
    overlap = v.T @ traj.amplitudes[0]
    scale = float(np.max(np.abs(w)))
    ftol = 1e-9 * max(scale, 1.0)

    pops = np.abs(overlap) ** 2
    nonzero = np.abs(w) > ftol
    freqs = _group(np.abs(w[nonzero]), pops[nonzero], ftol)
    freqs.sort(key=lambda p: -p[1])
    dominant = tuple((float(f), float(p)) for f, p in freqs)

    sz = _weights_group(traj.s)
    mat = (v.T * sz) @ v
    amp = np.real(np.conj(overlap)[:, None] * overlap[None, :] * mat)
    diffs = np.abs(w[:, None] - w[None, :])
    comps = _group(diffs.ravel(), amp.ravel(), ftol)
    components = tuple((float(f), float(a)) for f, a in comps if abs(a) > 1e-14)

    envelope_period = None
    if len(dominant) >= 2:
        envelope_period = 2.0 * math.pi / abs(dominant[0][0] - dominant[1][0])

    fs = [f for f, _ in dominant]
    if len(fs) < 2:
        commensurate = True
        note = "single frequency"
    else:
        commensurate = all(is_commensurate(max(a, b) / min(a, b), max_int, tol) for a in fs for b in fs if a != b)
        note = f"ratios tested against p/q with p, q <= {max_int} at tolerance {tol:g}"

    depth = 0.0
    if dominant:
        carrier = dominant[0][0]
        window = int(round(window_periods * 2.0 * math.pi / carrier / traj.grid.dt))
        env = moving_rms_envelope(inversion_group_series(traj).values, window)
        top = float(env.max())
        if top > 0.0:
            depth = float((top - env.min()) / top)

    return BeatReport(dominant, envelope_period, depth, commensurate, note, components)
