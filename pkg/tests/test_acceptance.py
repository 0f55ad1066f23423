"""Exit criteria. Each test records one PASS/FAIL line, printed at the end of the run."""

import itertools
import math

import mpmath
import numpy as np
import pytest

from conftest import ACCEPTANCE_LINES
from qdicke import ModelParams
from qdicke.analytic import amplitudes, omega_pm_s3
from qdicke.cli import ConfigError, config_to_text, parse_config, run_scenario
from qdicke.model import build_hamiltonian, eigenfrequencies
from qdicke.observables import (
    beat_analysis,
    inversion_group_series,
    interaction_energy_series,
    oscillation_extrema,
    photon_number_series,
)
from qdicke.propagator import Method, TimeGrid, Trajectory, evolve, initial_state, rk4_substeps

SWEEP = list(itertools.product((3, 6, 12), (1, 2, 3), (1.0, 2.0, 5.0, 20.0)))
FIG_GRID = TimeGrid(0.0, 10.0, 4000)


def record(criterion, ok, detail):
    ACCEPTANCE_LINES.append(f"[{'PASS' if ok else 'FAIL'}] {criterion}: {detail}")
    assert ok, detail


def sweep_runs():
    grid = TimeGrid(0.0, 20.0, 200)
    for N, s, q in SWEEP:
        p = ModelParams.qdeformed(N, s, q, 1.0)
        h = build_hamiltonian(p)
        closed = Trajectory(grid, amplitudes(p, grid.times()), params=p)
        exact = evolve(h, initial_state(s), grid, Method.EIGEN, params=p)
        yield p, h, closed, exact


def fig_inversion(s, q):
    p = ModelParams.qdeformed(6, s, q)
    h = build_hamiltonian(p)
    traj = evolve(h, initial_state(s), FIG_GRID, params=p)
    return traj, h


def test_c1_oracle_equivalence():
    worst = max(float(np.max(np.abs(c.amplitudes - e.amplitudes))) for _, _, c, e in sweep_runs())
    record("C1 oracle equivalence", worst < 1e-9, f"max |closed form - eigen| = {worst:.2e} over {len(SWEEP)} runs (tol 1e-9)")


def test_c2_unitarity_and_conservation():
    norm = energy = cons = 0.0
    for p, h, closed, exact in sweep_runs():
        for traj in (closed, exact):
            norm = max(norm, float(np.max(traj.norm_error())))
            energy = max(energy, float(np.max(np.abs(interaction_energy_series(traj, h).values))))
            total = inversion_group_series(traj).values + photon_number_series(traj).values
            cons = max(cons, float(np.max(np.abs(total - p.s / 2))))
    ok = norm < 1e-10 and energy < 1e-9 and cons < 1e-10
    record("C2 unitarity/conservation", ok, f"norm err {norm:.1e} (<1e-10), |<V>| {energy:.1e} (<1e-9), excitation {cons:.1e} (<1e-10)")


def test_c3_s1_deformation_invariance():
    series = [inversion_group_series(fig_inversion(1, q)[0]).values for q in (1.0, 5.0, 20.0)]
    closed = [amplitudes(ModelParams.qdeformed(6, 1, q), FIG_GRID.times()) for q in (1.0, 5.0, 20.0)]
    spread = max(float(np.max(np.abs(x - series[0]))) for x in series)
    spread_closed = max(float(np.max(np.abs(x - closed[0]))) for x in closed)
    ok = spread < 1e-12 and spread_closed < 1e-12
    record("C3 s=1 q-invariance", ok, f"max inversion spread {spread:.1e}, amplitude spread {spread_closed:.1e} (tol 1e-12)")


def test_c4_s2_period():
    periods = []
    for q in (1.0, 2.0, 5.0, 10.0, 20.0):
        traj, _ = fig_inversion(2, q)
        periods.append(oscillation_extrema(inversion_group_series(traj))[2])
    target = 2 * math.pi / math.sqrt(22)
    rel = abs(periods[0] - target) / target
    decreasing = all(b < a for a, b in zip(periods, periods[1:]))
    record(
        "C4 s=2 period",
        rel < 1e-3 and decreasing,
        f"T(q=1) = {periods[0]:.6f} vs {target:.6f} (rel {rel:.1e}, tol 1e-3); "
        f"T over q=1,2,5,10,20 = {[round(x, 4) for x in periods]} strictly decreasing: {decreasing}",
    )


def test_c5_s2_amplitude_pinning():
    expected = {1.0: -0.9835, 5.0: -0.4705, 20.0: 0.4332}
    mins = {q: oscillation_extrema(inversion_group_series(fig_inversion(2, q)[0]))[0] for q in (1.0, 2.0, 5.0, 10.0, 20.0)}
    pinned = all(abs(mins[q] - v) < 1e-3 for q, v in expected.items())
    seq = [mins[q] for q in sorted(mins)]
    increasing = all(b > a for a, b in zip(seq, seq[1:])) and seq[-1] < 1.0
    record(
        "C5 s=2 amplitude pinning",
        pinned and increasing,
        f"min inversion {', '.join(f'q={q:g}: {mins[q]:+.4f}' for q in sorted(mins))}; "
        f"pinned within 1e-3: {pinned}; increasing toward +1: {increasing}",
    )


def test_c6_s3_spectrum():
    # N=6, q=1: a^2 = 18, b^2 = 20, c^2 = 12, so x^4 - 50 x^2 + 216 = 0
    with mpmath.workdps(40):
        roots = sorted((float(r) for r in mpmath.polyroots([1, 0, -50, 0, 216]) if r > 0), reverse=True)
    frozen = (6.724860, 2.185464)
    oracle_ok = all(abs(r - f) < 5e-7 for r, f in zip(roots, frozen))
    wp, wm = omega_pm_s3(ModelParams(6, 3))
    pinned = oracle_ok and abs(wp - frozen[0]) < 1e-5 and abs(wm - frozen[1]) < 1e-5
    worst = 0.0
    for p, h, _, _ in sweep_runs():
        if p.s == 3:
            ev = eigenfrequencies(h)
            worst = max(worst, float(np.max(np.abs(np.array([ev[2], ev[3]]) - np.array(omega_pm_s3(p)[::-1])))))
    record(
        "C6 s=3 spectrum",
        pinned and worst < 1e-10,
        f"(W+, W-) = ({wp:.6f}, {wm:.6f}) vs quartic roots (6.724860, 2.185464) tol 1e-5; "
        f"max |omega_pm_s3 - eigensolver| = {worst:.1e} (tol 1e-10)",
    )


def test_c7_s3_beat_suppression():
    depths = [beat_analysis(*fig_inversion(3, q)).modulation_depth for q in (1.0, 2.0, 4.0)]
    decreasing = depths[0] > depths[1] > depths[2]
    record(
        "C7 s=3 beat suppression",
        decreasing,
        f"modulation depth on t in [0, 10] for q=1,2,4: {[round(d, 4) for d in depths]} strictly decreasing: {decreasing}",
    )


def test_c8_rk4_independence():
    worst = drift = step = 0.0
    for s, qs in ((2, (1.0, 5.0, 20.0)), (3, (1.0, 2.0, 4.0))):
        for q in qs:
            p = ModelParams.qdeformed(6, s, q)
            h = build_hamiltonian(p)
            sub = rk4_substeps(h, FIG_GRID.dt, 0.05)
            step = max(step, FIG_GRID.dt / sub * h.gershgorin_bound())
            rk4 = evolve(h, initial_state(s), FIG_GRID, Method.RK4, substeps=sub)
            exact = evolve(h, initial_state(s), FIG_GRID, Method.EIGEN)
            worst = max(worst, float(np.max(np.abs(rk4.amplitudes - exact.amplitudes))))
            drift = max(drift, float(np.max(rk4.norm_error())))
    ok = step <= 0.05 and worst < 1e-6 and drift < 1e-6
    record("C8 RK4 independence", ok, f"max dt*||H|| {step:.4f} (<=0.05), max |rk4 - eigen| {worst:.1e} (<1e-6), norm drift {drift:.1e} (<1e-6)")


def test_c9_cli_contract(tmp_path):
    same = True
    for preset in ("fig1", "fig2"):
        outs = []
        for d in ("a", "b"):
            runs = run_scenario(parse_config(["--preset", preset, "--out", str(tmp_path / preset / d)]))
            outs.append(b"".join(f.read_bytes() for r in runs for f in r["files"] if f.suffix == ".csv"))
        same &= outs[0] == outs[1] and len(outs[0]) > 0
    cfg = parse_config(["--preset", "fig2", "--q", "3", "--solver", "rk4", "--out", str(tmp_path / "rt")])
    run_scenario(cfg)
    first = (tmp_path / "rt" / "fig2_q3.csv").read_bytes()
    cfg2 = parse_config(text=config_to_text(cfg))
    round_trip = cfg2 == cfg
    run_scenario(cfg2)
    round_trip &= (tmp_path / "rt" / "fig2_q3.csv").read_bytes() == first
    rejected = []
    for argv, needle in (
        (["--s", "0"], "1 <= s <= N"),
        (["--N", "3", "--s", "4", "--solver", "eigen"], "1 <= s <= N"),
        (["--q", "0"], "q > 0"),
        (["--q", "-3"], "q > 0"),
        (["--N", "6", "--s", "4", "--solver", "analytic"], "s <= 3"),
    ):
        try:
            parse_config(argv)
            rejected.append(False)
        except ConfigError as exc:
            rejected.append(needle in str(exc))
    ok = same and round_trip and all(rejected)
    record("C9 CLI contract", ok, f"deterministic CSV: {same}; config round-trip: {round_trip}; invalid inputs rejected with named constraint: {all(rejected)}")
