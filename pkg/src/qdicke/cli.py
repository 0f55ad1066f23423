"""Scenario runner: figure presets, q sweeps and CSV/JSON export.

Usage::

    qdicke --preset fig1 --out results/
    qdicke --N 6 --s 2 --q 5 --g 1 --t-max 10 --points 4000 --solver analytic
    qdicke --config scenario.txt --q 1 --q 2 --solver crosscheck

A config file is flat ``key = value`` text whose keys mirror the long flag
names (``t-max`` and ``t_max`` are equivalent; ``q`` takes a comma list).
Precedence is preset < config file < command-line flags.

Each run writes ``<stem>_<tag>.csv`` (or ``.table.json``) with the columns
``t,inv_group,inv_full,n_photon,v_energy,norm_err`` and a
``<stem>_<tag>.summary.json``; ``<stem>_summary.json`` collects all runs.
"""

from __future__ import annotations

import argparse
import enum
import io
import json
import math
import sys
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from . import analytic
from .deformation import DeformationError, DeformationKind, DeformationSpec, get_registered
from .model import ModelParams, ParameterError, build_hamiltonian, eigenfrequencies
from .observables import (
    beat_analysis,
    inversion_full_series,
    inversion_group_series,
    interaction_energy_series,
    oscillation_extrema,
    photon_number_series,
)
from .propagator import Method, TimeGrid, Trajectory, evolve, initial_state, propagate, rk4_substeps

__all__ = [
    "Solver",
    "OutputFormat",
    "ScenarioConfig",
    "ConfigError",
    "PRESETS",
    "COLUMNS",
    "parse_config",
    "config_to_text",
    "run_scenario",
    "main",
]

COLUMNS = ("t", "inv_group", "inv_full", "n_photon", "v_energy", "norm_err")
SERIES_COLUMNS = COLUMNS[1:5]

# RK4 runs keep dt * ||H|| at or below this
RK4_TARGET_STEP = 0.05
POINTS_PER_PERIOD = 400

TIME_UNIT_NOTE = "time in units of 1/g; hbar = 1, omega_f = omega = 1 (exact resonance, interaction picture)"


class ConfigError(ValueError):
    """Invalid scenario configuration."""


class Solver(str, enum.Enum):
    ANALYTIC = "analytic"
    EIGEN = "eigen"
    RK4 = "rk4"
    CROSSCHECK = "crosscheck"


class OutputFormat(str, enum.Enum):
    CSV = "csv"
    JSON = "json"


PRESETS: dict[str, dict] = {
    "fig1": {"N": 6, "s": 2, "g": 1.0, "q": (1.0, 5.0, 20.0), "t_min": 0.0, "t_max": 10.0, "points": 4000},
    "fig2": {"N": 6, "s": 3, "g": 1.0, "q": (1.0, 2.0, 4.0), "t_min": 0.0, "t_max": 10.0, "points": 4000},
}


@dataclass(frozen=True)
class ScenarioConfig:
    """Everything needed to reproduce a run.

    ``points=None`` picks the grid density from the exact spectrum
    (``POINTS_PER_PERIOD`` points per shortest period of the inversion).
    """

    N: int = 6
    s: int = 2
    g: float = 1.0
    q: tuple[float, ...] = (1.0,)
    deformation: str = "q"
    t_min: float = 0.0
    t_max: float = 10.0
    points: int | None = None
    solver: Solver = Solver.ANALYTIC
    format: OutputFormat = OutputFormat.CSV
    out: str = "."
    preset: str | None = None
    outputs: tuple[str, ...] = SERIES_COLUMNS

    def __post_init__(self) -> None:
        try:
            object.__setattr__(self, "solver", Solver(self.solver))
        except ValueError:
            raise ConfigError(f"solver: must be one of {[m.value for m in Solver]}, got {self.solver!r}") from None
        try:
            object.__setattr__(self, "format", OutputFormat(self.format))
        except ValueError:
            raise ConfigError(f"format: must be csv or json, got {self.format!r}") from None
        for key in ("t_min", "t_max", "g"):
            if not math.isfinite(float(getattr(self, key))):
                raise ConfigError(f"{key}: must be finite")
        if not self.t_max > self.t_min:
            raise ConfigError(f"t_max: must satisfy t_max > t_min, got [{self.t_min}, {self.t_max}]")
        if self.points is not None and self.points < 2:
            raise ConfigError(f"points: must satisfy points >= 2, got {self.points}")
        if not self.q:
            raise ConfigError("q: at least one value is required")
        bad = [o for o in self.outputs if o not in SERIES_COLUMNS]
        if bad:
            raise ConfigError(f"outputs: unknown column(s) {bad}; choose from {list(SERIES_COLUMNS)}")
        # validate every run's physical parameters first
        self.model_params()
        if self.solver in (Solver.ANALYTIC, Solver.CROSSCHECK) and self.s not in analytic.ANALYTIC_S:
            raise ConfigError(
                f"s: the {self.solver.value} solver supports s <= 3 (s in {{1, 2, 3}}), got s={self.s}; "
                "use --solver eigen for larger s"
            )

    def deformation_specs(self) -> list[DeformationSpec]:
        kind = self.deformation
        try:
            if kind == "q":
                return [DeformationSpec.qdeformed(q) for q in self.q]
            if kind == "identity":
                return [DeformationSpec.identity()]
            if kind.startswith("custom:"):
                return [get_registered(kind.split(":", 1)[1])]
        except DeformationError as exc:
            raise ConfigError(f"{'q' if kind == 'q' else 'deformation'}: {exc}") from None
        raise ConfigError(f"deformation: must be identity, q or custom:NAME, got {kind!r}")

    def model_params(self) -> list[ModelParams]:
        out = []
        for spec in self.deformation_specs():
            try:
                out.append(ModelParams(self.N, self.s, self.g, spec))
            except ParameterError as exc:
                key = str(exc).split(" ", 1)[0]
                raise ConfigError(f"{key}: {exc}") from None
        return out


# -- parsing -------------------------------------------------------------------

_FIELDS = {
    "N": int,
    "s": int,
    "g": float,
    "q": None,
    "deformation": str,
    "t_min": float,
    "t_max": float,
    "points": int,
    "solver": str,
    "format": str,
    "out": str,
    "preset": str,
    "outputs": None,
}


def _norm_key(key: str) -> str:
    key = key.strip().lstrip("-").replace("-", "_")
    return "N" if key.lower() == "n" else key


def _convert(key: str, raw) -> object:
    if key == "q":
        items = raw if isinstance(raw, (list, tuple)) else str(raw).split(",")
        try:
            return tuple(float(v) for v in items if str(v).strip())
        except ValueError:
            raise ConfigError(f"q: cannot parse {raw!r} as a list of numbers") from None
    if key == "outputs":
        items = raw if isinstance(raw, (list, tuple)) else str(raw).split(",")
        return tuple(str(v).strip() for v in items if str(v).strip())
    if key == "points" and str(raw).strip().lower() in ("auto", "none", ""):
        return None
    try:
        value = _FIELDS[key](raw)
    except ValueError:
        raise ConfigError(f"{key}: cannot parse {raw!r}") from None
    if _FIELDS[key] is float and not math.isfinite(value):
        raise ConfigError(f"{key}: must be finite, got {raw!r}")
    return value


def _parse_text(text: str) -> dict:
    values = {}
    for lineno, line in enumerate(text.splitlines(), 1):
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ConfigError(f"config line {lineno}: expected 'key = value', got {line!r}")
        key, raw = line.split("=", 1)
        key = _norm_key(key)
        if key not in _FIELDS:
            raise ConfigError(f"config line {lineno}: unknown key {key!r}")
        values[key] = _convert(key, raw.strip())
    return values


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise ConfigError(message)


def _build_parser() -> argparse.ArgumentParser:
    p = _Parser(
        prog="qdicke",
        description="Collective spontaneous emission in the q-deformed Dicke model.",
        epilog=TIME_UNIT_NOTE,
    )
    p.add_argument("--N", type=int, help="total number of atoms")
    p.add_argument("--s", type=int, help="number of initially excited atoms, 1 <= s <= N")
    p.add_argument("--q", type=float, action="append", help="deformation parameter q > 0 (repeat for a sweep)")
    p.add_argument("--g", type=float, help="coupling constant g > 0")
    p.add_argument("--t-min", type=float)
    p.add_argument("--t-max", type=float)
    p.add_argument("--points", type=int, help="grid points (default: 400 per shortest period)")
    p.add_argument("--solver", choices=[m.value for m in Solver])
    p.add_argument("--preset", choices=sorted(PRESETS))
    p.add_argument("--format", choices=[m.value for m in OutputFormat])
    p.add_argument("--out", help="output directory")
    p.add_argument("--config", help="flat key = value config file")
    p.add_argument("--deformation", help="identity, q or custom:NAME")
    p.add_argument("--outputs", help="comma list of series columns to write")
    return p


def parse_config(argv: list[str] | None = None, text: str | None = None) -> ScenarioConfig:
    """Build a :class:`ScenarioConfig` from flags and/or config text."""
    ns = _build_parser().parse_args(argv or [])
    values: dict = {}
    if text is not None:
        values.update(_parse_text(text))
    if ns.config:
        try:
            values.update(_parse_text(Path(ns.config).read_text()))
        except OSError as exc:
            raise ConfigError(f"config: cannot read {ns.config!r}: {exc.strerror}") from None
    flags = {k: v for k, v in vars(ns).items() if v is not None and k != "config"}
    values.update({_norm_key(k): _convert(_norm_key(k), v) for k, v in flags.items()})

    preset = values.get("preset")
    merged: dict = {}
    if preset is not None:
        if preset not in PRESETS:
            raise ConfigError(f"preset: unknown preset {preset!r}; choose from {sorted(PRESETS)}")
        merged.update(PRESETS[preset])
    merged.update(values)
    return ScenarioConfig(**merged)


def _fmt_float(x: float) -> str:
    return repr(float(x))


def config_to_text(cfg: ScenarioConfig) -> str:
    """Serialize ``cfg`` as config-file text that parses back to an equal config."""
    lines = [
        f"N = {cfg.N}",
        f"s = {cfg.s}",
        f"g = {_fmt_float(cfg.g)}",
        f"q = {','.join(_fmt_float(q) for q in cfg.q)}",
        f"deformation = {cfg.deformation}",
        f"t_min = {_fmt_float(cfg.t_min)}",
        f"t_max = {_fmt_float(cfg.t_max)}",
        f"points = {'auto' if cfg.points is None else cfg.points}",
        f"solver = {cfg.solver.value}",
        f"format = {cfg.format.value}",
        f"out = {cfg.out}",
        f"outputs = {','.join(cfg.outputs)}",
    ]
    if cfg.preset is not None:
        lines.append(f"preset = {cfg.preset}")
    return "\n".join(lines) + "\n"


# -- running -------------------------------------------------------------------


def _auto_points(params: ModelParams, cfg: ScenarioConfig) -> int:
    lam = float(np.max(np.abs(eigenfrequencies(build_hamiltonian(params)))))
    # the inversion oscillates at most at twice the largest eigenfrequency
    shortest = math.pi / lam
    return int(math.ceil((cfg.t_max - cfg.t_min) / shortest * POINTS_PER_PERIOD)) + 1


def _trajectory(params: ModelParams, grid: TimeGrid, solver: Solver) -> tuple[Trajectory, float | None]:
    # every solver starts from the initial state at t = 0; when t_min > 0 the
    # state at t_min is obtained by exact propagation
    h = build_hamiltonian(params)
    psi0 = initial_state(params.s)
    start = propagate(h, psi0, grid.t_start) if grid.t_start != 0.0 else psi0
    if solver is Solver.EIGEN:
        return evolve(h, start, grid, Method.EIGEN, params=params), None
    if solver is Solver.RK4:
        sub = rk4_substeps(h, grid.dt, RK4_TARGET_STEP)
        return evolve(h, start, grid, Method.RK4, substeps=sub, params=params), None
    traj = Trajectory(grid, analytic.amplitudes(params, grid.times()), params=params, method="analytic")
    if solver is Solver.ANALYTIC:
        return traj, None
    ref = evolve(h, start, grid, Method.EIGEN)
    return traj, float(np.max(np.abs(traj.amplitudes - ref.amplitudes)))


def _tag(params: ModelParams) -> str:
    spec = params.deformation
    if spec.kind is DeformationKind.QDEFORMED:
        return f"q{spec.q:g}"
    if spec.kind is DeformationKind.CUSTOM:
        return f"custom-{spec.name}"
    return "identity"


def _run_one(cfg: ScenarioConfig, params: ModelParams) -> dict:
    points = cfg.points if cfg.points is not None else _auto_points(params, cfg)
    grid = TimeGrid(cfg.t_min, cfg.t_max, points)
    traj, dev = _trajectory(params, grid, cfg.solver)
    h = build_hamiltonian(params)
    inv = inversion_group_series(traj)
    table = {
        "t": grid.times(),
        "inv_group": inv.values,
        "inv_full": inversion_full_series(traj, params.N).values,
        "n_photon": photon_number_series(traj).values,
        "v_energy": interaction_energy_series(traj, h).values,
        "norm_err": traj.norm_error(),
    }
    lo, hi, period = oscillation_extrema(inv) if points >= 16 else (float(inv.values.min()), float(inv.values.max()), None)
    spectrum = eigenfrequencies(h)
    freqs = {"eigenvalues": [float(x) for x in spectrum]}
    if params.s in analytic.ANALYTIC_S:
        freqs["closed_form"] = [float(x) for x in analytic.frequencies(params).frequencies]
    summary = {
        "params": {
            "N": params.N,
            "s": params.s,
            "g": params.g,
            "deformation": params.deformation.label,
            "q": params.deformation.q,
            "solver": cfg.solver.value,
            "t_min": grid.t_start,
            "t_max": grid.t_end,
            "points": grid.n_points,
            "time_unit": TIME_UNIT_NOTE,
        },
        "frequencies": freqs,
        "extrema": {"min": lo, "max": hi, "period": period},
        "beat_report": beat_analysis(traj, h).as_dict(),
        "crosscheck_max_dev": dev,
    }
    return {"tag": _tag(params), "params": params, "table": table, "summary": summary}


def _metadata_lines(cfg: ScenarioConfig, run: dict) -> list[str]:
    p = run["summary"]["params"]
    return [
        f"N={p['N']} s={p['s']} g={p['g']!r} deformation={p['deformation']} solver={p['solver']}",
        f"t_min={p['t_min']!r} t_max={p['t_max']!r} points={p['points']}",
        TIME_UNIT_NOTE,
    ]


def _columns(cfg: ScenarioConfig) -> list[str]:
    return ["t", *[c for c in SERIES_COLUMNS if c in cfg.outputs], "norm_err"]


def _write_csv(path: Path, cfg: ScenarioConfig, run: dict) -> None:
    cols = _columns(cfg)
    buf = io.StringIO()
    for line in _metadata_lines(cfg, run):
        buf.write(f"# {line}\n")
    buf.write(",".join(cols) + "\n")
    data = np.column_stack([run["table"][c] for c in cols])
    for row in data:
        buf.write(",".join(f"{x:.15g}" for x in row) + "\n")
    path.write_text(buf.getvalue())


def _write_json_table(path: Path, cfg: ScenarioConfig, run: dict) -> None:
    cols = _columns(cfg)
    doc = {
        "metadata": _metadata_lines(cfg, run),
        "columns": cols,
        "data": {c: [float(x) for x in run["table"][c]] for c in cols},
    }
    path.write_text(json.dumps(doc, indent=1) + "\n")


def run_scenario(cfg: ScenarioConfig) -> list[dict]:
    """Run every q value of ``cfg`` and write its output files.

    Returns one record per run with keys ``tag``, ``params``, ``table``,
    ``summary`` and ``files``.
    """
    out = Path(cfg.out)
    out.mkdir(parents=True, exist_ok=True)
    stem = cfg.preset or "run"
    runs = [_run_one(cfg, params) for params in cfg.model_params()]
    for run in runs:
        base = out / f"{stem}_{run['tag']}"
        if cfg.format is OutputFormat.CSV:
            table_path = base.with_name(base.name + ".csv")
            _write_csv(table_path, cfg, run)
        else:
            table_path = base.with_name(base.name + ".table.json")
            _write_json_table(table_path, cfg, run)
        summary_path = base.with_name(base.name + ".summary.json")
        summary_path.write_text(json.dumps(run["summary"], indent=1) + "\n")
        run["files"] = [table_path, summary_path]
    index = out / f"{stem}_summary.json"
    index.write_text(json.dumps({"config": config_to_text(cfg), "runs": [r["summary"] for r in runs]}, indent=1) + "\n")
    return runs


def main(argv: list[str] | None = None) -> int:
    argv = sys.argv[1:] if argv is None else argv
    try:
        cfg = parse_config(argv)
        runs = run_scenario(cfg)
    except ConfigError as exc:
        print(f"qdicke: error: {exc}", file=sys.stderr)
        return 2
    except OSError as exc:
        print(f"qdicke: I/O error: {exc}", file=sys.stderr)
        return 3
    for run in runs:
        print(" ".join(str(p) for p in run["files"]))
    return 0


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
