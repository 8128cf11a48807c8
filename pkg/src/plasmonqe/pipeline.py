"""End-to-end runs: configuration in, CSV artifacts and a run summary out.

Every run writes its artifacts plus a `run.json` carrying the echoed
configuration, package/library versions, and the tolerances achieved, so a
result directory is self-describing.  Outputs are deterministic: the same
configuration produces bit-identical CSV files.
"""

from __future__ import annotations

import json
import os

import numpy as np
import scipy

from . import __version__
from .config import ScenarioConfig
from .dynamics import (
    build_kernel,
    export_decay_csv,
    export_trajectory_csv,
    solve_volterra,
)
from .entanglement import (
    concurrence_series,
    export_concurrence_csv,
    steady_concurrence,
)
from .errors import ConfigError
from .spectral import build_spectral_table, export_spectral_csv, peak_report
from .spectrum import asymptotic_Z, export_bound_state_csv, find_bound_states


def _write_summary(out_dir: str, cfg: ScenarioConfig, stage: str, report: dict) -> str:
    path = os.path.join(out_dir, "run.json")
    payload = {
        "stage": stage,
        "config": cfg.summary_dict(),
        "versions": {
            "plasmonqe": __version__,
            "numpy": np.__version__,
            "scipy": scipy.__version__,
        },
        "tolerances": {
            "quad_rel_tol": cfg.quad.rel_tol,
            "quad_abs_tol": cfg.quad.abs_tol,
            "tail_cut_tol": cfg.quad.tail_cut_tol,
            "max_panels": cfg.quad.max_panels,
            "root_tol_ev": cfg.root_tol_ev,
        },
        "report": report,
    }
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(payload, fh, indent=2, sort_keys=True)
        fh.write("\n")
    return path


def _build_table(cfg: ScenarioConfig, n_jobs: int = 1):
    return build_spectral_table(
        cfg.interface_model(),
        cfg.geometry(),
        cfg.emitter,
        cfg.frequency_grid(),
        cfg.quad,
        include_reflection=cfg.include_reflection,
        n_jobs=n_jobs,
    )


def run_spectral(cfg: ScenarioConfig, out_dir: str, n_jobs: int = 1) -> dict:
    """Spectral CSV plus peak report (peak frequency, FWHM, J/Gamma_0)."""
    os.makedirs(out_dir, exist_ok=True)
    table = _build_table(cfg, n_jobs)
    csv_path = os.path.join(out_dir, "spectral.csv")
    export_spectral_csv(table, csv_path)
    report = peak_report(table, cfg.emitter)
    report["csv"] = os.path.basename(csv_path)
    _write_summary(out_dir, cfg, "spectral", report)
    return report


def run_spectrum(cfg: ScenarioConfig, out_dir: str, n_jobs: int = 1) -> dict:
    """Bound-state CSV: one row per channel with energy, weight, existence."""
    os.makedirs(out_dir, exist_ok=True)
    table = _build_table(cfg, n_jobs)
    states = find_bound_states(table, cfg.emitter.omega0_ev, root_tol_ev=cfg.root_tol_ev)
    csv_path = os.path.join(out_dir, "bound_states.csv")
    export_bound_state_csv(states, table.n_channels, csv_path)
    report = {
        "csv": os.path.basename(csv_path),
        "n_bound_states": len(states),
        "bound_states": [
            {"channel": s.channel, "varpi_b_ev": s.varpi_b_ev, "weight_L": s.weight_L}
            for s in states
        ],
        "band_min_ev": float(table.omega_ev[0]),
        "band_max_ev": float(table.omega_ev[-1]),
    }
    _write_summary(out_dir, cfg, "spectrum", report)
    return report


def _solve(cfg: ScenarioConfig, table) -> "AmplitudeTrajectory":
    kernel = build_kernel(table, cfg.t_final, cfg.dt)
    return solve_volterra(kernel, cfg.emitter, cfg.initial_amplitudes, cfg.t_final, cfg.dt)


def run_dynamics(cfg: ScenarioConfig, out_dir: str, n_jobs: int = 1) -> dict:
    """Trajectory CSV and decay-rate CSV from the Volterra solution."""
    os.makedirs(out_dir, exist_ok=True)
    table = _build_table(cfg, n_jobs)
    traj = _solve(cfg, table)
    traj_path = os.path.join(out_dir, "trajectory.csv")
    decay_path = os.path.join(out_dir, "decay_rate.csv")
    export_trajectory_csv(traj, traj_path, stride=cfg.stride)
    export_decay_csv(traj, decay_path, stride=cfg.stride)
    pops = traj.populations
    report = {
        "trajectory_csv": os.path.basename(traj_path),
        "decay_csv": os.path.basename(decay_path),
        "final_population": [float(p) for p in pops[-1]],
        "max_norm": float(traj.norm().max()),
        "n_steps": int(traj.times.size - 1),
    }
    _write_summary(out_dir, cfg, "dynamics", report)
    return report


def run_concurrence(cfg: ScenarioConfig, out_dir: str, n_jobs: int = 1) -> dict:
    """Concurrence CSV with the bound-state steady prediction overlay."""
    if cfg.n_emitters != 2:
        raise ConfigError("concurrence requires exactly two emitters")
    os.makedirs(out_dir, exist_ok=True)
    table = _build_table(cfg, n_jobs)
    states = find_bound_states(table, cfg.emitter.omega0_ev, root_tol_ev=cfg.root_tol_ev)
    traj = _solve(cfg, table)
    values = concurrence_series(traj.amplitudes[:: cfg.stride])
    times = traj.times[:: cfg.stride]
    steady = steady_concurrence(states, times)
    csv_path = os.path.join(out_dir, "concurrence.csv")
    export_concurrence_csv(times, values, steady, csv_path)

    z_inf = asymptotic_Z(states, traj.times[-1], 2)
    report = {
        "csv": os.path.basename(csv_path),
        "n_bound_states": len(states),
        "bound_states": [
            {"channel": s.channel, "varpi_b_ev": s.varpi_b_ev, "weight_L": s.weight_L}
            for s in states
        ],
        "late_concurrence": float(values[-1]),
        "steady_prediction_at_T": float(steady_concurrence(states, traj.times[-1])),
        "asymptotic_population": [float(abs(z) ** 2) for z in z_inf],
    }
    if len(states) == 2:
        gap = abs(states[0].varpi_b_ev - states[1].varpi_b_ev)
        report["beat_period"] = float(2.0 * np.pi / gap)
    _write_summary(out_dir, cfg, "concurrence", report)
    return report
