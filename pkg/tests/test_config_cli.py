import json
import shutil

import numpy as np
import pytest

from plasmonqe.cli import main
from plasmonqe.config import default_config_text, load_config
from plasmonqe.errors import ConfigError
from plasmonqe.materials import DEFAULT_SURROGATE

FAST_GRID = """
[grid]
omega_min_ev = 0.5
omega_max_ev = 6.0
omega_count = 160
t_final = 30.0
dt = 0.015

[tolerances]
quad_rel_tol = 1e-7
quad_abs_tol = 1e-11
"""


def write(tmp_path, name, text):
    p = tmp_path / name
    p.write_text(text, encoding="utf-8")
    return str(p)


def test_default_config_parses_and_matches_defaults():
    cfg = load_config(default_config_text())
    assert cfg.material_kind == "surrogate"
    assert cfg.dsource == DEFAULT_SURROGATE
    assert cfg.emitter.omega0_ev == 2.3
    assert cfg.z0_nm == 2.9
    assert cfg.n_emitters == 1
    assert cfg.include_reflection


def test_empty_config_uses_all_defaults():
    cfg = load_config("[material]\n")
    assert cfg.emitter.alpha_ev_nm3 == 1600.0
    assert cfg.omega_count == 2500


def test_unknown_key_rejected():
    with pytest.raises(ConfigError, match="unknown key"):
        load_config("[material]\nomega_q_ev = 1.0\n")
    with pytest.raises(ConfigError, match="unknown configuration section"):
        load_config("[materials]\n")


def test_invalid_values_rejected():
    with pytest.raises(ConfigError):
        load_config("[material]\nomega_p_ev = -1\n")
    with pytest.raises(ConfigError):
        load_config("[geometry]\nn_emitters = 2\nseparation_nm = 0\n")
    with pytest.raises(ConfigError):
        load_config("[emitter]\ninitial_amplitudes = 1, 1\n[geometry]\nn_emitters = 2\nseparation_nm = 5\n")
    with pytest.raises(ConfigError):
        load_config("[grid]\nomega_min_ev = 3.0\nomega_max_ev = 2.0\n")
    with pytest.raises(ConfigError, match="dparam_csv"):
        load_config("[material]\nkind = table\n")


def test_amplitude_parsing():
    cfg = load_config(
        "[geometry]\nn_emitters = 2\nseparation_nm = 5\n"
        "[emitter]\ninitial_amplitudes = 0.6, 0.4+0.4j\n"
    )
    assert cfg.initial_amplitudes == (0.6 + 0j, 0.4 + 0.4j)


def test_frequency_grid_clips_to_dparam_table(tmp_path):
    csv = write(
        tmp_path,
        "d.csv",
        "omega_ev,re_dperp_nm,im_dperp_nm,re_dpar_nm,im_dpar_nm\n"
        "1.0,0.1,0.02,0,0\n6.0,0.1,0.02,0,0\n",
    )
    cfg = load_config(f"[material]\nkind = table\ndparam_csv = {csv}\n")
    grid = cfg.frequency_grid()
    assert grid[0] >= 1.0 and grid[-1] <= 6.0


def test_print_default_config(capsys):
    assert main(["--print-default-config"]) == 0
    out = capsys.readouterr().out
    assert "[material]" in out
    load_config(out)  # the printed text is itself a valid configuration


def test_cli_selftest():
    assert main(["selftest"]) == 0


def test_cli_config_error_exit_code(tmp_path):
    bad = write(tmp_path, "bad.ini", "[material]\nkind = nonsense\n")
    assert main(["spectral", "--config", bad, "--out", str(tmp_path / "o")]) == 2


def test_cli_missing_config_file(tmp_path):
    assert main(["spectral", "--config", str(tmp_path / "none.ini")]) == 2


def test_cli_numerical_error_exit_code(tmp_path):
    cfg = write(
        tmp_path,
        "starved.ini",
        "[grid]\nomega_min_ev = 0.5\nomega_max_ev = 6.0\nomega_count = 40\n"
        "[tolerances]\nquad_rel_tol = 1e-14\nquad_abs_tol = 1e-300\nmax_panels = 4\n",
    )
    assert main(["spectral", "--config", cfg, "--out", str(tmp_path / "o")]) == 3


def test_cli_spectral_run_and_determinism(tmp_path):
    cfg = write(tmp_path, "s.ini", "[material]\nkind = lra\n" + FAST_GRID)
    out1, out2 = tmp_path / "o1", tmp_path / "o2"
    assert main(["spectral", "--config", cfg, "--out", str(out1)]) == 0
    assert main(["spectral", "--config", cfg, "--out", str(out2)]) == 0
    b1 = (out1 / "spectral.csv").read_bytes()
    assert b1 == (out2 / "spectral.csv").read_bytes()
    header = b1.decode().splitlines()[0]
    assert header == "omega_ev,J00_ev"
    run = json.loads((out1 / "run.json").read_text())
    assert run["stage"] == "spectral"
    assert "peak_omega_ev" in run["report"]
    assert run["config"]["material"]["kind"] == "lra"


def test_cli_spectrum_run(tmp_path):
    cfg = write(
        tmp_path,
        "sp.ini",
        "[material]\nkind = surrogate\n[geometry]\nz0_nm = 2.9\n" + FAST_GRID,
    )
    out = tmp_path / "o"
    assert main(["spectrum", "--config", cfg, "--out", str(out)]) == 0
    lines = (out / "bound_states.csv").read_text().strip().splitlines()
    assert lines[0] == "channel,varpi_b_ev,weight_L,exists"
    assert len(lines) == 2


def test_cli_dynamics_run(tmp_path):
    cfg = write(tmp_path, "dy.ini", "[material]\nkind = vacuum\n" + FAST_GRID)
    out = tmp_path / "o"
    assert main(["dynamics", "--config", cfg, "--out", str(out)]) == 0
    traj = (out / "trajectory.csv").read_text().strip().splitlines()
    assert traj[0] == "t_hbar_per_ev,re_a1,im_a1,pop1,gamma1_ev"
    first = traj[1].split(",")
    assert float(first[1]) == 1.0 and float(first[3]) == 1.0
    decay = (out / "decay_rate.csv").read_text().splitlines()
    assert decay[0] == "t_hbar_per_ev,gamma1_ev"


def test_cli_concurrence_run(tmp_path):
    cfg = write(
        tmp_path,
        "co.ini",
        "[material]\nkind = lra\n[geometry]\nn_emitters = 2\nseparation_nm = 10\n"
        "[emitter]\ninitial_amplitudes = 1, 0\n" + FAST_GRID,
    )
    out = tmp_path / "o"
    assert main(["concurrence", "--config", cfg, "--out", str(out)]) == 0
    lines = (out / "concurrence.csv").read_text().strip().splitlines()
    assert lines[0] == "t_hbar_per_ev,concurrence,steady_prediction"
    run = json.loads((out / "run.json").read_text())
    assert "n_bound_states" in run["report"]


def test_cli_concurrence_requires_two_emitters(tmp_path):
    cfg = write(tmp_path, "c1.ini", "[material]\nkind = lra\n" + FAST_GRID)
    assert main(["concurrence", "--config", cfg, "--out", str(tmp_path / "o")]) == 2


def test_trajectory_csv_two_emitters(tmp_path):
    cfg = write(
        tmp_path,
        "dy2.ini",
        "[material]\nkind = vacuum\n[geometry]\nn_emitters = 2\nseparation_nm = 8\n"
        "[emitter]\ninitial_amplitudes = 0.6, 0.8\n" + FAST_GRID,
    )
    out = tmp_path / "o"
    assert main(["dynamics", "--config", cfg, "--out", str(out)]) == 0
    header = (out / "trajectory.csv").read_text().splitlines()[0]
    assert header == "t_hbar_per_ev,re_a1,im_a1,re_a2,im_a2,pop1,pop2,gamma1_ev"
