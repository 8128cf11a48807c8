import io

import numpy as np
import pytest

from plasmonqe.errors import TableRangeError
from plasmonqe.materials import (
    DEFAULT_SURROGATE,
    DParamTable,
    DrudeParams,
    SurrogateDPerp,
    drude_epsilon,
    eval_dperp,
    load_dparam_table,
    save_dparam_table,
)


def test_drude_plasma_zero():
    p = DrudeParams(5.9, 0.0)
    assert drude_epsilon(p, 5.9) == pytest.approx(0.0, abs=1e-14)


def test_drude_high_frequency_limit():
    p = DrudeParams(5.9, 0.1)
    assert drude_epsilon(p, 5000.0) == pytest.approx(1.0, abs=1e-4)


def test_drude_reference_value():
    # direct complex arithmetic for omega_p = 5.9, gamma_p = 0.1 at 2.3 eV
    want = 1.0 - 5.9**2 / (2.3 * (2.3 + 0.1j))
    got = drude_epsilon(DrudeParams(5.9, 0.1), 2.3)
    assert got == pytest.approx(want, abs=1e-14)
    assert got.real == pytest.approx(-5.5679, abs=5e-5)
    assert got.imag == pytest.approx(0.2856, abs=5e-5)


def test_drude_rejects_nonpositive_frequency():
    p = DrudeParams(5.9, 0.1)
    with pytest.raises(ValueError):
        drude_epsilon(p, 0.0)
    with pytest.raises(ValueError):
        drude_epsilon(p, -1.0)


def test_drude_parameter_validation():
    with pytest.raises(ValueError):
        DrudeParams(0.0, 0.1)
    with pytest.raises(ValueError):
        DrudeParams(5.9, -0.1)


def test_drude_dissipativity_scan():
    p_lossy = DrudeParams(5.9, 0.1)
    p_lossless = DrudeParams(5.9, 0.0)
    w = np.linspace(1e-3, 59.0, 400)
    eps = drude_epsilon(p_lossy, w)
    assert np.all(eps.imag > 0)
    assert np.all(np.abs(drude_epsilon(p_lossless, w).imag) == 0)


CSV_TEXT = """omega_ev,re_dperp_nm,im_dperp_nm,re_dpar_nm,im_dpar_nm
1.0,0.2,0.05,0.0,0.0
2.0,0.3,0.10,0.0,0.0
3.0,-0.1,0.20,0.0,0.0
"""


def test_table_load_and_nodes():
    t = load_dparam_table(io.StringIO(CSV_TEXT))
    assert t.omega_ev.size == 3
    assert t.charge_neutral
    assert t.d_perp(2.0) == pytest.approx(0.3 + 0.1j)


def test_table_midpoint_is_mean():
    t = load_dparam_table(io.StringIO(CSV_TEXT))
    assert t.d_perp(1.5) == pytest.approx(0.5 * (0.2 + 0.05j) + 0.5 * (0.3 + 0.1j))


def test_table_rejects_out_of_range():
    t = load_dparam_table(io.StringIO(CSV_TEXT))
    with pytest.raises(TableRangeError):
        t.d_perp(0.5)
    with pytest.raises(TableRangeError):
        t.d_perp(3.5)


def test_table_rejects_descending_rows():
    bad = CSV_TEXT.replace("3.0,-0.1", "1.5,-0.1")
    with pytest.raises(ValueError, match="row 3"):
        load_dparam_table(io.StringIO(bad))


def test_table_rejects_negative_im_dperp():
    bad = CSV_TEXT.replace("0.3,0.10", "0.3,-0.10")
    with pytest.raises(ValueError, match="row 2"):
        load_dparam_table(io.StringIO(bad))


def test_table_rejects_bad_header():
    with pytest.raises(ValueError, match="header"):
        load_dparam_table("omega,re,im,re,im\n1,0,0,0,0\n")


def test_zero_table_evaluates_to_zero():
    text = "omega_ev,re_dperp_nm,im_dperp_nm,re_dpar_nm,im_dpar_nm\n1,0,0,0,0\n5,0,0,0,0\n"
    t = load_dparam_table(text)
    w = np.linspace(1.0, 5.0, 17)
    assert np.all(t.d_perp(w) == 0)
    assert np.all(t.d_par(w) == 0)


def test_table_roundtrip_bit_exact(tmp_path):
    t = load_dparam_table(io.StringIO(CSV_TEXT))
    path = tmp_path / "d.csv"
    save_dparam_table(t, path)
    back = load_dparam_table(path)
    assert np.array_equal(back.omega_ev, t.omega_ev)
    assert np.array_equal(back.d_perp_nm, t.d_perp_nm)
    assert np.array_equal(back.d_par_nm, t.d_par_nm)


def test_table_continuity():
    t = load_dparam_table(io.StringIO(CSV_TEXT))
    w = np.linspace(1.0, 3.0, 4001)
    vals = t.d_perp(w)
    assert np.abs(np.diff(vals)).max() < 1e-3


def test_surrogate_at_pole():
    s = SurrogateDPerp(d_inf_nm=0.05, amplitude_ev2_nm=2.0, pole_ev=4.6, width_ev=1.2)
    want = 0.05 + 2.0 * 1j / (4.6 * 1.2)
    assert s.d_perp(4.6) == pytest.approx(want, rel=1e-14)


def test_surrogate_dissipative_everywhere():
    w = np.geomspace(1e-3, 100.0, 2000)
    assert np.all(DEFAULT_SURROGATE.d_perp(w).imag >= 0)
    assert np.all(DEFAULT_SURROGATE.d_par(w) == 0)


def test_default_surrogate_spill_out_sign():
    # Re d_perp > 0 below the pole
    w = np.linspace(0.5, DEFAULT_SURROGATE.pole_ev - 0.1, 50)
    assert np.all(DEFAULT_SURROGATE.d_perp(w).real > 0)


def test_surrogate_validation():
    with pytest.raises(ValueError):
        SurrogateDPerp(width_ev=0.0)
    with pytest.raises(ValueError):
        SurrogateDPerp(amplitude_ev2_nm=-1.0, width_ev=1.0)
    with pytest.raises(ValueError):
        SurrogateDPerp(d_inf_nm=-0.1j, width_ev=1.0)


def test_eval_dperp_dispatch():
    assert eval_dperp(None, 2.0) == 0
    assert eval_dperp(DEFAULT_SURROGATE, 2.0) == DEFAULT_SURROGATE.d_perp(2.0)
    arr = eval_dperp(None, np.array([1.0, 2.0]))
    assert arr.shape == (2,) and np.all(arr == 0)
