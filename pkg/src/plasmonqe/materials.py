"""Bulk Drude response and frequency-dependent surface-response parameters.

The metal bulk is a classical Drude dielectric; quantum surface corrections
enter through complex, frequency-dependent d-parameters supplied either as
a tabulated curve (CSV) or as a built-in single-pole analytic surrogate.
All objects are immutable after construction.
"""

from __future__ import annotations

import csv
import io
from dataclasses import dataclass

import numpy as np

from .errors import TableRangeError

DPARAM_CSV_HEADER = ["omega_ev", "re_dperp_nm", "im_dperp_nm", "re_dpar_nm", "im_dpar_nm"]


@dataclass(frozen=True)
class DrudeParams:
    """Bulk Drude parameters: plasma frequency and damping, both in eV."""

    omega_p_ev: float
    gamma_p_ev: float = 0.0

    def __post_init__(self):
        if not self.omega_p_ev > 0:
            raise ValueError("omega_p_ev must be positive")
        if self.gamma_p_ev < 0:
            raise ValueError("gamma_p_ev must be non-negative")


def drude_epsilon(p: DrudeParams, omega: float) -> complex:
    """Drude dielectric function 1 - omega_p^2 / (omega (omega + i gamma_p)).

    Accepts a scalar or ndarray frequency (eV, > 0) and returns the complex
    relative permittivity.  Im(eps) >= 0 whenever gamma_p >= 0.
    """
    w = np.asarray(omega, dtype=float)
    if np.any(w <= 0):
        raise ValueError("drude_epsilon requires omega > 0")
    eps = 1.0 - p.omega_p_ev**2 / (w * (w + 1j * p.gamma_p_ev))
    return complex(eps) if np.isscalar(omega) else eps


@dataclass(frozen=True)
class DParamTable:
    """Tabulated complex d-parameters on a strictly increasing frequency grid.

    Evaluation interpolates real and imaginary parts linearly and refuses to
    extrapolate: the surface response is unconstrained outside the fitted
    window.  A table is charge-neutral when d_par vanishes identically.
    """

    omega_ev: np.ndarray
    d_perp_nm: np.ndarray
    d_par_nm: np.ndarray

    def __post_init__(self):
        w = np.asarray(self.omega_ev, dtype=float)
        dp = np.asarray(self.d_perp_nm, dtype=complex)
        dl = np.asarray(self.d_par_nm, dtype=complex)
        if w.ndim != 1 or w.size < 2:
            raise ValueError("d-parameter table needs at least two nodes")
        if dp.shape != w.shape or dl.shape != w.shape:
            raise ValueError("d-parameter columns must match the frequency grid")
        if np.any(np.diff(w) <= 0):
            bad = int(np.argmax(np.diff(w) <= 0)) + 1
            raise ValueError(f"frequencies must be strictly increasing (row {bad})")
        if np.any(dp.imag < 0):
            bad = int(np.argmax(dp.imag < 0))
            raise ValueError(f"Im d_perp must be >= 0 (row {bad})")
        for arr in (w, dp, dl):
            arr.setflags(write=False)
        object.__setattr__(self, "omega_ev", w)
        object.__setattr__(self, "d_perp_nm", dp)
        object.__setattr__(self, "d_par_nm", dl)

    @property
    def charge_neutral(self) -> bool:
        return bool(np.all(self.d_par_nm == 0))

    def _interp(self, values, omega):
        w = np.asarray(omega, dtype=float)
        lo, hi = self.omega_ev[0], self.omega_ev[-1]
        if np.any(w < lo) or np.any(w > hi):
            raise TableRangeError(
                f"omega outside d-parameter table range [{lo:g}, {hi:g}] eV"
            )
        out = np.interp(w, self.omega_ev, values.real) + 1j * np.interp(
            w, self.omega_ev, values.imag
        )
        return complex(out) if np.isscalar(omega) else out

    def d_perp(self, omega):
        return self._interp(self.d_perp_nm, omega)

    def d_par(self, omega):
        return self._interp(self.d_par_nm, omega)


@dataclass(frozen=True)
class SurrogateDPerp:
    """Single-pole analytic stand-in for an ab initio d_perp(omega) curve.

    d_perp(omega) = d_inf + amplitude / (pole^2 - omega^2 - i omega width).

    The restrictions amplitude >= 0 (real) and Im(d_inf) >= 0 guarantee a
    dissipative surface response, Im d_perp(omega) >= 0 for omega > 0, and a
    spill-out-like Re d_perp > 0 below the pole when Re(d_inf) >= 0.
    The charge-neutral interface has d_par = 0.
    """

    d_inf_nm: complex = 0.0
    amplitude_ev2_nm: float = 0.0
    pole_ev: float = 1.0
    width_ev: float = 1.0

    def __post_init__(self):
        if not self.width_ev > 0:
            raise ValueError("pole width must be positive")
        if not self.pole_ev > 0:
            raise ValueError("pole frequency must be positive")
        if self.amplitude_ev2_nm < 0:
            raise ValueError("amplitude must be non-negative for Im d_perp >= 0")
        if complex(self.d_inf_nm).imag < 0:
            raise ValueError("Im d_inf must be non-negative")

    def d_perp(self, omega):
        w = np.asarray(omega, dtype=float)
        val = self.d_inf_nm + self.amplitude_ev2_nm / (
            self.pole_ev**2 - w**2 - 1j * w * self.width_ev
        )
        return complex(val) if np.isscalar(omega) else val

    def d_par(self, omega):
        w = np.asarray(omega, dtype=float)
        return 0j if np.isscalar(omega) else np.zeros(w.shape, dtype=complex)


# Shipped default: spill-out-like sign (Re d_perp > 0 below the pole) with a
# Landau-damping-scale imaginary part, so quantum-surface-vs-classical
# comparisons are runnable without external data.
DEFAULT_SURROGATE = SurrogateDPerp(
    d_inf_nm=0.05 + 0.02j,
    amplitude_ev2_nm=2.0,
    pole_ev=4.6,
    width_ev=1.2,
)


def eval_dperp(source, omega):
    """Evaluate d_perp (nm) from a table or surrogate; None means d = 0."""
    if source is None:
        w = np.asarray(omega, dtype=float)
        return 0j if np.isscalar(omega) else np.zeros(w.shape, dtype=complex)
    return source.d_perp(omega)


def eval_dpar(source, omega):
    """Evaluate d_par (nm) from a table or surrogate; None means d = 0."""
    if source is None:
        w = np.asarray(omega, dtype=float)
        return 0j if np.isscalar(omega) else np.zeros(w.shape, dtype=complex)
    return source.d_par(omega)


def load_dparam_table(source) -> DParamTable:
    """Load a d-parameter table from a CSV path, byte/text stream, or string.

    Schema: header `omega_ev,re_dperp_nm,im_dperp_nm,re_dpar_nm,im_dpar_nm`,
    one row per node, frequencies ascending.  Violations are rejected with
    the offending row index.
    """
    if hasattr(source, "read"):
        raw = source.read()
        text = raw.decode("utf-8") if isinstance(raw, bytes) else raw
    elif isinstance(source, bytes):
        text = source.decode("utf-8")
    elif "\n" in str(source) or "," in str(source):
        text = str(source)
    else:
        with open(source, "r", encoding="utf-8") as fh:
            text = fh.read()

    reader = csv.reader(io.StringIO(text))
    try:
        header = next(reader)
    except StopIteration:
        raise ValueError("empty d-parameter CSV") from None
    if [h.strip() for h in header] != DPARAM_CSV_HEADER:
        raise ValueError(
            f"bad d-parameter CSV header {header!r}; expected {DPARAM_CSV_HEADER}"
        )
    omegas, dperp, dpar = [], [], []
    for idx, row in enumerate(reader, start=1):
        if not row or all(not c.strip() for c in row):
            continue
        if len(row) != 5:
            raise ValueError(f"row {idx}: expected 5 columns, got {len(row)}")
        try:
            vals = [float(c) for c in row]
        except ValueError as exc:
            raise ValueError(f"row {idx}: {exc}") from None
        omegas.append(vals[0])
        dperp.append(vals[1] + 1j * vals[2])
        dpar.append(vals[3] + 1j * vals[4])
        if len(omegas) >= 2 and omegas[-1] <= omegas[-2]:
            raise ValueError(f"row {idx}: frequencies must be strictly increasing")
        if vals[2] < 0:
            raise ValueError(f"row {idx}: Im d_perp must be >= 0")
    return DParamTable(np.array(omegas), np.array(dperp), np.array(dpar))


def save_dparam_table(table: DParamTable, path):
    """Write a table in the documented CSV schema (round-trips bit-exactly)."""
    with open(path, "w", encoding="utf-8", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(DPARAM_CSV_HEADER)
        for w, dp, dl in zip(table.omega_ev, table.d_perp_nm, table.d_par_nm):
            writer.writerow(
                [
                    repr(float(w)),
                    repr(float(dp.real)),
                    repr(float(dp.imag)),
                    repr(float(dl.real)),
                    repr(float(dl.imag)),
                ]
            )
