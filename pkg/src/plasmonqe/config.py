"""Scenario configuration: a sectioned key/value text file (INI dialect).

`default_config_text()` documents every key and its default; `--print-
default-config` on the CLI emits the same text.  Unknown keys are rejected
so typos fail loudly.
"""

from __future__ import annotations

import configparser
import io
from dataclasses import dataclass, field

import numpy as np

from .errors import ConfigError
from .greens import Geometry
from .interface import InterfaceModel
from .materials import (
    DEFAULT_SURROGATE,
    DrudeParams,
    SurrogateDPerp,
    load_dparam_table,
)
from .quadrature import QuadratureSpec
from .spectral import EmitterParams, make_frequency_grid, surface_resonance_estimate

# Coupling scale calibrated so the shipped surrogate at z0 = 2.9 nm binds a
# QE-SPP state while the classical (d = 0) response at the same height does
# not; see README for the calibration procedure.  Not a literature value.
DEFAULT_ALPHA_EV_NM3 = 1600.0

_DEFAULT_TEXT = """\
# plasmonqe scenario configuration (INI syntax, UTF-8)

[material]
# d-parameter source: surrogate | lra | table | vacuum
#   surrogate - built-in single-pole d_perp model (fields below)
#   lra       - classical local response, d_perp = d_par = 0
#   table     - CSV file (schema: omega_ev,re_dperp_nm,im_dperp_nm,re_dpar_nm,im_dpar_nm)
#   vacuum    - no interface at all: free emitters in the dielectric
kind = surrogate
omega_p_ev = 5.9
gamma_p_ev = 0.1
# dparam_csv = /path/to/dparams.csv   (required for kind = table)
surrogate_d_inf_re_nm = 0.05
surrogate_d_inf_im_nm = 0.02
surrogate_amplitude_ev2_nm = 2.0
surrogate_pole_ev = 4.6
surrogate_width_ev = 1.2

[geometry]
eps_d = 1.0
z0_nm = 2.9
n_emitters = 1
separation_nm = 0.0

[emitter]
omega0_ev = 2.3
alpha_ev_nm3 = 1600.0
# comma-separated complex amplitudes, one per emitter, |a|_2 <= 1
initial_amplitudes = 1

[grid]
# The window must extend well past any dressed-state energy: a cutoff that
# truncates sizable spectral weight detaches an artificial discrete state
# above the band and corrupts long-time dynamics.  8 eV is safe for
# couplings up to roughly twice the default alpha.
omega_min_ev = 0.02
omega_max_ev = 8.0
omega_count = 2500
t_final = 1000.0
dt = 0.0125

[tolerances]
quad_rel_tol = 1e-9
quad_abs_tol = 1e-13
tail_cut_tol = 1e-14
max_panels = 2000
root_tol_ev = 1e-10

[output]
directory = out
stride = 1
"""

_KNOWN_KEYS = {
    "material": {
        "kind",
        "omega_p_ev",
        "gamma_p_ev",
        "dparam_csv",
        "surrogate_d_inf_re_nm",
        "surrogate_d_inf_im_nm",
        "surrogate_amplitude_ev2_nm",
        "surrogate_pole_ev",
        "surrogate_width_ev",
    },
    "geometry": {"eps_d", "z0_nm", "n_emitters", "separation_nm"},
    "emitter": {"omega0_ev", "alpha_ev_nm3", "initial_amplitudes"},
    "grid": {"omega_min_ev", "omega_max_ev", "omega_count", "t_final", "dt"},
    "tolerances": {
        "quad_rel_tol",
        "quad_abs_tol",
        "tail_cut_tol",
        "max_panels",
        "root_tol_ev",
    },
    "output": {"directory", "stride"},
}


@dataclass(frozen=True)
class ScenarioConfig:
    """Validated scenario: material, geometry, emitters, grids, tolerances."""

    material_kind: str
    drude: DrudeParams
    dsource: object  # table/surrogate/None; "vacuum" disables reflection
    eps_d: float
    z0_nm: float
    n_emitters: int
    separation_nm: float
    emitter: EmitterParams
    initial_amplitudes: tuple
    omega_min_ev: float
    omega_max_ev: float
    omega_count: int
    t_final: float
    dt: float
    quad: QuadratureSpec
    root_tol_ev: float
    out_dir: str
    stride: int
    raw: dict = field(repr=False, default_factory=dict)

    @property
    def include_reflection(self) -> bool:
        return self.material_kind != "vacuum"

    def interface_model(self) -> InterfaceModel:
        return InterfaceModel(self.eps_d, self.drude, self.dsource)

    def geometry(self) -> Geometry:
        return Geometry.linear(self.z0_nm, self.n_emitters, self.separation_nm)

    def frequency_grid(self) -> np.ndarray:
        lo, hi = self.omega_min_ev, self.omega_max_ev
        if self.material_kind == "table":
            # no extrapolation of tabulated d-parameters: clip to the table
            lo = max(lo, float(self.dsource.omega_ev[0]))
            hi = min(hi, float(self.dsource.omega_ev[-1]))
            if not lo < hi:
                raise ConfigError(
                    "frequency window does not overlap the d-parameter table"
                )
        m = self.interface_model()
        peak = surface_resonance_estimate(m)
        return make_frequency_grid(
            lo, hi, self.omega_count, peak=peak, half_width=5.0 * self.drude.gamma_p_ev
        )

    def summary_dict(self) -> dict:
        return {section: dict(values) for section, values in self.raw.items()}


def default_config_text() -> str:
    return _DEFAULT_TEXT


def _parse_amplitudes(text: str, n: int) -> tuple:
    parts = [p.strip() for p in text.split(",") if p.strip()]
    if len(parts) != n:
        raise ConfigError(
            f"initial_amplitudes has {len(parts)} entries for {n} emitter(s)"
        )
    try:
        amps = tuple(complex(p.replace(" ", "")) for p in parts)
    except ValueError as exc:
        raise ConfigError(f"bad initial_amplitudes: {exc}") from None
    if np.linalg.norm(amps) > 1.0 + 1e-9:
        raise ConfigError("initial amplitudes must satisfy |a|_2 <= 1")
    return amps


def load_config(source) -> ScenarioConfig:
    """Parse and validate a scenario file (path, text, or open stream)."""
    parser = configparser.ConfigParser(inline_comment_prefixes=("#", ";"))
    try:
        if hasattr(source, "read"):
            parser.read_file(source)
        elif "\n" in str(source) or "=" in str(source):
            parser.read_file(io.StringIO(str(source)))
        else:
            with open(source, "r", encoding="utf-8") as fh:
                parser.read_file(fh)
    except (OSError, configparser.Error) as exc:
        raise ConfigError(f"cannot parse configuration: {exc}") from exc

    defaults = configparser.ConfigParser(inline_comment_prefixes=("#", ";"))
    defaults.read_string(_DEFAULT_TEXT)

    for section in parser.sections():
        if section not in _KNOWN_KEYS:
            raise ConfigError(f"unknown configuration section [{section}]")
        for key in parser[section]:
            if key not in _KNOWN_KEYS[section]:
                raise ConfigError(f"unknown key '{key}' in section [{section}]")

    def get(section, key, cast=str):
        if parser.has_option(section, key):
            raw = parser.get(section, key)
        elif defaults.has_option(section, key):
            raw = defaults.get(section, key)
        else:
            raise ConfigError(f"missing required key {section}.{key}")
        try:
            return cast(raw)
        except ValueError as exc:
            raise ConfigError(f"bad value for {section}.{key}: {exc}") from None

    kind = get("material", "kind").strip().lower()
    if kind not in ("surrogate", "lra", "table", "vacuum"):
        raise ConfigError(f"material.kind must be surrogate|lra|table|vacuum, got {kind!r}")

    try:
        drude = DrudeParams(get("material", "omega_p_ev", float), get("material", "gamma_p_ev", float))
    except ValueError as exc:
        raise ConfigError(str(exc)) from None

    if kind == "table":
        if not parser.has_option("material", "dparam_csv"):
            raise ConfigError("material.dparam_csv is required for kind = table")
        try:
            dsource = load_dparam_table(parser.get("material", "dparam_csv"))
        except ValueError as exc:
            raise ConfigError(f"d-parameter table rejected: {exc}") from None
    elif kind == "surrogate":
        explicit = any(
            parser.has_option("material", k)
            for k in (
                "surrogate_d_inf_re_nm",
                "surrogate_d_inf_im_nm",
                "surrogate_amplitude_ev2_nm",
                "surrogate_pole_ev",
                "surrogate_width_ev",
            )
        )
        if explicit:
            try:
                dsource = SurrogateDPerp(
                    d_inf_nm=get("material", "surrogate_d_inf_re_nm", float)
                    + 1j * get("material", "surrogate_d_inf_im_nm", float),
                    amplitude_ev2_nm=get("material", "surrogate_amplitude_ev2_nm", float),
                    pole_ev=get("material", "surrogate_pole_ev", float),
                    width_ev=get("material", "surrogate_width_ev", float),
                )
            except ValueError as exc:
                raise ConfigError(str(exc)) from None
        else:
            dsource = DEFAULT_SURROGATE
    else:  # lra or vacuum
        dsource = None

    n = get("geometry", "n_emitters", int)
    if n < 1:
        raise ConfigError("n_emitters must be >= 1")
    separation = get("geometry", "separation_nm", float)
    if n > 1 and not separation > 0:
        raise ConfigError("separation_nm must be positive for n_emitters > 1")

    try:
        emitter = EmitterParams(get("emitter", "omega0_ev", float), get("emitter", "alpha_ev_nm3", float))
        quad = QuadratureSpec(
            rel_tol=get("tolerances", "quad_rel_tol", float),
            abs_tol=get("tolerances", "quad_abs_tol", float),
            tail_cut_tol=get("tolerances", "tail_cut_tol", float),
            max_panels=get("tolerances", "max_panels", int),
        )
    except ValueError as exc:
        raise ConfigError(str(exc)) from None

    omega_min = get("grid", "omega_min_ev", float)
    omega_max = get("grid", "omega_max_ev", float)
    if not 0 < omega_min < omega_max:
        raise ConfigError("need 0 < omega_min_ev < omega_max_ev")
    omega0 = emitter.omega0_ev
    if not omega_min < omega0 < omega_max:
        raise ConfigError("omega0_ev must lie strictly inside the frequency window")

    amps_default = "1" + ",0" * (n - 1)
    amps_text = (
        parser.get("emitter", "initial_amplitudes")
        if parser.has_option("emitter", "initial_amplitudes")
        else amps_default
    )
    amplitudes = _parse_amplitudes(amps_text, n)

    stride = get("output", "stride", int)
    if stride < 1:
        raise ConfigError("output.stride must be >= 1")

    raw = {s: dict(parser[s]) for s in parser.sections()}
    cfg = ScenarioConfig(
        material_kind=kind,
        drude=drude,
        dsource=dsource,
        eps_d=get("geometry", "eps_d", float),
        z0_nm=get("geometry", "z0_nm", float),
        n_emitters=n,
        separation_nm=separation,
        emitter=emitter,
        initial_amplitudes=amplitudes,
        omega_min_ev=omega_min,
        omega_max_ev=omega_max,
        omega_count=get("grid", "omega_count", int),
        t_final=get("grid", "t_final", float),
        dt=get("grid", "dt", float),
        quad=quad,
        root_tol_ev=get("tolerances", "root_tol_ev", float),
        out_dir=get("output", "directory"),
        stride=stride,
        raw=raw,
    )
    try:
        cfg.geometry()
    except ValueError as exc:
        raise ConfigError(str(exc)) from None
    if not (cfg.eps_d > 0):
        raise ConfigError("eps_d must be positive")
    if cfg.t_final <= 0 or cfg.dt <= 0:
        raise ConfigError("t_final and dt must be positive")
    return cfg
