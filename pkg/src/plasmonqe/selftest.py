"""Fast built-in oracle suite behind the `selftest` CLI subcommand.

Each check compares an implementation path against an independent closed
form or limit; together they exercise every module in seconds (no table
builds, no long dynamics).
"""

from __future__ import annotations

import math

import numpy as np
from scipy.special import exp1

from .constants import HBAR_C_EV_NM
from .dynamics import MemoryKernel, build_kernel, solve_volterra
from .entanglement import concurrence, concurrence_closed_form, reduced_density
from .greens import Geometry, im_gzz, im_gzz_free
from .interface import InterfaceModel, check_boundary_conditions, kz, reflection_p
from .materials import DEFAULT_SURROGATE, DrudeParams, drude_epsilon
from .quadrature import QuadratureSpec
from .spectral import EmitterParams, SpectralTable, gamma0_free, spectral_element


def _check_drude():
    p = DrudeParams(5.9, 0.1)
    got = drude_epsilon(p, 2.3)
    want = 1.0 - 5.9**2 / (2.3 * (2.3 + 0.1j))
    return abs(got - want) < 1e-14, f"|delta|={abs(got - want):.2e}"


def _check_fresnel_reduction():
    m = InterfaceModel(1.0, DrudeParams(5.9, 0.1), None)
    worst = 0.0
    for w in np.linspace(0.5, 5.5, 12):
        ks = np.linspace(0.0, 0.2, 12)
        eps_m = m.eps_m(w)
        kzd = kz(w, ks, m.eps_d)
        kzm = kz(w, ks, eps_m)
        fresnel = (eps_m * kzd - m.eps_d * kzm) / (eps_m * kzd + m.eps_d * kzm)
        worst = max(worst, float(np.abs(reflection_p(m, w, ks) - fresnel).max()))
    return worst < 1e-13, f"max|delta|={worst:.2e}"


def _check_boundary_residuals():
    m = InterfaceModel(1.0, DrudeParams(5.9, 0.1), DEFAULT_SURROGATE)
    worst = 0.0
    for w in (2.0, 3.5, 4.2):
        for ks in (0.01, 0.1, 1.0):
            r1, r2 = check_boundary_conditions(m, w, ks)
            worst = max(worst, r1, r2)
    return worst < 1e-10, f"max residual={worst:.2e}"


def _check_free_space_rate():
    e = EmitterParams(2.3, 1000.0)
    g = Geometry.linear(2.9, 1)
    m = InterfaceModel(2.25, DrudeParams(5.9, 0.1), None)
    j_free = spectral_element(m, g, e, 2.3, 0, 0, QuadratureSpec(), include_reflection=False)
    ratio = 2.0 * math.pi * j_free / gamma0_free(e)
    return abs(ratio - 1.5) < 1e-9, f"2piJ/Gamma0={ratio:.12f} (want sqrt(2.25))"


def _check_coincidence_ldos():
    got = im_gzz_free(2.3, 0.0, 1.0)
    want = (2.3 / HBAR_C_EV_NM) / (6.0 * math.pi)
    return abs(got - want) < 1e-18, f"|delta|={abs(got - want):.2e}"


def _check_free_mode_integral():
    m = InterfaceModel(1.0, DrudeParams(5.9, 0.1), None)
    g = Geometry.linear(3.0, 2, 40.0)
    q = QuadratureSpec()
    got = im_gzz(m, g, q, 2.0, 0, 1, include_reflection=False)
    want = im_gzz_free(2.0, 40.0, 1.0)
    return abs(got - want) <= 1e-12 + 1e-9 * abs(want), f"|delta|={abs(got - want):.2e}"


def _ein(z):
    """Entire exponential integral Ein(z) = gamma + log z + E1(z)."""
    return np.euler_gamma + np.log(z) + exp1(z)


def _cauchy_fourier_segment(a, b, p, tau):
    """Int_a^b exp(-i omega tau)/(omega - p) d omega for complex p off [a, b].

    Uses Ein (entire) plus the continuous log change along the straight
    segment, which is always the principal arg of the endpoint ratio, so no
    branch cut of E1 is ever crossed.
    """
    if tau == 0.0:
        return np.log((b - p) / (a - p))
    va = 1j * tau * (a - p)
    vb = 1j * tau * (b - p)
    log_leg = math.log(abs(vb) / abs(va)) + 1j * np.angle(vb / va)
    return np.exp(-1j * tau * p) * (_ein(va) - _ein(vb) + log_leg)


def lorentzian_kernel_truncated(g2, wc, kap, a, b, tau):
    """Closed form of Int_a^b J(omega) exp(-i omega tau) d omega for the
    Lorentzian J = (g2/pi) kap / ((omega - wc)^2 + kap^2)."""
    pole = wc + 1j * kap
    val = _cauchy_fourier_segment(a, b, pole, tau) - _cauchy_fourier_segment(
        a, b, np.conj(pole), tau
    )
    return val * g2 / (2j * math.pi)


def _check_lorentzian_kernel():
    g2, wc, kap = 0.01, 2.5, 0.05
    grid = np.linspace(0.02, 5.0, 20001)
    J = (g2 / math.pi) * kap / ((grid - wc) ** 2 + kap**2)
    table = SpectralTable(grid, J[:, None, None])
    kern = build_kernel(table, 5.0, 0.02)
    worst = 0.0
    for idx in (0, 50, 250):
        tau = kern.taus[idx]
        want = lorentzian_kernel_truncated(g2, wc, kap, grid[0], grid[-1], tau)
        worst = max(worst, abs(kern.K[idx, 0, 0] - want) / g2)
    return worst < 1e-6, f"max rel delta={worst:.2e}"


def _check_free_evolution():
    taus = np.linspace(0.0, 10.0, 501)
    kern = MemoryKernel(taus, np.zeros((taus.size, 1, 1), dtype=complex))
    e = EmitterParams(2.3, 1.0)
    traj = solve_volterra(kern, e, [1.0], 10.0)
    drift = float(np.abs(np.abs(traj.amplitudes[:, 0]) - 1.0).max())
    phase = abs(traj.amplitudes[-1, 0] - np.exp(-1j * 2.3 * 10.0))
    return drift < 1e-12 and phase < 1e-9, f"norm drift={drift:.2e}, phase err={phase:.2e}"


def _check_concurrence():
    rng = np.random.default_rng(7)
    worst = 0.0
    for _ in range(50):
        a = rng.normal(size=2) + 1j * rng.normal(size=2)
        a *= rng.uniform(0, 1) / np.linalg.norm(a)
        c_full = concurrence(reduced_density(a[0], a[1]))
        worst = max(worst, abs(c_full - concurrence_closed_form(a[0], a[1])))
    return worst < 1e-10, f"max|delta|={worst:.2e}"


CHECKS = [
    ("drude_permittivity", _check_drude),
    ("fresnel_reduction", _check_fresnel_reduction),
    ("boundary_residuals", _check_boundary_residuals),
    ("free_space_rate_sum_rule", _check_free_space_rate),
    ("coincidence_ldos", _check_coincidence_ldos),
    ("free_mode_sommerfeld", _check_free_mode_integral),
    ("lorentzian_kernel_transform", _check_lorentzian_kernel),
    ("free_evolution_norm", _check_free_evolution),
    ("concurrence_closed_form", _check_concurrence),
]


def run_selftest(printer=print) -> bool:
    """Run every check, print one line each, return overall success."""
    all_ok = True
    for name, fn in CHECKS:
        try:
            ok, detail = fn()
        except Exception as exc:  # a crashed check is a failed check
            ok, detail = False, f"raised {type(exc).__name__}: {exc}"
        all_ok &= ok
        printer(f"[{'PASS' if ok else 'FAIL'}] {name}: {detail}")
    return all_ok
