"""Wave-vector branches and surface-corrected p-polarization coefficients.

The planar interface (dielectric above, Drude metal below) scatters TM
waves with reflection/transmission coefficients that carry the complex
d-parameter corrections through modified boundary conditions:

    kzd (r - 1)/eps_d + kzm t/eps_m = i ks^2 d_perp [(1 + r)/eps_d - t/eps_m]
    d_par [kzd (r - 1) + kzm t]     = i (1 + r - t)

All functions are pure and accept scalar or ndarray ks.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .constants import HBAR_C_EV_NM
from .materials import DrudeParams, drude_epsilon, eval_dperp, eval_dpar


@dataclass(frozen=True)
class InterfaceModel:
    """Lossless dielectric half-space over a Drude metal with optional
    d-parameter source (None = classical local response, d = 0)."""

    eps_d: float
    drude: DrudeParams
    dsource: object = None

    def __post_init__(self):
        if not (np.isrealobj(self.eps_d) and self.eps_d > 0):
            raise ValueError("eps_d must be real and positive")

    def eps_m(self, omega):
        return drude_epsilon(self.drude, omega)


def kz(omega, ks, eps):
    """Perpendicular wave-vector component sqrt(eps (omega/hbar c)^2 - ks^2).

    Branch: Im kz >= 0 always (fields decay away from the interface); for a
    positive real argument the root is taken with Re kz > 0.
    """
    w = np.asarray(omega, dtype=float)
    if np.any(w <= 0):
        raise ValueError("kz requires omega > 0")
    k = np.asarray(ks, dtype=float)
    if np.any(k < 0):
        raise ValueError("kz requires ks >= 0")
    arg = np.asarray(eps) * (w / HBAR_C_EV_NM) ** 2 - k.astype(complex) ** 2
    root = np.sqrt(arg)
    root = np.where(root.imag < 0, -root, root)
    if np.isscalar(ks) and np.isscalar(omega) and np.ndim(eps) == 0:
        return complex(root)
    return root


def _scattering_inputs(m: InterfaceModel, omega, ks):
    eps_m = m.eps_m(omega)
    kzd = kz(omega, ks, m.eps_d)
    kzm = kz(omega, ks, eps_m)
    dperp = eval_dperp(m.dsource, omega)
    dpar = eval_dpar(m.dsource, omega)
    ks2 = np.asarray(ks, dtype=float) ** 2
    return eps_m, kzd, kzm, dperp, dpar, ks2


def reflection_p(m: InterfaceModel, omega, ks):
    """Surface-corrected p-polarization reflection coefficient.

    With d_perp = d_par = 0 this is the classical Fresnel coefficient
    (eps_m kzd - eps_d kzm) / (eps_m kzd + eps_d kzm).
    """
    eps_m, kzd, kzm, dperp, dpar, ks2 = _scattering_inputs(m, omega, ks)
    deps = eps_m - m.eps_d
    num = eps_m * kzd - m.eps_d * kzm + 1j * deps * (ks2 * dperp - kzd * kzm * dpar)
    den = eps_m * kzd + m.eps_d * kzm - 1j * deps * (ks2 * dperp + kzd * kzm * dpar)
    r = num / den
    return complex(r) if np.ndim(r) == 0 else r


def _solve_boundary_system(m: InterfaceModel, omega, ks):
    """Exact (r, t) of the two modified boundary equations, via Cramer."""
    eps_m, kzd, kzm, dperp, dpar, ks2 = _scattering_inputs(m, omega, ks)
    a11 = (kzd - 1j * ks2 * dperp) / m.eps_d
    a12 = (kzm + 1j * ks2 * dperp) / eps_m
    b1 = (kzd + 1j * ks2 * dperp) / m.eps_d
    a21 = dpar * kzd - 1j
    a22 = dpar * kzm + 1j
    b2 = dpar * kzd + 1j
    det = a11 * a22 - a12 * a21
    r = (b1 * a22 - a12 * b2) / det
    t = (a11 * b2 - b1 * a21) / det
    return r, t


def transmission_p(m: InterfaceModel, omega, ks):
    """Surface-corrected p-polarization transmission coefficient.

    Magnetic-field amplitude convention: with d = 0 the coefficient reduces
    to the classical 2 eps_m kzd / (eps_m kzd + eps_d kzm) = 1 + r, and for a
    charge-neutral interface (d_par = 0) the pair (reflection_p, this) solves
    the boundary equations exactly.
    """
    _, t = _solve_boundary_system(m, omega, ks)
    return complex(t) if np.ndim(t) == 0 else t


def check_boundary_conditions(m: InterfaceModel, omega, ks, r=None, t=None):
    """Residuals of the two boundary equations for the computed (r, t).

    Both residuals are normalized by the largest participating term, so a
    correct solution returns values at the rounding floor.  Pass explicit
    r or t to probe the sensitivity of the system to perturbed coefficients.
    """
    eps_m, kzd, kzm, dperp, dpar, ks2 = _scattering_inputs(m, omega, ks)
    if r is None:
        r = reflection_p(m, omega, ks)
    if t is None:
        t = transmission_p(m, omega, ks)

    term1a = kzd * (r - 1.0) / m.eps_d
    term1b = kzm * t / eps_m
    rhs1 = 1j * ks2 * dperp * ((1.0 + r) / m.eps_d - t / eps_m)
    scale1 = np.maximum.reduce([np.abs(term1a), np.abs(term1b), np.abs(rhs1)])
    res1 = np.abs(term1a + term1b - rhs1) / np.where(scale1 > 0, scale1, 1.0)

    lhs2 = dpar * (kzd * (r - 1.0) + kzm * t)
    rhs2 = 1j * (1.0 + r - t)
    scale2 = np.maximum.reduce(
        [np.abs(lhs2), np.abs(1.0 + r), np.abs(t), np.ones(np.shape(np.asarray(t)))]
    )
    res2 = np.abs(lhs2 - rhs2) / scale2
    if np.ndim(res1) == 0:
        return float(res1), float(res2)
    return res1, res2
