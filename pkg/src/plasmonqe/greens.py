"""Imaginary part of the zz Green's function above the interface.

Im G_zz between two emitters at equal height z0 splits into the analytic
homogeneous-medium part and a reflected Sommerfeld integral

    (1/4 pi) Int_0^inf dks  i J0(ks r) ks^3 / (kd^2 kzd) r_p exp(i kzd 2 z0).

The integral is evaluated on the real ks axis, split at ks = kd:
the propagating segment uses ks = kd sin(theta) (removes the 1/kzd
endpoint singularity) and the evanescent segment uses the decay constant
kappa = sqrt(ks^2 - kd^2) as variable, truncated where the exp(-kappa 2 z0)
tail undercuts the configured tolerance.  For separated emitters the
subdivision is seeded at the zeros of the oscillating Bessel factor, and a
breakpoint is placed at the surface-mode resonance when one exists.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy.special import j0

from .constants import HBAR_C_EV_NM
from .errors import QuadratureError
from .interface import InterfaceModel, reflection_p
from .materials import eval_dperp
from .quadrature import QuadratureSpec, integrate_adaptive

__all__ = ["Geometry", "QuadratureSpec", "im_gzz_free", "im_gzz"]


@dataclass(frozen=True)
class Geometry:
    """Emitter layout: all emitters share the height z0 above the interface."""

    z0_nm: float
    emitter_xy_nm: tuple

    def __post_init__(self):
        if not self.z0_nm > 0:
            raise ValueError("z0_nm must be positive")
        xy = tuple((float(x), float(y)) for (x, y) in self.emitter_xy_nm)
        if len(xy) < 1:
            raise ValueError("need at least one emitter")
        for a in range(len(xy)):
            for b in range(a + 1, len(xy)):
                if math.dist(xy[a], xy[b]) == 0.0:
                    raise ValueError(f"emitters {a} and {b} coincide")
        object.__setattr__(self, "emitter_xy_nm", xy)

    @classmethod
    def linear(cls, z0_nm: float, n: int, spacing_nm: float = 0.0) -> "Geometry":
        """n emitters on the x axis with uniform spacing."""
        if n < 1:
            raise ValueError("need at least one emitter")
        if n > 1 and not spacing_nm > 0:
            raise ValueError("spacing_nm must be positive for n > 1")
        return cls(z0_nm, tuple((k * spacing_nm, 0.0) for k in range(n)))

    @property
    def n_emitters(self) -> int:
        return len(self.emitter_xy_nm)

    @property
    def z_plus_nm(self) -> float:
        return 2.0 * self.z0_nm

    def r_par(self, i: int, j: int) -> float:
        return math.dist(self.emitter_xy_nm[i], self.emitter_xy_nm[j])


def im_gzz_free(omega: float, r_par: float, eps_d: float) -> float:
    """Homogeneous-medium Im G_zz for equal-height points, closed form.

    At coincidence this is sqrt(eps_d) omega / (6 pi hbar c); for in-plane
    separation r the standard dipole field gives
    [sin(x)(1 - 1/x^2) + cos(x)/x] / (4 pi r) with x = k r.
    """
    if not omega > 0:
        raise ValueError("im_gzz_free requires omega > 0")
    if r_par < 0:
        raise ValueError("r_par must be >= 0")
    k = math.sqrt(eps_d) * omega / HBAR_C_EV_NM
    x = k * r_par
    if x < 0.1:
        # series: k (2/3 - 2 x^2/15 + x^4/140) / (4 pi); exact at x = 0
        return k * (2.0 / 3.0 - 2.0 * x**2 / 15.0 + x**4 / 140.0) / (4.0 * math.pi)
    return (math.sin(x) * (1.0 - 1.0 / x**2) + math.cos(x) / x) / (4.0 * math.pi * r_par)


def _bessel_zero_guesses(x_max: float, limit: int = 4000) -> np.ndarray:
    """Approximate zeros of J0 below x_max (McMahon expansion)."""
    if x_max <= 2.4:
        return np.empty(0)
    n = min(int(x_max / math.pi) + 1, limit)
    beta = (np.arange(1, n + 1) - 0.25) * math.pi
    zeros = beta + 1.0 / (8.0 * beta) - 31.0 / (384.0 * beta**3)
    return zeros[zeros < x_max]


def _surface_mode_hints(m: InterfaceModel, omega: float, kd: float, ks_max: float):
    """Estimated real parts of surface-mode poles of r_p, used as breakpoints."""
    hints = []
    eps_m = m.eps_m(omega)
    denom = eps_m + m.eps_d
    if denom != 0:
        spp = kd * np.sqrt(eps_m * m.eps_d / denom + 0j)
        if kd < spp.real < ks_max:
            hints.append(float(spp.real))
    dperp = eval_dperp(m.dsource, omega)
    if abs(dperp) > 1e-12 and eps_m != m.eps_d:
        kq = ((eps_m + m.eps_d) / ((eps_m - m.eps_d) * dperp)).real
        if kd < kq < ks_max:
            hints.append(float(kq))
    return hints


def im_gzz(
    m: InterfaceModel,
    g: Geometry,
    q: QuadratureSpec,
    omega: float,
    i: int,
    j: int,
    include_reflection: bool = True,
    bessel_seeds: bool = True,
    return_error: bool = False,
):
    """Im G_zz(r_i, r_j, omega) in nm^-1, symmetric in (i, j).

    include_reflection=False drops the reflected term (free-space mode,
    used by sum-rule checks).  bessel_seeds=False disables the Bessel-zero
    panel seeding so the plain adaptive subdivision can be cross-checked
    against the seeded one.  With return_error=True the summed quadrature
    error estimate is returned alongside the value.

    Raises QuadratureError when a segment fails to converge within the
    panel budget; the exception carries the achieved error estimate.
    """
    if not omega > 0:
        raise ValueError("im_gzz requires omega > 0")
    n = g.n_emitters
    if not (0 <= i < n and 0 <= j < n):
        raise IndexError(f"emitter index out of range for N={n}")

    r = g.r_par(i, j)
    free = im_gzz_free(omega, r, m.eps_d)
    if not include_reflection:
        return (free, 0.0) if return_error else free

    kd = math.sqrt(m.eps_d) * omega / HBAR_C_EV_NM
    zp = g.z_plus_nm
    ks_max = max(4.0 * kd, -math.log(q.tail_cut_tol) / zp)
    kap_max = math.sqrt(max(ks_max**2 - kd**2, 0.0))
    pref = kd / (4.0 * math.pi)

    def integrand_prop(theta):
        sin_t = np.sin(theta)
        ks = kd * sin_t
        rp = reflection_p(m, omega, ks)
        val = 1j * sin_t**3 * j0(ks * r) * rp * np.exp(1j * kd * zp * np.cos(theta))
        return pref * val.imag

    def integrand_evan(kappa):
        ks = np.sqrt(kd**2 + kappa**2)
        rp = reflection_p(m, omega, ks)
        weight = (1.0 + (kappa / kd) ** 2) * j0(ks * r) * np.exp(-kappa * zp)
        return weight * rp.imag / (4.0 * math.pi)

    prop_breaks = None
    evan_breaks = []
    if bessel_seeds and r > 0:
        zeros = _bessel_zero_guesses(kd * r)
        if zeros.size:
            prop_breaks = list(np.arcsin(zeros / (kd * r)))
        # seed panels of ~2 oscillation periods (every 4th zero), and only
        # where the exponential envelope is still significant
        kap_seed = min(kap_max, 12.0 / zp)
        ks_seed = math.sqrt(kd**2 + kap_seed**2)
        ks_zeros = _bessel_zero_guesses(ks_seed * r)[::4] / r
        ks_zeros = ks_zeros[ks_zeros > kd]
        evan_breaks.extend(np.sqrt(ks_zeros**2 - kd**2))
    for hint in _surface_mode_hints(m, omega, kd, ks_max):
        evan_breaks.append(math.sqrt(hint**2 - kd**2))

    try:
        val_p, err_p = integrate_adaptive(
            integrand_prop, 0.0, 0.5 * math.pi, q, breakpoints=prop_breaks
        )
        val_e, err_e = integrate_adaptive(
            integrand_evan, 0.0, kap_max, q, breakpoints=evan_breaks or None
        )
    except QuadratureError as exc:
        raise QuadratureError(
            f"Im G_zz quadrature failed at omega={omega:g} eV, pair ({i},{j}): {exc}",
            estimate=exc.estimate,
            value=exc.value,
        ) from exc

    total = free + float(val_p.real) + float(val_e.real)
    if return_error:
        return total, float(err_p + err_e)
    return total
