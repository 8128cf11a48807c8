"""Discrete poles below the continuum and their residue weights.

Each spectral channel A_j(omega) defines Y_j(w) = omega_0 - Int A_j/(omega-w);
a root of Y_j(w) = w below the grid is a bound state of the joint
emitter-field system.  Y_j - w is strictly decreasing there, so at most one
root exists per channel, and it exists iff Y_j(0-) < 0.  The residue weight
L = [1 + Int A_j/(omega - w_b)^2]^-1 fixes the preserved amplitude; the
asymptotic amplitude vector is the sum of the bound-state contributions.
"""

from __future__ import annotations

import csv
from dataclasses import dataclass

import numpy as np

from .errors import NumericsError
from .spectral import SpectralTable

# Y(0) is probed just below zero: the integrand A(omega)/omega is integrable
# (A -> 0 linearly at the band edge) but the trapezoid needs a safe offset.
_ZERO_MINUS_EV = -1e-9


@dataclass(frozen=True)
class BoundState:
    """One discrete pole: energy below the grid, weight in (0, 1], channel."""

    varpi_b_ev: float
    weight_L: float
    channel: int

    def __post_init__(self):
        if not 0.0 < self.weight_L <= 1.0 + 1e-12:
            raise ValueError("weight_L must lie in (0, 1]")


def _channel_values(table: SpectralTable, channel: int) -> np.ndarray:
    ch = table.channels
    if not 0 <= channel < ch.shape[1]:
        raise IndexError(f"channel {channel} out of range")
    return ch[:, channel]


def Y_eval(table: SpectralTable, channel: int, varpi: float, omega0: float) -> float:
    """Y_j(varpi) = omega_0 - Int A_j(omega)/(omega - varpi) d omega (trapezoid).

    Defined for varpi strictly below the grid; inside the continuum the
    integral is singular and a ValueError is raised.
    """
    if varpi >= table.omega_ev[0]:
        raise ValueError(
            f"Y is ill defined for varpi={varpi:g} inside the continuum "
            f"(grid starts at {table.omega_ev[0]:g} eV)"
        )
    a = _channel_values(table, channel)
    w = table.trapezoid_weights()
    return float(omega0 - np.dot(w, a / (table.omega_ev - varpi)))


def bath_first_inverse_moment(table: SpectralTable, channel: int) -> float:
    """Int A_j(omega)/omega d omega; a bound state exists iff omega_0 < this."""
    a = _channel_values(table, channel)
    w = table.trapezoid_weights()
    return float(np.dot(w, a / table.omega_ev))


def residue_weight(table: SpectralTable, channel: int, varpi_b: float) -> float:
    """[1 + Int A_j(omega)/(omega - varpi_b)^2 d omega]^-1, in (0, 1]."""
    a = _channel_values(table, channel)
    w = table.trapezoid_weights()
    second = float(np.dot(w, a / (table.omega_ev - varpi_b) ** 2))
    return 1.0 / (1.0 + second)


def find_bound_states(
    table: SpectralTable,
    omega0: float,
    channel: int | None = None,
    root_tol_ev: float = 1e-10,
) -> list[BoundState]:
    """Locate the bound state of each channel (0 or 1 per channel).

    The root of Y_j(w) = w is bracketed on (w_lo, 0) by doubling w_lo from
    -omega_0 and then bisected; bisection is unconditionally convergent on
    the monotone Y_j(w) - w.
    """
    channels = range(table.n_channels) if channel is None else [channel]
    states = []
    for ch in channels:

        def g(varpi: float) -> float:
            return Y_eval(table, ch, varpi, omega0) - varpi

        if g(_ZERO_MINUS_EV) >= 0.0:
            continue
        lo = -omega0
        for _ in range(60):
            if g(lo) > 0.0:
                break
            lo *= 2.0
        else:
            raise NumericsError(
                f"bound-state bracket not found for channel {ch}; "
                "Y - varpi failed to change sign within 60 doublings"
            )
        hi = _ZERO_MINUS_EV
        while hi - lo > root_tol_ev:
            mid = 0.5 * (lo + hi)
            if g(mid) > 0.0:
                lo = mid
            else:
                hi = mid
        root = 0.5 * (lo + hi)
        states.append(BoundState(root, residue_weight(table, ch, root), ch))
    return states


def asymptotic_Z(bound_states, t, n_emitters: int) -> np.ndarray:
    """Long-time amplitude vector Z(t) from the bound-state residues.

    For one emitter Z(t) = L exp(-i w_b t); for two, each bound state
    contributes (L/2) (1, +-1)^T exp(-i w_b t) with the sign fixed by its
    channel.  Initial state (1, 0, ..); t may be a scalar or an array, giving
    shape (N,) or (len(t), N).
    """
    if n_emitters not in (1, 2):
        raise ValueError("asymptotic form is available for N in {1, 2} only")
    t_arr = np.atleast_1d(np.asarray(t, dtype=float))
    out = np.zeros((t_arr.size, n_emitters), dtype=complex)
    for bs in bound_states:
        phase = np.exp(-1j * bs.varpi_b_ev * t_arr)
        if n_emitters == 1:
            out[:, 0] += bs.weight_L * phase
        else:
            sign = 1.0 if bs.channel == 0 else -1.0
            amp = 0.5 * bs.weight_L
            out[:, 0] += amp * phase
            out[:, 1] += sign * amp * phase
    return out[0] if np.ndim(t) == 0 else out


def export_bound_state_csv(states, n_channels: int, path) -> None:
    """Write `channel,varpi_b_ev,weight_L,exists`; empty fields when absent."""
    by_channel = {bs.channel: bs for bs in states}
    with open(path, "w", encoding="utf-8", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(["channel", "varpi_b_ev", "weight_L", "exists"])
        for ch in range(n_channels):
            bs = by_channel.get(ch)
            if bs is None:
                writer.writerow([ch, "", "", 0])
            else:
                writer.writerow([ch, f"{bs.varpi_b_ev:.12g}", f"{bs.weight_L:.12g}", 1])
