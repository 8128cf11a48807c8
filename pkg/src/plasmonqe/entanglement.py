"""Two-emitter reduced state and Wootters concurrence.

In the single-excitation sector the field trace leaves an X-form density
matrix fully determined by the two excited-state amplitudes.  Concurrence is
always evaluated through the full spin-flip spectrum (not the X-form
shortcut) so silent ansatz violations cannot go unnoticed; the closed form
2 |a1 conj(a2)| serves as an independent consistency check in the tests.
"""

from __future__ import annotations

import csv
from dataclasses import dataclass

import numpy as np

_SIGMA_Y = np.array([[0.0, -1j], [1j, 0.0]])
_SPIN_FLIP = np.kron(_SIGMA_Y, _SIGMA_Y)
_EIG_CLIP = -1e-12  # numerical noise absorbed before the square roots


@dataclass(frozen=True)
class TwoQubitState:
    """4x4 density matrix in the basis {ee, eg, ge, gg}."""

    rho: np.ndarray

    def __post_init__(self):
        rho = np.asarray(self.rho, dtype=complex)
        if rho.shape != (4, 4):
            raise ValueError("rho must be 4x4")
        if not np.allclose(rho, rho.conj().T, atol=1e-10):
            raise ValueError("rho must be Hermitian")
        if abs(np.trace(rho).real - 1.0) > 1e-10:
            raise ValueError("rho must have unit trace")
        if np.linalg.eigvalsh(rho).min() < -1e-10:
            raise ValueError("rho must be positive semidefinite")
        rho.setflags(write=False)
        object.__setattr__(self, "rho", rho)


def reduced_density(a1: complex, a2: complex) -> TwoQubitState:
    """Exact field trace of the single-excitation ansatz.

    Populations |a1|^2, |a2|^2 sit in the one-excitation block with coherence
    a1 conj(a2); the remaining weight is in the joint ground state.
    """
    p1 = abs(a1) ** 2
    p2 = abs(a2) ** 2
    if p1 + p2 > 1.0 + 1e-9:
        raise ValueError(f"|a1|^2 + |a2|^2 = {p1 + p2:.12g} exceeds 1")
    rho = np.zeros((4, 4), dtype=complex)
    rho[1, 1] = p1
    rho[2, 2] = p2
    rho[1, 2] = a1 * np.conj(a2)
    rho[2, 1] = np.conj(rho[1, 2])
    rho[3, 3] = max(1.0 - p1 - p2, 0.0)
    return TwoQubitState(rho)


def concurrence(state) -> float:
    """Wootters concurrence max{0, sqrt(l1) - sqrt(l2) - sqrt(l3) - sqrt(l4)}.

    l_i are the decreasing eigenvalues of rho (sy x sy) rho* (sy x sy).
    With rho = A A^dag those eigenvalues are the squared singular values of
    the complex symmetric A^T (sy x sy) A, so the sqrt(l_i) come straight
    from an SVD; this avoids the accuracy loss of a non-Hermitian eigenvalue
    solve on the (defective at zero) product matrix.  Accepts a
    TwoQubitState or a raw 4x4 matrix.
    """
    rho = state.rho if isinstance(state, TwoQubitState) else np.asarray(state, dtype=complex)
    mu, U = np.linalg.eigh(rho)
    if mu.min() < _EIG_CLIP:
        raise ValueError("state is significantly non-positive; invalid density matrix")
    factor = U * np.sqrt(np.clip(mu, 0.0, None))  # rho = factor factor^dag
    s_mat = factor.T @ _SPIN_FLIP @ factor
    lam_sqrt = np.linalg.svd(s_mat, compute_uv=False)  # descending
    return float(max(0.0, lam_sqrt[0] - lam_sqrt[1] - lam_sqrt[2] - lam_sqrt[3]))


def concurrence_closed_form(a1: complex, a2: complex) -> float:
    """Single-excitation shortcut 2 |a1 conj(a2)| (consistency oracle)."""
    return 2.0 * abs(a1 * np.conj(a2))


def concurrence_series(amplitudes) -> np.ndarray:
    """Concurrence along a two-emitter amplitude trajectory, batched.

    Same spin-flip evaluation as `concurrence` (eigh factorization + SVD),
    vectorized over the time axis.
    """
    amps = np.asarray(amplitudes, dtype=complex)
    if amps.ndim != 2 or amps.shape[1] != 2:
        raise ValueError("expected an (n_steps, 2) amplitude array")
    a1, a2 = amps[:, 0], amps[:, 1]
    p1 = np.abs(a1) ** 2
    p2 = np.abs(a2) ** 2
    if np.any(p1 + p2 > 1.0 + 1e-9):
        raise ValueError("|a1|^2 + |a2|^2 exceeds 1 along the trajectory")
    n = amps.shape[0]
    rho = np.zeros((n, 4, 4), dtype=complex)
    rho[:, 1, 1] = p1
    rho[:, 2, 2] = p2
    rho[:, 1, 2] = a1 * np.conj(a2)
    rho[:, 2, 1] = np.conj(rho[:, 1, 2])
    rho[:, 3, 3] = np.clip(1.0 - p1 - p2, 0.0, None)
    mu, U = np.linalg.eigh(rho)
    factor = U * np.sqrt(np.clip(mu, 0.0, None))[:, None, :]
    s_mat = np.transpose(factor, (0, 2, 1)) @ _SPIN_FLIP @ factor
    sv = np.linalg.svd(s_mat, compute_uv=False)
    return np.maximum(sv[:, 0] - sv[:, 1] - sv[:, 2] - sv[:, 3], 0.0)


def steady_concurrence(bound_states, t) -> np.ndarray | float:
    """Long-time concurrence from the bound-state content (N = 2).

    M = 0: zero.  M = 1: the constant 2 L^2 with L the single halved residue.
    M = 2: 2 |L1^2 - L2^2 + 2 i L1 L2 sin((w1 - w2) t)|, oscillating between
    2 |L1^2 - L2^2| and 2 (L1^2 + L2^2).
    """
    states = list(bound_states)
    if len(states) > 2:
        raise ValueError("steady form is available for at most two bound states")
    t_arr = np.atleast_1d(np.asarray(t, dtype=float))
    if len(states) == 0:
        out = np.zeros(t_arr.size)
    elif len(states) == 1:
        L = 0.5 * states[0].weight_L
        out = np.full(t_arr.size, 2.0 * L * L)
    else:
        s1, s2 = sorted(states, key=lambda s: s.channel)
        L1 = 0.5 * s1.weight_L
        L2 = 0.5 * s2.weight_L
        beat = np.sin((s1.varpi_b_ev - s2.varpi_b_ev) * t_arr)
        out = 2.0 * np.abs(L1**2 - L2**2 + 2j * L1 * L2 * beat)
    return float(out[0]) if np.ndim(t) == 0 else out


def export_concurrence_csv(times, values, steady, path, stride: int = 1) -> None:
    """Write `t_hbar_per_ev,concurrence,steady_prediction`."""
    with open(path, "w", encoding="utf-8", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(["t_hbar_per_ev", "concurrence", "steady_prediction"])
        for k in range(0, len(times), stride):
            writer.writerow(
                [f"{times[k]:.12g}", f"{values[k]:.12g}", f"{steady[k]:.12g}"]
            )
