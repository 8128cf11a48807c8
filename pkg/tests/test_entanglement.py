import numpy as np
import pytest

from plasmonqe.entanglement import (
    TwoQubitState,
    concurrence,
    concurrence_closed_form,
    concurrence_series,
    export_concurrence_csv,
    reduced_density,
    steady_concurrence,
)
from plasmonqe.spectrum import BoundState, asymptotic_Z


def random_pair(rng):
    a = rng.normal(size=2) + 1j * rng.normal(size=2)
    return a * rng.uniform(0.0, 1.0) / np.linalg.norm(a)


def test_reduced_density_pure_excited():
    rho = reduced_density(1.0, 0.0).rho
    want = np.zeros((4, 4))
    want[1, 1] = 1.0
    assert np.allclose(rho, want, atol=1e-15)


def test_reduced_density_ground():
    rho = reduced_density(0.0, 0.0).rho
    assert rho[3, 3] == pytest.approx(1.0)
    assert np.trace(rho).real == pytest.approx(1.0)


def test_reduced_density_bell_like():
    s = reduced_density(1 / np.sqrt(2), 1 / np.sqrt(2))
    assert concurrence(s) == pytest.approx(1.0, abs=1e-12)


def test_reduced_density_rejects_overfilled():
    with pytest.raises(ValueError):
        reduced_density(1.0, 0.5)


def test_concurrence_product_state_zero():
    assert concurrence(reduced_density(0.0, 0.0)) == 0.0
    assert concurrence(reduced_density(0.7, 0.0)) == pytest.approx(0.0, abs=1e-12)


def test_concurrence_matches_closed_form_bulk():
    rng = np.random.default_rng(2024)
    worst = 0.0
    for _ in range(10_000):
        a1, a2 = random_pair(rng)
        got = concurrence(reduced_density(a1, a2))
        worst = max(worst, abs(got - concurrence_closed_form(a1, a2)))
    assert worst < 1e-9


def test_concurrence_series_matches_scalar():
    rng = np.random.default_rng(7)
    amps = np.array([random_pair(rng) for _ in range(200)])
    series = concurrence_series(amps)
    scalar = np.array([concurrence(reduced_density(a[0], a[1])) for a in amps])
    assert np.abs(series - scalar).max() < 1e-12


def test_concurrence_bounded_by_populations():
    rng = np.random.default_rng(11)
    for _ in range(500):
        a1, a2 = random_pair(rng)
        c = concurrence(reduced_density(a1, a2))
        assert c <= 2.0 * np.sqrt(abs(a1) ** 2 * abs(a2) ** 2) + 1e-12


def test_state_validation():
    bad = np.zeros((4, 4), dtype=complex)
    bad[0, 0] = 0.5  # trace != 1
    with pytest.raises(ValueError):
        TwoQubitState(bad)
    nonherm = np.eye(4, dtype=complex) / 4
    nonherm[0, 1] = 0.3
    with pytest.raises(ValueError):
        TwoQubitState(nonherm)


def test_steady_branches():
    t = np.linspace(0.0, 100.0, 11)
    assert np.all(steady_concurrence([], t) == 0.0)

    single = BoundState(-0.3, 0.6, 0)
    vals = steady_concurrence([single], t)
    assert np.allclose(vals, 2.0 * 0.3**2)

    b1 = BoundState(-0.30, 0.5, 0)
    b2 = BoundState(-0.45, 0.7, 1)
    L1, L2 = 0.25, 0.35
    delta = b1.varpi_b_ev - b2.varpi_b_ev
    t_zero = np.pi / abs(delta)  # sin = 0
    t_max = 0.5 * np.pi / abs(delta)  # sin = +-1
    assert steady_concurrence([b1, b2], t_zero) == pytest.approx(
        2.0 * abs(L1**2 - L2**2), rel=1e-12
    )
    assert steady_concurrence([b1, b2], t_max) == pytest.approx(
        2.0 * (L1**2 + L2**2), rel=1e-12
    )
    # modulus algebra: |x + 2 i L1 L2 s|^2 = x^2 + 4 L1^2 L2^2 s^2
    s = np.sin(delta * 7.7)
    want = 2.0 * np.hypot(L1**2 - L2**2, 2 * L1 * L2 * s)
    assert steady_concurrence([b1, b2], 7.7) == pytest.approx(want, rel=1e-12)


def test_steady_single_state_consistent_with_asymptotic_amplitudes():
    bs = BoundState(-0.21, 0.58, 0)
    for t in (0.0, 13.0, 472.5):
        z = asymptotic_Z([bs], t, 2)
        c_dyn = concurrence(reduced_density(z[0], z[1]))
        assert c_dyn == pytest.approx(steady_concurrence([bs], t), abs=1e-10)


def test_steady_two_state_consistent_with_asymptotic_amplitudes():
    b1 = BoundState(-0.30, 0.5, 0)
    b2 = BoundState(-0.45, 0.7, 1)
    for t in np.linspace(0.0, 400.0, 17):
        z = asymptotic_Z([b1, b2], t, 2)
        c_dyn = concurrence(reduced_density(z[0], z[1]))
        assert c_dyn == pytest.approx(float(steady_concurrence([b1, b2], t)), abs=1e-10)


def test_steady_rejects_three_states():
    states = [BoundState(-0.1 * k, 0.3, 0) for k in (1, 2, 3)]
    with pytest.raises(ValueError):
        steady_concurrence(states, 0.0)


def test_export_csv(tmp_path):
    path = tmp_path / "c.csv"
    export_concurrence_csv([0.0, 1.0], [0.1, 0.2], [0.15, 0.15], path)
    lines = path.read_text().strip().splitlines()
    assert lines[0] == "t_hbar_per_ev,concurrence,steady_prediction"
    assert lines[1] == "0,0.1,0.15"
