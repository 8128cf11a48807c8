import numpy as np
import pytest

from plasmonqe.errors import QuadratureError
from plasmonqe.quadrature import QuadratureSpec, integrate_adaptive, trapezoid_weights


def test_polynomial_exact():
    spec = QuadratureSpec()
    val, err = integrate_adaptive(lambda x: x**3 - 2 * x, 0.0, 2.0, spec)
    assert val == pytest.approx(0.0, abs=1e-13)
    assert err < 1e-12


def test_oscillatory_integral():
    spec = QuadratureSpec(rel_tol=1e-11, abs_tol=1e-14, max_panels=4000)
    val, _ = integrate_adaptive(lambda x: np.cos(40.0 * x), 0.0, 1.0, spec)
    assert val == pytest.approx(np.sin(40.0) / 40.0, abs=1e-12)


def test_complex_integrand():
    spec = QuadratureSpec()
    val, _ = integrate_adaptive(lambda x: np.exp(1j * x), 0.0, np.pi, spec)
    assert val == pytest.approx(2j, rel=1e-12)


def test_breakpoints_accepted():
    spec = QuadratureSpec()
    val, _ = integrate_adaptive(
        lambda x: np.abs(x - 0.3), 0.0, 1.0, spec, breakpoints=[0.3]
    )
    assert val == pytest.approx(0.5 * 0.3**2 + 0.5 * 0.7**2, rel=1e-13)


def test_budget_exhaustion_carries_estimate():
    spec = QuadratureSpec(rel_tol=1e-15, abs_tol=1e-300, max_panels=8)
    with pytest.raises(QuadratureError) as info:
        integrate_adaptive(lambda x: np.cos(200.0 * x) / (1e-4 + x**2), 0.0, 1.0, spec)
    assert info.value.estimate is not None and info.value.estimate > 0


def test_empty_interval_rejected():
    with pytest.raises(ValueError):
        integrate_adaptive(lambda x: x, 1.0, 1.0, QuadratureSpec())


def test_spec_validation():
    with pytest.raises(ValueError):
        QuadratureSpec(rel_tol=0.0)
    with pytest.raises(ValueError):
        QuadratureSpec(max_panels=2)


def test_trapezoid_weights_match_numpy():
    x = np.sort(np.concatenate([np.linspace(0, 1, 7), [0.05, 0.33]]))
    y = np.cos(3 * x)
    assert np.dot(trapezoid_weights(x), y) == pytest.approx(np.trapezoid(y, x), rel=1e-14)
