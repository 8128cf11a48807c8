import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from plasmonqe import (
    DEFAULT_SURROGATE,
    DrudeParams,
    EmitterParams,
    Geometry,
    InterfaceModel,
    QuadratureSpec,
    build_spectral_table,
    make_frequency_grid,
)
from plasmonqe.spectral import surface_resonance_estimate

DRUDE = DrudeParams(5.9, 0.1)
ALPHA_DEFAULT = 1600.0


@pytest.fixture(scope="session")
def qse_model():
    return InterfaceModel(1.0, DRUDE, DEFAULT_SURROGATE)


@pytest.fixture(scope="session")
def lra_model():
    return InterfaceModel(1.0, DRUDE, None)


@pytest.fixture(scope="session")
def quad():
    return QuadratureSpec()


@pytest.fixture(scope="session")
def coarse_grid(lra_model):
    """500-node grid: adequate for unit-level spectral checks."""
    peak = surface_resonance_estimate(lra_model)
    return make_frequency_grid(0.02, 8.0, 500, peak=peak, half_width=0.5)


@pytest.fixture(scope="session")
def qse_table_z29(qse_model, coarse_grid, quad):
    """Unit-coupling single-emitter table, surrogate d, z0 = 2.9 nm."""
    e = EmitterParams(2.3, 1.0)
    return build_spectral_table(qse_model, Geometry.linear(2.9, 1), e, coarse_grid, quad)


@pytest.fixture(scope="session")
def lra_table_z29(lra_model, coarse_grid, quad):
    e = EmitterParams(2.3, 1.0)
    return build_spectral_table(lra_model, Geometry.linear(2.9, 1), e, coarse_grid, quad)
