"""Quantum emitters coupled to a lossy surface plasmon polariton.

Library + CLI for the exact non-Markovian dynamics of one or two emitters
above a planar metal-dielectric interface, including quantum surface-response
corrections (complex d-parameters), the bound-state/residue analysis of the
energy spectrum, and two-emitter concurrence.
"""

__version__ = "0.1.0"

from .constants import HBAR_C_EV_NM
from .dynamics import (
    AmplitudeTrajectory,
    MemoryKernel,
    build_kernel,
    decay_rate,
    markov_solution,
    solve_volterra,
)
from .entanglement import (
    TwoQubitState,
    concurrence,
    reduced_density,
    steady_concurrence,
)
from .errors import ConfigError, NumericsError, QuadratureError, TableRangeError
from .greens import Geometry, im_gzz, im_gzz_free
from .interface import InterfaceModel, check_boundary_conditions, kz, reflection_p, transmission_p
from .materials import (
    DEFAULT_SURROGATE,
    DParamTable,
    DrudeParams,
    SurrogateDPerp,
    drude_epsilon,
    eval_dperp,
    load_dparam_table,
    save_dparam_table,
)
from .quadrature import QuadratureSpec
from .spectral import (
    EmitterParams,
    SpectralTable,
    build_spectral_table,
    gamma0_free,
    make_frequency_grid,
    spectral_element,
)
from .spectrum import BoundState, Y_eval, asymptotic_Z, find_bound_states, residue_weight

__all__ = [
    "HBAR_C_EV_NM",
    "AmplitudeTrajectory",
    "MemoryKernel",
    "build_kernel",
    "decay_rate",
    "markov_solution",
    "solve_volterra",
    "TwoQubitState",
    "concurrence",
    "reduced_density",
    "steady_concurrence",
    "ConfigError",
    "NumericsError",
    "QuadratureError",
    "TableRangeError",
    "Geometry",
    "im_gzz",
    "im_gzz_free",
    "InterfaceModel",
    "check_boundary_conditions",
    "kz",
    "reflection_p",
    "transmission_p",
    "DEFAULT_SURROGATE",
    "DParamTable",
    "DrudeParams",
    "SurrogateDPerp",
    "drude_epsilon",
    "eval_dperp",
    "load_dparam_table",
    "save_dparam_table",
    "QuadratureSpec",
    "EmitterParams",
    "SpectralTable",
    "build_spectral_table",
    "gamma0_free",
    "make_frequency_grid",
    "spectral_element",
    "BoundState",
    "Y_eval",
    "asymptotic_Z",
    "find_bound_states",
    "residue_weight",
]
