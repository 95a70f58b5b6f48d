"""Spectral boundary-integral simulator for antiplane interface slip.

Relates slip and shear stress on a planar interface between two elastic
half-planes through per-wavenumber memory convolutions of the stress
history, and steps rupture or impulse scenarios explicitly in time.
"""

__version__ = "0.1.0"

from .convolution import ModeHistory, ModeHistoryBank, convolve, convolve_all
from .errors import (
    ConfigError,
    DivergenceError,
    InstabilityError,
    NumericsError,
    SymmetryError,
)
from .friction import (
    InterfaceState,
    SlipWeakeningLaw,
    StrengthField,
    background_stress_profile,
    solve_interface,
    solve_interface_fields,
    strength,
)
from .grid import Grid, forward, inverse
from .kernels import (
    KernelConfig,
    KernelTable,
    Material,
    MaterialPair,
    eta,
    kernel_bimaterial,
    kernel_hat_identical,
    kernel_identical,
)
from .oracles import (
    ModalRun,
    impulse_analytic,
    modal_analytic,
    modal_analytic_closed_form,
    modal_volterra,
    single_mode_slip_formulation,
)
from .simulator import Engine, ProbeSeries, RunResult, SimConfig, run
from .specfun import (
    bessel_j0,
    bessel_j1,
    bessel_j1_over_x,
    laplace_transform_numeric,
    struve_h0,
    struve_h1,
)

__all__ = [
    "__version__",
    "ConfigError",
    "DivergenceError",
    "InstabilityError",
    "NumericsError",
    "SymmetryError",
    "Grid",
    "forward",
    "inverse",
    "Material",
    "MaterialPair",
    "KernelConfig",
    "KernelTable",
    "kernel_identical",
    "kernel_bimaterial",
    "kernel_hat_identical",
    "eta",
    "ModeHistory",
    "ModeHistoryBank",
    "convolve",
    "convolve_all",
    "SlipWeakeningLaw",
    "StrengthField",
    "InterfaceState",
    "strength",
    "solve_interface",
    "solve_interface_fields",
    "background_stress_profile",
    "SimConfig",
    "Engine",
    "ProbeSeries",
    "RunResult",
    "run",
    "ModalRun",
    "modal_analytic",
    "modal_analytic_closed_form",
    "modal_volterra",
    "impulse_analytic",
    "single_mode_slip_formulation",
    "bessel_j0",
    "bessel_j1",
    "bessel_j1_over_x",
    "struve_h0",
    "struve_h1",
    "laplace_transform_numeric",
]
