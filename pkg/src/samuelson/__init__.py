"""Delayed Samuelson multiplier-accelerator model.

Simulation of the third-order income recurrence, its companion-matrix
form, the equilibrium (unique or Tikhonov-regularised on the singular
boundary ``c1 + c2 = 1``) and eigenvalue-based stability analysis.
"""

__version__ = "0.1.0"

from .errors import (
    ConfigurationError,
    ConvergenceError,
    InvalidParameters,
    NonFiniteError,
    SingularMatrixError,
)
from .model import (
    EXTENDED,
    STRICT,
    ClassicParams,
    CompanionSystem,
    ModelParams,
    Trajectory,
    build_companion,
    simulate,
    simulate_classic,
    simulate_companion,
    step,
)
from .equilibrium import (
    EquilibriumProblem,
    EquilibriumResult,
    RegularizationConfig,
    build_problem,
    d1,
    d1_gradient,
    optimal_equilibrium,
    regularity,
    unique_equilibrium,
)
from .spectral import CharacteristicCubic, SpectralReport, analyze, characteristic, roots
