"""Exception types raised by the package."""

import numpy as np


class InvalidParameters(ValueError):
    """Model coefficients violate the constraints of the requested mode.

    ``constraint`` holds the violated inequality in readable form.
    """

    code = "invalid-parameters"

    def __init__(self, message, constraint=None):
        super().__init__(message)
        self.constraint = constraint


class SingularMatrixError(np.linalg.LinAlgError):
    code = "singular-matrix"


class ConfigurationError(ValueError):
    code = "invalid-configuration"


class NonFiniteError(FloatingPointError):
    """A simulated value overflowed to inf/nan.

    ``index`` is the first offending time index and ``trajectory`` the
    finite prefix computed before it.
    """

    code = "non-finite"

    def __init__(self, message, index, trajectory=None):
        super().__init__(message)
        self.index = index
        self.trajectory = trajectory


class ConvergenceError(RuntimeError):
    code = "no-convergence"
