"""Fixed points of ``Y_{k+1} = F Y_k + V``.

An equilibrium solves ``G Y* = V`` with ``G = I - F``. Expanding the
determinant of ``G`` along its first two rows gives ``det G = 1 - c1 - c2``,
so the system has the unique solution ``Y* = P / (1 - c1 - c2) * (1, 1, 1)``
unless ``c1 + c2 = 1``. On that boundary ``G`` has rank two and the
equilibrium is taken to be the minimiser of

    D1(Y) = ||V - G Y||^2 + ||E Y||^2,      E = theta * I,

i.e. ``Y = (G^T G + theta^2 I)^{-1} G^T V``, which tends to the minimum-norm
least-squares solution as ``theta -> 0``.
"""

import math
import warnings
from dataclasses import dataclass
from typing import Optional

import numpy as np

from . import linalg3
from .errors import ConfigurationError, SingularMatrixError
from .model import ModelParams, build_companion

__all__ = [
    "REGULAR",
    "RANK_DEFICIENT",
    "UNIQUE",
    "REGULARIZED",
    "DEFAULT_THETA",
    "EquilibriumProblem",
    "RegularizationConfig",
    "EquilibriumResult",
    "build_problem",
    "regularity",
    "unique_equilibrium",
    "optimal_equilibrium",
    "solve",
    "d1",
    "d1_gradient",
]

REGULAR = "regular"
RANK_DEFICIENT = "rank_deficient"
UNIQUE = "unique"
REGULARIZED = "regularized"

DEFAULT_THETA = 1e-6
COLSPAN_RTOL = 1e-9

# Orthogonal reflector whose first column is (1, 1, 1)/sqrt(3). Every G of
# the model maps (1, 1, 1) to (0, 0, 1 - c1 - c2), so in this basis the
# direction that becomes the null space on c1 + c2 = 1 decouples exactly.
_q = np.full(3, 1.0 / math.sqrt(3.0))
_w = np.array([1.0, 0.0, 0.0]) - _q
_REFLECT = np.eye(3) - 2.0 * np.outer(_w, _w) / np.dot(_w, _w)
_REFLECT[:, 0] = _q
_REFLECT[0, :] = _q
_REFLECT.setflags(write=False)
del _q, _w


@dataclass(frozen=True)
class EquilibriumProblem:
    G: np.ndarray
    V: np.ndarray
    params: ModelParams


@dataclass(frozen=True)
class RegularizationConfig:
    """Regularisation strength; ``E`` is always ``theta * I``."""

    theta: float = DEFAULT_THETA

    def __post_init__(self):
        t = self.theta
        if isinstance(t, bool) or not isinstance(t, (int, float, np.floating)) or not math.isfinite(t):
            raise ConfigurationError(f"theta must be a finite real number (got {t!r})")
        if not 0.0 < t < 1.0:
            raise ConfigurationError(f"theta must satisfy 0 < theta < 1 (got {t!r})")
        object.__setattr__(self, "theta", float(t))

    @property
    def E(self) -> np.ndarray:
        return self.theta * np.eye(3)


@dataclass(frozen=True)
class EquilibriumResult:
    """Outcome of an equilibrium computation.

    ``s_e`` is the income component ``y_star[0]``; ``residual_d1`` is the
    objective ``D1`` at ``y_star`` (with ``theta = 0`` for the unique case).
    ``theta_used`` and ``in_colspan`` are only set for regularised results.
    """

    kind: str
    s_e: float
    y_star: np.ndarray
    residual_d1: float
    theta_used: Optional[float] = None
    in_colspan: Optional[bool] = None


def build_problem(params: ModelParams) -> EquilibriumProblem:
    sys = build_companion(params)
    G = np.eye(3) - sys.F
    G.setflags(write=False)
    return EquilibriumProblem(G=G, V=sys.V, params=params)


def regularity(prob: EquilibriumProblem) -> str:
    """Classify ``G`` as ``"regular"`` or ``"rank_deficient"``.

    The cofactor determinant is compared with the scale-aware threshold of
    :func:`linalg3.singular_threshold`. The closed form ``1 - c1 - c2`` is
    evaluated against the same threshold; if the two disagree a
    ``RuntimeWarning`` is issued and the cofactor result is used.
    """
    threshold = linalg3.singular_threshold(prob.G)
    numeric = abs(linalg3.det3(prob.G)) < threshold
    closed = abs(prob.params.det_g) < threshold
    if numeric != closed:
        warnings.warn(
            f"determinant tests disagree: det3(G) = {linalg3.det3(prob.G)!r}, "
            f"1 - c1 - c2 = {prob.params.det_g!r}, threshold = {threshold!r}",
            RuntimeWarning,
            stacklevel=2,
        )
    return RANK_DEFICIENT if numeric else REGULAR


def d1(prob: EquilibriumProblem, y, theta: float = 0.0) -> float:
    """``||V - G y||^2 + theta^2 ||y||^2``."""
    y = linalg3.as_vec3(y)
    r = prob.V - prob.G @ y
    return float(np.dot(r, r) + theta * theta * np.dot(y, y))


def d1_gradient(prob: EquilibriumProblem, cfg: RegularizationConfig, y) -> np.ndarray:
    """Analytic gradient ``-2 G^T V + 2 G^T G y + 2 E^T E y`` of ``D1``."""
    y = linalg3.as_vec3(y)
    G, E = prob.G, cfg.E
    return -2.0 * G.T @ prob.V + 2.0 * G.T @ (G @ y) + 2.0 * E.T @ (E @ y)


def unique_equilibrium(prob: EquilibriumProblem) -> EquilibriumResult:
    """Solve ``G Y* = V`` when ``G`` is regular.

    Raises
    ------
    SingularMatrixError
        If :func:`regularity` reports a rank-deficient ``G``.
    """
    if regularity(prob) != REGULAR:
        raise SingularMatrixError(
            "G = I - F is rank deficient (c1 + c2 = 1); use optimal_equilibrium instead"
        )
    y = linalg3.solve3(prob.G, prob.V)
    y.setflags(write=False)
    return EquilibriumResult(kind=UNIQUE, s_e=float(y[0]), y_star=y, residual_d1=d1(prob, y))


def _rotated_operator(prob: EquilibriumProblem) -> np.ndarray:
    # G @ _REFLECT with the first column replaced by its exact value.
    H = prob.G @ _REFLECT
    H[:, 0] = (0.0, 0.0, prob.params.det_g / math.sqrt(3.0))
    return H


def optimal_equilibrium(
    prob: EquilibriumProblem, cfg: Optional[RegularizationConfig] = None
) -> EquilibriumResult:
    """Regularised equilibrium ``(G^T G + theta^2 I)^{-1} G^T V``.

    Valid for any ``G``; on a regular ``G`` it approaches the unique
    equilibrium as ``theta`` shrinks.

    The normal equations are formed in an orthonormal basis whose first
    axis is ``(1, 1, 1)/sqrt(3)``. Orthogonal changes of basis leave the
    formula unchanged, but this one lets the component along the potential
    null direction be taken from ``1 - c1 - c2`` directly instead of from
    rounded entries of ``G``. Without it, rounding of order ``eps * ||G||``
    is amplified by ``1 / theta^2`` when ``G`` is singular.

    ``in_colspan`` reports whether ``V`` lies in the column space of ``G``
    (i.e. whether ``G Y = V`` has exact solutions), tested through the
    pseudoinverse residual ``||V - G pinv(G) V||``.
    """
    cfg = cfg if cfg is not None else RegularizationConfig()
    theta = cfg.theta
    H = _rotated_operator(prob)
    normal = H.T @ H
    eps = np.finfo(np.float64).eps
    if theta * theta <= eps * linalg3.max_norm(normal):
        raise ConfigurationError(
            f"theta = {theta!r} is too small: theta^2 is lost against ||G^T G|| in float64"
        )
    normal[np.diag_indices(3)] += theta * theta
    # SPD with smallest eigenvalue >= theta^2, which was checked above, so
    # the generic determinant cutoff does not apply.
    z = linalg3.solve3(normal, H.T @ prob.V, atol=0.0)
    y = _REFLECT @ z
    y.setflags(write=False)

    pinv_v = linalg3.pseudo_solve3(prob.G, prob.V)
    leftover = linalg3.norm2(prob.V - prob.G @ pinv_v)
    in_colspan = leftover <= COLSPAN_RTOL * (1.0 + linalg3.norm2(prob.V))

    return EquilibriumResult(
        kind=REGULARIZED,
        s_e=float(y[0]),
        y_star=y,
        residual_d1=d1(prob, y, theta),
        theta_used=theta,
        in_colspan=bool(in_colspan),
    )


def solve(params: ModelParams, theta: Optional[float] = None) -> EquilibriumResult:
    """Unique equilibrium when it exists, the regularised one otherwise."""
    prob = build_problem(params)
    if regularity(prob) == REGULAR:
        return unique_equilibrium(prob)
    cfg = RegularizationConfig() if theta is None else RegularizationConfig(theta)
    return optimal_equilibrium(prob, cfg)
