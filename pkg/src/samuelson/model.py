"""Multiplier-accelerator recurrences and their companion-matrix form.

The delayed model makes consumption depend on the two previous incomes,

    C_k = c1 T_{k-1} + c2 T_{k-2} + P,     I_k = b (C_k - C_{k-1}),

and national income is ``T_k = C_k + I_k``. Eliminating C and I gives the
third-order recurrence

    T_{k+3} = c1(1+b) T_{k+2} + [c2 + b(c2-c1)] T_{k+1} - b c2 T_k + P,

which is simulated directly by :func:`simulate` and as the first-order
vector system ``Y_{k+1} = F Y_k + V`` by :func:`simulate_companion`, with
``Y_k = (T_k, T_{k+1}, T_{k+2})``.

The classic second-order model (consumption lagged one period, constant
government spending) is available as :func:`simulate_classic` for
comparison.

Trajectories are 0-based. ``steps`` always counts applications of the
recurrence, so a delayed-model run returns ``steps + 3`` incomes and a
classic run ``steps + 2``.
"""

import math
from dataclasses import dataclass
from typing import Iterator, Optional

import numpy as np

from .errors import InvalidParameters, NonFiniteError

__all__ = [
    "STRICT",
    "EXTENDED",
    "ModelParams",
    "ClassicParams",
    "CompanionSystem",
    "Trajectory",
    "build_companion",
    "step",
    "simulate",
    "simulate_companion",
    "simulate_classic",
]

STRICT = "strict"
EXTENDED = "extended"

# c1 + c2 == 1 is the whole point of extended mode; allow a few ulps so that
# grid points such as 0.30000000000000004 + 0.7 still qualify.
_BOUNDARY_SLACK = 1e-12


def _require(ok, message, constraint):
    if not ok:
        raise InvalidParameters(message, constraint)


@dataclass(frozen=True)
class ModelParams:
    """Coefficients of the delayed multiplier-accelerator model.

    Attributes
    ----------
    c1, c2 : float
        Propensities to consume out of income one and two periods back.
    b : float
        Accelerator factor.
    P : float
        Autonomous consumption, government spending included.
    mode : {"strict", "extended"}
        ``strict`` requires ``0 < c1 + c2 < 1``. ``extended`` also admits
        the boundary ``c1 + c2 = 1`` where the equilibrium is not unique.
    """

    c1: float
    c2: float
    b: float
    P: float
    mode: str = STRICT

    def __post_init__(self):
        for name in ("c1", "c2", "b", "P"):
            value = getattr(self, name)
            _require(
                isinstance(value, (int, float, np.floating, np.integer)) and math.isfinite(value),
                f"{name} must be a finite real number (got {value!r})",
                f"{name} finite",
            )
            object.__setattr__(self, name, float(value))
        _require(
            self.mode in (STRICT, EXTENDED),
            f"mode must be 'strict' or 'extended' (got {self.mode!r})",
            "mode in {strict, extended}",
        )
        _require(self.c1 > 0, f"c1 must be positive (got {self.c1!r})", "c1 > 0")
        _require(self.c2 > 0, f"c2 must be positive (got {self.c2!r})", "c2 > 0")
        _require(self.b > 0, f"the accelerator b must be positive (got {self.b!r})", "b > 0")
        total = self.c1 + self.c2
        if self.mode == STRICT:
            _require(
                total < 1,
                f"strict mode requires 0 < c1 + c2 < 1 (got c1 + c2 = {total!r}); "
                "use extended mode for the boundary c1 + c2 = 1",
                "0 < c1 + c2 < 1",
            )
        else:
            _require(
                total <= 1 + _BOUNDARY_SLACK,
                f"extended mode requires c1 + c2 <= 1 (got c1 + c2 = {total!r})",
                "0 < c1 + c2 <= 1",
            )

    @property
    def lag2_coefficient(self) -> float:
        """Weight ``c2 + b(c2 - c1)`` on ``T_{k-2}``."""
        return self.c2 + self.b * (self.c2 - self.c1)

    @property
    def det_g(self) -> float:
        """``1 - c1 - c2``, the determinant of ``I - F``."""
        return 1.0 - self.c1 - self.c2


@dataclass(frozen=True)
class ClassicParams:
    """Classic model: multiplier ``a``, accelerator ``b``, spending ``G_bar``."""

    a: float
    b: float
    G_bar: float

    def __post_init__(self):
        for name in ("a", "b", "G_bar"):
            value = getattr(self, name)
            _require(
                isinstance(value, (int, float, np.floating, np.integer)) and math.isfinite(value),
                f"{name} must be a finite real number (got {value!r})",
                f"{name} finite",
            )
            object.__setattr__(self, name, float(value))
        _require(0 < self.a < 1, f"the multiplier must satisfy 0 < a < 1 (got {self.a!r})", "0 < a < 1")
        _require(self.b > 0, f"the accelerator b must be positive (got {self.b!r})", "b > 0")


def _frozen(a):
    a = np.array(a, dtype=np.float64)
    a.setflags(write=False)
    return a


@dataclass(frozen=True)
class CompanionSystem:
    F: np.ndarray
    V: np.ndarray

    def __post_init__(self):
        object.__setattr__(self, "F", _frozen(self.F))
        object.__setattr__(self, "V", _frozen(self.V))
        if self.F.shape != (3, 3) or self.V.shape != (3,):
            raise ValueError("companion system needs a 3x3 F and a 3-vector V")


@dataclass(frozen=True)
class Trajectory:
    """Simulated incomes with consumption and investment where defined.

    ``C`` and ``I`` are either ``None`` (classic model) or arrays aligned
    with ``T`` whose first two entries are NaN, since consumption needs two
    lagged incomes.
    """

    start_index: int
    T: np.ndarray
    C: Optional[np.ndarray] = None
    I: Optional[np.ndarray] = None

    def __len__(self):
        return len(self.T)

    @property
    def k(self) -> np.ndarray:
        return np.arange(self.start_index, self.start_index + len(self.T))

    def records(self) -> Iterator[tuple]:
        """Yield ``(k, T, C, I)`` with ``None`` for undefined C and I."""
        for n, t in enumerate(self.T):
            if self.C is None or n < 2:
                yield (self.start_index + n, float(t), None, None)
            else:
                yield (self.start_index + n, float(t), float(self.C[n]), float(self.I[n]))


def build_companion(params: ModelParams) -> CompanionSystem:
    """Companion matrix F and forcing vector V of the delayed model."""
    if not isinstance(params, ModelParams):
        raise TypeError("build_companion expects ModelParams")
    c1, c2, b = params.c1, params.c2, params.b
    F = [
        [0.0, 1.0, 0.0],
        [0.0, 0.0, 1.0],
        [-b * c2, params.lag2_coefficient, c1 * (1.0 + b)],
    ]
    return CompanionSystem(F=F, V=[0.0, 0.0, params.P])


def _advance(F, V, y1, y2, y3):
    # Rows are summed highest lag last, the same order simulate() uses, so
    # the two paths agree bit for bit.
    return (
        F[0][2] * y3 + F[0][1] * y2 + F[0][0] * y1 + V[0],
        F[1][2] * y3 + F[1][1] * y2 + F[1][0] * y1 + V[1],
        F[2][2] * y3 + F[2][1] * y2 + F[2][0] * y1 + V[2],
    )


def step(sys: CompanionSystem, y) -> np.ndarray:
    """One application of ``Y -> F Y + V``."""
    y = np.asarray(y, dtype=np.float64)
    return np.array(_advance(sys.F.tolist(), sys.V.tolist(), *y.tolist()))


def simulate_companion(params: ModelParams, y0, steps: int) -> np.ndarray:
    """Iterate the companion system; row ``k`` of the result is ``Y_k``.

    Returns a ``(steps + 1, 3)`` array whose first row is ``y0``.

    Raises
    ------
    NonFiniteError
        On the first state containing inf or nan. The finite prefix is
        attached as ``trajectory``.
    """
    steps = _check_steps(steps)
    sys = build_companion(params)
    y = np.asarray(y0, dtype=np.float64)
    if y.shape != (3,) or not np.all(np.isfinite(y)):
        raise ValueError("initial state must be three finite numbers")
    F = sys.F.tolist()
    V = sys.V.tolist()
    out = np.empty((steps + 1, 3))
    out[0] = y
    y1, y2, y3 = y.tolist()
    for k in range(1, steps + 1):
        y1, y2, y3 = y2, y3, _advance(F, V, y1, y2, y3)[2]
        if not math.isfinite(y3):
            raise NonFiniteError(
                f"state Y_{k} is not finite (T_{k + 2} overflowed)", index=k, trajectory=out[:k].copy()
            )
        out[k] = (y1, y2, y3)
    return out


def _check_steps(steps):
    if isinstance(steps, bool) or int(steps) != steps or steps < 0:
        raise ValueError(f"steps must be a non-negative integer (got {steps!r})")
    return int(steps)


def simulate(params: ModelParams, t0: float, t1: float, t2: float, steps: int) -> Trajectory:
    """Run the third-order income recurrence from seeds ``T_0, T_1, T_2``.

    Consumption is reported from ``k = 2`` on and investment is the
    residual ``T_k - C_k``.

    Raises
    ------
    NonFiniteError
        When an income overflows; the finite prefix is attached.
    """
    steps = _check_steps(steps)
    seeds = [float(t0), float(t1), float(t2)]
    if not all(math.isfinite(s) for s in seeds):
        raise ValueError("initial incomes must be finite")

    F = build_companion(params).F.tolist()
    a1, a2, a3 = F[2][2], F[2][1], F[2][0]
    P = params.P
    n = steps + 3
    T = np.empty(n)
    T[:3] = seeds
    tm3, tm2, tm1 = seeds
    for k in range(3, n):
        t = a1 * tm1 + a2 * tm2 + a3 * tm3 + P
        if not math.isfinite(t):
            raise NonFiniteError(
                f"T_{k} is not finite", index=k, trajectory=_with_accounts(params, T[:k].copy())
            )
        T[k] = t
        tm3, tm2, tm1 = tm2, tm1, t
    return _with_accounts(params, T)


def _with_accounts(params, T):
    C = np.full(len(T), np.nan)
    if len(T) > 2:
        C[2:] = params.c1 * T[1:-1] + params.c2 * T[:-2] + params.P
    return Trajectory(start_index=0, T=T, C=C, I=T - C)


def simulate_classic(params: ClassicParams, t0: float, t1: float, steps: int) -> Trajectory:
    """Run ``T_{k+2} = a(1+b) T_{k+1} - a b T_k + G_bar`` from two seeds."""
    steps = _check_steps(steps)
    seeds = [float(t0), float(t1)]
    if not all(math.isfinite(s) for s in seeds):
        raise ValueError("initial incomes must be finite")
    a, b, g = params.a, params.b, params.G_bar
    lead = a * (1.0 + b)
    lag = a * b
    T = np.empty(steps + 2)
    T[:2] = seeds
    for k in range(2, steps + 2):
        t = lead * T[k - 1] - lag * T[k - 2] + g
        if not math.isfinite(t):
            raise NonFiniteError(f"T_{k} is not finite", index=k, trajectory=Trajectory(0, T[:k].copy()))
        T[k] = t
    return Trajectory(start_index=0, T=T)
