"""Eigenvalues of the companion matrix and stability of the equilibrium.

The eigenvalues of F are the roots of the characteristic cubic of the
homogeneous recurrence,

    lambda^3 - c1(1+b) lambda^2 - [c2 + b(c2-c1)] lambda + b c2 = 0,

found here in closed form: Cardano's formula when there is one real root,
the trigonometric form when all three are real.
"""

import cmath
import math
from dataclasses import dataclass

import numpy as np

from .model import ModelParams

__all__ = [
    "ASYMPTOTICALLY_STABLE",
    "MARGINAL",
    "UNSTABLE",
    "MARGINAL_TOL",
    "CharacteristicCubic",
    "SpectralReport",
    "characteristic",
    "roots",
    "analyze",
]

ASYMPTOTICALLY_STABLE = "asymptotically_stable"
MARGINAL = "marginal"
UNSTABLE = "unstable"

MARGINAL_TOL = 1e-9
IMAG_TOL = 1e-10


@dataclass(frozen=True)
class CharacteristicCubic:
    """Monic cubic ``lambda^3 + p2 lambda^2 + p1 lambda + p0``."""

    p2: float
    p1: float
    p0: float

    @property
    def coefficients(self):
        return (1.0, self.p2, self.p1, self.p0)

    def __call__(self, lam):
        return ((lam + self.p2) * lam + self.p1) * lam + self.p0


@dataclass(frozen=True)
class SpectralReport:
    roots: np.ndarray
    spectral_radius: float
    classification: str
    oscillatory: bool


def characteristic(params: ModelParams) -> CharacteristicCubic:
    return CharacteristicCubic(
        p2=-params.c1 * (1.0 + params.b),
        p1=-params.lag2_coefficient,
        p0=params.b * params.c2,
    )


def _cbrt(x: float) -> float:
    return math.copysign(abs(x) ** (1.0 / 3.0), x)


def roots(cubic: CharacteristicCubic) -> np.ndarray:
    """The three complex roots, ordered by decreasing modulus.

    Substituting ``lambda = t - p2/3`` gives the depressed cubic
    ``t^3 + p t + q``. With ``disc = (q/2)^2 + (p/3)^3``, ``disc > 0`` means
    one real root and a conjugate pair, handled by Cardano's formula with
    the cube root taken on the side that avoids cancellation; ``disc <= 0``
    means three real roots, handled by the cosine form. Near-coincident
    roots are returned as computed.
    """
    a, b, c = cubic.p2, cubic.p1, cubic.p0
    shift = a / 3.0
    p = b - a * a / 3.0
    q = 2.0 * a * a * a / 27.0 - a * b / 3.0 + c
    disc = (q / 2.0) ** 2 + (p / 3.0) ** 3

    if p == 0.0 and q == 0.0:
        ts = [0.0, 0.0, 0.0]
    elif disc > 0.0:
        u = _cbrt(-q / 2.0 - math.copysign(math.sqrt(disc), q))
        v = -p / (3.0 * u) if u != 0.0 else 0.0
        re = -(u + v) / 2.0
        im = math.sqrt(3.0) / 2.0 * (u - v)
        ts = [u + v, complex(re, im), complex(re, -im)]
    else:
        # p < 0 here
        m = 2.0 * math.sqrt(-p / 3.0)
        arg = 3.0 * q / (p * m)
        phi = math.acos(max(-1.0, min(1.0, arg))) / 3.0
        ts = [m * math.cos(phi - 2.0 * math.pi * k / 3.0) for k in range(3)]

    lams = np.array([complex(t) - shift for t in ts], dtype=np.complex128)
    return lams[np.argsort(-np.abs(lams), kind="stable")]


def analyze(params: ModelParams) -> SpectralReport:
    """Spectral radius of F and the stability class it implies.

    ``asymptotically_stable`` when the radius is below ``1 - MARGINAL_TOL``,
    ``marginal`` within ``MARGINAL_TOL`` of one, ``unstable`` above.
    """
    lams = roots(characteristic(params))
    radius = float(np.max(np.abs(lams)))
    if radius < 1.0 - MARGINAL_TOL:
        cls = ASYMPTOTICALLY_STABLE
    elif radius <= 1.0 + MARGINAL_TOL:
        cls = MARGINAL
    else:
        cls = UNSTABLE
    oscillatory = bool(np.any(np.abs(lams.imag) > IMAG_TOL * (1.0 + np.abs(lams))))
    lams.setflags(write=False)
    return SpectralReport(roots=lams, spectral_radius=radius, classification=cls, oscillatory=oscillatory)
