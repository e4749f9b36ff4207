"""Euler-Bernoulli cantilever with a point load at the free end.

Deflections are reported as magnitudes, positive in the direction of the
applied load.  ``deflection_oracle`` integrates the curvature equation
numerically and shares no code with the closed forms, so the two can be
checked against each other.
"""

import math
from dataclasses import dataclass

import numpy as np
from scipy.integrate import cumulative_trapezoid, trapezoid

from .errors import DomainError


def second_moment_circle(r):
    """Area moment of a solid circular section, pi r^4 / 4."""
    if not r > 0:
        raise DomainError(f"radius must be positive, got {r}")
    return math.pi * r ** 4 / 4


@dataclass(frozen=True)
class BeamSpec:
    length: float
    modulus: float
    second_moment: float

    def __post_init__(self):
        for name in ("length", "modulus", "second_moment"):
            v = getattr(self, name)
            if not (v > 0 and math.isfinite(v)):
                raise DomainError(f"{name} must be positive, got {v}")

    @classmethod
    def circular(cls, length, modulus, radius):
        return cls(length, modulus, second_moment_circle(radius))

    @property
    def rigidity(self):
        return self.modulus * self.second_moment


@dataclass(frozen=True)
class DeflectionSample:
    position: float
    deflection: float
    load: float


def _check_position(spec, x):
    if not (0.0 <= x <= spec.length):
        raise DomainError(f"position {x} outside beam [0, {spec.length}]")


def deflection_at(spec, F, x):
    """Closed-form deflection F (3L - x) x^2 / (6 E I) at distance x from the clamp."""
    _check_position(spec, x)
    return F * (3 * spec.length - x) * x ** 2 / (6 * spec.rigidity)


def tip_deflection(spec, F):
    return F * spec.length ** 3 / (3 * spec.rigidity)


def modulus_from_tip(F, L, r, y):
    """Young's modulus from a measured tip deflection ``y`` under tip load ``F``.

    Algebraic inverse of :func:`tip_deflection` for a circular section of
    radius ``r``: E = 4 F L^3 / (3 pi r^4 y).
    """
    if not F > 0:
        raise DomainError(f"tip load must be positive, got {F}")
    if not y > 0:
        raise DomainError(f"tip deflection must be positive, got {y}")
    if not (L > 0 and r > 0):
        raise DomainError("length and radius must be positive")
    return 4 * F * L ** 3 / (3 * math.pi * r ** 4 * y)


def deflection_oracle(spec, F, x, steps=100_000):
    """Deflection at ``x`` by double trapezoidal integration of y'' = F (L - s) / EI.

    Integrates from the clamp with y(0) = 0 and y'(0) = 0 on a uniform grid of
    ``steps`` intervals over [0, x].
    """
    _check_position(spec, x)
    if x == 0.0:
        return 0.0
    s = np.linspace(0.0, x, steps + 1)
    curvature = F * (spec.length - s) / spec.rigidity
    slope = cumulative_trapezoid(curvature, s, initial=0.0)
    return float(trapezoid(slope, s))
