"""Stiffness of the jammed spine as a function of grown length, and the
piecewise flexural rigidity of body + spine.
"""

from dataclasses import dataclass

import numpy as np

from .errors import DomainError, ValidationError

# Averaged moduli of the jammed spine (-70 kPa vacuum) from tip-load tests.
MEASURED_LENGTHS = (0.05, 0.10, 0.15, 0.20, 0.25, 0.30)
MEASURED_MODULI = (0.318e6, 1.323e6, 2.032e6, 3.069e6, 3.763e6, 4.389e6)


@dataclass(frozen=True)
class StiffnessSample:
    length: float
    modulus: float

    def __post_init__(self):
        if not self.length > 0:
            raise ValidationError(f"sample length must be positive, got {self.length}",
                                  "length")
        if not self.modulus > 0:
            raise ValidationError(f"sample modulus must be positive, got {self.modulus}",
                                  "modulus")


@dataclass(frozen=True)
class StiffnessCurve:
    """Monotone piecewise-linear modulus-vs-length curve.

    Below the first sample the curve runs linearly to (0, 0); between the last
    sample and ``max_length`` it is held flat.
    """

    samples: tuple
    max_length: float = 0.30

    def __post_init__(self):
        samples = tuple(self.samples)
        object.__setattr__(self, "samples", samples)
        if len(samples) < 2:
            raise ValidationError("a stiffness curve needs at least 2 samples", "samples")
        lengths = [s.length for s in samples]
        moduli = [s.modulus for s in samples]
        if any(b <= a for a, b in zip(lengths, lengths[1:])):
            raise ValidationError("sample lengths must be strictly increasing", "samples")
        if any(b < a for a, b in zip(moduli, moduli[1:])):
            raise ValidationError("sample moduli must be nondecreasing", "samples")
        if not self.max_length > 0:
            raise ValidationError("max_length must be positive", "max_length")

    @property
    def lengths(self):
        return np.array([s.length for s in self.samples])

    @property
    def moduli(self):
        return np.array([s.modulus for s in self.samples])


def default_curve(max_length=0.30):
    samples = tuple(StiffnessSample(L, E) for L, E in zip(MEASURED_LENGTHS, MEASURED_MODULI))
    return StiffnessCurve(samples, max_length=max_length)


def modulus_at(curve, L):
    """Interpolated spine modulus (Pa) at grown length ``L`` (m)."""
    if not (0 < L <= curve.max_length):
        raise DomainError(f"spine length {L} outside (0, {curve.max_length}]")
    xs = np.concatenate(([0.0], curve.lengths))
    ys = np.concatenate(([0.0], curve.moduli))
    # np.interp holds the last value beyond xs[-1]
    return float(np.interp(L, xs, ys))


@dataclass(frozen=True)
class RigiditySegment:
    start: float
    end: float
    rigidity: float

    @property
    def length(self):
        return self.end - self.start


@dataclass(frozen=True)
class RigidityProfile:
    segments: tuple

    def __iter__(self):
        return iter(self.segments)

    def __len__(self):
        return len(self.segments)

    @property
    def compliance(self):
        """Sum of segment length / EI; bend angle per unit moment."""
        return sum(s.length / s.rigidity for s in self.segments)


def body_rigidity(geom, mat, rigidity_scale=1.0):
    """EI of the hollow silicone body, optionally scaled by a calibrated factor."""
    return rigidity_scale * mat.body_modulus * geom.body_second_moment


def spine_rigidity(geom, curve, L_s):
    if L_s == 0:
        return 0.0
    return modulus_at(curve, L_s) * geom.spine_second_moment


def rigidity_profile(geom, mat, curve, L_s, rigidity_scale=1.0):
    """Piecewise EI along the body for a jammed spine grown to ``L_s`` from the base.

    The jammed part acts in parallel with the silicone (rigidities add).
    ``rigidity_scale`` multiplies the silicone term only; the spine term comes
    straight from the measured curve.
    """
    if not (0 <= L_s <= geom.spine_max_length):
        raise DomainError(f"spine length {L_s} outside [0, {geom.spine_max_length}]")
    if not rigidity_scale > 0:
        raise DomainError(f"rigidity scale must be positive, got {rigidity_scale}")
    ei_body = body_rigidity(geom, mat, rigidity_scale)
    segments = []
    if L_s > 0:
        segments.append(RigiditySegment(0.0, L_s, ei_body + spine_rigidity(geom, curve, L_s)))
    if L_s < geom.body_length:
        segments.append(RigiditySegment(L_s, geom.body_length, ei_body))
    return RigidityProfile(tuple(segments))
