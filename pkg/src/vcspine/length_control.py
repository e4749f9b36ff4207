"""Stepper-driven spine length: ideal step counts and a stochastic growth model.

The stochastic model reproduces the repeated growth trials: commanded lengths
overshoot by a roughly constant factor, with a length-dependent scatter.
"""

import csv
import io
import logging
import math
from dataclasses import dataclass, field

import numpy as np

from .errors import DomainError

log = logging.getLogger(__name__)

# repeated growth trials: commanded (cm), measured mean (cm), measured std (cm)
GROWTH_TRIALS = (
    (5.0, 5.25, 0.30),
    (10.0, 10.53, 0.32),
    (15.0, 15.77, 0.31),
    (20.0, 21.06, 0.34),
    (25.0, 26.42, 0.39),
    (30.0, 31.43, 0.36),
)
TRIAL_TARGETS = tuple(r[0] / 100 for r in GROWTH_TRIALS)


@dataclass(frozen=True)
class StepperParams:
    steps_per_rev: int = 200
    gearbox_ratio: float = 15.0
    shaft_radius: float = 0.01

    def __post_init__(self):
        if not (self.steps_per_rev > 0 and self.gearbox_ratio > 0 and self.shaft_radius > 0):
            raise DomainError("stepper parameters must all be positive")

    @property
    def step_length(self):
        """Fabric paid out per motor step, m."""
        return 2 * math.pi * self.shaft_radius / (self.gearbox_ratio * self.steps_per_rev)


def steps_for_length(dl, p=StepperParams()):
    if dl < 0:
        raise DomainError(f"length change must be nonnegative, got {dl}; "
                          "use signed_steps_for_length to retract")
    return int(round(dl / p.step_length))


def signed_steps_for_length(dl, p=StepperParams()):
    n = steps_for_length(abs(dl), p)
    return -n if dl < 0 else n


def length_from_steps(steps, p=StepperParams()):
    if steps < 0:
        raise DomainError(f"step count must be nonnegative, got {steps}")
    return steps * p.step_length


@dataclass(frozen=True)
class LengthErrorModel:
    bias_factor: float = 1.0518
    sigma_lengths: tuple = TRIAL_TARGETS
    sigmas: tuple = tuple(r[2] / 100 for r in GROWTH_TRIALS)

    def __post_init__(self):
        if not self.bias_factor > 0:
            raise DomainError("bias_factor must be positive")
        if len(self.sigma_lengths) != len(self.sigmas) or not self.sigmas:
            raise DomainError("sigma table is malformed")
        if any(s < 0 for s in self.sigmas):
            raise DomainError("sigmas must be nonnegative")

    def sigma(self, target):
        # flat extrapolation outside the measured range
        return float(np.interp(target, self.sigma_lengths, self.sigmas))

    @classmethod
    def ideal(cls):
        return cls(bias_factor=1.0, sigma_lengths=(0.0,), sigmas=(0.0,))


def trial_bias_factor():
    """Mean measured/commanded ratio over the growth trials."""
    return float(np.mean([m / r for r, m, _ in GROWTH_TRIALS]))


@dataclass(frozen=True)
class GrowthRealization:
    commanded: float
    realized: float
    seed: int


def simulate_growth(target, model=LengthErrorModel(), seed=0, max_length=0.30):
    """One stochastic realization of growing the spine to ``target`` metres."""
    if not (0 < target <= max_length):
        raise DomainError(f"growth target {target} outside (0, {max_length}]")
    rng = np.random.default_rng(seed)
    realized = target * model.bias_factor + rng.normal(0.0, 1.0) * model.sigma(target)
    if realized < 0:
        log.warning("clamping negative realized length %g to 0 (seed %d)", realized, seed)
        realized = 0.0
    return GrowthRealization(target, float(realized), seed)


def simulate_trials(targets, n, model=LengthErrorModel(), base_seed=0, max_length=0.30):
    """``n`` seeded realizations per target; seeds are ``base_seed .. base_seed+n-1``."""
    out = []
    for target in targets:
        for i in range(n):
            out.append(simulate_growth(target, model, base_seed + i, max_length))
    return out


@dataclass(frozen=True)
class ErrorStats:
    mean_rel_error: float
    max_std: float
    per_target: dict = field(default_factory=dict)


def error_stats(realizations):
    """Mean relative length error and the largest per-target sample std."""
    if not realizations:
        raise DomainError("no realizations to summarise")
    rel = [abs(r.realized - r.commanded) / r.commanded for r in realizations]
    groups = {}
    for r in realizations:
        groups.setdefault(r.commanded, []).append(r.realized)
    per_target = {}
    for target, vals in sorted(groups.items()):
        std = float(np.std(vals, ddof=1)) if len(vals) > 1 else 0.0
        per_target[target] = (float(np.mean(vals)), std)
    max_std = max(std for _, std in per_target.values())
    return ErrorStats(float(np.mean(rel)), max_std, per_target)


def realizations_csv(realizations):
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["seed", "commanded_cm", "realized_cm"])
    for r in realizations:
        w.writerow([r.seed, repr(r.commanded * 100), repr(r.realized * 100)])
    return buf.getvalue()
