"""Stepper arithmetic and the stochastic growth model.

The growth trials overshoot their commanded length by ~5%; the model keeps
that bias and adds length-dependent Gaussian scatter.
"""

from vcspine.length_control import (GROWTH_TRIALS, TRIAL_TARGETS, StepperParams, error_stats,
                                    simulate_trials, steps_for_length, trial_bias_factor)

p = StepperParams()
print(f"fabric per step: {p.step_length * 1e6:.2f} um")
for L in (0.05, 0.20, 0.30):
    print(f"  {L * 100:.0f} cm -> {steps_for_length(L)} steps")

print(f"\nmean measured/commanded ratio in the trials: {trial_bias_factor():.5f}")

stats = error_stats(simulate_trials(TRIAL_TARGETS, 5000))
print(f"simulated mean relative error: {stats.mean_rel_error:.2%}")
print("target   trial mean  sim mean   trial std  sim std   (cm)")
for (c, m, s), (mean, std) in zip(GROWTH_TRIALS, stats.per_target.values()):
    print(f"{c:5.0f} {m:11.2f} {mean * 100:9.2f} {s:10.2f} {std * 100:8.3f}")
