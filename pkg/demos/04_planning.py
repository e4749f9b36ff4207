"""Inverse configuration: pick a tip target, plan, replay, and look for redundancy."""

import math

from vcspine import default_robot
from vcspine.errors import UnreachableError
from vcspine.kinematics import pressures_for
from vcspine.planner import PlanRequest, plan, tip_dispersion
from vcspine.scenario import replay_events, scenario_text

robot = default_robot()

target = robot.tip(0.12, pressures_for(150e3, math.radians(40))).position
p = plan(PlanRequest(tuple(target)), robot)
print("target (cm):", (target * 100).round(2))
print(f"plan: spine {p.spine_length * 100:.2f} cm, pressures (kPa) "
      f"{[round(x / 1e3, 1) for x in p.pressures]}, error {p.tip_error * 1e3:.4f} mm")
print(scenario_text(p.command_sequence), end="")
print("replays to state:", replay_events(p.command_sequence).value)
print("tip std under growth error (mm):", (tip_dispersion(p, robot) * 1e3).round(2))

# same tip, different bend angle: needs a stiff proximal section
base = robot.config(0.0, (200e3, 0, 0))
tip = robot.tip(0.0, (200e3, 0, 0)).position
print(f"\nbare body at 200 kPa: theta {math.degrees(base.bend_angle):.2f} deg, "
      f"tip {(tip * 100).round(2)} cm")
for extra in (4, 8, 12):
    req = PlanRequest(tuple(tip), tolerance=0.02, pressure_max=300e3,
                      angle_constraint=(base.bend_angle + math.radians(extra), math.radians(1)))
    try:
        q = plan(req, robot)
        print(f"  +{extra:2d} deg: spine {q.spine_length * 100:5.2f} cm, "
              f"p1 {q.pressures.p1 / 1e3:5.1f} kPa, error {q.tip_error * 1e3:5.2f} mm")
    except UnreachableError as exc:
        print(f"  +{extra:2d} deg: {exc}")

try:
    plan(PlanRequest((0, 0, 0.45)), robot)
except UnreachableError as exc:
    print("\n(0, 0, 45) cm:", exc)
