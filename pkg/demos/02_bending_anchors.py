"""Fit the actuation model to the two measured bends and look at what it predicts.

The gain c maps net chamber pressure to moment; beta rescales the silicone
rigidity.  Two records pin both exactly.  Pinning beta = 1 instead shows how
far a gain-only model misses the long-spine bend.
"""

import math

from vcspine import MaterialParams, RobotGeometry, default_curve
from vcspine import calibration as cal
from vcspine.kinematics import Robot, bend_angle_table

geom, mat, curve = RobotGeometry(), MaterialParams(), default_curve()

fit = cal.fit_actuation(cal.MEASURED_BEND_ANCHORS, geom, mat, curve)
print(cal.residual_report(fit))

one = cal.fit_actuation(cal.MEASURED_BEND_ANCHORS[:1], geom, mat, curve, fix_rigidity_scale=1.0)
pred = Robot(geom, mat, curve, one.model).config(0.30, (250e3, 0, 0)).bend_angle
print(f"beta pinned to 1: 30 cm bend {math.degrees(pred):.2f} deg vs measured 41.50 deg\n")

lengths = [L / 100 for L in range(0, 31, 5)]
pressures = [P * 1e3 for P in range(50, 251, 50)]
table = bend_angle_table(geom, mat, curve, fit.model, lengths, pressures)
print("bend angle (deg), rows = spine cm, cols = kPa")
print("       " + "".join(f"{P / 1e3:8.0f}" for P in pressures))
for L, row in zip(lengths, table):
    print(f"{L * 100:5.0f}  " + "".join(f"{v:8.2f}" for v in row))

# with the reach values the fit trades a little angle accuracy for tip position
reach = cal.fit_actuation(cal.MEASURED_REACH_ANCHORS, geom, mat, curve)
print()
print(cal.residual_report(reach))
