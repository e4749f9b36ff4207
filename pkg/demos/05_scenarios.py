"""Replay the bundled scenarios and draw their tip paths."""

import math
import sys

import numpy as np

from vcspine import default_robot
from vcspine.scenario import bundled_names, bundled_scenario, run_scenario
from vcspine.svg import write_svg

robot = default_robot()
paths, labels = [], []
for name in bundled_names():
    log = run_scenario(bundled_scenario(name), robot, seed=0)
    print(f"{name}:")
    for r in log.rows:
        print(f"  t={r.t:5.1f} {r.state:8s} spine {r.jammed_length * 100:5.2f} cm "
              f"p1 {r.pressures[0] / 1e3:5.0f} kPa  theta {math.degrees(r.theta):6.2f} deg")
    tips = np.array([r.tip for r in log.rows]) * 100
    paths.append(tips[:, [0, 2]])
    labels.append(name)

out = sys.argv[1] if len(sys.argv) > 1 else "scenario_paths.svg"
write_svg(out, paths, labels)
print("wrote", out)
