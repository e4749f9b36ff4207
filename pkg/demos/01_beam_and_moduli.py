"""Cantilever deflection of the jammed spine and the moduli behind the stiffness curve.

Each measured modulus is turned back into the tip deflection a 5 N load would
produce, then recovered from that deflection, which is the same arithmetic
used to turn a force/deflection log into moduli.
"""

import numpy as np

from vcspine.beam import BeamSpec, deflection_oracle, modulus_from_tip, tip_deflection
from vcspine.stiffness import default_curve, modulus_at

r = 0.029
F = 5.0
curve = default_curve()

print("length  modulus   tip defl @5N   recovered modulus")
for s in curve.samples:
    spec = BeamSpec.circular(s.length, s.modulus, r)
    y = tip_deflection(spec, F)
    E = modulus_from_tip(F, s.length, r, y)
    print(f"{s.length * 100:4.0f} cm {s.modulus / 1e3:7.0f} kPa {y * 1000:9.3f} mm {E / 1e3:12.1f} kPa")

# numerical check against the closed form at the longest spine
spec = BeamSpec.circular(0.30, 4.389e6, r)
print("\nclosed form vs double integration at x = L:",
      tip_deflection(spec, F), deflection_oracle(spec, F, 0.30))

# the curve is continuous between samples
xs = np.linspace(0.01, 0.30, 8)
print("\ninterpolated modulus (kPa):", np.round([modulus_at(curve, x) / 1e3 for x in xs], 1))
