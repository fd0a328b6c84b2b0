"""Build one juncture from each flexible family and watch it flex.

A juncture is the closed chain of edges where two prismatic tube segments
meet.  Four parameter families admit a one-parameter motion: as the tilt
angle theta changes, every vertex moves while all edge lengths and face
angles stay fixed.  This script constructs one juncture per family, prints
the solved parameter sets, and verifies the chain stays closed across the
whole flexion interval.
"""

import math

import numpy as np

from flexprism import (
    closure_residual,
    flexion_range,
    juncture_i_oee,
    juncture_ii_aee,
    juncture_ii_oee,
    juncture_iii_oae,
)

DEG = math.pi / 180.0


def show(name, p):
    rng = flexion_range(p)
    print(f"--- {name} (n = {p.n}) ---")
    print("  u-side angles (deg):", np.round(np.degrees(p.angles_u), 3))
    print("  w-side angles (deg):", np.round(np.degrees(p.angles_w), 3))
    print("  edge lengths:       ", np.round(p.lengths, 6))
    print("  z-step signs:       ", p.z_signs)
    lo, hi = math.degrees(rng.lo), math.degrees(rng.hi)
    print(f"  flexion interval:    [{lo:.2f}, {hi:.2f}] degrees"
          + ("  (mirror branch too)" if rng.mirrored else ""))

    worst = 0.0
    for theta in rng.samples(200):
        worst = max(worst, float(np.linalg.norm(closure_residual(p, theta))))
    print(f"  worst closure residual over 200 samples: {worst:.2e}")
    print()


# Opposite edges equal, first kind: w-side angles are the u-side angles
# shifted half a turn.  Three angles and one length are free here; the
# fourth length is solved from the walk-around balance.
show("I_OEE", juncture_i_oee(np.array([80, 100, 110, 75]) * DEG, [1.0]))

# Adjacent edges equal: w-side angles are the u-side angles reversed and
# edge lengths are palindromic.
show("II_AEE", juncture_ii_aee(np.array([100, 70, 50, 120]) * DEG, [1.0]))

# Opposite edges equal, second kind: everything repeats with period n/2,
# and the two halves of the continuity constraint are independent, so two
# lengths are solved.
show("II_OEE", juncture_ii_oee(np.array([75, 130, 70]) * DEG,
                               np.array([60, 105, 95]) * DEG, [1.0]))

# Opposite angles equal: two free angles only; every face angle is one of
# them or a supplement.  Lengths balance across the second supplementary
# vertex (index 3 here), separately for odd and even positions.
show("III_OAE", juncture_iii_oae(6, 3, 75 * DEG, 100 * DEG, [2.0, 0.8], [1.5, 0.6]))
