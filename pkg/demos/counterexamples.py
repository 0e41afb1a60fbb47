"""
When the boundary is not the equality set
=========================================

For positively separated sites in a uniformly convex space, the boundary
of a dominance region is exactly the set where the two distances agree.
Each hypothesis matters; this script breaks them one at a time.
"""

import numpy as np

from vorocell import NormSpec, Site, SequenceSite, classify, fat_probe, f_value, verify_theorem
from vorocell.figures import fig1_scene, fig3_scene, l1_pair_scene, overlap_scene
from vorocell.verify import verify_not_attained, verify_remark_1d

# %%
# The baseline: six Euclidean sites
# ---------------------------------
report = verify_theorem(fig1_scene(), 0, trials=500, seed=0)
print("fig1:", report.verdict, report.details["failed_suites"])

# %%
# Dropping uniform convexity (l_inf)
# ----------------------------------
# The gate refuses the scene unless the bypass flag is set; once bypassed,
# the boundary suite fails because balls inside the "W" never see a sign.
scene = fig3_scene()
P, A = scene.sites
print(fat_probe((0, 3), 0.3, 200, P, A, scene.norm, tau=1e-6))
report = verify_theorem(scene, 0, trials=500, seed=0, allow_gate_bypass=True)
print("fig3:", report.details["gates"], "failed:", report.details["failed_suites"])

# The l1 plane shows the same thing with explicit quadrants.
scene = l1_pair_scene()
for z in [(0, 0), (-2, 2), (-3, 4), (0.5, 0.5)]:
    print("l1", z, classify(z, *scene.sites, scene.norm).verdict)

# %%
# Dropping positive separation (shared point)
# -------------------------------------------
scene = overlap_scene()
P, A = scene.sites
print("f on the strip:", [f_value((x, y), P, A, scene.norm) for x, y in [(0, 4), (-1, -3), (0.7, 0)]])
report = verify_theorem(scene, 0, trials=500, seed=0, allow_gate_bypass=True)
print("overlap: failed", report.details["failed_suites"])

# %%
# Disjoint but not separated (sequence space)
# -------------------------------------------
# The infimum distance 1 from the origin to A is approached along the basis
# vectors but never attained, and every point near 0 stays in dom(P, A).
P, A = Site([SequenceSite("P")]), Site([SequenceSite("A")])
print("f(0) =", f_value(np.zeros(5), P, A, NormSpec(2)))
print(verify_not_attained(support_dim=50, trials=2000).to_json())

# %%
# The one-dimensional picture
# ---------------------------
print(verify_remark_1d().details["checks"])
