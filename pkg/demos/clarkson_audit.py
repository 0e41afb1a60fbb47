"""
Auditing the strong triangle inequality
=======================================

In a uniformly convex l_p space the triangle inequality can be sharpened:
each vector pays a penalty 2*delta(angle)*|x| that depends on how far its
direction is from the direction of the sum. The audit below samples random
pairs and checks the sharpened form never fails beyond rounding.
"""

import math

import numpy as np

from vorocell import NormSpec, clarkson_angle, modulus, modulus_numeric, verify_clarkson

# %%
# The modulus of convexity
# ------------------------
# Closed form for p >= 2, a quadratic lower bound for 1 < p < 2, zero for
# p = 1 and p = inf. The brute-force column scans pairs of unit vectors of
# the plane and should never be below the formula.
for p in (1.5, 2.0, 3.0, math.inf):
    n = NormSpec(p)
    row = [(eps, modulus(n, eps), modulus_numeric(n, eps, 512)) for eps in (0.5, 1.0, 1.5)]
    print(f"p={p}: " + "  ".join(f"eps={e}: {a:.4f} <= {b:.4f}" for e, a, b in row))

# %%
# One pair by hand
# ----------------
x1, x2 = np.array([1.0, 0.0]), np.array([0.0, 1.0])
n = NormSpec(2)
a1 = clarkson_angle(x1, x1 + x2, n)
print("angle between x1 and x1+x2:", a1)
print("penalty per vector:", 2 * modulus(n, a1))

# %%
# The sampled audit
# -----------------
for p in (1.5, 2.0, 2.718281828, 4.0):
    report = verify_clarkson(NormSpec(p), trials=20_000, seed=1)
    print(report.to_json())
