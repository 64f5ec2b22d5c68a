"""Numerical radius of a few small matrices, checked against a brute-force search.

Run: python3 demos/radius_basics.py
"""

import math

import numpy as np

from numradius import jordan, nr_oracle, numerical_radius, op_norm, range_boundary

examples = {
    "2x2 Jordan block": jordan(2),
    "3x3 Jordan block": jordan(3),
    "diag(1, -2, 3)": np.diag([1.0, -2.0, 3.0]),
    "[[0, 3], [sqrt13, 0]]": np.array([[0, 3], [math.sqrt(13), 0]]),
}

print(f"{'matrix':<24}{'w(A)':>14}{'oracle':>14}{'||A||':>10}")
for name, a in examples.items():
    w = numerical_radius(a)
    print(f"{name:<24}{w:>14.10f}{nr_oracle(a):>14.10f}{op_norm(a):>10.5f}")

# w always sits between half the norm and the norm
rng = np.random.default_rng(1)
a = rng.standard_normal((5, 5)) + 1j * rng.standard_normal((5, 5))
w, norm = numerical_radius(a), op_norm(a)
print(f"\nrandom 5x5: ||A||/2 = {norm / 2:.6f} <= w = {w:.6f} <= ||A|| = {norm:.6f}")

# the support points of W(J3) all lie on a circle of radius 1/sqrt(2)
bd = range_boundary(jordan(3), 72)
radii = np.abs(bd.points)
print(f"W(J3) boundary radii lie in [{radii.min():.12f}, {radii.max():.12f}]")
