"""Evaluate every cataloged bound on one matrix and on one off-diagonal pair.

Run: python3 demos/bound_catalog.py
"""

import numpy as np

from numradius import bounds as bd
from numradius.matrix import block_offdiag
from numradius.numrange import numerical_radius

rng = np.random.default_rng(7)
a = (rng.standard_normal((4, 4)) + 1j * rng.standard_normal((4, 4))) / np.sqrt(2)
b = (rng.standard_normal((4, 4)) + 1j * rng.standard_normal((4, 4))) / np.sqrt(2)

w = numerical_radius(a)
print(f"w(A) = {w:.8f}\n")
print(f"{'bound':<10}{'side':<7}{'target':<8}{'params':<18}{'value':>12}{'slack':>12}")
single = bd.classical_bounds(a) + bd.cor_min_grid(a, [1, 2], [0, 1]) + [bd.lower_single(a)]
for bv in single:
    print(f"{bv.id:<10}{bv.side:<7}{bv.target:<8}{bv.params or '-':<18}{bv.value:>12.6f}{bv.margin(w):>12.3e}")

wt = numerical_radius(block_offdiag(a, b))
print(f"\nw([[O, A], [B, O]]) = {wt:.8f}\n")
pair = [bd.offdiag_upper(a, b, 0.5, 1), *bd.lower_offdiag(a, b), bd.lower_max(a, b),
        bd.lower_combined(a, b)]
for bv in pair:
    print(f"{bv.id:<10}{bv.side:<7}{bv.target:<8}{bv.params or '-':<18}{bv.value:>12.6f}{bv.margin(wt):>12.3e}")

# the min-form single-operator bound never loses to the two classical ones it refines
cls = {(v.id, v.side): v.value for v in bd.classical_bounds(a)}
best = bd.cor_min_upper(a, 1).value
print(f"\nmin-form {best:.6f} vs w(A^2) bound {cls['eq14', 'upper']:.6f} "
      f"and w(|A||A*|) bound {cls['eq15', 'upper']:.6f}")
