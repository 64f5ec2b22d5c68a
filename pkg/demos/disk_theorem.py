"""When Re(|A||A*|) = O the numerical range is a disk centred at the origin.

The 3x3 Jordan block shows the converse fails: its range is a disk of the
predicted radius although Re(|A||A*|) = diag(0, 1, 0).

Run: python3 demos/disk_theorem.py
"""

from numradius import harness as hs
from numradius.ensembles import trial_rng
from numradius.matrix import diag, jordan

cases = {"J2": jordan(2), "J3": jordan(3), "diag(0, 1)": diag(0, 1)}
for k, n in enumerate((2, 3, 4, 5, 6)):
    cases[f"zero product, n={n}"] = hs.zero_product_matrix(trial_rng(0, k), n)

print(f"{'matrix':<22}{'||Re(|A||A*|)||':>17}{'w':>12}{'predicted':>12}{'disk':>6}")
for name, a in cases.items():
    rep = hs.disk_theorem_check(a)
    print(f"{name:<22}{rep.re_norm:>17.3e}{rep.radius:>12.8f}{rep.expected_radius:>12.8f}"
          f"{'yes' if rep.disk else 'no':>6}")
    if rep.converse_counterexample:
        print(f"{'':<22}radius formula holds without the hypothesis")
