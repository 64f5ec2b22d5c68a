"""A small seeded verification run, summarised per bound.

The full default sweep is `numradius verify`; this one takes a few seconds.

Run: python3 demos/verification_run.py
"""

from numradius import harness as hs
from numradius.ensembles import EnsembleSpec

specs = [EnsembleSpec(kind, 3, 10, seed=42)
         for kind in ("ginibre", "hermitian", "normal", "unitary", "nilpotent", "offdiag_pair")]
records = hs.run_inequality_suite(specs, rs=[1, 2], alphas=[0, 0.5, 1])
for name in hs.LEMMAS:
    records += hs.run_lemma_suite(name, count=500)

print(f"{'check':<16}{'trials':>8}{'violations':>12}{'min margin':>14}{'mean margin':>14}")
for key, s in hs.summarize(records).items():
    print(f"{key:<16}{s['trials']:>8}{s['violations']:>12}{s['min_margin']:>14.3e}{s['mean_margin']:>14.3e}")

# the two lower bounds that do not dominate each other
rep = hs.noncomparability_demo()
for label, pair in (("pair 1", rep.pair1), ("pair 2", rep.pair2)):
    print(f"{label}: cartesian bound {pair['cartesian_bound']:.6f}, max-norm bound {pair['max_bound']:.6f}")
