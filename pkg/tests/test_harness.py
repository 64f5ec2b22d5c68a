import io
import json
import math

import numpy as np
import pytest

from numradius import harness as hs
from numradius import matrix as m
from numradius.ensembles import EnsembleSpec, trial_rng
from numradius.spectral import NotPSDError

J2, J3 = m.jordan(2), m.jordan(3)
ONE = m.cmatrix([[1.0]])


def test_check_record_margin_and_violation():
    up = hs.record("x", "", "p", "upper", 1.0, 1.0 - 5e-10)
    assert up.margin == pytest.approx(-5e-10) and not up.violated
    assert up.tolerance == pytest.approx(1e-9 + 1e-7)
    assert hs.record("x", "", "p", "upper", 1.0, 1.0 - 2e-7).violated
    low = hs.record("x", "", "p", "lower", 2.0, 1.0)
    assert low.margin == 1.0 and not low.violated
    eq = hs.record("x", "", "p", "equal", 2.0, 2.5)
    assert eq.margin == -0.5 and eq.violated


def test_mccarthy_examples():
    x = np.array([1, 1]) / math.sqrt(2)
    rec = hs.check_lemma_mccarthy(m.diag(1, 4), x, 2)
    assert rec.lhs == pytest.approx(6.25) and rec.rhs == pytest.approx(8.5)
    assert not rec.violated
    rec = hs.check_lemma_mccarthy(m.diag(1, 4), x, 1)
    assert rec.lhs == pytest.approx(rec.rhs, abs=1e-14)
    rec = hs.check_lemma_mccarthy(m.identity(3), np.array([0, 0.6, 0.8j]), 3.3)
    assert rec.lhs == pytest.approx(1) and rec.rhs == pytest.approx(1)
    with pytest.raises(NotPSDError):
        hs.check_lemma_mccarthy(m.diag(1, -1), x, 2)
    with pytest.raises(ValueError):
        hs.check_lemma_mccarthy(m.diag(1, 4), [1, 1], 2)


def test_buzano_examples():
    e = np.array([1, 0])
    rec = hs.check_lemma_buzano(e, e, e)
    assert rec.lhs == pytest.approx(1) and rec.rhs == pytest.approx(1)
    rec = hs.check_lemma_buzano([0, 2], [1, 1j], e)
    assert rec.lhs == 0 and rec.rhs >= 0
    rec = hs.check_lemma_buzano([1, 0], [0, 1], np.array([1, 1]) / math.sqrt(2))
    assert rec.lhs == pytest.approx(0.5) and rec.rhs == pytest.approx(0.5)
    assert rec.margin == pytest.approx(0, abs=1e-15)


def test_bohr_examples():
    rec = hs.check_lemma_bohr([1, 1], 2)
    assert (rec.lhs, rec.rhs) == (4, 4)
    rec = hs.check_lemma_bohr([2.5], 3.7)
    assert rec.lhs == pytest.approx(rec.rhs, rel=1e-15)
    rec = hs.check_lemma_bohr([1, 2, 3], 2)
    assert (rec.lhs, rec.rhs) == (36, 42)
    with pytest.raises(ValueError):
        hs.check_lemma_bohr([1, -1], 2)


def test_mixed_schwarz_examples(rng):
    x = rng.standard_normal(3) + 1j * rng.standard_normal(3)
    y = rng.standard_normal(3) + 1j * rng.standard_normal(3)
    rec = hs.check_lemma_mixed_schwarz(m.identity(3), x, y)
    assert rec.lhs == pytest.approx(abs(np.vdot(y, x)))
    assert rec.rhs == pytest.approx(np.linalg.norm(x) * np.linalg.norm(y))
    rec = hs.check_lemma_mixed_schwarz(J2, [0, 0], [1, 0])
    assert rec.lhs == 0 and rec.rhs == 0
    rec = hs.check_lemma_mixed_schwarz(J2, [0, 1], [1, 0])
    assert rec.lhs == pytest.approx(1) and rec.rhs == pytest.approx(1)


@pytest.mark.parametrize("name", sorted(hs.LEMMAS))
def test_lemma_suites_small(name):
    recs = hs.run_lemma_suite(name, count=300, seed=3)
    assert len(recs) == 300 and not any(r.violated for r in recs)
    again = hs.run_lemma_suite(name, count=5, seed=3)
    assert again == recs[:5]


def test_identity_suite_small():
    recs = hs.run_identity_suite(count=15, seed=1)
    assert len(recs) == 45 and not any(r.violated for r in recs)


def test_equality_probe_examples():
    rep = hs.equality_probe(ONE, ONE)
    assert rep.radius == pytest.approx(1.0, abs=1e-12)
    assert not any(imp.triggered for imp in rep.implications) and rep.ok

    rep = hs.equality_probe(m.zeros(2), m.zeros(2))
    assert all(imp.triggered and imp.held for imp in rep.implications)

    # w([[0,1],[0,0]]) = 1/2 equals half the Cartesian norm with ||A+B*|| = ||A-B*|| = 1
    rep = hs.equality_probe(ONE, m.zeros(1))
    first = rep.implications[0]
    assert first.name == "first-cartesian" and first.triggered and first.held

    rep = hs.equality_probe(J2, J2)
    quarter = {imp.name: imp for imp in rep.implications}["quarter-sum"]
    assert quarter.triggered and quarter.held and rep.ok

    rep = hs.equality_probe(J2, m.adjoint(J2))
    assert rep.radius == pytest.approx(1.0, abs=1e-9) and rep.ok
    with pytest.raises(ValueError):
        hs.equality_probe(J2, J2, eps=0)


def test_refinement_check_examples(rng):
    recs = {r.bound_id: r for r in hs.refinement_check(J3)}
    assert recs["refine-eq14"].lhs == pytest.approx(0.75, abs=1e-9)
    assert recs["refine-eq14"].rhs == pytest.approx(0.75, abs=1e-9)
    assert recs["refine-eq15"].rhs >= 0.75 - 1e-9
    assert recs["refine-re-vs-w"].lhs == pytest.approx(1.0, abs=1e-12)
    assert not any(r.violated for r in recs.values())
    h = rng.standard_normal((4, 4))
    h = h + h.T
    vals = [r for r in hs.refinement_check(h) if r.bound_id.startswith("refine-eq")]
    norm2 = np.linalg.norm(h, 2) ** 2
    for r in vals:
        assert r.lhs == pytest.approx(norm2, rel=1e-9) and r.rhs == pytest.approx(norm2, rel=1e-9)


def test_refinement_strict_in_aggregate():
    gaps14, gaps15 = [], []
    for k in range(40):
        a = m.cmatrix(hs.ginibre(trial_rng(9, k), 4))
        recs = {r.bound_id: r for r in hs.refinement_check(a)}
        gaps14.append(recs["refine-eq14"].margin)
        gaps15.append(recs["refine-eq15"].margin)
    assert min(gaps14) >= -1e-9 and min(gaps15) >= -1e-9
    # the min-form coincides with the w(A^2) bound whenever that term is the minimum,
    # and improves on the w(|A||A*|) bound strictly on average
    assert np.mean(gaps15) > 1e-3
    assert sum(g > 1e-6 for g in gaps15) >= 30


def test_strictness_indicators():
    re_val, im_val = hs.strictness_indicators(J3)
    assert re_val == pytest.approx(1.0) and im_val == pytest.approx(0.0, abs=1e-15)


def test_disk_theorem_examples():
    rep = hs.disk_theorem_check(J2)
    assert rep.hypothesis and rep.passed and rep.disk
    assert rep.expected_radius == pytest.approx(0.5)
    rep = hs.disk_theorem_check(J3)
    assert not rep.hypothesis and rep.re_norm == pytest.approx(1.0)
    assert rep.radius == pytest.approx(math.sqrt(2) / 2, abs=1e-9)
    assert rep.converse_counterexample and rep.disk
    rep = hs.disk_theorem_check(m.diag(0, 1))
    assert not rep.hypothesis and not rep.disk and not rep.converse_counterexample


@pytest.mark.parametrize("n", [2, 3, 4, 5])
def test_zero_product_construction(n):
    a = hs.zero_product_matrix(trial_rng(1, n), n)
    rep = hs.disk_theorem_check(a, count=120)
    assert rep.hypothesis and rep.passed


def test_noncomparability_demo():
    rep = hs.noncomparability_demo()
    assert rep.pair1["cartesian_norm"] == pytest.approx(math.sqrt(18), abs=1e-12)
    assert rep.pair1["max_norm"] == pytest.approx(math.sqrt(13), abs=1e-12)
    assert rep.pair2["cartesian_norm"] == pytest.approx(3.0, abs=1e-12)
    assert rep.pair1["cartesian_bound"] > rep.pair1["max_bound"]
    assert rep.pair2["cartesian_bound"] < rep.pair2["max_bound"]
    for pair in (rep.pair1, rep.pair2):
        assert pair["max_bound"] == pytest.approx(0.5 * pair["max_norm"] + pair["shared_term"])
        assert pair["radius"] >= max(pair["cartesian_bound"], pair["max_bound"])


def test_inequality_suite_named_examples():
    recs = hs.run_inequality_suite([], rs=[1], alphas=[0, 1],
                                   extra=[("named:j3", J3), ("named:ones", (ONE, ONE))])
    j3 = [r for r in recs if r.provenance == "named:j3" and r.bound_id == "cor26"
          and r.params == "alpha=min;r=1"]
    assert len(j3) == 1
    assert j3[0].lhs == pytest.approx(0.5, abs=1e-9)
    assert j3[0].rhs == pytest.approx(0.75, abs=1e-9)
    assert j3[0].margin == pytest.approx(0.25, abs=1e-9)
    lows = [r for r in recs if r.provenance == "named:ones" and r.side == "lower"]
    assert {r.bound_id for r in lows} == {"low1", "low2", "lowmax", "lowcomb"}
    assert all(abs(r.margin) <= 1e-12 for r in lows)
    assert not any(r.violated for r in recs)


def test_inequality_suite_nilpotent_equality():
    recs = hs.run_inequality_suite([EnsembleSpec("nilpotent", 2, 5)], rs=[1], alphas=[1])
    eq12 = [r for r in recs if r.bound_id == "eq12-lower"]
    assert len(eq12) == 5 and all(abs(r.margin) <= 1e-8 for r in eq12)


def test_inequality_suite_parameter_validation():
    with pytest.raises(ValueError):
        hs.run_inequality_suite([], rs=[0.5])
    with pytest.raises(ValueError):
        hs.run_inequality_suite([], alphas=[1.5])


def test_threads_preserve_order():
    specs = [EnsembleSpec("ginibre", 3, 4), EnsembleSpec("offdiag_pair", 2, 3)]
    one = hs.run_inequality_suite(specs, rs=[1, 2], alphas=[0.5])
    many = hs.run_inequality_suite(specs, rs=[1, 2], alphas=[0.5], threads=4)
    assert one == many


def test_summary_and_writers():
    recs = [hs.record("a", "", "p", "upper", 1, 2), hs.record("a", "", "q", "upper", 1, 0),
            hs.record("b", "r=1", "p", "lower", 1, 0.5)]
    s = hs.summarize(recs)
    assert list(s) == ["a", "b"]
    assert s["a"] == {"min_margin": -1.0, "mean_margin": 0.0, "violations": 1, "trials": 2}
    buf = io.StringIO()
    hs.write_records_csv(recs, buf)
    lines = buf.getvalue().splitlines()
    assert lines[0] == "bound_id,params,provenance,lhs,rhs,margin,violated"
    assert lines[2] == "a,,q,1,0,-1,true"
    assert lines[3] == "b,r=1,p,1,0.5,0.5,false"
    buf = io.StringIO()
    hs.write_summary_json(s, buf)
    assert json.loads(buf.getvalue()) == s
