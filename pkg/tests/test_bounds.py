import math

import pytest
from hypothesis import given, settings

from numradius import bounds as bd
from numradius import matrix as m
from numradius.numrange import nr_oracle, numerical_radius
from numradius.spectral import op_norm

from conftest import complex_matrices

J2, J3 = m.jordan(2), m.jordan(3)
A1 = m.diag(3, 0)
B1 = m.diag(2 + 3j, 0)
B2 = m.diag(0, 2 + 3j)
S13, S18, S34, S10 = (math.sqrt(x) for x in (13, 18, 34, 10))


def _values(bounds):
    return {(b.id, b.side): b.value for b in bounds}


def _ginibre(rng, n):
    return (rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))) / math.sqrt(2)


def test_classical_j2():
    v = _values(bd.classical_bounds(J2))
    expected = {("eq11", "lower"): 0.5, ("eq11", "upper"): 1.0, ("eq12", "lower"): 0.25,
                ("eq12", "upper"): 0.5, ("eq13", "upper"): 0.5, ("eq14", "upper"): 0.25,
                ("eq15", "upper"): 0.25}
    for key, val in expected.items():
        assert v[key] == pytest.approx(val, abs=1e-12), key


def test_classical_identity_and_j3():
    vals = bd.classical_bounds(m.identity(3))
    v = _values(vals)
    for b in vals:
        if b.power == 1 and b.side == "upper" or (b.power == 2 and b.id in ("eq14", "eq15")):
            assert b.value == pytest.approx(1.0, abs=1e-12), b
    assert v["eq12", "lower"] == pytest.approx(0.5)
    assert v["eq12", "upper"] == pytest.approx(1.0)
    assert v["eq11", "lower"] == pytest.approx(0.5)
    j3 = _values(bd.classical_bounds(J3))
    assert j3["eq12", "lower"] == pytest.approx(0.5, abs=1e-12)
    assert j3["eq12", "lower"] == pytest.approx(numerical_radius(J3) ** 2, abs=1e-8)


def test_classical_order_and_targets():
    ids = [(b.id, b.side, b.target) for b in bd.classical_bounds(J2)]
    assert ids == [("eq11", "lower", "w"), ("eq11", "upper", "w"), ("eq12", "lower", "w^2"),
                   ("eq12", "upper", "w^2"), ("eq13", "upper", "w"), ("eq14", "upper", "w^2"),
                   ("eq15", "upper", "w^2")]


def test_offdiag_upper_examples():
    b = bd.offdiag_upper(J2, J2, 1, 1)
    assert b.value == pytest.approx(0.25, abs=1e-12)
    assert numerical_radius(m.block_offdiag(J2, J2)) ** 2 == pytest.approx(0.25, abs=1e-8)
    b = bd.offdiag_upper([[3]], [[2 + 3j]], 0, 1)
    assert b.value == pytest.approx(0.25 * 22 + 0.5 * math.sqrt(117), abs=1e-9)
    w = numerical_radius(m.block_offdiag([[3]], [[2 + 3j]]))
    assert w == pytest.approx(nr_oracle(m.block_offdiag([[3]], [[2 + 3j]])), abs=1e-6)
    assert b.value == pytest.approx(w ** 2, abs=1e-7)
    assert b.value == pytest.approx(((3 + S13) / 2) ** 2, abs=1e-9)
    assert b.params == "alpha=0;r=1" and b.subject == "offdiag(A,B)"


def test_offdiag_of_equal_blocks_matches_single_operator_family(rng):
    for n in (1, 2, 3, 5):
        a = _ginibre(rng, n)
        scale = max(1.0, op_norm(a)) ** 2
        for r in (1, 1.5, 2, 3):
            for alpha in (0, 0.25, 0.5, 1):
                od = bd.offdiag_upper(a, a, alpha, r).value
                cor = bd.cor_min_upper(a, r, alpha).value
                assert abs(od - cor) <= 1e-10 * scale ** r


def test_cor_min_examples():
    assert bd.cor_min_upper(J3, 1).value == pytest.approx(0.75, abs=1e-9)
    assert bd.cor_min_upper(J2, 1).value == pytest.approx(0.25, abs=1e-12)
    for r in (1, 1.5, 2.5):
        for alpha in (0, 0.3, 1, None):
            assert bd.cor_min_upper(m.identity(2), r, alpha).value == pytest.approx(1.0, abs=1e-12)
    assert bd.cor_min_upper(J3).params == "alpha=min;r=1"


def test_cor_affine_in_alpha_and_min(rng):
    a = _ginibre(rng, 4)
    for r in (1, 2):
        grid = bd.cor_min_grid(a, [r], [0, 0.5, 1])
        v0, vh, v1, vmin = (b.value for b in grid)
        assert abs(vh - 0.5 * (v0 + v1)) <= 1e-12 * max(1.0, v0, v1)
        assert vmin == min(v0, v1)
        assert grid[-1].alpha is None


def test_sum_upper_examples(rng):
    a = _ginibre(rng, 3)
    for r in (1, 2):
        for alpha in (0, 0.5):
            assert bd.sum_upper([a], alpha, r).value == pytest.approx(
                bd.cor_min_upper(a, r, alpha).value, rel=1e-13)
    for alpha in (0, 0.5, 1):
        assert bd.sum_upper([m.identity(2)] * 2, alpha, 1).value == pytest.approx(4.0, abs=1e-12)
    j2s = m.adjoint(J2)
    assert bd.sum_upper([J2, j2s], 1, 1).value == pytest.approx(1.0, abs=1e-12)
    assert numerical_radius(J2 + j2s) == pytest.approx(1.0, abs=1e-12)
    assert bd.sum_upper([J2, j2s], 1, 1).n_operands == 2
    with pytest.raises(ValueError):
        bd.sum_upper([], 0, 1)
    with pytest.raises(m.DimensionError):
        bd.sum_upper([J2, J3], 0, 1)


def test_lower_offdiag_examples():
    low1, low2 = bd.lower_offdiag(A1, B1)
    assert low1.value == pytest.approx(0.5 * S18 + 0.25 * abs(S34 - S10), abs=1e-12)
    assert low1.value == pytest.approx(2.78849, abs=1e-5)
    assert low2.value == pytest.approx(0.5 * 2 + 0.25 * abs(S34 - S10), abs=1e-12)
    assert bd.cartesian_norm(A1, B2) == pytest.approx(3.0, abs=1e-12)
    low1, _ = bd.lower_offdiag(A1, B2)
    # ||A + B*|| = ||A - B*|| = sqrt(13) for the second pair
    assert low1.value == pytest.approx(1.5, abs=1e-12)
    one = [[1]]
    low1, low2 = bd.lower_offdiag(one, one)
    assert low1.value == pytest.approx(1.0, abs=1e-15)
    assert low2.value == pytest.approx(1.0, abs=1e-15)
    assert numerical_radius(m.block_offdiag(one, one)) == pytest.approx(1.0, abs=1e-12)


def test_lower_single_examples(rng):
    assert bd.lower_single(A1).value == pytest.approx(3.0, abs=1e-12)
    assert bd.lower_single(J2).value == pytest.approx(0.5, abs=1e-12)
    h = _ginibre(rng, 4)
    h = h + h.conj().T
    assert bd.lower_single(1j * h).value == pytest.approx(op_norm(h), abs=1e-12)
    assert numerical_radius(1j * h) == pytest.approx(op_norm(h), abs=1e-12)


def test_lower_max_examples(rng):
    assert bd.lower_max(A1, B1).value == pytest.approx(0.5 * S13 + 0.25 * (S34 - S10), abs=1e-12)
    assert bd.lower_max(A1, B1).value == pytest.approx(2.46994, abs=1e-5)
    assert bd.lower_max([[1]], [[1]]).value == pytest.approx(1.0, abs=1e-15)
    a = _ginibre(rng, 3)
    z = m.zeros(3)
    assert bd.lower_max(a, z).value == pytest.approx(0.5 * op_norm(a), abs=1e-12)
    block = m.block_offdiag(a, z)
    assert nr_oracle(block, grid=20_000, vec_samples=1000) == pytest.approx(0.5 * op_norm(a), abs=1e-5)


def test_lower_combined_examples(rng):
    assert bd.lower_combined([[1]], [[1]]).value == pytest.approx(1.0, abs=1e-15)
    v = bd.lower_combined(A1, B1).value
    assert v == pytest.approx(0.25 * S34 + 0.25 * (S18 - 2) + 0.25 * (S34 - S10), abs=1e-12)
    assert v == pytest.approx(2.68557, abs=1e-5)
    assert v <= numerical_radius(m.block_offdiag(A1, B1))
    a = _ginibre(rng, 3)
    neg = bd.lower_combined(a, -a).value
    expect = 0.25 * abs(op_norm(a - a.conj().T) - op_norm(a + a.conj().T))
    expect += 0.25 * abs(bd.cartesian_norm(a, -a) - bd.cartesian_norm(-a, a))
    assert neg == pytest.approx(expect, abs=1e-12)
    assert neg <= numerical_radius(m.block_offdiag(a, -a)) + 1e-9


def test_cartesian_sign_agreement(rng):
    for n in (1, 2, 4, 7):
        a, b = _ginibre(rng, n), _ginibre(rng, n)
        assert bd.cartesian_sign_gap(a, b) <= 1e-12 * max(1.0, op_norm(a) + op_norm(b))


@settings(max_examples=30, deadline=None)
@given(complex_matrices(max_dim=4))
def test_refinement_and_classical_chain(a):
    op = bd.Operand(a)
    v = _values(bd.classical_bounds(op))
    scale = max(1.0, op.norm) ** 2
    cmin = bd.cor_min_upper(op, 1).value
    assert cmin <= v["eq14", "upper"] + 1e-9 * scale
    assert cmin <= v["eq15", "upper"] + 1e-9 * scale
    assert v["eq14", "upper"] <= v["eq12", "upper"] + 1e-9 * scale
    assert v["eq14", "upper"] <= v["eq13", "upper"] ** 2 + 1e-9 * scale


def test_bounds_hold_on_random_matrices(rng):
    for k in range(20):
        n = 1 + k % 5
        a, b = _ginibre(rng, n), _ginibre(rng, n)
        w = numerical_radius(a)
        wb = numerical_radius(m.block_offdiag(a, b))
        vals = bd.classical_bounds(a) + bd.cor_min_grid(a, [1, 2], [0, 0.5, 1])
        vals += [bd.lower_single(a)]
        for bv in vals:
            assert bv.margin(w) >= -1e-7 * (1 + bv.value), bv
        pair = [bd.offdiag_upper(a, b, 0.5, 1.5), *bd.lower_offdiag(a, b),
                bd.lower_max(a, b), bd.lower_combined(a, b)]
        for bv in pair:
            assert bv.margin(wb) >= -1e-7 * (1 + bv.value), bv
        s = bd.sum_upper([a, b], 0.5, 1)
        assert s.margin(numerical_radius(a + b)) >= -1e-7 * (1 + s.value)


def test_bound_value_validation_and_targets():
    with pytest.raises(ValueError):
        bd.BoundValue("eq11", "upper", 1, -1.0)
    with pytest.raises(ValueError):
        bd.BoundValue("eq11", "sideways", 1, 1.0)
    with pytest.raises(ValueError):
        bd.BoundValue("cor26", "upper", 2, 1.0, alpha=2)
    with pytest.raises(ValueError):
        bd.BoundValue("cor26", "upper", 2, 1.0, r=0.5)
    with pytest.raises(ValueError):
        bd.cor_min_upper(J2, r=0.5)
    with pytest.raises(ValueError):
        bd.cor_min_upper(J2, 1, alpha=1.5)
    w_bound = bd.BoundValue("eq11", "upper", 1, 1.0)
    w2_bound = bd.BoundValue("eq12", "upper", 2, 0.5)
    with pytest.raises(bd.TargetMismatch):
        w_bound.le(w2_bound)
    with pytest.raises(bd.TargetMismatch):
        w_bound.le(bd.BoundValue("low1", "upper", 1, 1.0, "offdiag(A,B)"))
    assert w2_bound.le(w_bound.as_power(2))
    assert w_bound.as_power(2).target == "w^2"
    assert w_bound.margin(0.5) == 0.5
    assert bd.BoundValue("low1", "lower", 1, 0.3).margin(0.5) == pytest.approx(0.2)


def test_catalog_ids():
    ids = {e.id for e in bd.CATALOG}
    assert ids == {"eq11", "eq12", "eq13", "eq14", "eq15", "thm25", "cor26", "thmsum",
                   "low1", "low2", "lowsingle", "lowmax", "lowcomb"}
    assert all(e.side in ("upper", "lower") for e in bd.CATALOG)
