"""Verification harness: check every catalog bound on seeded ensembles.

Each check produces a :class:`CheckRecord`. Violations are data, not
exceptions: a record is flagged when its margin falls below a hybrid
absolute + relative tolerance, and a flagged trial is re-evaluated with a
tighter numerical-radius tolerance before it is reported.
"""

import csv
import json
import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from . import bounds as bd
from .ensembles import EnsembleSpec, ginibre, haar_unitary, sample_one, trial_rng
from .matrix import (adjoint, block_diag, block_offdiag, block_symmetric, cmatrix, diag,
                     hermitize, imag_part, jordan, real_part)
from .numrange import DEFAULT_TOL, disk_check, numerical_radius, range_boundary
from .spectral import abs_op, herm_eig, herm_norm, herm_power, op_norm

__all__ = [
    "ABS_TOL",
    "REL_TOL",
    "TARGET_TOL",
    "RECHECK_TOL",
    "CheckRecord",
    "record",
    "check_bound",
    "default_specs",
    "DEFAULT_RS",
    "DEFAULT_ALPHAS",
    "splits",
    "single_trial",
    "pair_trial",
    "run_inequality_suite",
    "summarize",
    "check_lemma_mccarthy",
    "check_lemma_buzano",
    "check_lemma_bohr",
    "check_lemma_mixed_schwarz",
    "LEMMAS",
    "run_lemma_suite",
    "check_block_diag_identity",
    "check_hks_identity",
    "check_swap_identity",
    "run_identity_suite",
    "equality_probe",
    "refinement_check",
    "strictness_indicators",
    "disk_theorem_check",
    "zero_product_matrix",
    "noncomparability_demo",
    "NAMED_MATRICES",
    "write_records_csv",
    "write_summary_json",
]

ABS_TOL = 1e-9
REL_TOL = 1e-7
# the bounded quantity w is computed tighter than any bound comparison
TARGET_TOL = 1e-10
RECHECK_TOL = 1e-11

DEFAULT_RS = (1.0, 1.5, 2.0, 3.0)
DEFAULT_ALPHAS = (0.0, 0.25, 0.5, 0.75, 1.0)
DEFAULT_DIMS = (2, 3, 4, 6, 8)
SINGLE_KINDS = ("ginibre", "hermitian", "normal", "unitary", "nilpotent")

NAMED_MATRICES = {
    "j2": jordan(2),
    "j3": jordan(3),
    "rem1a": diag(3, 0),
    "rem1b1": diag(2 + 3j, 0),
    "rem1b2": diag(0, 2 + 3j),
}


@dataclass(frozen=True)
class CheckRecord:
    """One evaluated inequality ``lhs <= rhs`` (upper), ``lhs >= rhs`` (lower) or ``lhs == rhs``.

    ``lhs`` is the bounded quantity, ``rhs`` the bound. ``tolerance`` is the
    absolute slack below which a negative margin counts as a violation.
    """

    bound_id: str
    params: str
    provenance: str
    side: str
    lhs: float
    rhs: float
    tolerance: float

    @property
    def margin(self):
        if self.side == "upper":
            return self.rhs - self.lhs
        if self.side == "lower":
            return self.lhs - self.rhs
        return -abs(self.lhs - self.rhs)

    @property
    def violated(self):
        return bool(self.margin < -self.tolerance)


def record(bound_id, params, provenance, side, lhs, rhs, abs_tol=ABS_TOL, rel_tol=REL_TOL):
    lhs, rhs = float(lhs), float(rhs)
    tol = abs_tol + rel_tol * max(abs(lhs), abs(rhs))
    return CheckRecord(bound_id, params, provenance, side, lhs, rhs, tol)


_TWO_SIDED = {"eq11", "eq12"}


def _record_id(bv):
    return f"{bv.id}-{bv.side}" if bv.id in _TWO_SIDED else bv.id


def check_bound(bv, radius, provenance, extra_params=""):
    """Compare a :class:`~numradius.bounds.BoundValue` with the radius of its subject."""
    params = ";".join(p for p in (bv.params, extra_params) if p)
    return record(_record_id(bv), params, provenance, bv.side, radius ** bv.power, bv.value)


# -- inequality suite ----------------------------------------------------------

def default_specs(seed=42, count=200, dims=DEFAULT_DIMS):
    kinds = SINGLE_KINDS + ("offdiag_pair",)
    return [EnsembleSpec(kind, dim, count, seed) for kind in kinds for dim in dims]


def splits(a):
    """Fixed decompositions of ``A`` into summands for the sum bound."""
    a = np.asarray(a)
    cartesian = [real_part(a), cmatrix(1j * np.asarray(imag_part(a)))]
    triangular = [cmatrix(np.tril(a, -1)), cmatrix(np.diag(np.diag(a))), cmatrix(np.triu(a, 1))]
    return (("cartesian", cartesian), ("triangular", triangular))


def single_trial(a, provenance, rs=DEFAULT_RS, alphas=DEFAULT_ALPHAS, tol=TARGET_TOL):
    """All single-operator bounds on one matrix."""
    op = bd.Operand(a)
    w = numerical_radius(op.matrix, tol)
    values = bd.classical_bounds(op)
    values += bd.cor_min_grid(op, rs, alphas)
    values.append(bd.lower_single(op))
    out = [check_bound(bv, w, provenance) for bv in values]
    out += refinement_check(op, provenance)
    for name, parts in splits(op.matrix):
        for bv in bd.sum_upper_grid(parts, rs, alphas):
            out.append(check_bound(bv, w, provenance, f"split={name}"))
    return out


class InternalError(RuntimeError):
    """A consistency check that holds in exact arithmetic failed."""


def pair_trial(a, b, provenance, rs=DEFAULT_RS, alphas=DEFAULT_ALPHAS, tol=TARGET_TOL):
    """All off-diagonal bounds on the block matrix ``[[O, A], [B, O]]``."""
    opa, opb = bd.Operand(a), bd.Operand(b)
    w = numerical_radius(block_offdiag(opa.matrix, opb.matrix), tol)
    scale = max(1.0, opa.norm + opb.norm)
    if bd.cartesian_sign_gap(opa, opb) > 1e-12 * scale:
        raise InternalError("||Re(A)+i Im(B)|| and ||Re(A)-i Im(B)|| disagree")
    values = bd.offdiag_upper_grid(opa, opb, rs, alphas)
    values += list(bd.lower_offdiag(opa, opb))
    values += [bd.lower_max(opa, opb), bd.lower_combined(opa, opb)]
    return [check_bound(bv, w, provenance) for bv in values]


def _run_item(item, rs, alphas, tol):
    label, x = item
    trial = pair_trial if isinstance(x, tuple) else single_trial
    args = x if isinstance(x, tuple) else (x,)
    recs = trial(*args, label, rs, alphas, tol=tol)
    if any(rec.violated for rec in recs):
        recs = trial(*args, label, rs, alphas, tol=RECHECK_TOL)
    return recs


def _work_items(specs, extra):
    for spec in specs:
        for k in range(spec.count):
            yield spec.label(k), sample_one(spec, k)
    yield from extra


def run_inequality_suite(specs, rs=DEFAULT_RS, alphas=DEFAULT_ALPHAS, extra=(), threads=1,
                         tol=TARGET_TOL):
    """Run every applicable bound on every ensemble member and ``extra`` named inputs.

    ``extra`` holds ``(label, matrix)`` or ``(label, (A, B))`` items. Records
    come back in trial order regardless of ``threads``. ``tol`` is the
    numerical-radius tolerance for the bounded quantity.
    """
    for r in rs:
        if not 1 <= r <= 8:
            raise ValueError(f"r must lie in [1, 8], got {r}")
    for alpha in alphas:
        if not 0 <= alpha <= 1:
            raise ValueError(f"alpha must lie in [0, 1], got {alpha}")
    items = _work_items(specs, extra)

    def run(item):
        return _run_item(item, rs, alphas, tol)

    if threads > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            chunks = list(pool.map(run, items))
    else:
        chunks = [run(item) for item in items]
    return [rec for chunk in chunks for rec in chunk]


def summarize(records):
    """``{bound_id: {min_margin, mean_margin, violations, trials}}`` in first-seen order."""
    acc = {}
    for rec in records:
        entry = acc.setdefault(rec.bound_id, [math.inf, 0.0, 0, 0])
        m = rec.margin
        entry[0] = min(entry[0], m)
        entry[1] += m
        entry[2] += rec.violated
        entry[3] += 1
    return {
        key: {"min_margin": lo, "mean_margin": total / n, "violations": bad, "trials": n}
        for key, (lo, total, bad, n) in acc.items()
    }


# -- lemma-level checks ----------------------------------------------------------

def _inner(u, v):
    """``<u, v>``, linear in the first argument."""
    return complex(np.vdot(v, u))


def _require_unit(x, name):
    if abs(np.linalg.norm(x) - 1.0) > 1e-12:
        raise ValueError(f"{name} must be a unit vector")


def check_lemma_mccarthy(h, x, r, tol=1e-10, provenance=""):
    """``<Hx, x>^r <= <H^r x, x>`` for positive ``H``, unit ``x`` and ``r >= 1``."""
    x = np.asarray(x, dtype=np.complex128)
    _require_unit(x, "x")
    h = cmatrix(h)
    hr = herm_power(h, r)  # raises NotPSDError on non-positive input
    lhs = max(_inner(h @ x, x).real, 0.0) ** r
    rhs = _inner(hr @ x, x).real
    scale = herm_norm(h) ** r
    return record("mccarthy", f"r={r:.17g}", provenance, "upper", lhs, rhs, tol * scale, 0.0)


def check_lemma_buzano(x, y, e, tol=1e-10, provenance=""):
    """``|<x, e><e, y>| <= (||x|| ||y|| + |<x, y>|) / 2`` for unit ``e``."""
    x, y, e = (np.asarray(v, dtype=np.complex128) for v in (x, y, e))
    _require_unit(e, "e")
    lhs = abs(_inner(x, e) * _inner(e, y))
    nx, ny = np.linalg.norm(x), np.linalg.norm(y)
    rhs = 0.5 * (nx * ny + abs(_inner(x, y)))
    return record("buzano", "", provenance, "upper", lhs, rhs, tol * nx * ny, 0.0)


def check_lemma_bohr(values, r, tol=1e-10, provenance=""):
    """``(sum a_i)^r <= n^(r-1) sum a_i^r`` for non-negative ``a_i``."""
    a = np.asarray(values, dtype=float)
    if np.any(a < 0):
        raise ValueError("Bohr's inequality needs non-negative terms")
    n = a.size
    lhs = a.sum() ** r
    rhs = n ** (r - 1) * (a ** r).sum()
    return record("bohr", f"r={r:.17g};n={n}", provenance, "upper", lhs, rhs, tol * rhs, 0.0)


def check_lemma_mixed_schwarz(a, x, y, tol=1e-10, provenance=""):
    """``|<Ax, y>| <= <|A|x, x>^(1/2) <|A*|y, y>^(1/2)``."""
    a = cmatrix(a)
    x, y = (np.asarray(v, dtype=np.complex128) for v in (x, y))
    lhs = abs(_inner(a @ x, y))
    px = max(_inner(abs_op(a) @ x, x).real, 0.0)
    py = max(_inner(abs_op(adjoint(a)) @ y, y).real, 0.0)
    rhs = math.sqrt(px) * math.sqrt(py)
    scale = op_norm(a) * np.linalg.norm(x) * np.linalg.norm(y)
    return record("mixed_schwarz", "", provenance, "upper", lhs, rhs, tol * scale, 0.0)


def _unit(rng, n):
    v = rng.standard_normal(n) + 1j * rng.standard_normal(n)
    return v / np.linalg.norm(v)


def _rank_deficient(rng, n):
    # half the samples drop rank so kernels and flat spectra get exercised
    g = ginibre(rng, n)
    if n > 1 and rng.random() < 0.5:
        g[:, rng.integers(0, n)] = 0.0
    return g


def _mccarthy_instance(rng, label):
    n = int(rng.integers(1, 7))
    g = _rank_deficient(rng, n)
    h = hermitize(g.conj().T @ g)
    return check_lemma_mccarthy(h, _unit(rng, n), float(rng.uniform(1.0, 4.0)), provenance=label)


def _buzano_instance(rng, label):
    n = int(rng.integers(1, 7))
    e = _unit(rng, n)
    x = rng.standard_normal(n) + 1j * rng.standard_normal(n)
    y = rng.standard_normal(n) + 1j * rng.standard_normal(n)
    if rng.random() < 0.25:
        y = complex(rng.standard_normal(), rng.standard_normal()) * x
    return check_lemma_buzano(x, y, e, provenance=label)


def _bohr_instance(rng, label):
    n = int(rng.integers(1, 9))
    terms = rng.exponential(size=n)
    if rng.random() < 0.25:
        terms[:] = terms[0]
    return check_lemma_bohr(terms, float(rng.uniform(1.0, 6.0)), provenance=label)


def _schwarz_instance(rng, label):
    n = int(rng.integers(1, 7))
    a = _rank_deficient(rng, n)
    x = rng.standard_normal(n) + 1j * rng.standard_normal(n)
    y = rng.standard_normal(n) + 1j * rng.standard_normal(n)
    return check_lemma_mixed_schwarz(a, x, y, provenance=label)


LEMMAS = {
    "mccarthy": _mccarthy_instance,
    "buzano": _buzano_instance,
    "bohr": _bohr_instance,
    "mixed_schwarz": _schwarz_instance,
}


def run_lemma_suite(name, count=10_000, seed=42):
    """``count`` seeded random instantiations of one lemma."""
    make = LEMMAS[name]
    code = list(LEMMAS).index(name)
    return [make(trial_rng(seed, 100 + code, k), f"{name}:{seed}#{k}") for k in range(count)]


# -- radius identities -----------------------------------------------------------

def check_block_diag_identity(a, b, tol=DEFAULT_TOL, provenance=""):
    """``w(diag(A, B)) = max{w(A), w(B)}``."""
    lhs = numerical_radius(block_diag(a, b), tol)
    rhs = max(numerical_radius(a, tol), numerical_radius(b, tol))
    return record("block_diag", "", provenance, "equal", lhs, rhs, 2 * tol, 0.0)


def check_hks_identity(a, b, tol=DEFAULT_TOL, provenance=""):
    """``w([[A, B], [B, A]]) = max{w(A+B), w(A-B)}``."""
    a, b = cmatrix(a), cmatrix(b)
    lhs = numerical_radius(block_symmetric(a, b), tol)
    rhs = max(numerical_radius(a + b, tol), numerical_radius(a - b, tol))
    return record("hks", "", provenance, "equal", lhs, rhs, 2 * tol, 0.0)


def check_swap_identity(a, b, tol=DEFAULT_TOL, provenance=""):
    """``w([[O, A], [B, O]]) = w([[O, B], [A, O]])``."""
    lhs = numerical_radius(block_offdiag(a, b), tol)
    rhs = numerical_radius(block_offdiag(b, a), tol)
    return record("offdiag_swap", "", provenance, "equal", lhs, rhs, 2 * tol, 0.0)


def run_identity_suite(count=200, seed=42, dims=(1, 2, 3, 4, 6)):
    out = []
    checks = (check_block_diag_identity, check_hks_identity, check_swap_identity)
    for k in range(count):
        rng = trial_rng(seed, 200, k)
        n = int(dims[k % len(dims)])
        a, b = cmatrix(ginibre(rng, n)), cmatrix(ginibre(rng, n))
        for check in checks:
            out.append(check(a, b, provenance=f"pair:{n}:{seed}#{k}"))
    return out


# -- equality conditions, refinement, disk theorem --------------------------------

@dataclass(frozen=True)
class Implication:
    """``hypothesis => conditions`` evaluated at one input."""

    name: str
    triggered: bool
    held: bool | None
    values: dict = field(default_factory=dict)


@dataclass(frozen=True)
class ProbeReport:
    radius: float
    implications: tuple

    @property
    def ok(self):
        return all(imp.held is not False for imp in self.implications)


def equality_probe(a, b, eps=1e-9):
    """Test the necessary conditions that follow from equality in the lower bounds.

    Only the proven direction (equality implies conditions) is asserted; a
    hypothesis that is not met leaves its implication untriggered.
    """
    if not eps > 0:
        raise ValueError("eps must be positive")
    a, b = cmatrix(a), cmatrix(b)
    delta = 10 * eps
    w = numerical_radius(block_offdiag(a, b), min(eps / 10, DEFAULT_TOL))
    plus = op_norm(a + b.conj().T)
    minus = op_norm(a - b.conj().T)
    ca, cb = bd.cartesian_norm(a, b), bd.cartesian_norm(b, a)
    quarter_sum = 0.25 * op_norm(a + b)

    def close(x, y):
        return abs(x - y) <= delta

    implications = []
    for name, c in (("first-cartesian", ca), ("second-cartesian", cb)):
        triggered = abs(w - 0.5 * c) <= eps
        held = (close(plus, minus) and close(plus, c)) if triggered else None
        implications.append(Implication(name, triggered, held,
                                        {"half_bound": 0.5 * c, "||A+B*||": plus,
                                         "||A-B*||": minus, "norm": c}))
    triggered = abs(w - quarter_sum) <= eps
    held = None
    if triggered:
        held = close(op_norm(a), op_norm(b)) and close(plus, minus) and close(ca, cb)
    implications.append(Implication("quarter-sum", triggered, held,
                                    {"quarter_sum": quarter_sum, "||A||": op_norm(a),
                                     "||B||": op_norm(b), "a": ca, "b": cb}))
    return ProbeReport(w, tuple(implications))


def refinement_check(a, provenance="", tol=1e-9):
    """The min-form single-operator bound is no worse than the two classical ones.

    Two records compare the ``r = 1`` min-form with the ``w(A^2)`` and
    ``w(|A||A*|)`` bounds; a third compares ``||Re(|A||A*|)||`` with
    ``w(|A||A*|)``, the step that makes the ordering work.
    """
    op = a if isinstance(a, bd.Operand) else bd.Operand(a)
    classical = {_record_id(bv): bv for bv in bd.classical_bounds(op)}
    best = bd.cor_min_upper(op, 1.0)
    re_norm = herm_norm(hermitize(op.abs_power(1) @ op.abs_adj_power(1)))
    w_prod = op.mixed_radius
    return [
        record("refine-eq14", "r=1", provenance, "upper", best.value, classical["eq14"].value, tol, 0.0),
        record("refine-eq15", "r=1", provenance, "upper", best.value, classical["eq15"].value, tol, 0.0),
        record("refine-re-vs-w", "", provenance, "upper", re_norm, w_prod, tol, 0.0),
    ]


def strictness_indicators(a):
    """``|<Re(P)x, x>|`` and ``|<Im(P)x, x>|`` at a norm-attaining eigenvector of ``Re(P)``.

    ``P = |A||A*|``. A non-zero second value at the attaining vector is the
    finite-dimensional situation in which the min-form bound improves
    strictly on the ``w(|A||A*|)`` bound; nothing is asserted here.
    """
    op = bd.Operand(a)
    prod = op.abs_power(1) @ op.abs_adj_power(1)
    dec = herm_eig(hermitize(prod))
    lam = dec.eigenvalues
    x = dec.eigenvectors[:, 0 if abs(lam[0]) > abs(lam[-1]) else -1]
    im = np.asarray(imag_part(prod))
    return abs(lam).max(), abs(_inner(im @ x, x).real)


@dataclass(frozen=True)
class DiskReport:
    hypothesis: bool
    re_norm: float
    radius: float
    expected_radius: float
    max_deviation: float
    disk: bool
    passed: bool

    @property
    def converse_counterexample(self):
        """Radius formula attained although ``Re(|A||A*|) != O``."""
        return (not self.hypothesis) and abs(self.radius - self.expected_radius) <= 1e-7


def disk_theorem_check(a, count=360, radius_tol=1e-7, disk_tol=1e-6):
    """When ``Re(|A||A*|) = O``, ``W(A)`` must be the disk of radius ``sqrt(||A*A+AA*||)/2``.

    Without the hypothesis nothing is claimed; the report still records
    whether the radius formula and the disk shape happen to hold.
    """
    op = bd.Operand(a)
    re_norm = herm_norm(hermitize(op.abs_power(1) @ op.abs_adj_power(1)))
    hypothesis = re_norm <= 1e-10 * op.norm ** 2
    expected = 0.5 * math.sqrt(op.sym_norm)
    w = numerical_radius(op.matrix, TARGET_TOL)
    verdict = disk_check(range_boundary(op.matrix, count), expected, disk_tol)
    passed = (abs(w - expected) <= radius_tol and verdict.holds) if hypothesis else True
    return DiskReport(hypothesis, re_norm, w, expected, verdict.max_deviation, verdict.holds, passed)


def zero_product_matrix(rng, n):
    """Random ``n x n`` matrix with ``Re(|A||A*|) = O``.

    Even ``n``: ``[[O, X], [O, O]]`` under a Haar unitary similarity.
    Odd ``n``: a weighted shift whose every other weight vanishes, i.e. a
    direct sum of scaled 2x2 Jordan blocks (plus a zero), similarly rotated.
    """
    if n % 2 == 0:
        m = np.zeros((n, n), dtype=np.complex128)
        m[: n // 2, n // 2:] = ginibre(rng, n // 2)
    else:
        weights = ginibre(rng, n).diagonal()[: n - 1].copy()
        weights[1::2] = 0.0
        m = np.diag(weights, k=1)
    u = haar_unitary(rng, n)
    return cmatrix(u @ m @ u.conj().T)


@dataclass(frozen=True)
class NoncomparabilityReport:
    pair1: dict
    pair2: dict


def noncomparability_demo():
    """Evaluate the Cartesian and max-norm lower bounds on two diagonal pairs.

    On the first pair the Cartesian bound wins, on the second the max-norm
    bound wins, so neither bound dominates the other.
    """
    a = NAMED_MATRICES["rem1a"]
    pairs = {"pair1": (a, NAMED_MATRICES["rem1b1"]), "pair2": (a, NAMED_MATRICES["rem1b2"])}
    out = {}
    for key, (x, y) in pairs.items():
        cart = bd.cartesian_norm(x, y)
        mx = max(op_norm(x), op_norm(y))
        first, _ = bd.lower_offdiag(x, y)
        lm = bd.lower_max(x, y)
        out[key] = {"cartesian_norm": cart, "max_norm": mx, "cartesian_bound": first.value,
                    "max_bound": lm.value, "shared_term": first.value - 0.5 * cart,
                    "radius": numerical_radius(block_offdiag(x, y), TARGET_TOL)}
    if not out["pair1"]["cartesian_bound"] > out["pair1"]["max_bound"]:
        raise RuntimeError("first pair should favour the Cartesian bound")
    if not out["pair2"]["cartesian_bound"] < out["pair2"]["max_bound"]:
        raise RuntimeError("second pair should favour the max-norm bound")
    return NoncomparabilityReport(out["pair1"], out["pair2"])


# -- report files ----------------------------------------------------------------

def _g17(x):
    return f"{x:.17g}"


def write_records_csv(records, fh):
    writer = csv.writer(fh, lineterminator="\n")
    writer.writerow(["bound_id", "params", "provenance", "lhs", "rhs", "margin", "violated"])
    for rec in records:
        writer.writerow([rec.bound_id, rec.params, rec.provenance, _g17(rec.lhs), _g17(rec.rhs),
                         _g17(rec.margin), "true" if rec.violated else "false"])


def write_summary_json(summary, fh):
    json.dump(summary, fh, indent=2)
    fh.write("\n")
