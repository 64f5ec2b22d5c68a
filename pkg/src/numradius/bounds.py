"""Catalog of numerical-radius bounds as evaluable formulas.

Every function returns :class:`BoundValue` objects that record which
quantity they bound (``w``, ``w^2`` or ``w^(2r)`` of a named subject), so
values on different targets are never compared by accident.

Quantities that themselves need a numerical radius (``w(A^2)``, ``w(AB)``,
...) are computed at ``NR_TOL``, one order tighter than the harness
comparisons.
"""

from dataclasses import dataclass
from functools import cached_property

import numpy as np

from .matrix import DimensionError, cmatrix, hermitize, imag_part, real_part
from .numrange import numerical_radius
from .spectral import abs_eig, herm_norm, op_norm, power_from_eig

__all__ = [
    "NR_TOL",
    "TargetMismatch",
    "BoundValue",
    "CatalogEntry",
    "CATALOG",
    "Operand",
    "classical_bounds",
    "cor_min_upper",
    "cor_min_grid",
    "offdiag_upper",
    "offdiag_upper_grid",
    "sum_upper",
    "sum_upper_grid",
    "lower_offdiag",
    "lower_single",
    "lower_max",
    "lower_combined",
    "cartesian_norm",
    "cartesian_sign_gap",
]

NR_TOL = 1e-9


class TargetMismatch(TypeError):
    """Raised when bounds on different quantities are compared."""


@dataclass(frozen=True)
class BoundValue:
    """One evaluated bound: ``value`` bounds ``w(subject) ** power`` from ``side``."""

    id: str
    side: str
    power: float
    value: float
    subject: str = "A"
    alpha: float | None = None
    r: float | None = None
    n_operands: int | None = None

    def __post_init__(self):
        object.__setattr__(self, "value", float(self.value))
        object.__setattr__(self, "power", float(self.power))
        if self.side not in ("upper", "lower"):
            raise ValueError(f"side must be 'upper' or 'lower', got {self.side!r}")
        if not self.value >= 0:
            raise ValueError(f"bound value must be non-negative, got {self.value}")
        if self.alpha is not None and not 0 <= self.alpha <= 1:
            raise ValueError(f"alpha must lie in [0, 1], got {self.alpha}")
        if self.r is not None and not self.r >= 1:
            raise ValueError(f"r must be >= 1, got {self.r}")

    @property
    def target(self):
        return "w" if self.power == 1 else f"w^{self.power:g}"

    @property
    def params(self):
        """Compact ``key=value`` parameter string, empty when parameter-free."""
        parts = []
        if self.alpha is not None:
            parts.append(f"alpha={self.alpha:g}")
        elif self.id == "cor26":
            parts.append("alpha=min")
        if self.r is not None:
            parts.append(f"r={self.r:g}")
        if self.n_operands is not None:
            parts.append(f"n={self.n_operands}")
        return ";".join(parts)

    def _check_like(self, other):
        if self.power != other.power or self.subject != other.subject:
            raise TargetMismatch(
                f"cannot compare a bound on {self.target}({self.subject}) "
                f"with one on {other.target}({other.subject})"
            )

    def le(self, other, slack=0.0):
        """``self.value <= other.value + slack``; both must bound the same target."""
        self._check_like(other)
        return self.value <= other.value + slack

    def as_power(self, power):
        """The same bound restated for ``w ** power`` (monotone since values are >= 0)."""
        return BoundValue(self.id, self.side, power, self.value ** (power / self.power),
                          self.subject, self.alpha, self.r, self.n_operands)

    def margin(self, radius):
        """Signed slack against the true quantity ``radius ** power``; negative means violated."""
        q = radius ** self.power
        return self.value - q if self.side == "upper" else q - self.value


@dataclass(frozen=True)
class CatalogEntry:
    id: str
    side: str
    target: str
    params: str
    formula: str


CATALOG = (
    CatalogEntry("eq11", "lower", "w", "-", "||A||/2"),
    CatalogEntry("eq11", "upper", "w", "-", "||A||"),
    CatalogEntry("eq12", "lower", "w^2", "-", "||A*A + AA*||/4"),
    CatalogEntry("eq12", "upper", "w^2", "-", "||A*A + AA*||/2"),
    CatalogEntry("eq13", "upper", "w", "-", "(||A|| + ||A^2||^(1/2))/2"),
    CatalogEntry("eq14", "upper", "w^2", "-", "||A*A + AA*||/4 + w(A^2)/2"),
    CatalogEntry("eq15", "upper", "w^2", "-", "||A*A + AA*||/4 + w(|A||A*|)/2"),
    CatalogEntry("thm25", "upper", "w^2r", "alpha,r",
                 "w^2r([[O,A],[B,O]]) <= max{|| |B|^2r+|A*|^2r ||, || |A|^2r+|B*|^2r ||}/4"
                 " + (1-alpha)/2 max{w^r(AB), w^r(BA)}"
                 " + alpha/2 max{||Re(|B|^r|A*|^r)||, ||Re(|A|^r|B*|^r)||}"),
    CatalogEntry("cor26", "upper", "w^2r", "alpha|min,r",
                 "|| |A|^2r+|A*|^2r ||/4 + (alpha ||Re(|A|^r|A*|^r)|| + (1-alpha) w^r(A^2))/2"),
    CatalogEntry("thmsum", "upper", "w^2r", "alpha,r,n",
                 "w^2r(sum A_i) <= n^(2r-1)/4 ||sum |A_i|^2r+|A_i*|^2r||"
                 " + n^(2r-1)/2 (alpha ||sum Re(|A_i|^r|A_i*|^r)|| + (1-alpha) sum w^r(A_i^2))"),
    CatalogEntry("low1", "lower", "w", "-",
                 "w([[O,A],[B,O]]) >= ||Re(A)+i Im(B)||/2 + | ||A+B*|| - ||A-B*|| |/4"),
    CatalogEntry("low2", "lower", "w", "-",
                 "w([[O,A],[B,O]]) >= ||Re(B)+i Im(A)||/2 + | ||A+B*|| - ||A-B*|| |/4"),
    CatalogEntry("lowsingle", "lower", "w", "-", "||A||/2 + | ||Re(A)|| - ||Im(A)|| |/2"),
    CatalogEntry("lowmax", "lower", "w", "-",
                 "w([[O,A],[B,O]]) >= max{||A||, ||B||}/2 + | ||A+B*|| - ||A-B*|| |/4"),
    CatalogEntry("lowcomb", "lower", "w", "-",
                 "w([[O,A],[B,O]]) >= ||A+B||/4 + |a-b|/4 + | ||A+B*|| - ||A-B*|| |/4,"
                 " a = ||Re(A)+i Im(B)||, b = ||Re(B)+i Im(A)||"),
)


class Operand:
    """A matrix together with lazily cached spectral data used by many bounds.

    ``|A|^s`` and ``|A*|^s`` are spectral powers of ``|A|`` and ``|A*|``,
    so one eigendecomposition of each serves every ``s``.
    """

    def __init__(self, a):
        self.matrix = cmatrix(a)
        self.adj = self.matrix.conj().T
        self._powers = {}

    @cached_property
    def modulus(self):
        """Decomposition of ``|A|``."""
        return abs_eig(self.matrix)

    @cached_property
    def comodulus(self):
        """Decomposition of ``|A*|``."""
        return abs_eig(self.adj)

    @cached_property
    def norm(self):
        return float(self.modulus.eigenvalues[-1])

    @cached_property
    def radius(self):
        return numerical_radius(self.matrix, NR_TOL)

    @cached_property
    def square_radius(self):
        """``w(A^2)``."""
        return numerical_radius(self.matrix @ self.matrix, NR_TOL)

    @cached_property
    def mixed_radius(self):
        """``w(|A||A*|)``."""
        return numerical_radius(self.abs_power(1) @ self.abs_adj_power(1), NR_TOL)

    @cached_property
    def sym_norm(self):
        """``||A*A + AA*||``."""
        return herm_norm(hermitize(self.adj @ self.matrix + self.matrix @ self.adj))

    def abs_power(self, s):
        """``|A|^s``."""
        key = ("abs", s)
        if key not in self._powers:
            self._powers[key] = power_from_eig(self.modulus, s)
        return self._powers[key]

    def abs_adj_power(self, s):
        """``|A*|^s``."""
        key = ("adj", s)
        if key not in self._powers:
            self._powers[key] = power_from_eig(self.comodulus, s)
        return self._powers[key]


def _operand(a):
    return a if isinstance(a, Operand) else Operand(a)


def cartesian_norm(a, b, sign=1):
    """``||Re(A) + sign * i Im(B)||``."""
    a, b = _operand(a).matrix, _operand(b).matrix
    return op_norm(np.asarray(real_part(a)) + sign * 1j * np.asarray(imag_part(b)))


def cartesian_sign_gap(a, b):
    """``| ||Re(A)+i Im(B)|| - ||Re(A)-i Im(B)|| |``; zero in exact arithmetic (adjoint pair)."""
    return abs(cartesian_norm(a, b, 1) - cartesian_norm(a, b, -1))


def classical_bounds(a):
    """The seven classical bounds on ``w(A)`` and ``w^2(A)``, in catalog order."""
    op = _operand(a)
    a = op.matrix
    norm, sym = op.norm, op.sym_norm
    sq_norm = op_norm(a @ a)
    return [
        BoundValue("eq11", "lower", 1, 0.5 * norm),
        BoundValue("eq11", "upper", 1, norm),
        BoundValue("eq12", "lower", 2, 0.25 * sym),
        BoundValue("eq12", "upper", 2, 0.5 * sym),
        BoundValue("eq13", "upper", 1, 0.5 * (norm + np.sqrt(sq_norm))),
        BoundValue("eq14", "upper", 2, 0.25 * sym + 0.5 * op.square_radius),
        BoundValue("eq15", "upper", 2, 0.25 * sym + 0.5 * op.mixed_radius),
    ]


def _check_params(alpha, r):
    if not 0 <= alpha <= 1:
        raise ValueError(f"alpha must lie in [0, 1], got {alpha}")
    if not r >= 1:
        raise ValueError(f"r must be >= 1, got {r}")


def _re_product_norm(p, q):
    """``||Re(P Q)||`` for Hermitian ``P``, ``Q``."""
    return herm_norm(hermitize(p @ q))


def cor_min_grid(a, rs, alphas, include_min=True):
    """The single-operator family ``w^(2r)(A) <= ...`` for every ``r`` in ``rs``.

    For each ``r`` one value per ``alpha``; with ``include_min`` also the
    minimum over ``alpha in {0, 1}`` (reported with ``alpha=None``), which
    is where the affine family attains its smallest value.
    """
    op = _operand(a)
    out = []
    for r in rs:
        _check_params(0.0, r)
        sum_term = herm_norm(hermitize(op.abs_power(2 * r) + op.abs_adj_power(2 * r)))
        re_term = _re_product_norm(op.abs_power(r), op.abs_adj_power(r))
        sq_term = op.square_radius ** r
        for alpha in alphas:
            _check_params(alpha, r)
            value = 0.25 * sum_term + 0.5 * (alpha * re_term + (1 - alpha) * sq_term)
            out.append(BoundValue("cor26", "upper", 2 * r, value, alpha=alpha, r=r))
        if include_min:
            value = 0.25 * sum_term + 0.5 * min(re_term, sq_term)
            out.append(BoundValue("cor26", "upper", 2 * r, value, r=r))
    return out


def cor_min_upper(a, r=1.0, alpha=None):
    """Upper bound on ``w^(2r)(A)``; ``alpha=None`` gives the min-form."""
    if alpha is None:
        return cor_min_grid(a, [r], [])[-1]
    return cor_min_grid(a, [r], [alpha], include_min=False)[0]


def offdiag_upper_grid(a, b, rs, alphas):
    """Upper bounds on ``w^(2r)([[O, A], [B, O]])`` for every ``(r, alpha)``."""
    opa, opb = _operand(a), _operand(b)
    if opa.matrix.shape != opb.matrix.shape:
        raise DimensionError("off-diagonal blocks must have equal dimensions")
    wab = numerical_radius(opa.matrix @ opb.matrix, NR_TOL)
    wba = numerical_radius(opb.matrix @ opa.matrix, NR_TOL)
    out = []
    for r in rs:
        _check_params(0.0, r)
        sum_term = max(
            herm_norm(hermitize(opb.abs_power(2 * r) + opa.abs_adj_power(2 * r))),
            herm_norm(hermitize(opa.abs_power(2 * r) + opb.abs_adj_power(2 * r))),
        )
        prod_term = max(wab, wba) ** r
        re_term = max(
            _re_product_norm(opb.abs_power(r), opa.abs_adj_power(r)),
            _re_product_norm(opa.abs_power(r), opb.abs_adj_power(r)),
        )
        for alpha in alphas:
            _check_params(alpha, r)
            value = 0.25 * sum_term + 0.5 * (1 - alpha) * prod_term + 0.5 * alpha * re_term
            out.append(BoundValue("thm25", "upper", 2 * r, value, "offdiag(A,B)", alpha, r))
    return out


def offdiag_upper(a, b, alpha, r):
    return offdiag_upper_grid(a, b, [r], [alpha])[0]


def sum_upper_grid(operands, rs, alphas):
    """Upper bounds on ``w^(2r)(A_1 + ... + A_n)`` for every ``(r, alpha)``."""
    ops = [_operand(x) for x in operands]
    if not ops:
        raise ValueError("need at least one operand")
    if len({op.matrix.shape for op in ops}) != 1:
        raise DimensionError("all summands must have equal dimensions")
    n = len(ops)
    out = []
    for r in rs:
        _check_params(0.0, r)
        coef = float(n) ** (2 * r - 1)
        sum_term = herm_norm(hermitize(sum(op.abs_power(2 * r) + op.abs_adj_power(2 * r) for op in ops)))
        re_term = herm_norm(hermitize(sum(op.abs_power(r) @ op.abs_adj_power(r) for op in ops)))
        sq_term = sum(op.square_radius ** r for op in ops)
        for alpha in alphas:
            _check_params(alpha, r)
            value = 0.25 * coef * sum_term + 0.5 * coef * (alpha * re_term + (1 - alpha) * sq_term)
            out.append(BoundValue("thmsum", "upper", 2 * r, value, "sum", alpha, r, n))
    return out


def sum_upper(operands, alpha, r):
    return sum_upper_grid(operands, [r], [alpha])[0]


def _gap_term(a, b):
    # | ||A+B*|| - ||A-B*|| | / 4
    return 0.25 * abs(op_norm(a + b.conj().T) - op_norm(a - b.conj().T))


def _pair(a, b):
    a, b = _operand(a).matrix, _operand(b).matrix
    if a.shape != b.shape:
        raise DimensionError("off-diagonal blocks must have equal dimensions")
    return a, b


def lower_offdiag(a, b):
    """The two lower bounds on ``w([[O, A], [B, O]])`` built from Cartesian parts."""
    a, b = _pair(a, b)
    gap = _gap_term(a, b)
    first = 0.5 * cartesian_norm(a, b) + gap
    second = 0.5 * cartesian_norm(b, a) + gap
    return (BoundValue("low1", "lower", 1, first, "offdiag(A,B)"),
            BoundValue("low2", "lower", 1, second, "offdiag(A,B)"))


def lower_single(a):
    """``w(A) >= ||A||/2 + | ||Re A|| - ||Im A|| |/2``."""
    op = _operand(a)
    value = 0.5 * op.norm + 0.5 * abs(herm_norm(real_part(op.matrix)) - herm_norm(imag_part(op.matrix)))
    return BoundValue("lowsingle", "lower", 1, value)


def lower_max(a, b):
    a, b = _pair(a, b)
    value = 0.5 * max(op_norm(a), op_norm(b)) + _gap_term(a, b)
    return BoundValue("lowmax", "lower", 1, value, "offdiag(A,B)")


def lower_combined(a, b):
    a, b = _pair(a, b)
    ca, cb = cartesian_norm(a, b), cartesian_norm(b, a)
    value = 0.25 * op_norm(a + b) + 0.25 * abs(ca - cb) + _gap_term(a, b)
    return BoundValue("lowcomb", "lower", 1, value, "offdiag(A,B)")
