"""Numerical radius and numerical-range boundary of a complex matrix.

Both rest on the support function of the numerical range,

    f(theta) = lambda_max(Re(exp(i theta) A)),

whose maximum over theta is ``w(A)`` and whose top eigenvectors ``x``
give boundary points ``<A x, x>``.
"""

import csv
import math
from dataclasses import dataclass

import numpy as np

from .matrix import cmatrix, hermitize, imag_part, real_part
from .spectral import herm_eig

__all__ = [
    "DEFAULT_TOL",
    "GRID_POINTS",
    "rotated_real",
    "support_function",
    "numerical_radius",
    "nr_oracle",
    "golden_section_max",
    "RangeBoundary",
    "DiskVerdict",
    "range_boundary",
    "disk_check",
    "write_boundary_csv",
]

DEFAULT_TOL = 1e-8
GRID_POINTS = 512
INV_PHI = (math.sqrt(5.0) - 1.0) / 2.0


def rotated_real(a, theta):
    """Hermitian matrix ``(e^{i theta} A + e^{-i theta} A*) / 2``."""
    a = cmatrix(a)
    return cmatrix(hermitize(np.exp(1j * theta) * a))


def support_function(a, thetas):
    """Vectorized ``lambda_max(Re(e^{i theta} A))`` over an array of angles."""
    a = cmatrix(a)
    h, k = np.asarray(real_part(a)), np.asarray(imag_part(a))
    thetas = np.atleast_1d(np.asarray(thetas, dtype=float))
    out = np.empty(thetas.shape)
    # chunk so the stacked batch stays a few MB regardless of grid size
    step = max(1, 2**18 // (a.shape[0] ** 2))
    for lo in range(0, thetas.size, step):
        t = thetas[lo:lo + step]
        stack = np.cos(t)[:, None, None] * h - np.sin(t)[:, None, None] * k
        out[lo:lo + step] = np.linalg.eigvalsh(stack)[:, -1]
    return out


def golden_section_max(f, a, b, xtol):
    """Maximize a unimodal ``f`` on ``[a, b]`` by golden-section search.

    Returns ``(x_best, f_best)`` for the best point evaluated; the final
    bracket is narrower than ``xtol``.
    """
    h = b - a
    c = b - INV_PHI * h
    d = a + INV_PHI * h
    fc, fd = f(c), f(d)
    best = (c, fc) if fc >= fd else (d, fd)
    while h > xtol:
        h *= INV_PHI
        if fc >= fd:
            b, d, fd = d, c, fc
            c = b - INV_PHI * h
            fc = f(c)
            if fc > best[1]:
                best = (c, fc)
        else:
            a, c, fc = c, d, fd
            d = a + INV_PHI * h
            fd = f(d)
            if fd > best[1]:
                best = (d, fd)
    return best


def _peak_brackets(values, noise):
    """Index brackets ``(lo, hi)`` around every local maximum of a periodic grid.

    Steps smaller than ``noise`` count as flat, so a plateau produces one
    bracket instead of hundreds of spurious ones.
    """
    m = values.size
    step = np.roll(values, -1) - values
    sign = np.where(step > noise, 1, np.where(step < -noise, -1, 0))
    nz = np.flatnonzero(sign)
    if nz.size == 0:
        return []
    brackets = []
    for j, idx in enumerate(nz):
        nxt = nz[(j + 1) % nz.size]
        if sign[idx] == 1 and sign[nxt] == -1:
            # rising step idx -> idx+1, then flat, then falling step nxt -> nxt+1
            hi = nxt + 1 if nxt >= idx else nxt + 1 + m
            brackets.append((idx, hi))
    return brackets


def numerical_radius(a, tol=DEFAULT_TOL):
    """Numerical radius ``w(A) = max_theta lambda_max(Re(e^{i theta} A))``.

    A 512-point grid in theta locates every local maximum of the support
    function; each bracket that could still beat the incumbent is refined by
    golden-section search. The step is Lipschitz with constant at most
    ``||A||_F``, so stopping once the bracket is narrower than ``tol/||A||_F``
    gives absolute accuracy ``tol``. The result is the largest value evaluated,
    so it never falls below any grid sample.
    """
    if not 0 < tol <= 1e-2:
        raise ValueError(f"tol must lie in (0, 1e-2], got {tol}")
    a = cmatrix(a)
    lip = float(np.linalg.norm(a))
    if lip == 0.0:
        return 0.0
    adj = a.conj().T
    if np.array_equal(a, adj):
        # w equals the spectral radius for (skew-)Hermitian matrices
        return float(np.abs(np.linalg.eigvalsh(a)).max())
    if np.array_equal(a, -adj):
        return float(np.abs(np.linalg.eigvalsh(-1j * a)).max())
    h = 2.0 * math.pi / GRID_POINTS
    thetas = h * np.arange(GRID_POINTS)
    values = support_function(a, thetas)
    best = float(values.max())
    noise = 64 * np.finfo(float).eps * lip
    brackets = []
    for lo, hi in _peak_brackets(values, noise):
        peak = values[np.arange(lo, hi + 1) % GRID_POINTS].max()
        brackets.append((peak, lo, hi))
    brackets.sort(key=lambda br: -br[0])

    herm, skew = np.asarray(real_part(a)), np.asarray(imag_part(a))

    def f(theta):
        return float(np.linalg.eigvalsh(math.cos(theta) * herm - math.sin(theta) * skew)[-1])

    xtol = tol / lip
    for peak, lo, hi in brackets:
        # every angle is within h/2 of a grid point, so nothing in the
        # bracket exceeds peak + lip*h/2
        if peak + 0.5 * lip * h <= best + tol:
            continue
        _, fb = golden_section_max(f, lo * h, hi * h, xtol)
        best = max(best, fb)
    return best


def nr_oracle(a, grid=100_000, vec_samples=10_000, seed=0):
    """Brute-force lower estimate of ``w(A)``, independent of the bracketing search.

    Maximum of the support function on a uniform ``grid`` and of
    ``|<A x, x>|`` over ``vec_samples`` seeded random unit vectors.
    """
    a = cmatrix(a)
    n = a.shape[0]
    best = float(support_function(a, 2.0 * math.pi * np.arange(grid) / grid).max())
    rng = np.random.default_rng(seed)
    x = rng.standard_normal((vec_samples, n)) + 1j * rng.standard_normal((vec_samples, n))
    x /= np.linalg.norm(x, axis=1, keepdims=True)
    quad = np.einsum("si,ij,sj->s", x.conj(), a, x)
    return max(best, float(np.abs(quad).max()), 0.0)


@dataclass(frozen=True)
class RangeBoundary:
    """Support points of the numerical range sampled at increasing angles.

    ``vectors[k]`` is the unit vector achieving ``points[k] = <A x, x>``.
    """

    thetas: np.ndarray
    points: np.ndarray
    vectors: np.ndarray

    def __len__(self):
        return self.thetas.size

    def membership_error(self, a):
        """Largest ``|<A x_k, x_k> - point_k|`` over the recorded vectors."""
        a = cmatrix(a)
        x = self.vectors
        recomputed = np.einsum("si,ij,sj->s", x.conj(), a, x)
        return float(np.abs(recomputed - self.points).max())

    def support_violation(self):
        """Largest ``Re(e^{i theta_k} z) - Re(e^{i theta_k} point_k)`` over all sampled ``z``."""
        rot = np.exp(1j * self.thetas)[:, None] * self.points[None, :]
        own = np.real(np.exp(1j * self.thetas) * self.points)
        return float((rot.real.max(axis=1) - own).max())


def range_boundary(a, count=360):
    """Trace ``count`` support points of ``W(A)`` at ``theta_k = 2 pi k / count``.

    For a repeated top eigenvalue the first vector of the top eigenspace is
    used; the point is still a support point.
    """
    if count < 8:
        raise ValueError("count must be at least 8")
    a = cmatrix(a)
    n = a.shape[0]
    thetas = 2.0 * math.pi * np.arange(count) / count
    points = np.empty(count, dtype=np.complex128)
    vectors = np.empty((count, n), dtype=np.complex128)
    for k, theta in enumerate(thetas):
        dec = herm_eig(rotated_real(a, theta))
        lam = dec.eigenvalues
        top = int(np.flatnonzero(lam >= lam[-1] - 1e-12 * max(dec.norm, 1.0))[0])
        x = dec.eigenvectors[:, top]
        vectors[k] = x
        points[k] = np.vdot(x, a @ x)
    for arr in (thetas, points, vectors):
        arr.setflags(write=False)
    return RangeBoundary(thetas, points, vectors)


@dataclass(frozen=True)
class DiskVerdict:
    holds: bool
    max_deviation: float

    def __bool__(self):
        return self.holds


def disk_check(boundary, radius, tol):
    """Whether every boundary point lies within ``tol`` of the circle ``|z| = radius``."""
    if radius < 0:
        raise ValueError("radius must be non-negative")
    dev = float(np.abs(np.abs(boundary.points) - radius).max())
    return DiskVerdict(dev <= tol, dev)


def write_boundary_csv(boundary, fh):
    """Write ``theta,re,im`` rows with 17 significant digits."""
    writer = csv.writer(fh, lineterminator="\n")
    writer.writerow(["theta", "re", "im"])
    for theta, z in zip(boundary.thetas, boundary.points):
        writer.writerow([f"{theta:.17g}", f"{z.real:.17g}", f"{z.imag:.17g}"])
