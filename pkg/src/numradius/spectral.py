"""Hermitian eigendecomposition and the matrix functions built on it.

The eigensolver is a cyclic complex Jacobi iteration compiled with numba.
Everything else (operator norm, ``|A|``, real powers of positive matrices)
is a spectral map ``U diag(f(lambda)) U*`` over its output.
"""

from dataclasses import dataclass

import numba
import numpy as np

from .matrix import cmatrix, hermitize

__all__ = [
    "NotHermitianError",
    "NotPSDError",
    "ConvergenceError",
    "HermEigDecomp",
    "herm_eig",
    "op_norm",
    "herm_norm",
    "abs_op",
    "abs_eig",
    "herm_power",
    "power_from_eig",
]

HERMITIAN_RTOL = 1e-12
OFFDIAG_RTOL = 1e-14
MAX_SWEEPS = 100
PSD_RTOL = 1e-12


class NotHermitianError(ValueError):
    pass


class NotPSDError(ValueError):
    pass


class ConvergenceError(RuntimeError):
    """Jacobi sweeps hit the cap; indicates a bug rather than bad input."""


@numba.njit(cache=True, nogil=True)
def _jacobi_sweeps(a, rtol, max_sweeps):
    # Overwrites ``a`` with its (numerically) diagonal form and returns the
    # accumulated unitary together with the number of sweeps (-1: no convergence).
    n = a.shape[0]
    v = np.eye(n, dtype=np.complex128)
    fro = 0.0
    for i in range(n):
        for j in range(n):
            fro += a[i, j].real ** 2 + a[i, j].imag ** 2
    thresh = rtol * np.sqrt(fro)
    for sweep in range(max_sweeps + 1):
        off = 0.0
        for i in range(n):
            for j in range(i + 1, n):
                off += 2.0 * (a[i, j].real ** 2 + a[i, j].imag ** 2)
        if np.sqrt(off) <= thresh:
            return v, sweep
        if sweep == max_sweeps:
            break
        for p in range(n - 1):
            for q in range(p + 1, n):
                apq = a[p, q]
                g = abs(apq)
                if g == 0.0:
                    continue
                # D = diag(1, conj(phase)) makes the (p, q) block real symmetric;
                # a real rotation then annihilates it.
                ph = apq / g
                phc = ph.conjugate()
                app = a[p, p].real
                aqq = a[q, q].real
                theta = (aqq - app) / (2.0 * g)
                t = 1.0 / (abs(theta) + np.sqrt(theta * theta + 1.0))
                if theta < 0.0:
                    t = -t
                c = 1.0 / np.sqrt(t * t + 1.0)
                s = t * c
                for k in range(n):
                    akp = a[k, p]
                    akq = a[k, q]
                    a[k, p] = c * akp - s * phc * akq
                    a[k, q] = s * akp + c * phc * akq
                for k in range(n):
                    apk = a[p, k]
                    aqk = a[q, k]
                    a[p, k] = c * apk - s * ph * aqk
                    a[q, k] = s * apk + c * ph * aqk
                a[p, q] = 0.0
                a[q, p] = 0.0
                a[p, p] = app - t * g
                a[q, q] = aqq + t * g
                for k in range(n):
                    vkp = v[k, p]
                    vkq = v[k, q]
                    v[k, p] = c * vkp - s * phc * vkq
                    v[k, q] = s * vkp + c * phc * vkq
    return v, -1


@dataclass(frozen=True)
class HermEigDecomp:
    """Eigenvalues (ascending) and matching orthonormal eigenvector columns."""

    eigenvalues: np.ndarray
    eigenvectors: np.ndarray

    def reconstruct(self):
        u = self.eigenvectors
        return (u * self.eigenvalues) @ u.conj().T

    def apply(self, fn):
        """Spectral map ``U diag(fn(lambda)) U*``, returned exactly Hermitian."""
        u = self.eigenvectors
        return hermitize((u * fn(self.eigenvalues)) @ u.conj().T)

    @property
    def norm(self):
        """Largest absolute eigenvalue, the operator norm of the decomposed matrix."""
        return float(max(abs(self.eigenvalues[0]), abs(self.eigenvalues[-1])))


def _fix_phases(u):
    # make the largest-magnitude entry of every column real positive
    idx = np.argmax(np.abs(u), axis=0)
    piv = u[idx, np.arange(u.shape[1])]
    return u * (np.abs(piv) / piv)


def herm_eig(h):
    """Eigendecomposition of a Hermitian matrix by cyclic Jacobi rotations.

    ``h`` must be Hermitian to within ``1e-12 * ||h||_F``; it is symmetrized
    exactly before iterating. Columns of the eigenvector matrix are
    phase-normalized so the output is reproducible.
    """
    h = cmatrix(h)
    fro = np.linalg.norm(h)
    if np.linalg.norm(h - h.conj().T) > HERMITIAN_RTOL * fro:
        raise NotHermitianError("matrix is not Hermitian within tolerance")
    work = hermitize(h)
    v, sweeps = _jacobi_sweeps(work, OFFDIAG_RTOL, MAX_SWEEPS)
    if sweeps < 0:
        raise ConvergenceError(f"Jacobi did not converge in {MAX_SWEEPS} sweeps")
    lam = work.diagonal().real.copy()
    order = np.argsort(lam, kind="stable")
    lam = lam[order]
    u = _fix_phases(v[:, order])
    lam.setflags(write=False)
    u.setflags(write=False)
    return HermEigDecomp(lam, u)


def herm_norm(h):
    """Operator norm of a Hermitian matrix (largest absolute eigenvalue)."""
    return herm_eig(h).norm


def op_norm(a):
    """Largest singular value, ``sqrt(lambda_max(A* A))``."""
    a = cmatrix(a)
    lam = herm_eig(a.conj().T @ a).eigenvalues[-1]
    return float(np.sqrt(max(lam, 0.0)))


def _check_psd(decomp):
    lam = decomp.eigenvalues
    if lam[0] < -PSD_RTOL * decomp.norm:
        raise NotPSDError(f"matrix has eigenvalue {lam[0]:.3e} below the PSD tolerance")


def power_from_eig(decomp, p):
    """``H**p`` for a PSD ``H`` given by its decomposition; any ``p > 0``.

    Eigenvalues slightly below zero (rounding noise) are clamped to 0.
    """
    _check_psd(decomp)
    return decomp.apply(lambda lam: np.maximum(lam, 0.0) ** p)


def abs_eig(a):
    """Eigendecomposition of ``|A|`` from the eigenvectors ``v_i`` of ``A* A``.

    The eigenvalues are taken as ``||A v_i||`` rather than square roots of
    the Gram eigenvalues: the latter turn ``eps * ||A||^2`` rounding noise
    on a null space into ``sqrt(eps) * ||A||``, the former stay near
    ``eps * ||A||``.
    """
    a = cmatrix(a)
    dec = herm_eig(a.conj().T @ a)
    sigma = np.linalg.norm(a @ dec.eigenvectors, axis=0)
    order = np.argsort(sigma, kind="stable")
    sigma, u = sigma[order], dec.eigenvectors[:, order]
    sigma.setflags(write=False)
    u.setflags(write=False)
    return HermEigDecomp(sigma, u)


def abs_op(a):
    """The positive square root ``|A| = (A* A)^(1/2)``."""
    return cmatrix(abs_eig(a).apply(lambda s: s))


def herm_power(h, r):
    """Real power ``H**r`` (``r >= 1``) of a positive semidefinite Hermitian matrix."""
    if not r >= 1:
        raise ValueError(f"power must satisfy r >= 1, got {r}")
    return cmatrix(power_from_eig(herm_eig(h), r))
