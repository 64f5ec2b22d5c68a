"""Seeded random-matrix ensembles.

Each matrix gets its own counter-based Philox stream keyed by
``(seed, kind, dim, index)``, so sample ``k`` of an ensemble is the same
whatever order, or on whatever thread, trials are evaluated.
"""

from dataclasses import dataclass

import numpy as np

from .matrix import cmatrix, hermitize

__all__ = ["KINDS", "EnsembleSpec", "trial_rng", "sample_one", "sample_ensemble",
           "ginibre", "haar_unitary"]

KINDS = ("ginibre", "hermitian", "normal", "unitary", "nilpotent", "offdiag_pair")
MAX_DIM = 16


@dataclass(frozen=True)
class EnsembleSpec:
    kind: str
    dim: int
    count: int
    seed: int = 42

    def __post_init__(self):
        if self.kind not in KINDS:
            raise ValueError(f"unknown ensemble kind {self.kind!r}; expected one of {KINDS}")
        if not 1 <= self.dim <= MAX_DIM:
            raise ValueError(f"dim must lie in 1..{MAX_DIM}, got {self.dim}")
        if self.count < 1:
            raise ValueError("count must be positive")

    @classmethod
    def parse(cls, text, seed=42):
        """Parse ``kind:dim:count``."""
        try:
            kind, dim, count = text.split(":")
            return cls(kind, int(dim), int(count), seed)
        except ValueError as exc:
            raise ValueError(f"bad ensemble {text!r} (want kind:dim:count): {exc}") from None

    def label(self, index):
        return f"{self.kind}:{self.dim}:{self.count}:{self.seed}#{index}"


def trial_rng(seed, *key):
    """Philox generator for the stream identified by ``seed`` and integer ``key``."""
    entropy = [seed % 2**64, *key]
    return np.random.Generator(np.random.Philox(np.random.SeedSequence(entropy)))


def ginibre(rng, n):
    """I.i.d. standard complex Gaussian entries (``E|z|^2 = 1``)."""
    return (rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))) / np.sqrt(2.0)


def haar_unitary(rng, n):
    q, r = np.linalg.qr(ginibre(rng, n))
    d = np.diagonal(r)
    return q * (d / np.abs(d))


def sample_one(spec, index):
    """Matrix ``index`` of the ensemble (a pair ``(A, B)`` for ``offdiag_pair``)."""
    rng = trial_rng(spec.seed, KINDS.index(spec.kind), spec.dim, index)
    n = spec.dim
    kind = spec.kind
    if kind == "ginibre":
        return cmatrix(ginibre(rng, n))
    if kind == "hermitian":
        return cmatrix(hermitize(ginibre(rng, n)))
    if kind == "normal":
        u = haar_unitary(rng, n)
        lam = ginibre(rng, n).diagonal().copy()
        return cmatrix((u * lam) @ u.conj().T)
    if kind == "unitary":
        return cmatrix(haar_unitary(rng, n))
    if kind == "nilpotent":
        # Schur form: every nilpotent matrix is unitarily similar to one of
        # these, and A^n = 0 holds exactly in floating point
        return cmatrix(np.triu(ginibre(rng, n), k=1))
    return cmatrix(ginibre(rng, n)), cmatrix(ginibre(rng, n))


def sample_ensemble(spec):
    return [sample_one(spec, k) for k in range(spec.count)]
