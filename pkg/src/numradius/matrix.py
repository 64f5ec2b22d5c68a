"""Dense complex square matrices and the block constructions built from them.

Matrices are plain ``complex128`` numpy arrays. :func:`cmatrix` validates the
input (square, finite) and returns a read-only copy; every function here
returns a fresh read-only array, so values can be shared between threads.
"""

import json
import math

import numpy as np

__all__ = [
    "DimensionError",
    "cmatrix",
    "as_complex",
    "identity",
    "zeros",
    "jordan",
    "diag",
    "add",
    "mul",
    "adjoint",
    "real_part",
    "imag_part",
    "hermitize",
    "block_offdiag",
    "block_diag",
    "block_symmetric",
    "to_json",
    "from_json",
    "dump_matrix",
    "load_matrix",
]


class DimensionError(ValueError):
    """Raised when operands are not square or have different sizes."""


def _freeze(a):
    a = np.ascontiguousarray(a, dtype=np.complex128)
    a.setflags(write=False)
    return a


def as_complex(z):
    """Return ``z`` as a Python complex, rejecting NaN and infinities."""
    z = complex(z)
    if not (math.isfinite(z.real) and math.isfinite(z.imag)):
        raise ValueError(f"non-finite complex value {z!r}")
    return z


def cmatrix(a):
    """Validate ``a`` as a finite square complex matrix and return a read-only copy."""
    arr = np.array(a, dtype=np.complex128)
    if arr.ndim == 0:
        arr = arr.reshape(1, 1)
    if arr.ndim != 2 or arr.shape[0] != arr.shape[1] or arr.shape[0] == 0:
        raise DimensionError(f"expected a non-empty square matrix, got shape {arr.shape}")
    if not np.all(np.isfinite(arr)):
        raise ValueError("matrix has non-finite entries")
    arr.setflags(write=False)
    return arr


def _same_dim(a, b):
    a, b = cmatrix(a), cmatrix(b)
    if a.shape != b.shape:
        raise DimensionError(f"dimension mismatch: {a.shape[0]} vs {b.shape[0]}")
    return a, b


def identity(n):
    return _freeze(np.eye(n))


def zeros(n):
    return _freeze(np.zeros((n, n)))


def jordan(n):
    """Nilpotent Jordan block: ones on the superdiagonal."""
    return _freeze(np.eye(n, k=1))


def diag(*entries):
    return _freeze(np.diag(np.asarray(entries, dtype=np.complex128)))


def add(a, b):
    a, b = _same_dim(a, b)
    return _freeze(a + b)


def mul(a, b):
    a, b = _same_dim(a, b)
    return _freeze(a @ b)


def adjoint(a):
    return _freeze(cmatrix(a).conj().T)


def hermitize(m):
    """Average ``m`` with its adjoint so entry (j, k) is exactly conj of entry (k, j)."""
    m = np.asarray(m, dtype=np.complex128)
    h = 0.5 * (m + m.conj().T)
    # the sum is commutative, but force the diagonal to be exactly real
    h.flat[:: h.shape[0] + 1] = h.diagonal().real
    return h


def real_part(a):
    """Hermitian part ``(A + A*)/2``."""
    return _freeze(hermitize(cmatrix(a)))


def imag_part(a):
    """Hermitian ``(A - A*)/(2i)``, so that ``A = real_part(A) + 1j*imag_part(A)``."""
    a = cmatrix(a)
    return _freeze(hermitize(-0.5j * (a - a.conj().T)))


def block_offdiag(a, b):
    """The ``2n x 2n`` matrix ``[[O, A], [B, O]]``."""
    a, b = _same_dim(a, b)
    z = np.zeros_like(a)
    return _freeze(np.block([[z, a], [b, z]]))


def block_diag(a, b):
    """The ``2n x 2n`` matrix ``[[A, O], [O, B]]``."""
    a, b = _same_dim(a, b)
    z = np.zeros_like(a)
    return _freeze(np.block([[a, z], [z, b]]))


def block_symmetric(a, b):
    """The ``2n x 2n`` matrix ``[[A, B], [B, A]]``."""
    a, b = _same_dim(a, b)
    return _freeze(np.block([[a, b], [b, a]]))


# -- JSON exchange format ----------------------------------------------------

def to_json(a):
    """Encode as ``{"dim": n, "entries": [[[re, im], ...], ...]}`` (row-major)."""
    a = cmatrix(a)
    entries = [[[float(z.real), float(z.imag)] for z in row] for row in a]
    return {"dim": int(a.shape[0]), "entries": entries}


def from_json(obj):
    """Decode the dict produced by :func:`to_json`; raises ``ValueError`` on malformed input."""
    try:
        n = obj["dim"]
        rows = obj["entries"]
    except (KeyError, TypeError) as exc:
        raise ValueError(f"matrix JSON needs 'dim' and 'entries': {exc}") from None
    if not isinstance(n, int) or isinstance(n, bool) or n < 1:
        raise ValueError(f"'dim' must be a positive integer, got {n!r}")
    if len(rows) != n or any(len(row) != n for row in rows):
        raise ValueError(f"'entries' must be {n}x{n}")
    out = np.empty((n, n), dtype=np.complex128)
    for j, row in enumerate(rows):
        for k, pair in enumerate(row):
            if len(pair) != 2:
                raise ValueError(f"entry ({j},{k}) must be [re, im]")
            re, im = pair
            if isinstance(re, bool) or isinstance(im, bool):
                raise ValueError(f"entry ({j},{k}) is not numeric")
            out[j, k] = as_complex(complex(float(re), float(im)))
    return cmatrix(out)


def dump_matrix(a, path):
    with open(path, "w") as fh:
        json.dump(to_json(a), fh)
        fh.write("\n")


def load_matrix(path):
    with open(path) as fh:
        return from_json(json.load(fh))
