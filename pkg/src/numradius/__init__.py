"""Numerical radius of complex matrices, its upper and lower bounds, and a harness that verifies them."""

from .bounds import (BoundValue, Operand, classical_bounds, cor_min_upper, lower_combined,
                     lower_max, lower_offdiag, lower_single, offdiag_upper, sum_upper)
from .matrix import (adjoint, block_diag, block_offdiag, block_symmetric, cmatrix, imag_part,
                     jordan, real_part)
from .numrange import disk_check, nr_oracle, numerical_radius, range_boundary, rotated_real
from .spectral import abs_op, herm_eig, herm_power, op_norm

__version__ = "0.1.0"

__all__ = [
    "BoundValue", "Operand", "classical_bounds", "cor_min_upper", "lower_combined", "lower_max",
    "lower_offdiag", "lower_single", "offdiag_upper", "sum_upper", "adjoint", "block_diag",
    "block_offdiag", "block_symmetric", "cmatrix", "imag_part", "jordan", "real_part",
    "disk_check", "nr_oracle", "numerical_radius", "range_boundary", "rotated_real", "abs_op",
    "herm_eig", "herm_power", "op_norm",
]
