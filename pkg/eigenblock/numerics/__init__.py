"""Dense linear-algebra kernel"""

from .linalg import (
    ComplexMatrix, NullspaceBasis, as_matrix, condition_number, eig, eigvals,
    fingerprint, match_eigenvalues, matrix_rank, max_spectrum_shift, nullspace,
    row_space, singular_values, solve, spectral_norm
)

__all__ = [
    "ComplexMatrix",
    "NullspaceBasis",
    "as_matrix",
    "condition_number",
    "eig",
    "eigvals",
    "fingerprint",
    "match_eigenvalues",
    "matrix_rank",
    "max_spectrum_shift",
    "nullspace",
    "row_space",
    "singular_values",
    "solve",
    "spectral_norm"
]
