"""
Dense linear-algebra kernel.

All matrices are numpy arrays in row-major (C) order. Every routine is pure:
inputs are never modified and identical inputs give identical outputs.
"""

import hashlib
import logging
from dataclasses import dataclass
from typing import List, Optional, Tuple

import numpy as np
import scipy.linalg

from ..errors import (
    DimensionMismatchError, EigenSolverError, NonFiniteMatrixError,
    SingularMatrixError
)

logger = logging.getLogger(__name__)

ComplexMatrix = np.ndarray

EPS = np.finfo(float).eps
EIG_RESIDUAL_BOUND = 1e-10
DEFAULT_COND_LIMIT = 1e12


def as_matrix(M, name: str = "matrix") -> np.ndarray:
    """Validate a 2-D finite array and return a private copy"""
    arr = np.array(M, copy=True)
    if arr.ndim == 1:
        arr = arr.reshape(-1, 1)
    if arr.ndim != 2:
        raise DimensionMismatchError(f"{name} must be 2-D, got shape {arr.shape}")
    if not np.issubdtype(arr.dtype, np.number):
        raise NonFiniteMatrixError(f"{name} has non-numeric entries")
    if not np.all(np.isfinite(arr)):
        raise NonFiniteMatrixError(f"{name} contains NaN or Inf entries")
    return arr


def _require_square(M: np.ndarray, name: str) -> None:
    if M.shape[0] != M.shape[1]:
        raise DimensionMismatchError(f"{name} must be square, got {M.shape}")


def fingerprint(M: np.ndarray) -> str:
    """Short identifier of a matrix for error messages"""
    arr = np.ascontiguousarray(M)
    digest = hashlib.sha1(arr.tobytes()).hexdigest()[:12]
    return f"shape={arr.shape} sha1={digest} fro={np.linalg.norm(arr):.6e}"


def spectral_norm(M: np.ndarray) -> float:
    """Largest singular value (0 for empty matrices)"""
    if M.size == 0:
        return 0.0
    return float(np.linalg.norm(M, 2))


def singular_values(M: np.ndarray) -> np.ndarray:
    """Singular values in descending order"""
    if M.size == 0:
        return np.zeros(0)
    return scipy.linalg.svd(M, compute_uv=False, lapack_driver="gesvd")


def eig(A) -> Tuple[np.ndarray, ComplexMatrix]:
    """
    Complex eigendecomposition with unit-norm right eigenvectors.

    Args:
        A: Square finite matrix

    Returns:
        (eigenvalues, V) with A @ V[:, i] = eigenvalues[i] * V[:, i]
    """
    A = as_matrix(A, "A")
    _require_square(A, "A")
    try:
        values, vectors = scipy.linalg.eig(A, right=True, check_finite=False)
    except (np.linalg.LinAlgError, ValueError) as exc:
        raise EigenSolverError(f"eigen-solver did not converge: {exc}", fingerprint(A))

    vectors = vectors.astype(complex)
    norms = np.linalg.norm(vectors, axis=0)
    if np.any(norms == 0):
        raise EigenSolverError("eigen-solver returned a zero eigenvector", fingerprint(A))
    vectors = vectors / norms

    scale = spectral_norm(A)
    residual = np.linalg.norm(A @ vectors - vectors * values, axis=0)
    worst = float(residual.max()) if residual.size else 0.0
    if worst > EIG_RESIDUAL_BOUND * max(scale, EPS):
        logger.warning(
            "eig residual %.3e exceeds %.1e*||A|| for %s",
            worst, EIG_RESIDUAL_BOUND, fingerprint(A)
        )
    return values.astype(complex), vectors


def eigvals(A) -> np.ndarray:
    """Eigenvalues only"""
    A = as_matrix(A, "A")
    _require_square(A, "A")
    try:
        return scipy.linalg.eigvals(A, check_finite=False).astype(complex)
    except (np.linalg.LinAlgError, ValueError) as exc:
        raise EigenSolverError(f"eigen-solver did not converge: {exc}", fingerprint(A))


@dataclass(frozen=True)
class NullspaceBasis:
    """Orthonormal null-space basis together with the rank decision"""
    basis: ComplexMatrix
    rank_tolerance: float
    rank: int

    @property
    def dim(self) -> int:
        """Number of basis vectors"""
        return self.basis.shape[1]

    @property
    def is_empty(self) -> bool:
        return self.dim == 0


def nullspace(M, tol: Optional[float] = None) -> NullspaceBasis:
    """
    Rank-revealing null-space basis via SVD.

    Singular values come out of LAPACK in descending order, so the basis
    columns are the trailing right singular vectors in that fixed order.

    Args:
        M: Finite matrix (real or complex)
        tol: Rank tolerance; None selects eps * max(dim) * sigma_max

    Returns:
        NullspaceBasis with cols(M) - rank orthonormal columns
    """
    M = as_matrix(M, "M")
    rows, cols = M.shape
    if tol is not None and tol < 0:
        raise ValueError("tol must be nonnegative")

    if cols == 0:
        return NullspaceBasis(np.zeros((0, 0), dtype=M.dtype), 0.0, 0)
    if rows == 0:
        return NullspaceBasis(np.eye(cols, dtype=M.dtype), 0.0 if tol is None else tol, 0)

    _, s, vh = scipy.linalg.svd(M, full_matrices=True, lapack_driver="gesvd")
    sigma_max = float(s[0]) if s.size else 0.0
    if tol is None:
        tol = EPS * max(rows, cols) * sigma_max
    rank = int(np.sum(s > tol))
    basis = vh[rank:].conj().T
    logger.debug("nullspace: shape=%s rank=%d tol=%.3e dim=%d", M.shape, rank, tol, basis.shape[1])
    return NullspaceBasis(np.ascontiguousarray(basis), float(tol), rank)


def matrix_rank(M, tol: Optional[float] = None) -> int:
    """Numerical rank with the same tolerance rule as nullspace"""
    M = as_matrix(M, "M")
    if M.size == 0:
        return 0
    sv = singular_values(M)
    if tol is None:
        tol = EPS * max(M.shape) * float(sv[0])
    return int(np.sum(sv > tol))


def condition_number(M) -> float:
    """2-norm condition estimate (inf when singular)"""
    M = as_matrix(M, "M")
    sv = singular_values(M)
    if sv.size == 0:
        return 1.0
    if sv[-1] == 0:
        return float("inf")
    return float(sv[0] / sv[-1])


def solve(M, RHS, cond_limit: float = DEFAULT_COND_LIMIT) -> Tuple[ComplexMatrix, float]:
    """
    Solve M X = RHS, refusing numerically singular systems.

    Args:
        M: Square matrix
        RHS: Right-hand side (vector or matrix)
        cond_limit: Largest accepted condition estimate

    Returns:
        (X, condition estimate of M)
    """
    M = as_matrix(M, "M")
    _require_square(M, "M")
    rhs = np.array(RHS, copy=True)
    if not np.all(np.isfinite(rhs)):
        raise NonFiniteMatrixError("RHS contains NaN or Inf entries")
    if rhs.shape[0] != M.shape[0]:
        raise DimensionMismatchError(
            f"RHS has {rhs.shape[0]} rows, matrix has {M.shape[0]}"
        )

    cond = condition_number(M)
    if not np.isfinite(cond) or cond > cond_limit:
        raise SingularMatrixError(cond, cond_limit)
    X = scipy.linalg.solve(M, rhs, check_finite=False)
    return X, cond


def match_eigenvalues(reference, candidate) -> List[Tuple[int, int, float]]:
    """
    Greedy nearest-neighbour matching of two spectra.

    The globally closest unmatched pair is fixed first; ties resolve to the
    lowest (reference, candidate) indices.

    Returns:
        List of (reference index, candidate index, distance)
    """
    ref = np.asarray(reference, dtype=complex).ravel()
    cand = np.asarray(candidate, dtype=complex).ravel()
    if ref.size != cand.size:
        raise DimensionMismatchError(
            f"cannot match spectra of sizes {ref.size} and {cand.size}"
        )
    dist = np.abs(ref[:, None] - cand[None, :])
    order = np.argsort(dist, axis=None, kind="stable")
    used_ref = np.zeros(ref.size, dtype=bool)
    used_cand = np.zeros(cand.size, dtype=bool)
    matches = []
    for flat in order:
        i, j = divmod(int(flat), cand.size)
        if used_ref[i] or used_cand[j]:
            continue
        used_ref[i] = used_cand[j] = True
        matches.append((i, j, float(dist[i, j])))
        if len(matches) == ref.size:
            break
    matches.sort()
    return matches


def max_spectrum_shift(reference, candidate) -> float:
    """Largest matched distance between two spectra"""
    matches = match_eigenvalues(reference, candidate)
    return max((d for _, _, d in matches), default=0.0)


def row_space(M, tol: Optional[float] = None) -> ComplexMatrix:
    """Orthonormal basis (columns) of the row space of M, complement of nullspace(M)"""
    M = as_matrix(M, "M")
    rows, cols = M.shape
    if rows == 0 or cols == 0:
        return np.zeros((cols, 0), dtype=M.dtype)
    _, s, vh = scipy.linalg.svd(M, full_matrices=True, lapack_driver="gesvd")
    if tol is None:
        tol = EPS * max(rows, cols) * float(s[0])
    rank = int(np.sum(s > tol))
    return np.ascontiguousarray(vh[:rank].conj().T)
