"""Seeded generator of stable, controllable test systems"""

import logging

import numpy as np
import scipy.linalg

from ..errors import GenerationError, ValidationError
from ..numerics import eigvals, singular_values, spectral_norm
from .models import LtiSystem

logger = logging.getLogger(__name__)

MIN_EIGENVALUE_GAP = 1e-6
CONTROLLABILITY_MARGIN = 1e-8


def _min_gap(values: np.ndarray) -> float:
    diff = np.abs(values[:, None] - values[None, :])
    np.fill_diagonal(diff, np.inf)
    return float(diff.min())


def is_controllable(A: np.ndarray, B: np.ndarray, spectrum: np.ndarray) -> bool:
    """PBH form: [A - λI, B] has full row rank at every eigenvalue"""
    n = A.shape[0]
    scale = 1.0 + spectral_norm(A) + spectral_norm(B)
    for lam in spectrum:
        sv = singular_values(np.hstack([A - lam * np.eye(n), B]))
        if sv.size < n or sv[n - 1] <= CONTROLLABILITY_MARGIN * scale:
            return False
    return True


def random_stable_system(n: int, q: int, p: int, seed: int, max_attempts: int = 100) -> LtiSystem:
    """
    Random real system with distinct, stable, mostly oscillatory modes.

    A = T J T⁻¹ where J is block diagonal with 2x2 rotation-damping blocks
    (one 1x1 block when n is odd) and T is a well-conditioned random basis.

    Args:
        n: State count (>= 4)
        q: Input count (>= 1)
        p: Output count (>= 1)
        seed: Seed for numpy's default generator
        max_attempts: Retry budget for the postconditions

    Returns:
        LtiSystem satisfying stability, distinctness and controllability
    """
    if n < 4 or q < 1 or p < 1:
        raise ValidationError(f"need n >= 4, q >= 1, p >= 1 (got n={n}, q={q}, p={p})")

    rng = np.random.default_rng(seed)
    n_pairs = n // 2
    for attempt in range(max_attempts):
        damping = -rng.uniform(0.2, 3.0, n_pairs)
        freq = rng.uniform(0.5, 12.0, n_pairs)
        blocks = [np.array([[a, w], [-w, a]]) for a, w in zip(damping, freq)]
        if n % 2:
            blocks.append(np.array([[-rng.uniform(0.2, 3.0)]]))
        J = scipy.linalg.block_diag(*blocks)

        Q1, _ = np.linalg.qr(rng.standard_normal((n, n)))
        Q2, _ = np.linalg.qr(rng.standard_normal((n, n)))
        T = Q1 @ np.diag(rng.uniform(0.5, 2.0, n)) @ Q2.T
        A = scipy.linalg.solve(T.T, (T @ J).T).T
        B = rng.standard_normal((n, q))
        C = rng.standard_normal((p, n))

        spectrum = eigvals(A)
        if np.max(spectrum.real) >= 0:
            continue
        if _min_gap(spectrum) <= MIN_EIGENVALUE_GAP:
            continue
        if not is_controllable(A, B, spectrum):
            continue
        if attempt:
            logger.debug("random_stable_system(seed=%s) accepted after %d retries", seed, attempt)
        return LtiSystem(A, B, C)

    raise GenerationError(
        f"no system met the postconditions after {max_attempts} attempts (seed={seed})"
    )
