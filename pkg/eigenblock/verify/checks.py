"""
Independent verification of synthesized gains.

Every check starts from the raw matrices A, B, C and F and recomputes what it
needs with the numerics kernel; nothing computed during synthesis is reused.
"""

import logging
from typing import Iterable, List, Optional, Sequence, Tuple

import numpy as np

from ..config import DEFAULT_TOLERANCES, Tolerances
from ..errors import SingularMatrixError, VerificationInconclusiveError
from ..numerics import eig, eigvals, match_eigenvalues, singular_values, solve, spectral_norm
from .models import BlockingTarget, TargetKind, VerificationReport

logger = logging.getLogger(__name__)

DISTINCTNESS_TOL = 1e-8


def _real(F) -> np.ndarray:
    F = np.asarray(F)
    return F.real.astype(float) if np.iscomplexobj(F) else F.astype(float)


def _closed_loop(A, B, F) -> np.ndarray:
    return np.asarray(A, dtype=float) + np.asarray(B, dtype=float) @ _real(F)


def _distinct_eig(M: np.ndarray) -> Tuple[np.ndarray, np.ndarray]:
    values, V = eig(M)
    if values.size > 1:
        gaps = np.abs(values[:, None] - values[None, :])
        np.fill_diagonal(gaps, np.inf)
        if gaps.min() <= DISTINCTNESS_TOL * spectral_norm(M):
            raise VerificationInconclusiveError(
                f"closed loop has clustered eigenvalues (gap {gaps.min():.3e})"
            )
    return values, V


def _locate(values: np.ndarray, eigenvalue: complex) -> Tuple[int, int]:
    """Indices of the eigenvalues nearest to λ and to conj(λ)"""
    first = int(np.argmin(np.abs(values - eigenvalue)))
    distance = np.abs(values - np.conj(eigenvalue))
    distance[first] = np.inf
    return first, int(np.argmin(distance))


def check_spectrum_preserved(A, F, B, tol: float = DEFAULT_TOLERANCES.spectrum) -> Tuple[bool, float]:
    """
    Closed-loop spectrum equals the open-loop spectrum as a multiset.

    Returns:
        (pass, largest matched eigenvalue distance)
    """
    shift = float(max(
        (d for _, _, d in match_eigenvalues(eigvals(A), eigvals(_closed_loop(A, B, F)))),
        default=0.0
    ))
    return shift < tol * (1 + spectral_norm(np.asarray(A, dtype=float))), shift


def check_participation_blocked(
    A, B, F, eigenvalue: complex, states: Sequence[int],
    tol: float = DEFAULT_TOLERANCES.block
) -> Tuple[bool, float]:
    """
    Requested states have zero participation in both members of a pair.

    The closed loop is decomposed from scratch (W = V⁻ᵀ) and P = V ∘ W.

    Returns:
        (pass, max |p_k,i| over the states and both pair members)
    """
    values, V = _distinct_eig(_closed_loop(A, B, F))
    try:
        inv_V, _ = solve(V, np.eye(V.shape[0], dtype=complex))
    except SingularMatrixError as exc:
        raise VerificationInconclusiveError(f"closed-loop eigenvectors are singular: {exc}")
    P = V * inv_V.T
    cols = list(_locate(values, eigenvalue))
    if not states:
        return True, 0.0
    max_abs = float(np.max(np.abs(P[np.ix_(list(states), cols)])))
    return max_abs < tol, max_abs


def pbh_rank_margin(C, closed: np.ndarray, eigenvalue: complex) -> float:
    """Smallest singular value of [A_cl − λI; C]"""
    n = closed.shape[0]
    stacked = np.vstack([closed - eigenvalue * np.eye(n), np.asarray(C, dtype=float).reshape(-1, n)])
    return float(singular_values(stacked)[n - 1])


def check_pbh_unobservable(
    C, A, B, F, eigenvalue: complex, tol: float = DEFAULT_TOLERANCES.block
) -> Tuple[bool, List[float]]:
    """
    Both pair members are unobservable from y = C x in the closed loop.

    Two forms are required: ‖C v‖ below tol(1+‖C‖) for the unit closed-loop
    eigenvectors, and rank deficiency of [A_cl − λI; C].

    Returns:
        (pass, [‖C v̂ᵢ‖, ‖C v̂ᵢ₊₁‖])
    """
    closed = _closed_loop(A, B, F)
    C = np.asarray(C, dtype=float).reshape(-1, closed.shape[0])
    values, V = _distinct_eig(closed)
    cols = _locate(values, eigenvalue)
    norms = [float(np.linalg.norm(C @ V[:, c])) for c in cols]
    norm_C = spectral_norm(C)
    threshold = tol * (1 + norm_C)
    margin = pbh_rank_margin(C, closed, values[cols[0]])
    rank_deficient = margin <= tol * (1 + spectral_norm(closed) + norm_C)
    return all(value < threshold for value in norms) and rank_deficient, norms


def check_untouched_eigvecs(F, V, pair: Iterable[int], tol: float = DEFAULT_TOLERANCES.untouched_eigvec) -> Tuple[bool, float]:
    """
    F vⱼ = 0 for every open-loop eigenvector outside the targeted pair(s).

    Args:
        F: Gain
        V: Open-loop right eigenvectors (columns)
        pair: Mode indices excluded from the check

    Returns:
        (pass, max_j ‖F vⱼ‖)
    """
    F = np.asarray(F)
    V = np.asarray(V)
    skip = set(pair)
    keep = [j for j in range(V.shape[1]) if j not in skip]
    residual = float(max((np.linalg.norm(F @ V[:, j]) for j in keep), default=0.0))
    return residual < tol * (1 + spectral_norm(F)), residual


def _target_modes(values: np.ndarray, targets: Sequence[BlockingTarget]) -> List[int]:
    skip: List[int] = []
    for target in targets:
        skip.extend(_locate(values, target.eigenvalue))
    return skip


def check_untouched_output_norms(
    C, A, B, F, targets: Sequence[BlockingTarget],
    tol: float = DEFAULT_TOLERANCES.pbh_untouched
) -> Tuple[bool, float]:
    """
    ‖C vⱼ‖ of every non-targeted mode is unchanged by the feedback.

    Returns:
        (pass, largest change of a unit-eigenvector output norm)
    """
    A = np.asarray(A, dtype=float)
    C = np.asarray(C, dtype=float).reshape(-1, A.shape[0])
    open_values, open_V = _distinct_eig(A)
    closed_values, closed_V = _distinct_eig(_closed_loop(A, B, F))
    skip = set(_target_modes(open_values, targets))
    shift = 0.0
    for i, j, _ in match_eigenvalues(open_values, closed_values):
        if i in skip:
            continue
        before = np.linalg.norm(C @ open_V[:, i])
        after = np.linalg.norm(C @ closed_V[:, j])
        shift = max(shift, float(abs(after - before)))
    return shift < tol * (1 + spectral_norm(C)), shift


def check_realness(F) -> float:
    """‖Im F‖∞ / ‖F‖∞ (0 for real arrays)"""
    F = np.asarray(F)
    if not np.iscomplexobj(F):
        return 0.0
    scale = np.max(np.abs(F)) if F.size else 0.0
    if scale == 0:
        return 0.0
    return float(np.max(np.abs(F.imag)) / scale)


def verify_blocking(
    A, B, C, F, targets: Sequence[BlockingTarget],
    tolerances: Tolerances = DEFAULT_TOLERANCES
) -> VerificationReport:
    """
    Run the full verification suite.

    Args:
        A, B, C: Open-loop matrices
        F: Gain (real, or complex before truncation)
        targets: Blocked pairs and what was blocked in each
        tolerances: Thresholds

    Returns:
        VerificationReport; report.passed is the overall verdict
    """
    A = np.asarray(A, dtype=float)
    B = np.asarray(B, dtype=float)
    C = np.asarray(C, dtype=float).reshape(-1, A.shape[0])
    checks = {}

    ok, shift = check_spectrum_preserved(A, F, B, tolerances.spectrum)
    checks["spectrum"] = ok

    open_values, open_V = _distinct_eig(A)
    ok, residual = check_untouched_eigvecs(
        _real(F), open_V, _target_modes(open_values, targets), tolerances.untouched_eigvec
    )
    checks["untouched_eigvecs"] = ok

    realness = check_realness(F)
    checks["realness"] = realness < tolerances.realness

    report = VerificationReport(
        spectrum_max_shift=shift,
        untouched_eigvec_residual=residual,
        realness_residual=realness,
        checks=checks
    )

    participation = [t for t in targets if t.kind == TargetKind.PARTICIPATION and t.states]
    if participation:
        worst = 0.0
        all_ok = True
        for target in participation:
            ok, max_abs = check_participation_blocked(A, B, F, target.eigenvalue, target.states, tolerances.block)
            all_ok = all_ok and ok
            worst = max(worst, max_abs)
        report.blocked_participation_max = worst
        checks["participation"] = all_ok

    observability = [t for t in targets if t.kind == TargetKind.OBSERVABILITY]
    if observability:
        all_ok = True
        closed = _closed_loop(A, B, F)
        margins = []
        for target in observability:
            ok, norms = check_pbh_unobservable(C, A, B, F, target.eigenvalue, tolerances.block)
            all_ok = all_ok and ok
            report.pbh_norms_targeted.extend(norms)
            margins.append(pbh_rank_margin(C, closed, target.eigenvalue))
        report.pbh_rank_margin = max(margins)
        checks["pbh"] = all_ok

    if C.shape[0] > 0:
        ok, output_shift = check_untouched_output_norms(C, A, B, F, targets, tolerances.pbh_untouched)
        report.pbh_norms_untouched_shift = output_shift
        checks["pbh_untouched"] = ok

    logger.debug("verification %s: %s", "passed" if report.passed else "failed", report.checks)
    return report
