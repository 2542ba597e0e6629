"""
Surgical eigenstructure assignment.

One conjugate pair of right eigenvectors is replaced while every eigenvalue
and every other right eigenvector of A stays where it is:

    Participation blocking: v̂ = N1 h with the requested state entries zero.
    Observability blocking: v̂ = N1 h inside null(C), hiding the pair from y.

The gain follows from F V̂ = Z, where Z is zero except for the pair columns.
"""

import logging
from typing import Iterator, Optional, Sequence

import numpy as np

from ..config import DEFAULT_TOLERANCES, Tolerances
from ..errors import (
    ConjugationError, DegenerateDirectionError, EmptySubspaceError,
    IllConditionedError, InfeasibleRequestError, SingularMatrixError,
    VerificationFailedError
)
from ..modal import ModalDecomposition, ModePair, conjugate_pairs, find_pair, modal_decomposition
from ..model import LtiSystem
from ..numerics import matrix_rank, nullspace, row_space, solve, spectral_norm
from ..verify import TargetKind, check_realness, verify_blocking
from .models import (
    AssignableSubspace, BlockingRequest, BlockingResult, observability_condition,
    participation_condition
)

logger = logging.getLogger(__name__)

DEGENERATE_TOL = 1e-10
SUBSPACE_RESIDUAL = 1e-9
PAIR_LOCATE_TOL = 1e-6


def assignable_subspace(system: LtiSystem, eigenvalue: complex, tol: Optional[float] = None) -> AssignableSubspace:
    """
    Null-space basis of S(λ) = [A − λI, B], split into N1 (n rows) and N2.

    Directions that move only the input (N1 h = 0) cannot carry an
    eigenvector and are projected out, so d counts usable directions.

    Raises:
        EmptySubspaceError: no nonzero eigenvector is assignable at λ
    """
    A, B = system.A, system.B
    n = system.n
    eigenvalue = complex(eigenvalue)
    S = np.hstack([A - eigenvalue * np.eye(n), B]).astype(complex)
    basis = nullspace(S, tol).basis
    N1, N2 = basis[:n], basis[n:]

    if N1.shape[1]:
        usable = row_space(N1)
        if usable.shape[1] < N1.shape[1]:
            logger.debug("dropping %d input-only directions", N1.shape[1] - usable.shape[1])
            N1, N2 = N1 @ usable, N2 @ usable

    sub = AssignableSubspace(eigenvalue, N1, N2)
    if sub.d == 0:
        raise EmptySubspaceError(
            f"no eigenvector is assignable at λ = {eigenvalue:.6g} (null space of [A − λI, B] is empty)"
        )

    residual = sub.residual(A, B)
    bound = SUBSPACE_RESIDUAL * (spectral_norm(A) + spectral_norm(B))
    if residual > bound:
        logger.warning("assignable subspace residual %.3e exceeds %.3e", residual, bound)
    logger.debug("assignable subspace at %.6g: d=%d residual=%.3e", eigenvalue, sub.d, residual)
    return sub


def participation_direction_basis(
    sub: AssignableSubspace, states: Sequence[int], enforce_guarantee: bool = True
) -> np.ndarray:
    """Columns h with N1[states] h = 0"""
    states = list(states)
    q = sub.N2.shape[0]
    ok, condition = participation_condition(len(states), q, enforce_guarantee)
    if not ok:
        raise InfeasibleRequestError(f"cannot block {len(states)} states with {q} inputs", condition)

    if not states:
        return np.eye(sub.d, dtype=complex)
    N3 = sub.N1[states, :]
    H = nullspace(N3).basis
    if H.shape[1] == 0:
        raise InfeasibleRequestError(
            f"selected rows of N1 leave no free direction for states {[k + 1 for k in states]}",
            "m+2 <= q"
        )
    return H


def observability_direction_basis(
    sub: AssignableSubspace, C, enforce_guarantee: bool = True
) -> np.ndarray:
    """Leading d entries of the null-space basis of [N1, null(C)]"""
    C = np.asarray(C, dtype=float).reshape(-1, sub.N1.shape[0])
    q = sub.N2.shape[0]
    M1 = nullspace(C).basis
    rank_C = sub.N1.shape[0] - M1.shape[1]
    ok, condition = observability_condition(rank_C, q, enforce_guarantee)
    if not ok:
        raise InfeasibleRequestError(
            f"cannot hide a pair from an output of rank {rank_C} with {q} inputs", condition
        )

    M2 = np.hstack([sub.N1, M1.astype(complex)])
    M3 = nullspace(M2).basis
    H = M3[:sub.d]
    H = H[:, np.linalg.norm(H, axis=0) > DEGENERATE_TOL] if H.size else H
    if H.shape[1] == 0:
        raise InfeasibleRequestError("N1 and null(C) do not intersect", "rank(C)+2 <= q")
    return H


def candidate_directions(
    sub: AssignableSubspace, H: np.ndarray, seed: int = 0, max_random: int = 32
) -> Iterator[np.ndarray]:
    """
    Unit vectors h in span(H), best-conditioned first.

    Basis columns come in decreasing ‖N1 h‖ (lowest index on ties), then
    seeded random unit combinations of the columns.
    """
    columns = [H[:, j] / np.linalg.norm(H[:, j]) for j in range(H.shape[1]) if np.linalg.norm(H[:, j]) > 0]
    if not columns:
        return
    magnitude = [float(np.linalg.norm(sub.N1 @ h)) for h in columns]
    for j in sorted(range(len(columns)), key=lambda j: (-magnitude[j], j)):
        yield columns[j]

    if len(columns) < 2:
        return
    rng = np.random.default_rng(seed)
    for draw in range(max_random):
        weights = rng.standard_normal(len(columns)) + 1j * rng.standard_normal(len(columns))
        h = np.column_stack(columns) @ weights
        norm = np.linalg.norm(h)
        if norm > 0:
            logger.debug("random direction draw %d", draw + 1)
            yield h / norm


def participation_blocking_direction(
    sub: AssignableSubspace, states: Sequence[int], enforce_guarantee: bool = True
) -> np.ndarray:
    """Preferred h for zeroing the given entries of v̂ = N1 h"""
    H = participation_direction_basis(sub, states, enforce_guarantee)
    return _first_nondegenerate(sub, H)


def observability_blocking_direction(sub: AssignableSubspace, C, enforce_guarantee: bool = True) -> np.ndarray:
    """Preferred h with C N1 h = 0"""
    H = observability_direction_basis(sub, C, enforce_guarantee)
    return _first_nondegenerate(sub, H)


def _first_nondegenerate(sub: AssignableSubspace, H: np.ndarray) -> np.ndarray:
    for h in candidate_directions(sub, H, max_random=0):
        if np.linalg.norm(sub.N1 @ h) > DEGENERATE_TOL:
            return h
    raise DegenerateDirectionError("every candidate direction gives v̂ = 0")


def synthesize_gain(
    md: ModalDecomposition, pair: ModePair, v_hat, z,
    cond_limit: float = DEFAULT_TOLERANCES.cond_limit,
    imag_error: float = DEFAULT_TOLERANCES.imag_error
) -> BlockingResult:
    """
    F = Z V̂⁻¹ for one replaced pair.

    V̂ is V with columns i, i+1 set to v̂, conj(v̂); Z is zero except z and
    conj(z) in the same columns. F is obtained from V̂ᵀ Fᵀ = Zᵀ.

    Raises:
        IllConditionedError: cond(V̂) above cond_limit
        ConjugationError: imaginary part of F above imag_error (relative)
    """
    v_hat = np.asarray(v_hat, dtype=complex).ravel()
    z = np.asarray(z, dtype=complex).ravel()
    i, j = pair.indices

    V_hat = md.V.copy()
    V_hat[:, i] = v_hat
    V_hat[:, j] = np.conj(v_hat)
    Z = np.zeros((z.size, md.n), dtype=complex)
    Z[:, i] = z
    Z[:, j] = np.conj(z)

    try:
        Ft, cond = solve(V_hat.T, Z.T, cond_limit)
    except SingularMatrixError as exc:
        raise IllConditionedError(
            f"V̂ is ill-conditioned (cond {exc.condition:.3e} > {cond_limit:.1e}); "
            "retry with another blocking direction"
        )
    raw = Ft.T
    imag = check_realness(raw)
    if imag > imag_error:
        raise ConjugationError(
            f"gain has imaginary residue {imag:.3e} > {imag_error:.1e}; pair columns are not conjugate"
        )
    logger.debug("synthesized gain: cond(V̂)=%.3e imag residue=%.3e", cond, imag)
    return BlockingResult(
        F=np.ascontiguousarray(raw.real),
        v_hat=v_hat,
        v_hat_conj=np.conj(v_hat),
        z=z,
        z_conj=np.conj(z),
        cond_V_hat=cond,
        pair=pair,
        imag_residue=imag,
        raw_gain=raw
    )


def locate_pair(md: ModalDecomposition, eigenvalue: complex) -> ModePair:
    """Pair of a fresh decomposition that matches an eigenvalue"""
    tol = PAIR_LOCATE_TOL * (1 + md.norm_A)
    return find_pair(conjugate_pairs(md), eigenvalue, tol)


def execute_request(
    system: LtiSystem,
    request: BlockingRequest,
    tolerances: Tolerances = DEFAULT_TOLERANCES,
    enforce_guarantee: bool = True,
    seed: int = 0
) -> BlockingResult:
    """
    Run one blocking request end to end and verify the result.

    Candidate directions are tried in order until a gain is synthesized that
    passes every verification check.

    Raises:
        InfeasibleRequestError, EmptySubspaceError, DegenerateDirectionError,
        IllConditionedError, VerificationFailedError
    """
    C = request.output(system.C)
    request.validate(system.n, system.q, C, enforce_guarantee)
    if not enforce_guarantee:
        ok, condition = (
            participation_condition(len(request.states), system.q)
            if request.kind == TargetKind.PARTICIPATION
            else observability_condition(matrix_rank(C), system.q)
        )
        if not ok:
            logger.warning("best-effort %s: outside the guaranteed region (%s)", request.describe(), condition)

    md = modal_decomposition(system)
    pair = locate_pair(md, request.pair.eigenvalue)
    sub = assignable_subspace(system, pair.eigenvalue)
    if request.kind == TargetKind.PARTICIPATION:
        H = participation_direction_basis(sub, request.states, enforce_guarantee)
    else:
        H = observability_direction_basis(sub, C, enforce_guarantee)

    targets = [request.to_target(pair.eigenvalue)]
    last_error = None
    attempts = 0
    for h in candidate_directions(sub, H, seed, tolerances.max_retries):
        v_hat = sub.N1 @ h
        if np.linalg.norm(v_hat) <= DEGENERATE_TOL:
            continue
        attempts += 1
        try:
            result = synthesize_gain(md, pair, v_hat, sub.N2 @ h, tolerances.cond_limit, tolerances.imag_error)
        except (IllConditionedError, ConjugationError) as exc:
            logger.warning("direction %d rejected: %s", attempts, exc)
            last_error = exc
            continue

        report = verify_blocking(system.A, system.B, C, result.raw_gain, targets, tolerances)
        if not report.passed:
            logger.warning("direction %d failed verification: %s", attempts, report.failed_checks())
            last_error = VerificationFailedError(report)
            continue

        result.request = request
        result.targets = targets
        result.verification = report
        result.attempts = attempts
        logger.info(
            "blocked %s: cond(V̂)=%.3e spectrum shift=%.3e",
            request.describe(), result.cond_V_hat, report.spectrum_max_shift
        )
        return result

    if last_error is None:
        raise DegenerateDirectionError(f"every candidate direction gives v̂ = 0 for {request.describe()}")
    raise last_error


def block_participation(
    system: LtiSystem, pair: ModePair, states: Sequence[int],
    tolerances: Tolerances = DEFAULT_TOLERANCES, enforce_guarantee: bool = True, seed: int = 0
) -> BlockingResult:
    """Zero the participation of the given states in a mode pair"""
    request = BlockingRequest.participation(pair, states)
    return execute_request(system, request, tolerances, enforce_guarantee, seed)


def block_observability(
    system: LtiSystem, pair: ModePair, C=None,
    tolerances: Tolerances = DEFAULT_TOLERANCES, enforce_guarantee: bool = True, seed: int = 0
) -> BlockingResult:
    """Make a mode pair unobservable from y = C x (the system output by default)"""
    request = BlockingRequest.observability(pair, C)
    return execute_request(system, request, tolerances, enforce_guarantee, seed)
