"""Chained blocking: one pair per stage on the running closed loop"""

import logging
from itertools import combinations
from typing import List, Sequence

import numpy as np

from ..config import DEFAULT_TOLERANCES, Tolerances
from ..errors import (
    EigenblockError, OverlappingTargetsError, PairSelectionError, StageError,
    ValidationError, VerificationFailedError
)
from ..modal import ModeClass, analyze_pairs, modal_decomposition
from ..model import LtiSystem
from ..numerics import spectral_norm
from ..verify import TargetKind, check_pbh_unobservable, verify_blocking
from .algorithms import PAIR_LOCATE_TOL, execute_request
from .models import BlockingRequest, BlockingResult

logger = logging.getLogger(__name__)


def check_disjoint(requests: Sequence[BlockingRequest], scale: float) -> None:
    """Reject two requests aimed at the same pair"""
    tol = PAIR_LOCATE_TOL * (1 + scale)
    for (a, first), (b, second) in combinations(enumerate(requests, start=1), 2):
        if abs(first.pair.eigenvalue - second.pair.eigenvalue) <= tol:
            raise OverlappingTargetsError(
                f"requests {a} and {b} both target pair {first.pair.index + 1} "
                f"({first.pair.frequency_hz:.3f} Hz)"
            )


def sequential_block(
    system: LtiSystem,
    requests: Sequence[BlockingRequest],
    tolerances: Tolerances = DEFAULT_TOLERANCES,
    enforce_guarantee: bool = True,
    seed: int = 0
) -> BlockingResult:
    """
    Apply blocking requests one after another.

    Stage k works on A + B (F_1 + ... + F_{k-1}); earlier blocks survive
    because every later gain annihilates the untouched eigenvectors. The
    accumulated gain is verified against the open-loop system at the end.

    Args:
        system: Open-loop system
        requests: Ordered requests on pairwise distinct mode pairs
        tolerances: Numerical thresholds
        enforce_guarantee: Enforce the sufficient feasibility conditions
        seed: Seed of the random direction draws

    Returns:
        BlockingResult with the total gain and one entry per stage

    Raises:
        OverlappingTargetsError: two requests share a pair
        StageError: stage k failed (keeps the exit code of its cause)
        VerificationFailedError: total gain failed verification
    """
    requests = list(requests)
    if not requests:
        raise ValidationError("sequential blocking needs at least one request")
    check_disjoint(requests, spectral_norm(system.A))

    total = np.zeros((system.q, system.n))
    raw_total = np.zeros((system.q, system.n), dtype=complex)
    current = system
    stages: List[BlockingResult] = []
    for k, request in enumerate(requests, start=1):
        logger.info("stage %d/%d: %s", k, len(requests), request.describe())
        try:
            stage = execute_request(current, request, tolerances, enforce_guarantee, seed + k - 1)
        except EigenblockError as exc:
            raise StageError(k, exc) from exc
        stages.append(stage)
        total = total + stage.F
        raw_total = raw_total + stage.raw_gain
        current = system.with_feedback(total)

    targets = [target for stage in stages for target in stage.targets]
    report = verify_blocking(system.A, system.B, system.C, raw_total, targets, tolerances)
    for stage in stages:
        request = stage.request
        if request.kind == TargetKind.OBSERVABILITY and request.output_matrix is not None:
            ok, norms = check_pbh_unobservable(
                request.output_matrix, system.A, system.B, raw_total, stage.pair.eigenvalue, tolerances.block
            )
            report.checks["pbh"] = report.checks.get("pbh", True) and ok
            report.pbh_norms_targeted.extend(norms)
    if not report.passed:
        raise VerificationFailedError(report)

    last = stages[-1]
    logger.info("sequential blocking finished: %d stages, spectrum shift %.3e", len(stages), report.spectrum_max_shift)
    return BlockingResult(
        F=total,
        v_hat=last.v_hat,
        v_hat_conj=last.v_hat_conj,
        z=last.z,
        z_conj=last.z_conj,
        cond_V_hat=max(stage.cond_V_hat for stage in stages),
        pair=last.pair,
        imag_residue=max(stage.imag_residue for stage in stages),
        raw_gain=raw_total,
        request=last.request,
        targets=targets,
        stages=stages,
        verification=report,
        attempts=sum(stage.attempts for stage in stages)
    )


def block_inter_area(
    system: LtiSystem,
    tolerances: Tolerances = DEFAULT_TOLERANCES,
    enforce_guarantee: bool = True,
    seed: int = 0
) -> BlockingResult:
    """Hide every inter-area pair from the system output, lowest frequency first"""
    pairs = analyze_pairs(modal_decomposition(system))
    inter_area = [pair for pair in pairs if pair.mode_class == ModeClass.INTER_AREA]
    if not inter_area:
        raise PairSelectionError("no mode pair lies in the inter-area band")
    logger.info("blocking %d inter-area pair(s)", len(inter_area))
    return sequential_block(
        system,
        [BlockingRequest.observability(pair) for pair in inter_area],
        tolerances,
        enforce_guarantee,
        seed
    )
