"""Data models for eigenstructure assignment"""

from dataclasses import dataclass, field
from datetime import datetime
from typing import Any, Dict, List, Optional, Tuple

import numpy as np

from ..errors import InfeasibleRequestError, PairSelectionError, ValidationError
from ..modal import ModePair
from ..numerics import matrix_rank
from ..verify import BlockingTarget, TargetKind, VerificationReport


@dataclass(frozen=True, eq=False)
class AssignableSubspace:
    """
    Closed-loop eigenvectors achievable at one eigenvalue.

    Columns of [N1; N2] span the null space of [A − λI, B]; any h gives an
    eigenvector v = N1 h with input direction z = N2 h.
    """
    eigenvalue: complex
    N1: np.ndarray
    N2: np.ndarray

    @property
    def d(self) -> int:
        return self.N1.shape[1]

    def residual(self, A: np.ndarray, B: np.ndarray) -> float:
        """‖(A − λI) N1 + B N2‖"""
        n = A.shape[0]
        if self.d == 0:
            return 0.0
        return float(np.linalg.norm((A - self.eigenvalue * np.eye(n)) @ self.N1 + B @ self.N2, 2))


def participation_condition(m: int, q: int, enforce_guarantee: bool = True) -> Tuple[bool, str]:
    """Feasibility of blocking m states with q inputs"""
    if enforce_guarantee:
        return m + 2 <= q, "m+2 <= q"
    return m < q, "m < q"


def observability_condition(rank_C: int, q: int, enforce_guarantee: bool = True) -> Tuple[bool, str]:
    """Feasibility of hiding a pair from an output of rank rank_C"""
    if enforce_guarantee:
        return rank_C + 2 <= q, "rank(C)+2 <= q"
    return rank_C < q, "rank(C) < q"


@dataclass(frozen=True, eq=False)
class BlockingRequest:
    """One mode pair and what to block in it"""
    pair: ModePair
    kind: TargetKind
    states: Tuple[int, ...] = ()
    output_matrix: Optional[np.ndarray] = None

    @classmethod
    def participation(cls, pair: ModePair, states) -> "BlockingRequest":
        return cls(pair, TargetKind.PARTICIPATION, tuple(int(k) for k in states))

    @classmethod
    def observability(cls, pair: ModePair, C=None) -> "BlockingRequest":
        output = None if C is None else np.asarray(C, dtype=float)
        return cls(pair, TargetKind.OBSERVABILITY, (), output)

    def output(self, default_C: np.ndarray) -> np.ndarray:
        """Output matrix the request is checked against"""
        return default_C if self.output_matrix is None else self.output_matrix

    def validate(self, n: int, q: int, C: Optional[np.ndarray] = None, enforce_guarantee: bool = True) -> "BlockingRequest":
        """
        Check indices and feasibility against an n-state, q-input system.

        Raises:
            ValidationError: bad state indices or output shape
            PairSelectionError: real mode targeted
            InfeasibleRequestError: feasibility condition violated
        """
        if abs(self.pair.eigenvalue.imag) == 0:
            raise PairSelectionError(
                f"mode {self.pair.index + 1} is real; only conjugate pairs can be blocked"
            )
        if self.pair.index < 0 or self.pair.index + 1 >= n:
            raise PairSelectionError(f"pair index {self.pair.index + 1} outside 1..{n - 1}")

        if self.kind == TargetKind.PARTICIPATION:
            if len(set(self.states)) != len(self.states):
                raise ValidationError(f"state indices must be distinct: {list(self.states)}")
            bad = [k for k in self.states if not 0 <= k < n]
            if bad:
                raise ValidationError(
                    f"state indices {[k + 1 for k in bad]} outside 1..{n}"
                )
            ok, condition = participation_condition(len(self.states), q, enforce_guarantee)
            if not ok:
                raise InfeasibleRequestError(
                    f"cannot block {len(self.states)} states with {q} inputs", condition
                )
            return self

        output = np.zeros((0, n)) if C is None else self.output(C)
        if output.ndim != 2 or output.shape[1] != n:
            raise ValidationError(f"output matrix must have {n} columns, got shape {output.shape}")
        rank_C = matrix_rank(output) if output.size else 0
        ok, condition = observability_condition(rank_C, q, enforce_guarantee)
        if not ok:
            raise InfeasibleRequestError(
                f"cannot hide a pair from an output of rank {rank_C} with {q} inputs", condition
            )
        return self

    def to_target(self, eigenvalue: Optional[complex] = None) -> BlockingTarget:
        value = self.pair.eigenvalue if eigenvalue is None else eigenvalue
        return BlockingTarget(self.kind, complex(value.real, abs(value.imag)), self.states)

    def describe(self) -> str:
        what = (
            f"states {[k + 1 for k in self.states]}"
            if self.kind == TargetKind.PARTICIPATION else "output"
        )
        return f"{self.kind.value} of {what} in pair {self.pair.index + 1} ({self.pair.frequency_hz:.3f} Hz)"


def target_entry(target: BlockingTarget) -> Dict[str, Any]:
    """File form of a target; state indices are 1-based"""
    entry = target.to_dict()
    entry["states"] = [k + 1 for k in target.states]
    return entry


def _complex_vector(v: np.ndarray) -> Dict[str, List[float]]:
    return {"re": np.real(v).tolist(), "im": np.imag(v).tolist()}


@dataclass
class BlockingResult:
    """Synthesized gain with the replaced eigenvectors and diagnostics"""
    F: np.ndarray
    v_hat: np.ndarray
    v_hat_conj: np.ndarray
    z: np.ndarray
    z_conj: np.ndarray
    cond_V_hat: float
    pair: ModePair
    imag_residue: float = 0.0
    raw_gain: Optional[np.ndarray] = None
    request: Optional[BlockingRequest] = None
    targets: List[BlockingTarget] = field(default_factory=list)
    stages: List["BlockingResult"] = field(default_factory=list)
    verification: Optional[VerificationReport] = None
    attempts: int = 1

    @property
    def spectrum_max_shift(self) -> Optional[float]:
        return self.verification.spectrum_max_shift if self.verification else None

    def stage_summary(self, stage: int) -> Dict[str, Any]:
        summary = {
            "stage": stage,
            "pair_index": self.pair.index + 1,
            "eigenvalue_re": self.pair.eigenvalue.real,
            "eigenvalue_im": self.pair.eigenvalue.imag,
            "cond_V_hat": self.cond_V_hat,
            "imag_residue": self.imag_residue,
            "attempts": self.attempts,
            "v_hat": _complex_vector(self.v_hat),
            "z": _complex_vector(self.z)
        }
        if self.request is not None:
            summary["kind"] = self.request.kind.value
            summary["states"] = [k + 1 for k in self.request.states]
        return summary

    def to_dict(self) -> Dict[str, Any]:
        """Gain file payload"""
        stages = self.stages or [self]
        return {
            "F": np.asarray(self.F, dtype=float).tolist(),
            "targets": [target_entry(target) for target in self.targets],
            "stages": [stage.stage_summary(k) for k, stage in enumerate(stages, start=1)],
            "diagnostics": {
                "cond_V_hat": self.cond_V_hat,
                "spectrum_max_shift": self.spectrum_max_shift,
                "imag_residue": self.imag_residue
            }
        }


class BlockingSession:
    """Results and event history of one blocker"""

    def __init__(self):
        self.results: List[BlockingResult] = []
        self.history: List[Dict[str, Any]] = []

    def add_result(self, result: BlockingResult) -> None:
        """Record a verified blocking result"""
        self.results.append(result)
        self._log_event("blocked", {
            "targets": [target_entry(target) for target in result.targets],
            "cond_V_hat": result.cond_V_hat,
            "spectrum_max_shift": result.spectrum_max_shift
        })

    def add_failure(self, description: str, error: Exception) -> None:
        self._log_event("failed", {
            "request": description,
            "error": type(error).__name__,
            "message": str(error)
        })

    def _log_event(self, event_type: str, data: Dict[str, Any]) -> None:
        self.history.append({
            "event": event_type,
            "data": data,
            "timestamp": datetime.now().isoformat()
        })

    def latest(self) -> Optional[BlockingResult]:
        return self.results[-1] if self.results else None

    def summary(self) -> Dict[str, Any]:
        latest = self.latest()
        return {
            "results": len(self.results),
            "failures": sum(1 for event in self.history if event["event"] == "failed"),
            "pairs_blocked": sum(len(result.targets) for result in self.results),
            "latest_pass": latest.verification.passed if latest and latest.verification else None,
            "events_logged": len(self.history)
        }
