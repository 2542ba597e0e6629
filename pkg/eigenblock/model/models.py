"""Data models for linear time-invariant power-system models"""

from dataclasses import dataclass, field
from enum import Enum
from typing import Dict, List, Sequence, Tuple

import numpy as np

from ..errors import DimensionMismatchError, HeffronParameterError, ValidationError
from ..numerics import as_matrix


class StateLayout(Enum):
    """How per-machine states are ordered in the state vector"""
    BY_VARIABLE = "by_variable"  # [δ1..δg, ω1..ωg, E'q1..E'qg, E'fd1..E'fdg]
    BY_MACHINE = "by_machine"    # [x(1)_1..x(1)_k, x(2)_1..x(2)_k, ...]


def _real_matrix(value, name: str) -> np.ndarray:
    arr = as_matrix(value, name)
    if np.iscomplexobj(arr):
        if np.any(arr.imag != 0):
            raise ValidationError(f"{name} must be real")
        arr = arr.real
    return np.ascontiguousarray(arr, dtype=float)


def _frozen(arr: np.ndarray) -> np.ndarray:
    arr.setflags(write=False)
    return arr


def _labels(given: Sequence[str], count: int, prefix: str, name: str) -> Tuple[str, ...]:
    if not given:
        return tuple(f"{prefix}{k + 1}" for k in range(count))
    labels = tuple(str(label) for label in given)
    if len(labels) != count:
        raise DimensionMismatchError(
            f"{name} has {len(labels)} entries, expected {count}"
        )
    return labels


@dataclass(frozen=True, eq=False)
class LtiSystem:
    """Real state-space model dx = A x + B u, y = C x (immutable)"""
    A: np.ndarray
    B: np.ndarray
    C: np.ndarray
    state_labels: Tuple[str, ...] = ()
    input_labels: Tuple[str, ...] = ()
    output_labels: Tuple[str, ...] = ()

    def __post_init__(self):
        A = _real_matrix(self.A, "A")
        n = A.shape[0]
        B = _real_matrix(self.B, "B") if np.size(self.B) else np.zeros((n, 0))
        C = _real_matrix(self.C, "C") if np.size(self.C) else np.zeros((0, n))

        if A.shape != (n, n):
            raise DimensionMismatchError(f"A must be square, got {A.shape}")
        if B.shape[0] != n:
            raise DimensionMismatchError(f"B has {B.shape[0]} rows, A has {n}")
        if C.shape[1] != n:
            raise DimensionMismatchError(f"C has {C.shape[1]} columns, A has {n}")

        object.__setattr__(self, "A", _frozen(A))
        object.__setattr__(self, "B", _frozen(B))
        object.__setattr__(self, "C", _frozen(C))
        object.__setattr__(self, "state_labels", _labels(self.state_labels, n, "x", "state_labels"))
        object.__setattr__(self, "input_labels", _labels(self.input_labels, B.shape[1], "u", "input_labels"))
        object.__setattr__(self, "output_labels", _labels(self.output_labels, C.shape[0], "y", "output_labels"))

    @property
    def n(self) -> int:
        """Number of states"""
        return self.A.shape[0]

    @property
    def q(self) -> int:
        """Number of inputs"""
        return self.B.shape[1]

    @property
    def p(self) -> int:
        """Number of outputs"""
        return self.C.shape[0]

    def validate(self) -> "LtiSystem":
        """Re-check dimensions and finiteness; returns self"""
        for name, arr in (("A", self.A), ("B", self.B), ("C", self.C)):
            if not np.all(np.isfinite(arr)):
                raise ValidationError(f"{name} contains NaN or Inf entries")
        if self.B.shape[0] != self.n or self.C.shape[1] != self.n:
            raise DimensionMismatchError("inconsistent system dimensions")
        return self

    def with_feedback(self, F) -> "LtiSystem":
        """Closed loop (A + B F, B, C) for a real q x n gain"""
        F = _real_matrix(F, "F")
        if F.shape != (self.q, self.n):
            raise DimensionMismatchError(
                f"F must be {self.q}x{self.n}, got {F.shape[0]}x{F.shape[1]}"
            )
        return LtiSystem(
            self.A + self.B @ F, self.B, self.C,
            self.state_labels, self.input_labels, self.output_labels
        )

    def equals(self, other: "LtiSystem") -> bool:
        """Bit-exact comparison of matrices and labels"""
        return (
            np.array_equal(self.A, other.A)
            and np.array_equal(self.B, other.B)
            and np.array_equal(self.C, other.C)
            and self.state_labels == other.state_labels
            and self.input_labels == other.input_labels
            and self.output_labels == other.output_labels
        )

    def to_dict(self) -> Dict:
        return {
            "n": self.n,
            "q": self.q,
            "p": self.p,
            "A": self.A.tolist(),
            "B": self.B.tolist(),
            "C": self.C.tolist(),
            "state_labels": list(self.state_labels),
            "input_labels": list(self.input_labels),
            "output_labels": list(self.output_labels)
        }


def _block(value, name: str, size: int, diagonal: bool) -> np.ndarray:
    arr = np.asarray(value, dtype=float)
    if arr.ndim == 0:
        arr = float(arr) * np.eye(size)
    elif arr.ndim == 1:
        if arr.size != size:
            raise HeffronParameterError(f"{name} must have {size} entries, got {arr.size}")
        arr = np.diag(arr)
    if arr.shape != (size, size):
        raise HeffronParameterError(f"{name} must be {size}x{size}, got {arr.shape}")
    if not np.all(np.isfinite(arr)):
        raise HeffronParameterError(f"{name} contains NaN or Inf entries")
    if diagonal and np.any(arr != np.diag(np.diag(arr))):
        raise HeffronParameterError(f"{name} must be diagonal (one entry per machine)")
    return _frozen(np.array(arr))


@dataclass(frozen=True, eq=False)
class HeffronParams:
    """Heffron-Phillips multi-machine parameters (g machines, default 3)"""
    M: np.ndarray
    D: np.ndarray
    Td0: np.ndarray
    TA: np.ndarray
    KA: np.ndarray
    K1: np.ndarray
    K2: np.ndarray
    K3: np.ndarray
    K4: np.ndarray
    K5: np.ndarray
    K6: np.ndarray
    omega0: float = 2 * np.pi * 60
    n_machines: int = 3

    DIAGONAL = ("M", "D", "Td0", "TA", "KA")
    COUPLING = ("K1", "K2", "K3", "K4", "K5", "K6")
    POSITIVE = ("M", "Td0", "TA")

    def __post_init__(self):
        g = self.n_machines
        if g < 2:
            raise HeffronParameterError("at least two machines are required")
        for name in self.DIAGONAL + self.COUPLING:
            object.__setattr__(
                self, name, _block(getattr(self, name), name, g, name in self.DIAGONAL)
            )
        for name in self.POSITIVE:
            if np.any(np.diag(getattr(self, name)) <= 0):
                raise HeffronParameterError(f"{name} entries must be strictly positive")
        if not np.isfinite(self.omega0) or self.omega0 <= 0:
            raise HeffronParameterError("omega0 must be positive")
        object.__setattr__(self, "omega0", float(self.omega0))

    @property
    def n_states(self) -> int:
        return 4 * self.n_machines

    def to_dict(self) -> Dict:
        data = {name: getattr(self, name).tolist() for name in self.DIAGONAL + self.COUPLING}
        data["omega0"] = self.omega0
        return data


@dataclass(frozen=True, eq=False)
class TieLineIncidence:
    """Signed incidence of tie-line flows over machine injections"""
    matrix: np.ndarray
    labels: Tuple[str, ...] = field(default=())

    def __post_init__(self):
        mat = _real_matrix(self.matrix, "incidence")
        for r, row in enumerate(mat):
            plus = np.sum(row == 1.0)
            minus = np.sum(row == -1.0)
            zeros = np.sum(row == 0.0)
            if plus != 1 or minus != 1 or zeros != row.size - 2:
                raise ValidationError(
                    f"incidence row {r} must have one +1, one -1 and zeros elsewhere"
                )
        object.__setattr__(self, "matrix", _frozen(mat))
        object.__setattr__(self, "labels", _labels(self.labels, mat.shape[0], "tie", "labels"))

    @classmethod
    def all_pairs(cls, n_machines: int = 3) -> "TieLineIncidence":
        """Rows P_ij for every i < j; for three machines (P12, P13, P23)"""
        rows: List[np.ndarray] = []
        labels: List[str] = []
        for i in range(n_machines):
            for j in range(i + 1, n_machines):
                row = np.zeros(n_machines)
                row[i], row[j] = 1.0, -1.0
                rows.append(row)
                labels.append(f"P{i + 1}{j + 1}")
        return cls(np.array(rows), tuple(labels))

    @property
    def n_machines(self) -> int:
        return self.matrix.shape[1]
