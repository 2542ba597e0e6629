"""Data models for modal analysis"""

from dataclasses import dataclass, field
from enum import Enum
from typing import Dict, List, Optional, Tuple

import numpy as np


class ModeClass(Enum):
    """Frequency-band classification of a mode"""
    LOCAL = "local"
    INTER_AREA = "inter_area"
    AMBIGUOUS = "ambiguous"            # 0.7-1.0 Hz lies in both bands
    BELOW_BAND = "below_band"
    ABOVE_BAND = "above_band"
    NON_OSCILLATORY = "non_oscillatory"


@dataclass(frozen=True, eq=False)
class ModalDecomposition:
    """Eigenvalues with right (V) and left (W) eigenvectors, WᵀV = I"""
    eigenvalues: np.ndarray
    V: np.ndarray
    W: np.ndarray
    state_matrix: np.ndarray

    @property
    def n(self) -> int:
        return self.eigenvalues.size

    @property
    def norm_A(self) -> float:
        return float(np.linalg.norm(self.state_matrix, 2))

    def residuals(self) -> np.ndarray:
        """‖A vᵢ − λᵢ vᵢ‖ per mode"""
        return np.linalg.norm(
            self.state_matrix @ self.V - self.V * self.eigenvalues, axis=0
        )

    def biorthogonality_error(self) -> float:
        """max |WᵀV − I|"""
        return float(np.max(np.abs(self.W.T @ self.V - np.eye(self.n))))

    def diagonalization_error(self) -> float:
        """Largest off-diagonal magnitude of WᵀAV"""
        L = self.W.T @ self.state_matrix @ self.V
        return float(np.max(np.abs(L - np.diag(np.diag(L))))) if self.n > 1 else 0.0


@dataclass(frozen=True, eq=False)
class ParticipationMatrix:
    """P[k, i] = w_ik v_ki for state k and mode i"""
    P: np.ndarray
    eigenvalues: np.ndarray

    @property
    def magnitude(self) -> np.ndarray:
        return np.abs(self.P)

    def column_sums(self) -> np.ndarray:
        return self.P.sum(axis=0)


@dataclass(frozen=True, eq=False)
class ModeObservability:
    """O[j, i] = c_jᵀ vᵢ and per-mode norms ‖C vᵢ‖"""
    O: np.ndarray
    norms: np.ndarray
    eigenvalues: np.ndarray

    def unobservable(self, tol: float) -> List[int]:
        """Mode indices whose norm is below tol"""
        return [i for i, value in enumerate(self.norms) if value < tol]


@dataclass(frozen=True)
class ModePair:
    """Complex-conjugate mode pair (i, i+1); eigenvalue is the +Im member"""
    index: int
    eigenvalue: complex
    mode_class: Optional[ModeClass] = None

    @property
    def indices(self) -> Tuple[int, int]:
        return (self.index, self.index + 1)

    @property
    def frequency_hz(self) -> float:
        return abs(self.eigenvalue.imag) / (2 * np.pi)

    @property
    def damping(self) -> float:
        return -self.eigenvalue.real / abs(self.eigenvalue)

    def to_dict(self) -> Dict:
        return {
            "index": self.index,
            "eigenvalue_re": self.eigenvalue.real,
            "eigenvalue_im": self.eigenvalue.imag,
            "frequency_hz": self.frequency_hz,
            "damping": self.damping,
            "class": self.mode_class.value if self.mode_class else None
        }


@dataclass(frozen=True, eq=False)
class ParticipationShift:
    """Change of participation magnitudes between two decompositions"""
    delta: np.ndarray
    before: np.ndarray
    after: np.ndarray
    eigenvalues: np.ndarray
    state_labels: Tuple[str, ...] = field(default=())

    def largest_increase(self, state: int) -> Tuple[int, float]:
        """(mode index, increase) of the mode that gained most from state"""
        mode = int(np.argmax(self.delta[state]))
        return mode, float(self.delta[state, mode])
