"""Data models for verification reports"""

from dataclasses import dataclass, field
from enum import Enum
from typing import Dict, List, Optional, Tuple


class TargetKind(Enum):
    """What a blocking stage removed"""
    PARTICIPATION = "participation"
    OBSERVABILITY = "observability"


@dataclass(frozen=True)
class BlockingTarget:
    """A mode pair (by its +Im eigenvalue) and what was blocked in it"""
    kind: TargetKind
    eigenvalue: complex
    states: Tuple[int, ...] = ()

    def to_dict(self) -> Dict:
        return {
            "kind": self.kind.value,
            "eigenvalue_re": self.eigenvalue.real,
            "eigenvalue_im": self.eigenvalue.imag,
            "states": list(self.states)
        }

    @classmethod
    def from_dict(cls, data: Dict) -> "BlockingTarget":
        return cls(
            kind=TargetKind(data["kind"]),
            eigenvalue=complex(data["eigenvalue_re"], data["eigenvalue_im"]),
            states=tuple(int(k) for k in data.get("states", ()))
        )


@dataclass
class VerificationReport:
    """Outcome of every check run against a closed loop"""
    spectrum_max_shift: float
    untouched_eigvec_residual: float
    realness_residual: float
    blocked_participation_max: Optional[float] = None
    pbh_norms_targeted: List[float] = field(default_factory=list)
    pbh_rank_margin: Optional[float] = None
    pbh_norms_untouched_shift: Optional[float] = None
    checks: Dict[str, bool] = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        """Conjunction of the individual checks"""
        return all(self.checks.values())

    def failed_checks(self) -> List[str]:
        return [name for name, ok in self.checks.items() if not ok]

    def to_dict(self) -> Dict:
        return {
            "spectrum_max_shift": self.spectrum_max_shift,
            "blocked_participation_max": self.blocked_participation_max,
            "pbh_norms_targeted": list(self.pbh_norms_targeted),
            "pbh_rank_margin": self.pbh_rank_margin,
            "pbh_norms_untouched_shift": self.pbh_norms_untouched_shift,
            "untouched_eigvec_residual": self.untouched_eigvec_residual,
            "realness_residual": self.realness_residual,
            "checks": dict(self.checks),
            "pass": self.passed
        }
