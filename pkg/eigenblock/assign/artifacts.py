"""Gain files: the synthesized F with its targets and diagnostics"""

import logging
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any, Dict, List, Literal, Optional, Union

import numpy as np
from pydantic import BaseModel, ConfigDict, Field, FiniteFloat

from ..errors import DimensionMismatchError, ModelFileError
from ..model import LtiSystem, read_json, write_json
from ..model.io import parse_schema
from ..verify import BlockingTarget, TargetKind
from .models import BlockingResult

logger = logging.getLogger(__name__)


class TargetEntry(BaseModel):
    """One blocked pair as stored in a gain file (1-based states)"""
    model_config = ConfigDict(extra="forbid")

    kind: Literal["participation", "observability"]
    eigenvalue_re: FiniteFloat
    eigenvalue_im: FiniteFloat
    states: List[int] = Field(default_factory=list)


class GainFileSchema(BaseModel):
    """On-disk schema of a gain file"""
    model_config = ConfigDict(extra="forbid")

    F: List[List[FiniteFloat]]
    targets: List[TargetEntry] = Field(default_factory=list)
    stages: List[Dict[str, Any]] = Field(default_factory=list)
    diagnostics: Dict[str, Optional[FiniteFloat]] = Field(default_factory=dict)


@dataclass
class GainFile:
    """Parsed gain file"""
    F: np.ndarray
    targets: List[BlockingTarget]
    stages: List[Dict[str, Any]] = field(default_factory=list)
    diagnostics: Dict[str, Optional[float]] = field(default_factory=dict)

    def check_against(self, system: LtiSystem) -> "GainFile":
        """Gain shape and target state indices fit the system"""
        if self.F.shape != (system.q, system.n):
            raise DimensionMismatchError(
                f"gain is {self.F.shape[0]}x{self.F.shape[1]}, model needs {system.q}x{system.n}"
            )
        for target in self.targets:
            bad = [k + 1 for k in target.states if not 0 <= k < system.n]
            if bad:
                raise ModelFileError(f"target states {bad} outside 1..{system.n}", field="targets")
        return self


def save_gain(result: BlockingResult, path: Union[str, Path]) -> Path:
    """Write the gain file of a blocking result"""
    path = write_json(result.to_dict(), path)
    logger.debug("wrote gain file %s", path)
    return path


def gain_from_dict(data: Any, source: str = "gain") -> GainFile:
    doc = parse_schema(GainFileSchema, data, source)
    rows = {len(row) for row in doc.F}
    if len(rows) > 1:
        raise ModelFileError("rows of F have different lengths", field="F")
    F = np.array(doc.F, dtype=float).reshape(len(doc.F), rows.pop() if rows else 0)

    targets = []
    for entry in doc.targets:
        if any(k < 1 for k in entry.states):
            raise ModelFileError("state indices are 1-based", field="targets")
        targets.append(BlockingTarget(
            kind=TargetKind(entry.kind),
            eigenvalue=complex(entry.eigenvalue_re, abs(entry.eigenvalue_im)),
            states=tuple(k - 1 for k in entry.states)
        ))
    return GainFile(F, targets, list(doc.stages), dict(doc.diagnostics))


def load_gain(path: Union[str, Path]) -> GainFile:
    """
    Load a gain file written by save_gain.

    Raises:
        ModelFileError: missing file, invalid JSON or schema violation
    """
    return gain_from_dict(read_json(path), str(path))
