"""Run configuration and plan files for the command line"""

from enum import Enum
from pathlib import Path
from typing import List, Optional, Tuple

from pydantic import BaseModel, ConfigDict, Field, RootModel, model_validator

from ..config import Tolerances


class Command(str, Enum):
    ANALYZE = "analyze"
    BLOCK_PARTICIPATION = "block-participation"
    BLOCK_OBSERVABILITY = "block-observability"
    SEQUENTIAL = "sequential"
    VERIFY = "verify"
    BUILD_HEFFRON = "build-heffron"


class RunConfig(BaseModel):
    """Validated arguments of one CLI invocation (1-based indices)"""
    model_config = ConfigDict(extra="forbid", frozen=True)

    command: Command
    model_path: Optional[Path] = None
    gain_path: Optional[Path] = None
    plan_path: Optional[Path] = None
    params_path: Optional[Path] = None
    out_dir: Path = Path(".")
    pair_index: Optional[int] = Field(None, ge=1)
    pair_freq: Optional[float] = Field(None, gt=0)
    pair_freq_window: Optional[float] = Field(None, gt=0)
    states: Tuple[int, ...] = ()
    machine: Optional[int] = Field(None, ge=1)
    all_inter_area: bool = False
    best_effort: bool = False
    k5_in_exciter: bool = False
    tol_spectrum: Optional[float] = Field(None, gt=0)
    tol_block: Optional[float] = Field(None, gt=0)
    seed: int = 0

    @model_validator(mode="after")
    def _check_selectors(self) -> "RunConfig":
        if self.pair_index is not None and self.pair_freq is not None:
            raise ValueError("--pair-index and --pair-freq are mutually exclusive")
        if self.states and self.machine is not None:
            raise ValueError("--states and --machine are mutually exclusive")
        if self.all_inter_area and (self.pair_index is not None or self.pair_freq is not None):
            raise ValueError("--all-inter-area cannot be combined with a pair selector")
        if any(k < 1 for k in self.states):
            raise ValueError("state indices are 1-based")
        if len(set(self.states)) != len(self.states):
            raise ValueError("state indices must be distinct")
        return self

    @property
    def zero_based_states(self) -> List[int]:
        return [k - 1 for k in self.states]

    def tolerances(self, base: Tolerances) -> Tolerances:
        """Base tolerances with the command-line overrides applied"""
        return base.override(spectrum=self.tol_spectrum, block=self.tol_block)


def parse_states(raw: Optional[str]) -> Tuple[int, ...]:
    """'1,4' -> (1, 4)"""
    if not raw:
        return ()
    return tuple(int(part) for part in raw.split(",") if part.strip())


class PlanEntry(BaseModel):
    """One stage of a sequential plan"""
    model_config = ConfigDict(extra="forbid")

    kind: str = Field(pattern="^(participation|observability)$")
    pair_index: Optional[int] = Field(None, ge=1)
    pair_freq: Optional[float] = Field(None, gt=0)
    pair_freq_window: Optional[float] = Field(None, gt=0)
    states: List[int] = Field(default_factory=list)
    machine: Optional[int] = Field(None, ge=1)

    @model_validator(mode="after")
    def _check_entry(self) -> "PlanEntry":
        if (self.pair_index is None) == (self.pair_freq is None):
            raise ValueError("give exactly one of pair_index and pair_freq")
        if self.kind == "observability" and (self.states or self.machine is not None):
            raise ValueError("observability stages take no states")
        if self.states and self.machine is not None:
            raise ValueError("states and machine are mutually exclusive")
        if any(k < 1 for k in self.states):
            raise ValueError("state indices are 1-based")
        return self


class PlanFile(RootModel[List[PlanEntry]]):
    """Sequential plan: ordered list of stages"""
