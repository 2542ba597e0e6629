"""CSV and JSON report files"""

from pathlib import Path
from typing import Dict, List, Sequence

import numpy as np
import pandas as pd

from ..modal import ModeObservability, ParticipationMatrix, ParticipationShift
from ..model import write_json
from ..verify import VerificationReport

FLOAT_FORMAT = "%.12g"


def _mode_columns(count: int) -> List[str]:
    return [f"mode_{i + 1}" for i in range(count)]


def _write(frame: pd.DataFrame, path: Path, index_label=None) -> Path:
    path.parent.mkdir(parents=True, exist_ok=True)
    frame.to_csv(
        path,
        index=index_label is not None,
        index_label=index_label,
        float_format=FLOAT_FORMAT,
        lineterminator="\n"
    )
    return path


def modes_frame(rows: Sequence[Dict]) -> pd.DataFrame:
    return pd.DataFrame(list(rows), columns=["index", "re", "im", "freq_hz", "damping", "class"])


def participation_frame(pm: ParticipationMatrix, state_labels: Sequence[str]) -> pd.DataFrame:
    """|p_ki| with one row per state and one column per mode"""
    magnitude = pm.magnitude
    return pd.DataFrame(magnitude, index=list(state_labels), columns=_mode_columns(magnitude.shape[1]))


def observability_frame(mo: ModeObservability) -> pd.DataFrame:
    return pd.DataFrame({
        "index": np.arange(1, mo.norms.size + 1),
        "re": mo.eigenvalues.real,
        "im": mo.eigenvalues.imag,
        "cv_norm": mo.norms
    })


def shift_frame(shift: ParticipationShift) -> pd.DataFrame:
    return pd.DataFrame(
        shift.delta,
        index=list(shift.state_labels) or [f"x{k + 1}" for k in range(shift.delta.shape[0])],
        columns=_mode_columns(shift.delta.shape[1])
    )


def write_modes(rows: Sequence[Dict], path: Path) -> Path:
    return _write(modes_frame(rows), path)


def write_participation(pm: ParticipationMatrix, state_labels: Sequence[str], path: Path) -> Path:
    return _write(participation_frame(pm, state_labels), path, index_label="state")


def write_observability(mo: ModeObservability, path: Path) -> Path:
    return _write(observability_frame(mo), path)


def write_shift(shift: ParticipationShift, path: Path) -> Path:
    return _write(shift_frame(shift), path, index_label="state")


def write_report(report: VerificationReport, path: Path) -> Path:
    return write_json(report.to_dict(), path)
