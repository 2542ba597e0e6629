"""JSON model and parameter files"""

import json
import logging
from pathlib import Path
from typing import Any, List, Optional, Union

from pydantic import BaseModel, ConfigDict, Field, FiniteFloat
from pydantic import ValidationError as SchemaError

from ..errors import DimensionMismatchError, ModelFileError
from .models import HeffronParams, LtiSystem

logger = logging.getLogger(__name__)

Matrix = List[List[FiniteFloat]]
Block = Union[FiniteFloat, List[FiniteFloat], List[List[FiniteFloat]]]


class LtiSystemFile(BaseModel):
    """On-disk schema of a model file"""
    model_config = ConfigDict(extra="forbid")

    n: int = Field(ge=1)
    q: int = Field(ge=0)
    p: int = Field(ge=0)
    A: Matrix
    B: Matrix
    C: Matrix
    state_labels: Optional[List[str]] = None
    input_labels: Optional[List[str]] = None
    output_labels: Optional[List[str]] = None


class HeffronParamsFile(BaseModel):
    """On-disk schema of a Heffron-Phillips parameter file"""
    model_config = ConfigDict(extra="forbid")

    M: Block
    D: Block
    Td0: Block
    TA: Block
    KA: Block
    K1: Block
    K2: Block
    K3: Block
    K4: Block
    K5: Block
    K6: Block
    omega0: FiniteFloat = Field(gt=0)


def read_json(path: Union[str, Path]) -> Any:
    """Parse a JSON document, mapping I/O and syntax errors to ModelFileError"""
    path = Path(path)
    if not path.is_file():
        raise ModelFileError(f"file not found: {path}")
    try:
        with path.open("r", encoding="utf-8") as fh:
            return json.load(fh)
    except json.JSONDecodeError as exc:
        raise ModelFileError(f"invalid JSON in {path}: {exc}")
    except OSError as exc:
        raise ModelFileError(f"cannot read {path}: {exc}")


def write_json(data: Any, path: Union[str, Path]) -> Path:
    """Write a JSON document deterministically (sorted keys, 2-space indent)"""
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    with path.open("w", encoding="utf-8") as fh:
        json.dump(data, fh, indent=2, sort_keys=True, allow_nan=False)
        fh.write("\n")
    return path


def parse_schema(schema: type, data: Any, source: str):
    """Validate data against a pydantic schema; first error names the field"""
    try:
        return schema.model_validate(data)
    except SchemaError as exc:
        first = exc.errors()[0]
        where = ".".join(str(part) for part in first.get("loc", ()))
        raise ModelFileError(f"{first.get('msg', 'invalid value')} in {source}", field=where)


def _check_shape(rows: List[List[float]], n_rows: int, n_cols: int, name: str) -> None:
    if len(rows) != n_rows:
        raise DimensionMismatchError(f"{name} has {len(rows)} rows, expected {n_rows}")
    for r, row in enumerate(rows):
        if len(row) != n_cols:
            raise DimensionMismatchError(
                f"{name} row {r} has {len(row)} entries, expected {n_cols}"
            )


def system_from_dict(data: Any, source: str = "model") -> LtiSystem:
    """Build an LtiSystem from a parsed model document"""
    doc = parse_schema(LtiSystemFile, data, source)
    _check_shape(doc.A, doc.n, doc.n, "A")
    _check_shape(doc.B, doc.n, doc.q, "B")
    _check_shape(doc.C, doc.p, doc.n, "C")
    return LtiSystem(
        doc.A, doc.B, doc.C,
        state_labels=tuple(doc.state_labels or ()),
        input_labels=tuple(doc.input_labels or ()),
        output_labels=tuple(doc.output_labels or ())
    ).validate()


def load_system(path: Union[str, Path]) -> LtiSystem:
    """
    Load a model file.

    Args:
        path: JSON file with n, q, p, A, B, C and optional labels

    Returns:
        Validated LtiSystem (labels default to x1.., u1.., y1..)
    """
    system = system_from_dict(read_json(path), str(path))
    logger.debug("loaded %s: n=%d q=%d p=%d", path, system.n, system.q, system.p)
    return system


def save_system(system: LtiSystem, path: Union[str, Path]) -> Path:
    """Write a model file that load_system reads back bit-exactly"""
    return write_json(system.to_dict(), path)


def load_heffron_params(path: Union[str, Path], n_machines: int = 3) -> HeffronParams:
    """Load a parameter file; scalars and vectors broadcast to diagonals"""
    doc = parse_schema(HeffronParamsFile, read_json(path), str(path))
    return HeffronParams(n_machines=n_machines, **doc.model_dump())
