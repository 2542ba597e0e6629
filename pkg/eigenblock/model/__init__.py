"""LTI power-system models, builders and file I/O"""

from .models import HeffronParams, LtiSystem, StateLayout, TieLineIncidence
from .builders import (
    build_heffron_phillips, build_tieline_output, heffron_state_labels,
    machine_state_indices
)
from .fixtures import SYNTHETIC_HEFFRON, synthetic_heffron_params
from .generator import is_controllable, random_stable_system
from .io import (
    load_heffron_params, load_system, read_json, save_system, system_from_dict,
    write_json
)

__all__ = [
    "HeffronParams",
    "LtiSystem",
    "StateLayout",
    "TieLineIncidence",
    "build_heffron_phillips",
    "build_tieline_output",
    "heffron_state_labels",
    "machine_state_indices",
    "SYNTHETIC_HEFFRON",
    "synthetic_heffron_params",
    "is_controllable",
    "random_stable_system",
    "load_heffron_params",
    "load_system",
    "read_json",
    "save_system",
    "system_from_dict",
    "write_json"
]
