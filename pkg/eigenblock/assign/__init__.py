"""Surgical eigenstructure assignment"""

from .models import (
    AssignableSubspace, BlockingRequest, BlockingResult, BlockingSession,
    observability_condition, participation_condition, target_entry
)
from .algorithms import (
    assignable_subspace, block_observability, block_participation,
    candidate_directions, execute_request, locate_pair,
    observability_blocking_direction, observability_direction_basis,
    participation_blocking_direction, participation_direction_basis,
    synthesize_gain
)
from .sequential import block_inter_area, check_disjoint, sequential_block
from .artifacts import GainFile, gain_from_dict, load_gain, save_gain
from .blocker import EigenstructureBlocker

__all__ = [
    "AssignableSubspace",
    "BlockingRequest",
    "BlockingResult",
    "BlockingSession",
    "observability_condition",
    "participation_condition",
    "target_entry",
    "assignable_subspace",
    "block_observability",
    "block_participation",
    "candidate_directions",
    "execute_request",
    "locate_pair",
    "observability_blocking_direction",
    "observability_direction_basis",
    "participation_blocking_direction",
    "participation_direction_basis",
    "synthesize_gain",
    "block_inter_area",
    "check_disjoint",
    "sequential_block",
    "GainFile",
    "gain_from_dict",
    "load_gain",
    "save_gain",
    "EigenstructureBlocker"
]
