"""Modal analysis of LTI systems"""

from .models import (
    ModalDecomposition, ModeClass, ModeObservability, ModePair,
    ParticipationMatrix, ParticipationShift
)
from .analysis import (
    analyze_pairs, classify_frequency, classify_modes, conjugate_pairs,
    decomposition_from_vectors, dominant_pair, find_pair, modal_decomposition,
    mode_order, mode_table, observability_coefficients, pair_by_frequency,
    pair_by_index, participation_matrix, participation_shift
)

__all__ = [
    "ModalDecomposition",
    "ModeClass",
    "ModeObservability",
    "ModePair",
    "ParticipationMatrix",
    "ParticipationShift",
    "analyze_pairs",
    "classify_frequency",
    "classify_modes",
    "conjugate_pairs",
    "decomposition_from_vectors",
    "dominant_pair",
    "find_pair",
    "modal_decomposition",
    "mode_order",
    "mode_table",
    "observability_coefficients",
    "pair_by_frequency",
    "pair_by_index",
    "participation_matrix",
    "participation_shift"
]
