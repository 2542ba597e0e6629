"""Independent verification oracle"""

from .models import BlockingTarget, TargetKind, VerificationReport
from .checks import (
    check_participation_blocked, check_pbh_unobservable, check_realness,
    check_spectrum_preserved, check_untouched_eigvecs,
    check_untouched_output_norms, pbh_rank_margin, verify_blocking
)

__all__ = [
    "BlockingTarget",
    "TargetKind",
    "VerificationReport",
    "check_participation_blocked",
    "check_pbh_unobservable",
    "check_realness",
    "check_spectrum_preserved",
    "check_untouched_eigvecs",
    "check_untouched_output_norms",
    "pbh_rank_margin",
    "verify_blocking"
]
