"""
eigenblock: surgical eigenstructure assignment for power-system modal analysis.

Blocks the participation of chosen states in a mode pair, or hides a mode
pair from a measured output, with full-state feedback that keeps every
eigenvalue and every other right eigenvector of the open loop.
"""

__version__ = "0.1.0"

from .config import DEFAULT_TOLERANCES, Tolerances
from .errors import EigenblockError
from .model import LtiSystem, build_heffron_phillips, load_system, synthetic_heffron_params
from .assign import BlockingRequest, BlockingResult, EigenstructureBlocker
from .verify import VerificationReport, verify_blocking

__all__ = [
    "__version__",
    "DEFAULT_TOLERANCES",
    "Tolerances",
    "EigenblockError",
    "LtiSystem",
    "build_heffron_phillips",
    "load_system",
    "synthetic_heffron_params",
    "BlockingRequest",
    "BlockingResult",
    "EigenstructureBlocker",
    "VerificationReport",
    "verify_blocking"
]
