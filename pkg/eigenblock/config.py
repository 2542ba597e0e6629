"""Tolerances and environment-driven defaults"""

import os
from typing import Dict, Optional

from dotenv import load_dotenv
from pydantic import BaseModel, Field


ENV_PREFIX = "EIGENBLOCK_"


class Tolerances(BaseModel):
    """Numerical thresholds used by synthesis and verification"""
    spectrum: float = Field(1e-7, gt=0)
    block: float = Field(1e-8, gt=0)
    untouched_eigvec: float = Field(1e-9, gt=0)
    pbh_untouched: float = Field(1e-9, gt=0)
    realness: float = Field(1e-9, gt=0)
    cond_limit: float = Field(1e12, gt=1)
    imag_error: float = Field(1e-6, gt=0)
    pair_freq_window: float = Field(0.1, gt=0)
    max_retries: int = Field(32, ge=0)

    model_config = {"frozen": True}

    def override(self, **values: Optional[float]) -> "Tolerances":
        """Return a copy with the non-None values replaced"""
        updates = {k: v for k, v in values.items() if v is not None}
        if not updates:
            return self
        return Tolerances(**{**self.model_dump(), **updates})


DEFAULT_TOLERANCES = Tolerances()


def _env_float(name: str) -> Optional[float]:
    raw = os.environ.get(ENV_PREFIX + name)
    if raw is None or raw == "":
        return None
    return float(raw)


def load_environment(dotenv_path: Optional[str] = None) -> Dict[str, Optional[str]]:
    """
    Load a .env file (if present) and collect eigenblock settings.

    Args:
        dotenv_path: Explicit .env location (default: search from cwd)

    Returns:
        Raw settings: log_level and seed (None when unset)
    """
    load_dotenv(dotenv_path)
    return {
        "log_level": os.environ.get(ENV_PREFIX + "LOG_LEVEL"),
        "seed": os.environ.get(ENV_PREFIX + "SEED"),
    }


def tolerances_from_env(base: Tolerances = DEFAULT_TOLERANCES) -> Tolerances:
    """Apply EIGENBLOCK_TOL_* and EIGENBLOCK_COND_LIMIT overrides"""
    return base.override(
        spectrum=_env_float("TOL_SPECTRUM"),
        block=_env_float("TOL_BLOCK"),
        cond_limit=_env_float("COND_LIMIT"),
    )
