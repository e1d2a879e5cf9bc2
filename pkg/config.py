"""Runtime settings shared by every casaskit package."""

import logging
import os
from dataclasses import dataclass, replace

logger = logging.getLogger(__name__)

THREADS_ENV_VAR = "CASASKIT_THREADS"


@dataclass(frozen=True)
class Settings:
    """Numeric tolerances, budgets and precision."""

    tolerance: float = 1e-9  # relative tolerance for numeric verdicts
    root_iterations: int = 200  # Aberth iteration budget
    root_tolerance: float = 1e-14  # convergence when |step| <= tol * (1 + |value|)
    precision_digits: int = 15  # working precision for numeric roots
    verify_digits: int = 50  # precision of the candidate verification pass
    genetic_max_degree: int = 12  # enumeration cap for genetic sums
    threads: int = 1  # worker processes for the search


def threads_from_env() -> int:
    """Worker cap from CASASKIT_THREADS; 1 when unset or malformed."""
    raw = os.environ.get(THREADS_ENV_VAR)
    if not raw:
        return 1
    try:
        value = int(raw)
    except ValueError:
        logger.warning("Ignoring non-integer %s=%r", THREADS_ENV_VAR, raw)
        return 1
    return max(1, value)


def get_settings(**overrides) -> Settings:
    """
    Build settings from defaults, the environment and explicit overrides.

    Args:
        **overrides: Any Settings field

    Returns:
        Frozen Settings instance
    """
    settings = Settings(threads=threads_from_env())
    if overrides:
        settings = replace(settings, **overrides)
    return settings
