import os
import logging
from dataclasses import dataclass
from dotenv import load_dotenv

# Load environment variables
load_dotenv()

logger = logging.getLogger(__name__)


def _env_int(name, default):
    """Read a positive integer from the environment, falling back to the default"""
    raw = os.getenv(name)
    if raw is None or raw.strip() == "":
        return default
    try:
        value = int(raw)
    except ValueError:
        logger.warning(f"Ignoring {name}={raw!r}: not an integer. Using {default}.")
        return default
    if value <= 0:
        logger.warning(f"Ignoring {name}={raw!r}: must be positive. Using {default}.")
        return default
    return value


# Groebner budget
GROEBNER_MAX_BASIS = _env_int("MLDEG_BUDGET_BASIS", 500)
GROEBNER_MAX_DEGREE = _env_int("MLDEG_BUDGET_DEGREE", 60)

# Oracle bounds
CRITICAL_MAX_DIMENSION = _env_int("MLDEG_CRITICAL_MAX_DIM", 2)
ARRANGEMENT_MAX_HYPERPLANES = _env_int("MLDEG_ARRANGEMENT_MAX", 14)

# Randomness
DEFAULT_SEED = 0
DEFAULT_TRIALS = 2
WEIGHT_BOUND = 10 ** 4
COORD_CHANGE_BOUND = 5
CERTIFY_POINTS = 5
PREFILTER_POINTS = 8
PREFILTER_RANGE = 10 ** 6

LOG_LEVEL = os.getenv("MLDEG_LOG_LEVEL", "WARNING").upper()


@dataclass(frozen=True)
class Budget:
    """Resource caps for one Groebner computation"""
    max_basis: int = GROEBNER_MAX_BASIS
    max_degree: int = GROEBNER_MAX_DEGREE


def default_budget():
    return Budget(max_basis=GROEBNER_MAX_BASIS, max_degree=GROEBNER_MAX_DEGREE)
