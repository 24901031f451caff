import logging
import os

from dotenv import load_dotenv

from constants import DEFAULT_GROUP_CAP, DEFAULT_ORACLE_MAX_CANDIDATES, DEFAULT_SEARCH_BUDGET
from utils.config import DeciderConfig

load_dotenv()

# Set up logger
logger = logging.getLogger(__name__)

# The service never lets a request ask for more than these.
group_cap = int(os.getenv("TRIPLES_GROUP_CAP", DEFAULT_GROUP_CAP))
search_budget = int(os.getenv("TRIPLES_SEARCH_BUDGET", DEFAULT_SEARCH_BUDGET))
oracle_max_candidates = int(os.getenv("TRIPLES_ORACLE_MAX_CANDIDATES", DEFAULT_ORACLE_MAX_CANDIDATES))
oracle_enabled = os.getenv("TRIPLES_ORACLE_ENABLED", "true").lower() in ("1", "true", "yes")

# Largest box GET /classify accepts.
classify_max_side = int(os.getenv("TRIPLES_CLASSIFY_MAX_SIDE", "12"))


def service_config(**overrides) -> DeciderConfig:
    """The environment's config, with per-request overrides clipped to it."""
    config = DeciderConfig(
        group_cap=group_cap,
        search_budget=search_budget,
        oracle_max_candidates=oracle_max_candidates,
        oracle_enabled=oracle_enabled,
    )
    clipped = {}
    for name, value in overrides.items():
        if value is None:
            continue
        if name == "oracle_enabled":
            clipped[name] = value and config.oracle_enabled
        else:
            clipped[name] = min(value, getattr(config, name))
    if clipped:
        logger.debug(f"Request overrides: {clipped}")
    return config.model_copy(update=clipped)
