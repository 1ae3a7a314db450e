"""
Configuration settings for mclab, the multiclass learnability lab.
"""
import logging
import os
from pathlib import Path
from typing import Dict, Any

logger = logging.getLogger(__name__)

# Base paths
BASE_DIR = Path(__file__).parent.parent
DATA_DIR = BASE_DIR / "data"
CONFIG_DIR = BASE_DIR / "config"

# Exhaustive-search budgets (elementary checks)
BUDGET_CONFIG = {
    "max_checks": 10 ** 8,
    "max_group_order": 10 ** 6,
    "max_exact_outcomes": 10 ** 6,
    "max_tree_nodes": 10 ** 6,
}

# Orientation solver settings
ORIENTATION_CONFIG = {
    "brute_force_max_edges": 12,  # oracle only
}

# Compression scheme settings
COMPRESSION_CONFIG = {
    "exhaustive_pool_limit": 10 ** 5,  # C(n, block) at or below this is enumerated
    "pool_size": 256,
    "max_pool_rounds": 8,
    "menu_retries": 64,
    "game_rounds": 200,
    "game_candidates": 16,
    "game_tolerance": 0.05,
    "lp_max_examples": 12,
}

# Logging settings
LOGGING_CONFIG = {
    "level": "WARNING",
    "format": "%(asctime)s - %(name)s - %(levelname)s - %(message)s",
    "file": None,
}

# Run defaults for the command line
RUN_CONFIG = {
    "threads": 1,
    "format": "json",
    "json_indent": 2,
}

CORPUS_CONFIG_PATH = CONFIG_DIR / "corpus_config.json"


def _apply_env_overrides() -> None:
    """Apply MCLAB_BUDGET to the default check budget."""
    raw = os.environ.get("MCLAB_BUDGET")
    if not raw:
        return
    try:
        value = int(raw)
        if value <= 0:
            raise ValueError(raw)
        BUDGET_CONFIG["max_checks"] = value
    except ValueError:
        logger.warning(f"Ignoring invalid MCLAB_BUDGET value: {raw!r}")


_apply_env_overrides()


def get_config() -> Dict[str, Any]:
    """Get complete configuration dictionary."""
    return {
        "budget": BUDGET_CONFIG,
        "orientation": ORIENTATION_CONFIG,
        "compression": COMPRESSION_CONFIG,
        "logging": LOGGING_CONFIG,
        "run": RUN_CONFIG,
    }
