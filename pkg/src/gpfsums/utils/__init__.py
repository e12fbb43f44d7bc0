"""
Utils Package
"""

from .logger import setup_logging
from .validators import RunConfig, validate_run_config

__all__ = [
    "setup_logging",
    "RunConfig",
    "validate_run_config",
]
