# src/gpfsums/utils/logger.py
"""
Logging setup for the command line.
Progress goes to stderr so structured reports on stdout stay parseable.
"""

import logging
import sys

LOG_FORMAT = "%(asctime)s - %(name)s - %(levelname)s - %(message)s"


def setup_logging(level: int = logging.INFO):
    """Setup basic logging"""
    logging.basicConfig(
        level=level,
        format=LOG_FORMAT,
        handlers=[
            logging.StreamHandler(sys.stderr)
        ],
        force=True,
    )
    # numba's compiler logs at DEBUG through the root handler
    logging.getLogger("numba").setLevel(max(level, logging.WARNING))
