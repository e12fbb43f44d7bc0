# src/gpfsums/utils/validators.py
"""
Validation of command-line run configurations before any computation starts.
"""

import logging
from dataclasses import dataclass
from pathlib import Path
from typing import Optional

from ..bounds.mertens_check import BOUND_FAMILIES
from ..engine import MODE_ACCELERATED, MODE_RAW
from ..errors import ConfigurationError
from ..precision.rendering import MAX_DIGITS
from ..sieve.segmented import MAX_SEGMENT_SIZE, MIN_SEGMENT_SIZE


logger = logging.getLogger(__name__)

COMMANDS = ("sb", "sa", "oracle", "pz", "check-bounds", "self-test")
FORMATS = ("text", "structured")
MODE_FLAGS = {"raw": MODE_RAW, "accel": MODE_ACCELERATED, "accelerated": MODE_ACCELERATED}


@dataclass(frozen=True)
class RunConfig:
    command: str
    x: Optional[int] = None
    n: Optional[int] = None
    mode: str = MODE_ACCELERATED
    threads: int = 1
    segment_size: int = 2 ** 20
    checkpoint: Optional[Path] = None
    resume: bool = False
    output_format: str = "text"
    digits: int = MAX_DIGITS
    order: int = 2
    s: Optional[float] = None
    lo: Optional[int] = None
    hi: Optional[int] = None
    family: str = "tight"
    export: Optional[Path] = None


def validate_run_config(config: RunConfig) -> RunConfig:
    """
    Check flag combinations and ranges

    Raises:
        ConfigurationError: listing every problem found
    """
    problems = []

    if config.command not in COMMANDS:
        problems.append(f"unknown command {config.command!r}")
    if config.output_format not in FORMATS:
        problems.append(f"--format must be one of {FORMATS}")
    if config.threads < 1:
        problems.append(f"--threads must be >= 1, got {config.threads}")
    if config.segment_size & (config.segment_size - 1) or not (
        MIN_SEGMENT_SIZE <= config.segment_size <= MAX_SEGMENT_SIZE
    ):
        problems.append(
            f"--segment-size must be a power of two in [{MIN_SEGMENT_SIZE}, {MAX_SEGMENT_SIZE}]"
        )
    if not 1 <= config.digits <= MAX_DIGITS:
        problems.append(f"--digits must be in [1, {MAX_DIGITS}], got {config.digits}")
    if config.resume and config.checkpoint is None:
        problems.append("--resume needs --checkpoint")

    if config.command in ("sb", "sa"):
        if config.x is None:
            problems.append(f"{config.command} needs --x")
        elif config.x < 2:
            problems.append(f"--x must be >= 2, got {config.x}")
        if config.mode not in (MODE_RAW, MODE_ACCELERATED):
            problems.append(f"--mode must be raw or accel, got {config.mode!r}")
    elif config.command == "oracle":
        if config.n is None:
            problems.append("oracle needs --n")
        elif config.n < 1:
            problems.append(f"--n must be >= 1, got {config.n}")
    elif config.command == "pz":
        if config.order not in (0, 1, 2):
            problems.append(f"--order must be 0, 1 or 2, got {config.order}")
    elif config.command == "check-bounds":
        if config.lo is None or config.hi is None:
            problems.append("check-bounds needs --from and --to")
        if config.family not in BOUND_FAMILIES:
            problems.append(f"--family must be one of {sorted(BOUND_FAMILIES)}")

    if problems:
        logger.error(f"Invalid run configuration: {problems}")
        raise ConfigurationError("; ".join(problems))

    return config
