# config/settings.py
"""
Configuration management for the gpf-sums project.
This is project-specific configuration, not part of the installable package.
"""

import os
from pathlib import Path
from dotenv import load_dotenv

# Load environment variables from .env file
load_dotenv()


def _int_env(name: str, default: str):
    raw = os.getenv(name, default)
    try:
        return int(raw)
    except ValueError:
        return raw


class Settings:
    """Project settings; GPFSUMS_THREADS is the only value read from the environment"""

    # Workers
    THREADS = _int_env("GPFSUMS_THREADS", "1")

    # Prime stream
    SEGMENT_SIZE = 2 ** 20
    BLOCK_SPAN = 2 ** 24
    ANCHOR_INTERVAL = 2 ** 20
    CHECKPOINT_EVERY = 1

    # Oracle tables
    ORACLE_MAX_N = 10 ** 7
    ORACLE_BLOCK_SIZE = 10 ** 7
    ORACLE_MEMORY_CAP_BYTES = 512 * 2 ** 20

    # Prime zeta
    PRIME_ZETA_SPLIT = 1000
    PRIME_ZETA_K_MAX = 60

    # Bounds checker
    BOUNDS_CAP = 10 ** 9

    # Output
    DEFAULT_DIGITS = 31

    # Paths
    PROJECT_ROOT = Path(__file__).parent.parent
    REFERENCE_DIR = PROJECT_ROOT / "config" / "reference"

    @classmethod
    def validate(cls):
        """Validate settings"""
        invalid = []

        if not isinstance(cls.THREADS, int) or cls.THREADS < 1:
            invalid.append("GPFSUMS_THREADS")

        if cls.SEGMENT_SIZE & (cls.SEGMENT_SIZE - 1) or not 2 ** 16 <= cls.SEGMENT_SIZE <= 2 ** 26:
            invalid.append("SEGMENT_SIZE")

        if cls.BLOCK_SPAN & (cls.BLOCK_SPAN - 1) or cls.BLOCK_SPAN < 2 ** 10:
            invalid.append("BLOCK_SPAN")

        positive = [
            "ANCHOR_INTERVAL",
            "CHECKPOINT_EVERY",
            "ORACLE_MAX_N",
            "ORACLE_BLOCK_SIZE",
            "ORACLE_MEMORY_CAP_BYTES",
            "PRIME_ZETA_K_MAX",
            "BOUNDS_CAP",
        ]
        invalid.extend(key for key in positive if getattr(cls, key) < 1)

        if cls.PRIME_ZETA_SPLIT < 2:
            invalid.append("PRIME_ZETA_SPLIT")

        if not 1 <= cls.DEFAULT_DIGITS <= 31:
            invalid.append("DEFAULT_DIGITS")

        if invalid:
            raise ValueError(f"Invalid settings: {invalid}")

        return True


# Create global settings instance
settings = Settings()
