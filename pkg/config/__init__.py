"""
Run settings for the command line and runner script
"""

__version__ = "0.1.0"

from .settings import Settings, settings

__all__ = [
    "Settings",
    "settings",
]
