"""
Reference Package
"""

from .catalog import Comparison, ReferenceCatalog, last_digit_unit, to_fraction

__all__ = [
    "Comparison",
    "ReferenceCatalog",
    "last_digit_unit",
    "to_fraction",
]
