"""
Precision Package
"""

from .dd import DD, ONE, ZERO, dd_add, dd_sub, dd_mul, dd_div, dd_log1p, dd_from_mpf, dd_nudge
from .constants import CONSTANTS, Constants, constant_mpf
from .rendering import dd_to_decimal, common_prefix

__all__ = [
    "DD",
    "ONE",
    "ZERO",
    "dd_add",
    "dd_sub",
    "dd_mul",
    "dd_div",
    "dd_log1p",
    "dd_from_mpf",
    "dd_nudge",
    "dd_to_decimal",
    "common_prefix",
    "CONSTANTS",
    "Constants",
    "constant_mpf",
]
