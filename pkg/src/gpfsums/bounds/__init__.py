"""
Bounds Package
"""

from .mertens_check import (
    BOUND_FAMILIES,
    BoundFamily,
    BoundsReport,
    MertensBoundsChecker,
    check_mertens_bounds,
    margin_at,
    theta,
)

__all__ = [
    "BOUND_FAMILIES",
    "BoundFamily",
    "BoundsReport",
    "MertensBoundsChecker",
    "check_mertens_bounds",
    "margin_at",
    "theta",
]
