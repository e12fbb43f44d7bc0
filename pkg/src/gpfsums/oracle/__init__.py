"""
Oracle Package
"""

from .fitting import FitModel, fit_asymptote, terms_for_tolerance
from .partial_sums import PartialSumSeries, default_checkpoints, partial_sums
from .smooth import SmoothIdentityReport, smooth_identity_check

__all__ = [
    "FitModel",
    "fit_asymptote",
    "terms_for_tolerance",
    "PartialSumSeries",
    "default_checkpoints",
    "partial_sums",
    "SmoothIdentityReport",
    "smooth_identity_check",
]
