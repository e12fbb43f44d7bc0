"""
gpfsums Package

Certified enclosures of Sa = sum d(n)/(n G(n)) and Sb = sum 1/(n G(n)),
with G(n) the greatest prime factor of n.
"""

__version__ = "0.1.0"

from .engine import SeriesEngine, SumResult
from .pipeline import ComputationPipeline
from .zeta import derived_constants, prime_zeta_order

__all__ = [
    "SeriesEngine",
    "SumResult",
    "ComputationPipeline",
    "derived_constants",
    "prime_zeta_order",
]
