"""
Source package for the gpf-sums project
"""

__version__ = "0.1.0"

__all__ = []
