# src/gpfsums/engine/remainders.py
"""
Explicit remainder bounds for the accelerated series and the prime tail
estimate behind them. All evaluations use mpmath interval arithmetic and
the endpoints are rounded outward to double-word.
"""

import logging
from dataclasses import dataclass

import mpmath
from mpmath import iv

from ..errors import PreconditionError
from ..precision import DD, dd_from_mpf


logger = logging.getLogger(__name__)

VALIDITY_THRESHOLD = 51841229
TAIL_LEMMA_THRESHOLD = 5 * 10 ** 7

# (lower, upper) numerators over x ln^3 x and x ln^2 x
RB_COEFFS = ("-0.034", "0.1")
RA_COEFFS = ("-0.24", "0.72")


@dataclass(frozen=True)
class Interval:
    """Closed interval [lo, hi] with double-word endpoints"""

    lo: DD
    hi: DD

    def __post_init__(self):
        if float(self.lo) > float(self.hi):
            raise ValueError(f"Interval endpoints out of order: {self.lo} > {self.hi}")

    @property
    def width(self) -> DD:
        return self.hi - self.lo

    def contains(self, value) -> bool:
        value = DD.of(value)
        return (self.lo.to_fraction() <= value.to_fraction() <= self.hi.to_fraction())


def _lower(v) -> DD:
    return dd_from_mpf(mpmath.mpf(v.a), rounding="d")


def _upper(v) -> DD:
    return dd_from_mpf(mpmath.mpf(v.b), rounding="u")


def _require_threshold(x: int, threshold: int, what: str):
    if x < threshold:
        logger.error(f"{what} requested at x = {x} below {threshold}")
        raise PreconditionError(
            f"{what} holds only for x >= {threshold}; got x = {x}. "
            f"No unproven bound is emitted."
        )


def _remainder(x: int, coeffs, log_power: int) -> Interval:
    X = iv.mpf(x)
    scale = X * iv.log(X) ** log_power
    return Interval(
        lo=_lower(iv.mpf(coeffs[0]) / scale),
        hi=_upper(iv.mpf(coeffs[1]) / scale),
    )


def rb_bounds(x: int) -> Interval:
    """Interval holding the Sb remainder: (-0.034, 0.1) / (x ln^3 x)"""
    _require_threshold(x, VALIDITY_THRESHOLD, "The Sb remainder bound")
    return _remainder(x, RB_COEFFS, 3)


def ra_bounds(x: int) -> Interval:
    """Interval holding the Sa remainder: (-0.24, 0.72) / (x ln^2 x)"""
    _require_threshold(x, VALIDITY_THRESHOLD, "The Sa remainder bound")
    return _remainder(x, RA_COEFFS, 2)


def tail_lemma(x: int, m: float) -> DD:
    """
    Upper bound for sum_{p > x} 1/(p^2 ln^m p)

        1/(x ln^(m+1) x) * {1 - (m+1)/ln x + ((m+3/2)/ln x)^2}

    valid for x >= 5e7 and m > 0, rounded upward.
    """
    if m <= 0:
        raise PreconditionError(f"tail_lemma needs m > 0, got m = {m}")
    _require_threshold(x, TAIL_LEMMA_THRESHOLD, "The prime tail lemma")
    X = iv.mpf(x)
    M = iv.mpf(m)
    L = iv.log(X)
    bracket = 1 - (M + 1) / L + ((M + iv.mpf("1.5")) / L) ** 2
    return _upper(bracket / (X * L ** (M + 1)))
