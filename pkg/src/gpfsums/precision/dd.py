# src/gpfsums/precision/dd.py
"""
Double-word value type and its Python-level operations.
"""

import math
import struct
from fractions import Fraction
from typing import NamedTuple, Tuple, Union

import mpmath

from ..errors import PrecisionError, PreconditionError
from . import kernels


Number = Union["DD", int, float, Fraction, str]


class DD(NamedTuple):
    """Unevaluated sum hi + lo with |lo| <= ulp(hi)/2"""

    hi: float
    lo: float = 0.0

    @classmethod
    def of(cls, value: Number) -> "DD":
        """Nearest double-word value to an int, float, Fraction or decimal string"""
        if isinstance(value, DD):
            return value
        if isinstance(value, float):
            return cls(value, 0.0)
        if isinstance(value, str):
            value = Fraction(value)
        if isinstance(value, int):
            value = Fraction(value)
        if isinstance(value, Fraction):
            hi = float(value)
            lo = float(value - Fraction(hi))
            return cls(*kernels.quick_two_sum(hi, lo))
        if isinstance(value, mpmath.mpf):
            return dd_from_mpf(value)
        raise TypeError(f"Cannot convert {type(value).__name__} to DD")

    def __add__(self, other: Number) -> "DD":
        return dd_add(self, DD.of(other))

    def __radd__(self, other: Number) -> "DD":
        return dd_add(DD.of(other), self)

    def __sub__(self, other: Number) -> "DD":
        return dd_sub(self, DD.of(other))

    def __rsub__(self, other: Number) -> "DD":
        return dd_sub(DD.of(other), self)

    def __mul__(self, other: Number) -> "DD":
        return dd_mul(self, DD.of(other))

    def __rmul__(self, other: Number) -> "DD":
        return dd_mul(DD.of(other), self)

    def __truediv__(self, other: Number) -> "DD":
        return dd_div(self, DD.of(other))

    def __rtruediv__(self, other: Number) -> "DD":
        return dd_div(DD.of(other), self)

    def __neg__(self) -> "DD":
        return DD(-self.hi, -self.lo)

    def __abs__(self) -> "DD":
        return -self if self.hi < 0 else self

    def __float__(self) -> float:
        return self.hi + self.lo

    def to_fraction(self) -> Fraction:
        return Fraction(self.hi) + Fraction(self.lo)

    def to_mpf(self, ctx=None) -> mpmath.mpf:
        # exact: hi and lo are both binary64
        ctx = ctx or mpmath.mp
        with ctx.workprec(2200):
            return ctx.mpf(self.hi) + ctx.mpf(self.lo)

    def hex(self) -> Tuple[str, str]:
        """Lowercase big-endian binary64 bit patterns of (hi, lo)"""
        return (struct.pack(">d", self.hi).hex(), struct.pack(">d", self.lo).hex())

    @classmethod
    def from_hex(cls, pair) -> "DD":
        hi_text, lo_text = pair
        return cls(
            struct.unpack(">d", bytes.fromhex(hi_text))[0],
            struct.unpack(">d", bytes.fromhex(lo_text))[0],
        )

    def is_finite(self) -> bool:
        return math.isfinite(self.hi) and math.isfinite(self.lo)

    def is_normalized(self) -> bool:
        if not self.is_finite():
            return False
        if self.hi == 0.0:
            return self.lo == 0.0
        return abs(self.lo) <= math.ulp(self.hi) / 2 and self.hi + self.lo == self.hi


ZERO = DD(0.0, 0.0)
ONE = DD(1.0, 0.0)


def _checked(pair, op: str) -> DD:
    result = DD(*pair)
    if not result.is_finite():
        raise PrecisionError(f"{op} produced a non-finite value {result}")
    return result


def dd_add(a: DD, b: DD) -> DD:
    return _checked(kernels.add_dd(a.hi, a.lo, b.hi, b.lo), "dd_add")


def dd_sub(a: DD, b: DD) -> DD:
    return _checked(kernels.add_dd(a.hi, a.lo, -b.hi, -b.lo), "dd_sub")


def dd_mul(a: DD, b: DD) -> DD:
    return _checked(kernels.mul_dd(a.hi, a.lo, b.hi, b.lo), "dd_mul")


def dd_div(a: DD, b: DD) -> DD:
    try:
        pair = kernels.div_dd(a.hi, a.lo, b.hi, b.lo)
    except ZeroDivisionError as e:
        raise PrecisionError(f"dd_div by zero: {a} / {b}") from e
    return _checked(pair, "dd_div")


def dd_log1p(r: DD) -> DD:
    """ln(1 + r) for |r| <= 2**-10, relative error below 1e-30"""
    if abs(r.hi) > kernels.LOG1P_MAX_ARG:
        raise PreconditionError(f"dd_log1p argument {r.hi!r} exceeds 2**-10")
    return _checked(kernels.log1p_dd(r.hi, r.lo), "dd_log1p")


def dd_from_mpf(x, rounding: str = "n", ctx=None) -> DD:
    """
    Round an mpmath value to double-word.

    Args:
        x: mpf (or anything mpmath.mpf accepts)
        rounding: 'n' nearest, 'd' toward -inf, 'u' toward +inf
        ctx: mpmath context to work in (default mpmath.mp)

    Returns:
        DD value; for 'd'/'u' the result is guaranteed on the requested side
    """
    if rounding not in ("n", "d", "u"):
        raise ValueError(f"Unknown rounding mode: {rounding}")
    ctx = ctx or mpmath.mp
    with ctx.workprec(max(ctx.prec, 2200)):
        x = ctx.mpf(x)
        if not ctx.isfinite(x):
            raise PrecisionError(f"Cannot round non-finite value {x} to DD")
        hi = float(x)
        lo = float(x - hi)
        hi, lo = kernels.quick_two_sum(hi, lo)
        value = DD(hi, lo)
        if rounding == "d" and value.to_mpf(ctx) > x:
            value = DD(hi, math.nextafter(lo, -math.inf))
        elif rounding == "u" and value.to_mpf(ctx) < x:
            value = DD(hi, math.nextafter(lo, math.inf))
    return value


def dd_nudge(x: DD, direction: int) -> DD:
    """Move x outward by one ulp of its low word (direction -1 or +1)"""
    target = math.inf if direction > 0 else -math.inf
    return DD(*kernels.quick_two_sum(x.hi, math.nextafter(x.lo, target)))
