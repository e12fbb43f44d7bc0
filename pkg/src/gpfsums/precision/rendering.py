# src/gpfsums/precision/rendering.py
"""
Correctly rounded decimal rendering of double-word values.
"""

import math
from fractions import Fraction

from ..errors import PrecisionError, PreconditionError
from .dd import DD

MAX_DIGITS = 31


def _decimal_exponent(value: Fraction) -> int:
    """floor(log10(value)) for value > 0, exact"""
    e = math.floor(math.log10(float(value))) if float(value) > 0 else -400
    while Fraction(10) ** e > value:
        e -= 1
    while Fraction(10) ** (e + 1) <= value:
        e += 1
    return e


def dd_to_decimal(x: DD, digits: int) -> str:
    """
    Render hi + lo to `digits` significant digits, round half to even.

    The exact rational value of both words is scaled by a power of ten
    and rounded once, so no double rounding reaches the output.
    """
    if not 1 <= digits <= MAX_DIGITS:
        raise PreconditionError(f"digits must be in [1, {MAX_DIGITS}], got {digits}")
    if not x.is_finite():
        raise PrecisionError(f"Cannot render non-finite value {x}")

    value = Fraction(x.hi) + Fraction(x.lo)
    if value == 0:
        return "0." + "0" * (digits - 1) if digits > 1 else "0"
    sign = "-" if value < 0 else ""
    value = abs(value)

    e = _decimal_exponent(value)
    scaled = value * Fraction(10) ** (digits - 1 - e)
    q, r = divmod(scaled.numerator, scaled.denominator)
    if 2 * r > scaled.denominator or (2 * r == scaled.denominator and q % 2 == 1):
        q += 1
    if q == 10 ** digits:
        q //= 10
        e += 1

    text = str(q)
    if e >= 0:
        if e + 1 >= digits:
            body = text + "0" * (e + 1 - digits)
        else:
            body = text[: e + 1] + "." + text[e + 1:]
    else:
        body = "0." + "0" * (-e - 1) + text
    return sign + body


def common_prefix(lo_text: str, hi_text: str) -> str:
    """Longest shared leading run of two renderings, without a dangling point"""
    shared = []
    for a, b in zip(lo_text, hi_text):
        if a != b:
            break
        shared.append(a)
    prefix = "".join(shared)
    return prefix[:-1] if prefix.endswith(".") else prefix
