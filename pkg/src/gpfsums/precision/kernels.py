# src/gpfsums/precision/kernels.py
"""
Double-word (double-double) arithmetic kernels.

Every function works on plain binary64 scalars and returns (hi, lo)
tuples, so the same code runs from Python and inside the compiled
streaming loops. fastmath must stay off: the error-free transformations
rely on strict IEEE evaluation order.
"""

from numba import njit

# 2**27 + 1, exact in binary64
_SPLITTER = 134217729.0

LOG1P_MAX_ARG = 2.0 ** -10
_LOG1P_TOL = 2.0 ** -108


@njit(cache=True, nogil=True)
def two_sum(a, b):
    """s + err == a + b exactly"""
    s = a + b
    bb = s - a
    err = (a - (s - bb)) + (b - bb)
    return s, err


@njit(cache=True, nogil=True)
def quick_two_sum(a, b):
    """Requires |a| >= |b|"""
    s = a + b
    err = b - (s - a)
    return s, err


@njit(cache=True, nogil=True)
def split(a):
    c = _SPLITTER * a
    hi = c - (c - a)
    return hi, a - hi


@njit(cache=True, nogil=True)
def two_prod(a, b):
    """p + err == a * b exactly (Dekker)"""
    p = a * b
    ahi, alo = split(a)
    bhi, blo = split(b)
    err = ((ahi * bhi - p) + ahi * blo + alo * bhi) + alo * blo
    return p, err


@njit(cache=True, nogil=True)
def add_dd(ahi, alo, bhi, blo):
    s, e = two_sum(ahi, bhi)
    t, f = two_sum(alo, blo)
    e += t
    s, e = quick_two_sum(s, e)
    e += f
    return quick_two_sum(s, e)


@njit(cache=True, nogil=True)
def add_dd_d(ahi, alo, b):
    s, e = two_sum(ahi, b)
    e += alo
    return quick_two_sum(s, e)


@njit(cache=True, nogil=True)
def mul_dd(ahi, alo, bhi, blo):
    p, e = two_prod(ahi, bhi)
    e += ahi * blo + alo * bhi
    return quick_two_sum(p, e)


@njit(cache=True, nogil=True)
def mul_dd_d(ahi, alo, b):
    p, e = two_prod(ahi, b)
    e += alo * b
    return quick_two_sum(p, e)


@njit(cache=True, nogil=True)
def div_dd(ahi, alo, bhi, blo):
    # three-step long division; raises ZeroDivisionError on bhi == 0
    q1 = ahi / bhi
    phi, plo = mul_dd_d(bhi, blo, q1)
    rhi, rlo = add_dd(ahi, alo, -phi, -plo)
    q2 = rhi / bhi
    phi, plo = mul_dd_d(bhi, blo, q2)
    rhi, rlo = add_dd(rhi, rlo, -phi, -plo)
    q3 = rhi / bhi
    q1, q2 = quick_two_sum(q1, q2)
    return add_dd_d(q1, q2, q3)


@njit(cache=True, nogil=True)
def div_dd_d(ahi, alo, b):
    return div_dd(ahi, alo, b, 0.0)


@njit(cache=True, nogil=True)
def log1p_dd(rhi, rlo):
    """
    ln(1 + r) for |r| <= 2**-10 by the alternating Mercator series.

    The series is cut once the first omitted term drops below 2**-108
    of the running sum; for an alternating series with decreasing terms
    that term bounds the truncation error.
    """
    if abs(rhi) > LOG1P_MAX_ARG:
        raise ValueError("log1p argument outside |r| <= 2**-10")
    if rhi == 0.0:
        return 0.0, 0.0
    shi, slo = rhi, rlo
    phi, plo = rhi, rlo
    k = 1
    while True:
        k += 1
        phi, plo = mul_dd(phi, plo, rhi, rlo)
        thi, tlo = div_dd_d(phi, plo, float(k))
        if k % 2 == 0:
            shi, slo = add_dd(shi, slo, -thi, -tlo)
        else:
            shi, slo = add_dd(shi, slo, thi, tlo)
        if abs(phi * rhi) / (k + 1) <= _LOG1P_TOL * abs(shi):
            break
    return shi, slo
