# src/gpfsums/sieve/segmented.py
"""
Segmented sieve of Eratosthenes over odd numbers.
Streams primes of [lo, hi] segment by segment with memory bounded by the
segment size, independent of hi.
"""

import logging
import math
from dataclasses import dataclass
from typing import Callable, Iterator, Optional

import numpy as np
from numba import njit

from ..errors import ConfigurationError


logger = logging.getLogger(__name__)

MIN_SEGMENT_SIZE = 2 ** 16
MAX_SEGMENT_SIZE = 2 ** 26


@dataclass(frozen=True)
class SegmentPlan:
    """Inclusive prime range and odd-only bitmap bytes per segment"""

    lo: int
    hi: int
    segment_size: int = 2 ** 20

    def __post_init__(self):
        if self.lo < 2:
            raise ConfigurationError(f"Segment plan lo must be >= 2, got {self.lo}")
        if self.hi < self.lo:
            raise ConfigurationError(f"Segment plan needs lo <= hi, got [{self.lo}, {self.hi}]")
        size = self.segment_size
        if size & (size - 1) or not MIN_SEGMENT_SIZE <= size <= MAX_SEGMENT_SIZE:
            raise ConfigurationError(
                f"segment_size must be a power of two in [2**16, 2**26], got {size}"
            )


def base_primes(limit: int) -> np.ndarray:
    """All primes <= limit, ascending, as int64"""
    if limit < 2:
        return np.array([], dtype=np.int64)
    is_prime = np.ones(limit + 1, dtype=bool)
    is_prime[:2] = False
    for p in range(2, math.isqrt(limit) + 1):
        if is_prime[p]:
            is_prime[p * p::p] = False
    return np.flatnonzero(is_prime).astype(np.int64)


@njit(cache=True, nogil=True)
def _segment_primes(low, count, base):
    """Primes among the odd numbers low, low + 2, ..., low + 2 (count - 1)"""
    mask = np.ones(count, dtype=np.bool_)
    high = low + 2 * count
    if low == 1:
        mask[0] = False
    for j in range(base.shape[0]):
        p = base[j]
        if p == 2:
            continue
        p2 = p * p
        if p2 >= high:
            break
        start = max(p2, ((low + p - 1) // p) * p)
        if start % 2 == 0:
            start += p
        for m in range((start - low) // 2, count, p):
            mask[m] = False
    total = 0
    for i in range(count):
        if mask[i]:
            total += 1
    out = np.empty(total, dtype=np.int64)
    k = 0
    for i in range(count):
        if mask[i]:
            out[k] = low + 2 * i
            k += 1
    return out


def iter_segments(plan: SegmentPlan, base: Optional[np.ndarray] = None) -> Iterator[np.ndarray]:
    """
    Yield the primes of [plan.lo, plan.hi] as ascending int64 arrays

    Args:
        plan: validated segment plan
        base: primes up to isqrt(plan.hi); computed when omitted

    Yields:
        One array per segment (possibly empty), in ascending order
    """
    if base is None:
        base = base_primes(math.isqrt(plan.hi))

    low = plan.lo
    leading = None
    if low <= 2:
        leading = np.array([2], dtype=np.int64)
        low = 3
    if low % 2 == 0:
        low += 1

    while low <= plan.hi:
        count = min(plan.segment_size, (plan.hi - low) // 2 + 1)
        primes = _segment_primes(low, count, base)
        if leading is not None:
            primes = np.concatenate((leading, primes))
            leading = None
        yield primes
        low += 2 * count

    if leading is not None:
        yield leading


def for_each_prime(plan: SegmentPlan, visitor: Callable[[int], None]) -> int:
    """Call visitor once per prime in [plan.lo, plan.hi], ascending; return the count"""
    visited = 0
    for primes in iter_segments(plan):
        for p in primes.tolist():
            visitor(p)
        visited += len(primes)
    logger.debug(f"Visited {visited} primes in [{plan.lo}, {plan.hi}]")
    return visited


def primes_between(lo: int, hi: int, segment_size: int = 2 ** 20) -> np.ndarray:
    """All primes of [lo, hi] in one array (empty when hi < max(lo, 2))"""
    lo = max(lo, 2)
    if hi < lo:
        return np.array([], dtype=np.int64)
    chunks = list(iter_segments(SegmentPlan(lo, hi, segment_size)))
    return np.concatenate(chunks) if chunks else np.array([], dtype=np.int64)


def next_prime_after(n: int) -> int:
    """Smallest prime > n"""
    window = 1024
    lo = n + 1
    while True:
        found = primes_between(lo, lo + window)
        if len(found):
            return int(found[0])
        lo += window + 1
        window *= 2
