# src/gpfsums/sieve/tables.py
"""
Greatest-prime-factor and divisor-count tables for the brute-force oracle.
"""

import logging
import math
from dataclasses import dataclass

import numpy as np
from numba import njit

from ..errors import OracleMemoryError, PreconditionError
from .segmented import primes_between


logger = logging.getLogger(__name__)

_ENTRY_BYTES = 4
DEFAULT_MEMORY_CAP_BYTES = 512 * 2 ** 20


@dataclass
class OracleTables:
    """gpf[n] and dcount[n] for 1 <= n <= N; index 0 is unused"""

    gpf: np.ndarray
    dcount: np.ndarray

    @property
    def n_max(self) -> int:
        return len(self.gpf) - 1


def _check_budget(entries: int, memory_cap_bytes: int, what: str):
    needed = entries * _ENTRY_BYTES
    if needed > memory_cap_bytes:
        raise OracleMemoryError(
            f"{what} for {entries - 1} entries needs {needed} bytes, cap is {memory_cap_bytes}",
            advisory="use the block-wise partial sums or raise ORACLE_MEMORY_CAP_BYTES",
        )


@njit(cache=True, nogil=True)
def _fill_gpf(a, b, primes):
    gpf = np.zeros(b - a + 1, dtype=np.uint32)
    if a == 1:
        gpf[0] = 1
    # ascending primes: the last writer is the largest prime factor
    for j in range(primes.shape[0]):
        p = primes[j]
        start = ((a + p - 1) // p) * p
        for m in range(start, b + 1, p):
            gpf[m - a] = p
    return gpf


@njit(cache=True, nogil=True)
def _fill_dcount_harmonic(n_max):
    dcount = np.zeros(n_max + 1, dtype=np.uint32)
    for d in range(1, n_max + 1):
        for m in range(d, n_max + 1, d):
            dcount[m] += 1
    return dcount


@njit(cache=True, nogil=True)
def _fill_dcount_pairs(a, b, root):
    # each divisor pair d < e of m contributes 2, a square root 1
    dcount = np.zeros(b - a + 1, dtype=np.uint32)
    for d in range(1, root + 1):
        first = max(d * d, ((a + d - 1) // d) * d)
        for m in range(first, b + 1, d):
            if m // d == d:
                dcount[m - a] += 1
            else:
                dcount[m - a] += 2
    return dcount


def gpf_block(a: int, b: int, primes: np.ndarray = None) -> np.ndarray:
    """G(n) for a <= n <= b; primes must cover [2, b] when given"""
    if a < 1 or b < a:
        raise PreconditionError(f"gpf block needs 1 <= a <= b, got [{a}, {b}]")
    if primes is None:
        primes = primes_between(2, b)
    return _fill_gpf(a, b, primes[primes <= b])


def divisor_count_block(a: int, b: int) -> np.ndarray:
    """d(n) for a <= n <= b"""
    if a < 1 or b < a:
        raise PreconditionError(f"divisor block needs 1 <= a <= b, got [{a}, {b}]")
    return _fill_dcount_pairs(a, b, math.isqrt(b))


def gpf_table(n_max: int, memory_cap_bytes: int = DEFAULT_MEMORY_CAP_BYTES) -> np.ndarray:
    """
    Greatest prime factor of every n <= n_max

    Returns:
        uint32 array of length n_max + 1 with gpf[0] = 0 and gpf[1] = 1
    """
    if n_max < 1:
        raise PreconditionError(f"gpf_table needs N >= 1, got {n_max}")
    _check_budget(n_max + 1, memory_cap_bytes, "gpf table")
    table = np.zeros(n_max + 1, dtype=np.uint32)
    table[1:] = gpf_block(1, n_max)
    logger.info(f"Built gpf table up to {n_max}")
    return table


def divisor_count_table(n_max: int, memory_cap_bytes: int = DEFAULT_MEMORY_CAP_BYTES) -> np.ndarray:
    """Divisor counts by harmonic increments; dcount[0] = 0"""
    if n_max < 1:
        raise PreconditionError(f"divisor_count_table needs N >= 1, got {n_max}")
    _check_budget(n_max + 1, memory_cap_bytes, "divisor-count table")
    table = _fill_dcount_harmonic(n_max)
    logger.info(f"Built divisor-count table up to {n_max}")
    return table


def oracle_tables(n_max: int, memory_cap_bytes: int = DEFAULT_MEMORY_CAP_BYTES) -> OracleTables:
    _check_budget(2 * (n_max + 1), memory_cap_bytes, "oracle tables")
    return OracleTables(
        gpf=gpf_table(n_max, memory_cap_bytes),
        dcount=divisor_count_table(n_max, memory_cap_bytes),
    )
