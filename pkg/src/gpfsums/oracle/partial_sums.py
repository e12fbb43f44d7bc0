# src/gpfsums/oracle/partial_sums.py
"""
Brute-force partial sums

    Sb_n = sum_{k<=n} 1/(k G(k)),    Sa_n = sum_{k<=n} d(k)/(k G(k))

from greatest-prime-factor and divisor-count tables built block by block.
"""

import logging
from dataclasses import dataclass, field
from typing import Iterable, List, Optional, Tuple

import numpy as np
import pandas as pd
from numba import njit

from ..errors import OracleMemoryError, PreconditionError
from ..precision import DD, dd_to_decimal
from ..precision.kernels import add_dd, div_dd_d, mul_dd_d
from ..sieve import divisor_count_block, gpf_block, primes_between
from ..sieve.tables import DEFAULT_MEMORY_CAP_BYTES


logger = logging.getLogger(__name__)

DEFAULT_MAX_N = 10 ** 7
DEFAULT_BLOCK_SIZE = 10 ** 7
MAX_BLOCKWISE_N = 10 ** 8
_BYTES_PER_N = 8


@njit(cache=True, nogil=True)
def _accumulate(a, gpf, dcount, sums, marks, out, next_mark):
    """
    Add the terms n = a .. a + len(gpf) - 1 to sums = [sb_hi, sb_lo, sa_hi, sa_lo],
    copying the running sums into out[j] whenever n reaches marks[j].
    """
    sb_hi, sb_lo, sa_hi, sa_lo = sums[0], sums[1], sums[2], sums[3]
    for i in range(gpf.shape[0]):
        n = a + i
        # n G(n) can exceed 2**53; divide twice
        t_hi, t_lo = div_dd_d(1.0, 0.0, float(n))
        t_hi, t_lo = div_dd_d(t_hi, t_lo, float(gpf[i]))
        sb_hi, sb_lo = add_dd(sb_hi, sb_lo, t_hi, t_lo)
        t_hi, t_lo = mul_dd_d(t_hi, t_lo, float(dcount[i]))
        sa_hi, sa_lo = add_dd(sa_hi, sa_lo, t_hi, t_lo)
        while next_mark < marks.shape[0] and marks[next_mark] == n:
            out[next_mark, 0] = sb_hi
            out[next_mark, 1] = sb_lo
            out[next_mark, 2] = sa_hi
            out[next_mark, 3] = sa_lo
            next_mark += 1
    sums[0] = sb_hi
    sums[1] = sb_lo
    sums[2] = sa_hi
    sums[3] = sa_lo
    return next_mark


@dataclass
class PartialSumSeries:
    """(n, Sa_n, Sb_n) at the requested checkpoints"""

    n_max: int
    checkpoints: List[Tuple[int, DD, DD]] = field(default_factory=list)

    def row(self, n: int) -> Tuple[DD, DD]:
        for m, sa, sb in self.checkpoints:
            if m == n:
                return sa, sb
        raise KeyError(f"No checkpoint at n = {n}")

    def to_frame(self, digits: int = 20) -> pd.DataFrame:
        return pd.DataFrame(
            {
                "n": [n for n, _, _ in self.checkpoints],
                "sa": [float(sa) for _, sa, _ in self.checkpoints],
                "sb": [float(sb) for _, _, sb in self.checkpoints],
                "sa_decimal": [dd_to_decimal(sa, digits) for _, sa, _ in self.checkpoints],
                "sb_decimal": [dd_to_decimal(sb, digits) for _, _, sb in self.checkpoints],
                "sa_hex": [" ".join(sa.hex()) for _, sa, _ in self.checkpoints],
                "sb_hex": [" ".join(sb.hex()) for _, _, sb in self.checkpoints],
            }
        )


def default_checkpoints(n_max: int) -> List[int]:
    """Powers of ten up to n_max, plus n_max itself"""
    marks = []
    n = 10
    while n <= n_max:
        marks.append(n)
        n *= 10
    if not marks or marks[-1] != n_max:
        marks.append(n_max)
    return marks


def partial_sums(
    n_max: int,
    checkpoints: Optional[Iterable[int]] = None,
    block_size: int = DEFAULT_BLOCK_SIZE,
    max_n: int = DEFAULT_MAX_N,
    memory_cap_bytes: int = DEFAULT_MEMORY_CAP_BYTES,
) -> PartialSumSeries:
    """
    Direct partial sums of both series up to n_max

    Args:
        n_max: last term index
        checkpoints: n values to record (default: powers of ten and n_max)
        block_size: table entries built per block
        max_n: configured cap on n_max (at most 10**8)
        memory_cap_bytes: cap on the per-block table memory

    Returns:
        PartialSumSeries with one row per checkpoint, ascending in n

    Raises:
        OracleMemoryError: n_max above max_n or a block above the memory cap
    """
    if n_max < 1:
        raise PreconditionError(f"partial_sums needs N >= 1, got {n_max}")
    if n_max > min(max_n, MAX_BLOCKWISE_N):
        logger.error(f"Oracle N = {n_max} exceeds the cap {min(max_n, MAX_BLOCKWISE_N)}")
        raise OracleMemoryError(
            f"oracle N = {n_max} exceeds the configured cap {min(max_n, MAX_BLOCKWISE_N)}",
            advisory="raise ORACLE_MAX_N (block-wise sums reach 10**8) or use the streaming engine",
        )
    block = min(block_size, n_max)
    if block * _BYTES_PER_N > memory_cap_bytes:
        raise OracleMemoryError(
            f"oracle block of {block} entries needs {block * _BYTES_PER_N} bytes, cap is {memory_cap_bytes}",
            advisory="lower ORACLE_BLOCK_SIZE",
        )

    marks = sorted(set(default_checkpoints(n_max) if checkpoints is None else checkpoints))
    if marks and (marks[0] < 1 or marks[-1] > n_max):
        raise PreconditionError(f"checkpoints must lie in [1, {n_max}], got {marks[0]}..{marks[-1]}")
    marks_arr = np.array(marks, dtype=np.int64)
    out = np.zeros((len(marks), 4))
    sums = np.zeros(4)
    next_mark = 0

    primes = primes_between(2, n_max)
    for a in range(1, n_max + 1, block):
        b = min(a + block - 1, n_max)
        gpf = gpf_block(a, b, primes)
        dcount = divisor_count_block(a, b)
        next_mark = _accumulate(a, gpf, dcount, sums, marks_arr, out, next_mark)
        logger.info(f"Oracle block [{a}, {b}] done")

    series = PartialSumSeries(
        n_max=n_max,
        checkpoints=[
            (n, DD(float(out[j, 2]), float(out[j, 3])), DD(float(out[j, 0]), float(out[j, 1])))
            for j, n in enumerate(marks)
        ],
    )
    return series
