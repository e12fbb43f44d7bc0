# src/gpfsums/engine/stream.py
"""
Block-wise prime stream.

The range [2, x] is cut into fixed value blocks of `block_span` integers.
Each block is scanned on its own, with the Mertens product restarted at 1,
so blocks can run on any worker and in any grouping of sieve segments;
the caller scales the block sums by the exact prefix product and reduces
them in block order.

Per block the scan collects, for every prime p in the block,

    P(p)  = prod_{block start <= p' <= p} p'/(p'-1)
    A     = sum P(p)/p^2                 L  = sum ln p/p^2
    A2    = sum w(p) P(p)^2              L2 = sum w(p) ln^2 p
    theta = sum ln p

with w(p) = (2 - 1/p)/p^2, all in double-word arithmetic. ln p is carried
from prime to prime by log1p of the relative gap and re-anchored from an
extended-precision logarithm at the block start, after `anchor_interval`
increments, and whenever the relative gap exceeds 2**-10.
"""

import itertools
import logging
import math
import threading
from collections import deque
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Callable, Iterable, Iterator, Optional, Tuple, TypeVar

import numpy as np
from mpmath.ctx_mp import MPContext
from numba import njit

from ..precision import DD, dd_from_mpf
from ..precision.kernels import add_dd, div_dd, div_dd_d, log1p_dd, mul_dd, mul_dd_d, two_prod
from ..sieve import SegmentPlan, base_primes, iter_segments


logger = logging.getLogger(__name__)

BLOCK_SPAN = 2 ** 24
ANCHOR_INTERVAL = 2 ** 20
LN_DRIFT_TOLERANCE = 1e-28

LEVEL_PRODUCT = 0
LEVEL_SB = 1
LEVEL_SA = 2

_ANCHOR_BITS = 160

# state_f slots
_PROD_HI, _PROD_LO, _LN_HI, _LN_LO = range(4)
# state_i slots
_P_LAST, _COUNT, _LN_READY, _SINCE = range(4)
# acc slots, (hi, lo) pairs
_A, _L, _A2, _L2, _THETA = 0, 2, 4, 6, 8


@njit(cache=True, nogil=True)
def _scan(primes, start, state_f, state_i, acc, level, anchor_interval):
    """
    Consume primes[start:] into the block state.

    Returns the index of the first prime not consumed: len(primes) when
    done, otherwise a prime whose logarithm must be anchored first.
    """
    n = primes.shape[0]
    prod_hi = state_f[_PROD_HI]
    prod_lo = state_f[_PROD_LO]
    ln_hi = state_f[_LN_HI]
    ln_lo = state_f[_LN_LO]
    a_hi = acc[_A]
    a_lo = acc[_A + 1]
    l_hi = acc[_L]
    l_lo = acc[_L + 1]
    a2_hi = acc[_A2]
    a2_lo = acc[_A2 + 1]
    l2_hi = acc[_L2]
    l2_lo = acc[_L2 + 1]
    th_hi = acc[_THETA]
    th_lo = acc[_THETA + 1]

    i = start
    while i < n:
        p = primes[i]
        fp = float(p)
        if level > 0:
            if state_i[_LN_READY] == 0:
                p_last = state_i[_P_LAST]
                if p_last == 0 or state_i[_SINCE] >= anchor_interval or (p - p_last) * 1024 > p_last:
                    break
                r_hi, r_lo = div_dd_d(float(p - p_last), 0.0, float(p_last))
                d_hi, d_lo = log1p_dd(r_hi, r_lo)
                ln_hi, ln_lo = add_dd(ln_hi, ln_lo, d_hi, d_lo)
                state_i[_SINCE] += 1
            state_i[_LN_READY] = 0

        t_hi, t_lo = mul_dd_d(prod_hi, prod_lo, fp)
        prod_hi, prod_lo = div_dd_d(t_hi, t_lo, fp - 1.0)

        if level > 0:
            sq_hi, sq_lo = two_prod(fp, fp)
            t_hi, t_lo = div_dd(prod_hi, prod_lo, sq_hi, sq_lo)
            a_hi, a_lo = add_dd(a_hi, a_lo, t_hi, t_lo)
            t_hi, t_lo = div_dd(ln_hi, ln_lo, sq_hi, sq_lo)
            l_hi, l_lo = add_dd(l_hi, l_lo, t_hi, t_lo)
            th_hi, th_lo = add_dd(th_hi, th_lo, ln_hi, ln_lo)
            if level > 1:
                # 2p - 1 is exact in binary64 for every p reached here
                w_hi, w_lo = div_dd(2.0 * fp - 1.0, 0.0, sq_hi, sq_lo)
                w_hi, w_lo = div_dd_d(w_hi, w_lo, fp)
                m_hi, m_lo = mul_dd(prod_hi, prod_lo, prod_hi, prod_lo)
                t_hi, t_lo = mul_dd(w_hi, w_lo, m_hi, m_lo)
                a2_hi, a2_lo = add_dd(a2_hi, a2_lo, t_hi, t_lo)
                m_hi, m_lo = mul_dd(ln_hi, ln_lo, ln_hi, ln_lo)
                t_hi, t_lo = mul_dd(w_hi, w_lo, m_hi, m_lo)
                l2_hi, l2_lo = add_dd(l2_hi, l2_lo, t_hi, t_lo)

        state_i[_P_LAST] = p
        state_i[_COUNT] += 1
        i += 1

    state_f[_PROD_HI] = prod_hi
    state_f[_PROD_LO] = prod_lo
    state_f[_LN_HI] = ln_hi
    state_f[_LN_LO] = ln_lo
    acc[_A] = a_hi
    acc[_A + 1] = a_lo
    acc[_L] = l_hi
    acc[_L + 1] = l_lo
    acc[_A2] = a2_hi
    acc[_A2 + 1] = a2_lo
    acc[_L2] = l2_hi
    acc[_L2 + 1] = l2_lo
    acc[_THETA] = th_hi
    acc[_THETA + 1] = th_lo
    return i


@dataclass(frozen=True)
class BlockTotals:
    """Sums of one value block, relative to a product of 1 at the block start"""

    index: int
    lo: int
    hi: int
    primes: int
    last_prime: int
    product: DD
    ln_last: DD
    since_anchor: int
    a: DD
    l: DD
    a2: DD
    l2: DD
    theta: DD
    anchors: int
    max_ln_drift: float


def block_count(x: int, block_span: int = BLOCK_SPAN) -> int:
    return (x + block_span - 1) // block_span


def block_bounds(index: int, x: int, block_span: int = BLOCK_SPAN) -> Tuple[int, int]:
    """Inclusive integer range of block `index` clipped to [2, x]"""
    lo = max(2, index * block_span + 1)
    hi = min(x, (index + 1) * block_span)
    return lo, hi


def block_of(n: int, block_span: int = BLOCK_SPAN) -> int:
    return max(0, (n - 1) // block_span)


_contexts = threading.local()


def _anchor_context() -> MPContext:
    """mpmath context private to the calling thread"""
    ctx = getattr(_contexts, "ctx", None)
    if ctx is None:
        ctx = _contexts.ctx = MPContext()
    ctx.prec = _ANCHOR_BITS
    return ctx


class _AnchorAudit:
    def __init__(self):
        self.anchors = 0
        self.max_drift = 0.0
        self.ctx = _anchor_context()

    def audit(self, p_last: int, ln_hi: float, ln_lo: float):
        ctx = self.ctx
        exact = ctx.log(p_last)
        carried = DD(float(ln_hi), float(ln_lo)).to_mpf(ctx)
        drift = float(abs(carried - exact) / exact)
        self.max_drift = max(self.max_drift, drift)
        if drift > LN_DRIFT_TOLERANCE:
            logger.warning(f"ln drift {drift:.3e} at p = {p_last} exceeds {LN_DRIFT_TOLERANCE:.0e}")

    def anchor(self, p: int, state_f: np.ndarray, state_i: np.ndarray):
        if state_i[_SINCE] > 0:
            self.audit(int(state_i[_P_LAST]), state_f[_LN_HI], state_f[_LN_LO])
        ln_p = dd_from_mpf(self.ctx.log(p), ctx=self.ctx)
        state_f[_LN_HI] = ln_p.hi
        state_f[_LN_LO] = ln_p.lo
        state_i[_LN_READY] = 1
        state_i[_SINCE] = 0
        self.anchors += 1


def scan_block(
    index: int,
    x: int,
    level: int = LEVEL_SA,
    segment_size: int = 2 ** 20,
    block_span: int = BLOCK_SPAN,
    anchor_interval: int = ANCHOR_INTERVAL,
    base: Optional[np.ndarray] = None,
) -> BlockTotals:
    """
    Scan the primes of one block

    Args:
        index: block number; block b covers [b * block_span + 1, (b + 1) * block_span]
        x: inclusive upper limit of the whole run
        level: LEVEL_PRODUCT, LEVEL_SB or LEVEL_SA
        segment_size: sieve segment size; has no effect on the results
        base: primes up to isqrt(x)

    Returns:
        BlockTotals relative to a product of 1 at the block start
    """
    lo, hi = block_bounds(index, x, block_span)
    if base is None:
        base = base_primes(math.isqrt(x))
    state_f = np.array([1.0, 0.0, 0.0, 0.0])
    state_i = np.zeros(4, dtype=np.int64)
    acc = np.zeros(10)
    audit = _AnchorAudit()

    if lo <= hi:
        for primes in iter_segments(SegmentPlan(lo, hi, segment_size), base):
            i = 0
            while i < len(primes):
                i = _scan(primes, i, state_f, state_i, acc, level, anchor_interval)
                if i < len(primes):
                    audit.anchor(int(primes[i]), state_f, state_i)
        if level > 0 and state_i[_SINCE] > 0:
            audit.audit(int(state_i[_P_LAST]), state_f[_LN_HI], state_f[_LN_LO])

    def pair(slot: int) -> DD:
        return DD(float(acc[slot]), float(acc[slot + 1]))

    return BlockTotals(
        index=index,
        lo=lo,
        hi=hi,
        primes=int(state_i[_COUNT]),
        last_prime=int(state_i[_P_LAST]),
        product=DD(float(state_f[_PROD_HI]), float(state_f[_PROD_LO])),
        ln_last=DD(float(state_f[_LN_HI]), float(state_f[_LN_LO])),
        since_anchor=int(state_i[_SINCE]),
        a=pair(_A),
        l=pair(_L),
        a2=pair(_A2),
        l2=pair(_L2),
        theta=pair(_THETA),
        anchors=audit.anchors,
        max_ln_drift=audit.max_drift,
    )


T = TypeVar("T")
R = TypeVar("R")


def ordered_map(fn: Callable[[T], R], items: Iterable[T], threads: int = 1) -> Iterator[R]:
    """
    Yield fn(item) for each item in input order

    Up to 2 * threads calls run ahead on a thread pool; the numba kernels
    release the GIL, so blocks overlap. Closing the generator early
    cancels the calls not yet started.
    """
    if threads <= 1:
        for item in items:
            yield fn(item)
        return

    source = iter(items)
    with ThreadPoolExecutor(max_workers=threads) as executor:
        pending = deque(executor.submit(fn, item) for item in itertools.islice(source, 2 * threads))
        try:
            while pending:
                result = pending.popleft().result()
                for item in itertools.islice(source, 1):
                    pending.append(executor.submit(fn, item))
                yield result
        finally:
            for future in pending:
                future.cancel()
