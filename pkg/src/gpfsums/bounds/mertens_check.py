# src/gpfsums/bounds/mertens_check.py
"""
Prime-by-prime check of explicit Mertens-product inequalities

    e^gamma ln x (1 + l(ln x)) < prod_{p<=x} p/(p-1) < e^gamma ln x (1 + u(ln x))

The product is constant on [p, p+) between consecutive primes, so the upper
side is tightest at x = p and the lower side as x approaches p+. Margins
are relative, in units of e^gamma ln x; a negative margin is a violation.

Pass 1 streams block products to get the exact prefix product at every
block start; pass 2 scans the blocks of the checked range independently,
each seeded with its prefix product and the prime preceding it.
"""

import logging
import math
import time
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Tuple

import mpmath
import numpy as np
from numba import njit

from ..engine import LEVEL_PRODUCT, SeriesEngine, block_bounds, block_of, ordered_map
from ..errors import ConfigurationError, PreconditionError
from ..precision import CONSTANTS, DD, ONE, constant_mpf
from ..precision.kernels import div_dd_d, mul_dd_d
from ..sieve import SegmentPlan, base_primes, iter_segments, next_prime_after


logger = logging.getLogger(__name__)

DEFAULT_CAP = 10 ** 9
SAMPLE_COUNT = 10


@dataclass(frozen=True)
class BoundFamily:
    name: str
    code: int
    threshold: int
    description: str


BOUND_FAMILIES = {
    "tight": BoundFamily("tight", 0, 51841229, "1 - 0.0189/ln^3 x < M/(e^g ln x) < 1 + 0.0561/ln^3 x"),
    "dusart": BoundFamily("dusart", 1, 2278382, "1 - 0.2/ln^3 x < M/(e^g ln x) < 1 + 0.2/ln^3 x"),
    "axler": BoundFamily(
        "axler",
        2,
        46909074,
        "1/(1 + 0.07/ln^3 x) < M/(e^g ln x) < 1/(1 - 0.05/ln^3 x - 3/(16 ln^4 x))",
    ),
}


@njit(cache=True, nogil=True)
def _factors(L, family):
    """(u, l) with the bounds e^gamma L (1 + l) < M < e^gamma L (1 + u)"""
    L3 = L * L * L
    if family == 0:
        return 0.0561 / L3, -0.0189 / L3
    if family == 1:
        return 0.2 / L3, -0.2 / L3
    return 1.0 / (1.0 - 0.05 / L3 - 3.0 / (16.0 * L3 * L)) - 1.0, 1.0 / (1.0 + 0.07 / L3) - 1.0


@njit(cache=True, nogil=True)
def _scan_margins(primes, lo, hi, exp_gamma, family, prod, state, minima, argmins, samples):
    """
    prod = [hi, lo] running product through state[0], the previous prime.
    state = [prev_p, checked, samples_taken, first_violation, violation_side]
    """
    for i in range(primes.shape[0]):
        q = primes[i]
        prev = state[0]
        if prev != 0 and lo <= prev <= hi:
            m = prod[0] + prod[1]
            lp = math.log(float(prev))
            lq = math.log(float(q))
            u, _ = _factors(lp, family)
            _, l = _factors(lq, family)
            upper = u - (m / (exp_gamma * lp) - 1.0)
            lower = (m / (exp_gamma * lq) - 1.0) - l
            state[1] += 1
            if upper < minima[0]:
                minima[0] = upper
                argmins[0] = prev
            if lower < minima[1]:
                minima[1] = lower
                argmins[1] = prev
            if state[3] == 0 and (upper < 0.0 or lower < 0.0):
                state[3] = prev
                state[4] = 1 if upper < 0.0 else 2
            k = state[2]
            if k < samples.shape[0]:
                samples[k, 0] = float(prev)
                samples[k, 1] = upper
                samples[k, 2] = lower
                state[2] = k + 1
        t_hi, t_lo = mul_dd_d(prod[0], prod[1], float(q))
        p_hi, p_lo = div_dd_d(t_hi, t_lo, float(q) - 1.0)
        prod[0] = p_hi
        prod[1] = p_lo
        state[0] = q


@dataclass(frozen=True)
class _BlockMargins:
    checked: int
    min_upper: float
    argmin_upper: int
    min_lower: float
    argmin_lower: int
    first_violation: int
    violation_side: int
    samples: List[Tuple[int, float, float]]
    last_prime: int
    last_product: DD


@dataclass
class BoundsReport:
    family: str
    lo: int
    hi: int
    primes_checked: int = 0
    min_upper_margin: Optional[float] = None
    argmin_upper: Optional[int] = None
    min_lower_margin: Optional[float] = None
    argmin_lower: Optional[int] = None
    first_violation: Optional[int] = None
    violation_side: Optional[str] = None
    samples: List[Tuple[int, float, float]] = field(default_factory=list)
    # running product through the last prime of each scanned block
    block_products: List[Tuple[int, DD]] = field(default_factory=list)
    elapsed_ms: int = 0

    @property
    def violations(self) -> bool:
        return self.first_violation is not None

    def to_dict(self) -> Dict:
        return {
            "family": self.family,
            "lo": self.lo,
            "hi": self.hi,
            "primes_checked": self.primes_checked,
            "min_upper_margin": self.min_upper_margin,
            "argmin_upper": self.argmin_upper,
            "min_lower_margin": self.min_lower_margin,
            "argmin_lower": self.argmin_lower,
            "first_violation": self.first_violation,
            "violation_side": self.violation_side,
            "samples": [{"p": p, "upper": u, "lower": l} for p, u, l in self.samples],
            "elapsed_ms": self.elapsed_ms,
        }


def _family(name: str) -> BoundFamily:
    if name not in BOUND_FAMILIES:
        raise ConfigurationError(f"Unknown bound family {name!r}; choose from {sorted(BOUND_FAMILIES)}")
    return BOUND_FAMILIES[name]


def margin_at(x: float, product, family: str = "tight") -> Tuple[float, float]:
    """
    (upper, lower) relative margins at a real x for a given product value

    Evaluated with mpmath; used to spot-check points inside prime gaps.
    """
    fam = _family(family)
    with mpmath.workprec(120):
        L = mpmath.log(mpmath.mpf(x))
        L3 = L ** 3
        if fam.code == 0:
            u, l = mpmath.mpf("0.0561") / L3, -mpmath.mpf("0.0189") / L3
        elif fam.code == 1:
            u, l = mpmath.mpf("0.2") / L3, -mpmath.mpf("0.2") / L3
        else:
            u = 1 / (1 - mpmath.mpf("0.05") / L3 - mpmath.mpf(3) / (16 * L3 * L)) - 1
            l = 1 / (1 + mpmath.mpf("0.07") / L3) - 1
        m = DD.of(product).to_mpf() if not isinstance(product, mpmath.mpf) else product
        ratio = m / (constant_mpf("exp_gamma") * L) - 1
        return float(u - ratio), float(ratio - l)


class MertensBoundsChecker:
    """Two-pass, block-parallel verification of a Mertens-product inequality"""

    def __init__(self, engine: Optional[SeriesEngine] = None, family: str = "tight", cap: int = DEFAULT_CAP):
        self.engine = engine or SeriesEngine()
        self.family = _family(family)
        self.cap = cap

    def theta(self, x: int) -> DD:
        if x < 2:
            raise PreconditionError(f"theta needs x >= 2, got {x}")
        return self.engine.theta(x)

    def _scan_block(self, seeded) -> _BlockMargins:
        index, x_end, lo, hi, prefix, prev_prime, base = seeded
        block_lo, block_hi = block_bounds(index, x_end, self.engine.block_span)
        prod = np.array([prefix.hi, prefix.lo])
        state = np.array([prev_prime, 0, 0, 0, 0], dtype=np.int64)
        minima = np.array([np.inf, np.inf])
        argmins = np.zeros(2, dtype=np.int64)
        samples = np.zeros((SAMPLE_COUNT, 3))
        plan = SegmentPlan(block_lo, block_hi, self.engine.segment_size)
        for primes in iter_segments(plan, base):
            _scan_margins(
                primes, lo, hi, float(CONSTANTS.exp_gamma), self.family.code,
                prod, state, minima, argmins, samples,
            )
        taken = int(state[2])
        return _BlockMargins(
            checked=int(state[1]),
            min_upper=float(minima[0]),
            argmin_upper=int(argmins[0]),
            min_lower=float(minima[1]),
            argmin_lower=int(argmins[1]),
            first_violation=int(state[3]),
            violation_side=int(state[4]),
            samples=[(int(samples[k, 0]), float(samples[k, 1]), float(samples[k, 2])) for k in range(taken)],
            last_prime=int(state[0]),
            last_product=DD(float(prod[0]), float(prod[1])),
        )

    def check(self, lo: int, hi: int) -> BoundsReport:
        """
        Check every prime p in [lo, hi]: the upper side at x = p and the
        lower side at x -> p+, the next prime

        Raises:
            PreconditionError: lo below the family's validity threshold
            ConfigurationError: hi above the configured cap
        """
        fam = self.family
        if lo < fam.threshold:
            logger.error(f"Bounds check from {lo} is below the {fam.name} threshold {fam.threshold}")
            raise PreconditionError(
                f"The {fam.name} inequality is checked only for x >= {fam.threshold}; got lo = {lo}"
            )
        report = BoundsReport(family=fam.name, lo=lo, hi=hi)
        if lo > hi:
            logger.info(f"Empty bounds range [{lo}, {hi}]")
            return report
        if hi > self.cap:
            raise ConfigurationError(f"hi = {hi} exceeds the bounds cap {self.cap}")

        started = time.perf_counter()
        x_end = next_prime_after(hi)
        span = self.engine.block_span
        first_block = block_of(lo, span)
        last_block = block_of(x_end, span)

        # pass 1: prefix products and preceding primes at every block start
        prefixes = [ONE]
        last_primes = [0]
        for totals in self.engine.iter_blocks(x_end, LEVEL_PRODUCT, range(0, last_block)):
            prefixes.append(prefixes[-1] * totals.product)
            last_primes.append(totals.last_prime if totals.primes else last_primes[-1])

        # pass 2: margins per block, reduced in block order
        base = base_primes(math.isqrt(x_end))
        seeds = [
            (b, x_end, lo, hi, prefixes[b], last_primes[b], base)
            for b in range(first_block, last_block + 1)
        ]
        for block in ordered_map(self._scan_block, seeds, self.engine.threads):
            if block.last_prime:
                report.block_products.append((block.last_prime, block.last_product))
            if block.checked == 0:
                continue
            report.primes_checked += block.checked
            if report.min_upper_margin is None or block.min_upper < report.min_upper_margin:
                report.min_upper_margin = block.min_upper
                report.argmin_upper = block.argmin_upper
            if report.min_lower_margin is None or block.min_lower < report.min_lower_margin:
                report.min_lower_margin = block.min_lower
                report.argmin_lower = block.argmin_lower
            if report.first_violation is None and block.first_violation:
                report.first_violation = block.first_violation
                report.violation_side = "upper" if block.violation_side == 1 else "lower"
            report.samples.extend(block.samples[: SAMPLE_COUNT - len(report.samples)])

        report.elapsed_ms = int((time.perf_counter() - started) * 1000)
        if report.violations:
            logger.warning(
                f"{fam.name} inequality violated at p = {report.first_violation} ({report.violation_side} side)"
            )
        logger.info(
            f"Checked {report.primes_checked} primes in [{lo}, {hi}] against the {fam.name} bounds: "
            f"min upper {report.min_upper_margin}, min lower {report.min_lower_margin}"
        )
        return report


def check_mertens_bounds(
    lo: int,
    hi: int,
    family: str = "tight",
    engine: Optional[SeriesEngine] = None,
    cap: int = DEFAULT_CAP,
) -> BoundsReport:
    return MertensBoundsChecker(engine, family, cap).check(lo, hi)


def theta(x: int, engine: Optional[SeriesEngine] = None) -> DD:
    """Chebyshev theta(x) = sum_{p <= x} ln p in double-word precision"""
    return MertensBoundsChecker(engine).theta(x)
