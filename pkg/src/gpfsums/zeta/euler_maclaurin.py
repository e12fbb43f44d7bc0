# src/gpfsums/zeta/euler_maclaurin.py
"""
Riemann zeta and its first two derivatives at real s >= 2 by
Euler-Maclaurin summation, differentiated term by term in s.

    zeta(s) = sum_{n<N} n^-s + N^(1-s)/(s-1) + N^-s/2
              + sum_j B_2j/(2j)! * (s)_(2j-1) * N^(-s-2j+1)

Each piece is differentiated analytically; the ln N powers come from the
N^-s factors. The first omitted Bernoulli term bounds the error.
"""

import logging
import math
from dataclasses import dataclass
from functools import lru_cache
from typing import Tuple

import mpmath

from ..errors import ConfigurationError, ConvergenceError, PreconditionError
from ..precision import DD, dd_from_mpf
from .bernoulli import BERNOULLI, MAX_INDEX


logger = logging.getLogger(__name__)

MIN_S = 2


@dataclass(frozen=True)
class EulerMaclaurinConfig:
    cutoff: int = 64
    bernoulli_terms: int = 10
    target_eps: float = 1e-28
    working_bits: int = 200

    def __post_init__(self):
        if self.cutoff < 16:
            raise ConfigurationError(f"Euler-Maclaurin cutoff must be >= 16, got {self.cutoff}")
        # the first omitted term needs B_(2J+2)
        if not 1 <= self.bernoulli_terms or 2 * (self.bernoulli_terms + 1) > MAX_INDEX:
            raise ConfigurationError(
                f"bernoulli_terms must be in [1, {MAX_INDEX // 2 - 1}], got {self.bernoulli_terms}"
            )
        if self.target_eps < 1e-32:
            raise ConfigurationError(f"target_eps must be >= 1e-32, got {self.target_eps}")


DEFAULT_EM = EulerMaclaurinConfig()


@lru_cache(maxsize=8)
def _log_table(cutoff: int, bits: int):
    with mpmath.workprec(bits):
        return tuple(mpmath.log(n) for n in range(1, cutoff + 1))


def _rising(s, count: int):
    """(s)(s+1)...(s+count-1) and its first two s-derivatives"""
    f = mpmath.mpf(1)
    inv_sum = mpmath.mpf(0)
    inv_sq_sum = mpmath.mpf(0)
    for i in range(count):
        factor = s + i
        f *= factor
        inv_sum += 1 / factor
        inv_sq_sum += 1 / factor ** 2
    return f, f * inv_sum, f * (inv_sum ** 2 - inv_sq_sum)


def _correction_term(s, j: int, n_cut: int, log_n, power_n, orders: int):
    """B_2j/(2j)! d^m/ds^m [(s)_(2j-1) N^(-s-2j+1)] for m < orders"""
    coeff = mpmath.mpf(BERNOULLI[2 * j].numerator) / BERNOULLI[2 * j].denominator
    coeff /= math.factorial(2 * j)
    f0, f1, f2 = _rising(s, 2 * j - 1)
    decay = power_n / mpmath.mpf(n_cut) ** (2 * j - 1)
    minus_l = -log_n
    terms = [f0, f1 + f0 * minus_l, f2 + 2 * f1 * minus_l + f0 * minus_l ** 2]
    return [coeff * t * decay for t in terms[:orders]]


def zeta_derivatives(s, max_order: int = 2, cfg: EulerMaclaurinConfig = DEFAULT_EM) -> Tuple:
    """
    zeta^(m)(s) for m = 0..max_order as mpf at cfg.working_bits

    Raises:
        PreconditionError: s < 2 or max_order outside 0..2
        ConvergenceError: first omitted correction above cfg.target_eps
    """
    if not 0 <= max_order <= 2:
        raise PreconditionError(f"zeta derivative order must be 0, 1 or 2, got {max_order}")
    if s < MIN_S:
        raise PreconditionError(f"zeta_em is defined here for s >= 2 only, got s = {s}")

    orders = max_order + 1
    n_cut = cfg.cutoff
    with mpmath.workprec(cfg.working_bits):
        s = mpmath.mpf(s)
        logs = _log_table(n_cut, cfg.working_bits)
        totals = [mpmath.mpf(0)] * orders

        for n in range(1, n_cut):
            ln_n = logs[n - 1]
            weight = mpmath.exp(-s * ln_n)
            for m in range(orders):
                totals[m] += (-ln_n) ** m * weight

        ln_cut = logs[n_cut - 1]
        power_cut = mpmath.exp(-s * ln_cut)
        u = s - 1
        # N^(1-s)/(s-1) = e^(-u L)/u, d^i/du^i (1/u) = (-1)^i i! / u^(i+1)
        for m in range(orders):
            boundary = mpmath.mpf(0)
            for i in range(m + 1):
                boundary += (
                    mpmath.binomial(m, i)
                    * (-ln_cut) ** (m - i)
                    * (-1) ** i * math.factorial(i) / u ** (i + 1)
                )
            totals[m] += boundary * power_cut * n_cut
            totals[m] += (-ln_cut) ** m * power_cut / 2

        for j in range(1, cfg.bernoulli_terms + 1):
            for m, t in enumerate(_correction_term(s, j, n_cut, ln_cut, power_cut, orders)):
                totals[m] += t

        omitted = _correction_term(s, cfg.bernoulli_terms + 1, n_cut, ln_cut, power_cut, orders)
        worst = max(abs(t) for t in omitted)
        if worst > cfg.target_eps:
            logger.error(f"Euler-Maclaurin tail {float(worst):.3e} at s = {s}, N = {n_cut}")
            raise ConvergenceError(
                f"Euler-Maclaurin bound {float(worst):.3e} exceeds {cfg.target_eps:.1e} "
                f"at s = {mpmath.nstr(s, 10)} (cutoff {n_cut}, {cfg.bernoulli_terms} terms); "
                f"raise the cutoff"
            )
        return tuple(totals)


def zeta_em(s, order: int = 0, cfg: EulerMaclaurinConfig = DEFAULT_EM) -> DD:
    """zeta(s), zeta'(s) or zeta''(s) rounded to double-word"""
    with mpmath.workprec(cfg.working_bits):
        return dd_from_mpf(zeta_derivatives(s, order, cfg)[order])
