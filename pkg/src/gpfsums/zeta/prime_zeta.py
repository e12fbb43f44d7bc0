# src/gpfsums/zeta/prime_zeta.py
"""
Prime zeta P(s) and its first two derivatives by Moebius inversion of
log zeta, with the primes up to split_x summed directly:

    P(s)   = sum_{p<=x} p^-s + sum_k mu(k)/k * ln zeta_x(ks)
    P'(s)  = -sum_{p<=x} ln p p^-s
             + sum_k mu(k) [zeta'/zeta(ks) + sum_{p<=x} ln p/(p^ks - 1)]
    P''(s) = sum_{p<=x} ln^2 p p^-s
             + sum_k k mu(k) [zeta''/zeta(ks) - (zeta'/zeta(ks))^2
                              - sum_{p<=x} ln^2 p/(p^ks + p^-ks - 2)]

where zeta_x(t) = zeta(t) prod_{p<=x} (1 - p^-t) only sees primes above x,
so term k decays like q^-ks with q the first prime past the split.
"""

import logging
import math
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Tuple

import mpmath

from ..errors import ConfigurationError, ConvergenceError, PreconditionError, TruncationError
from ..precision import DD, constant_mpf, dd_from_mpf
from ..sieve import next_prime_after, primes_between
from .euler_maclaurin import DEFAULT_EM, EulerMaclaurinConfig, MIN_S, zeta_derivatives


logger = logging.getLogger(__name__)

MOBIUS_MAX_K = 10 ** 6

CB_ENVELOPE = (1.87, 1.88)
CA_ENVELOPE = (5.22, 5.23)


@dataclass(frozen=True)
class PrimeZetaSplit:
    """Direct-sum split point and Moebius series truncation"""

    split_x: int = 1000
    k_max: int = 60
    target_eps: float = 1e-34
    em: EulerMaclaurinConfig = field(default=DEFAULT_EM)

    def __post_init__(self):
        if self.split_x < 2:
            raise ConfigurationError(f"split_x must be >= 2, got {self.split_x}")
        if self.k_max < 1:
            raise ConfigurationError(f"k_max must be >= 1, got {self.k_max}")
        if not 0 < self.target_eps < 1:
            raise ConfigurationError(f"target_eps must be in (0, 1), got {self.target_eps}")


DEFAULT_SPLIT = PrimeZetaSplit()


@dataclass(frozen=True)
class DerivedConstants:
    Cb: DD
    Ca: DD


def mobius(k: int) -> int:
    """Moebius function by trial division, 1 <= k <= 10**6"""
    if not 1 <= k <= MOBIUS_MAX_K:
        raise PreconditionError(f"mobius is supported for 1 <= k <= {MOBIUS_MAX_K}, got {k}")
    value = 1
    d = 2
    while d * d <= k:
        if k % d == 0:
            k //= d
            if k % d == 0:
                return 0
            value = -value
        d += 1
    if k > 1:
        value = -value
    return value


@lru_cache(maxsize=8)
def _split_primes(split_x: int, bits: int) -> Tuple[tuple, tuple]:
    """Primes <= split_x and their logarithms, computed once per precision"""
    primes = tuple(int(p) for p in primes_between(2, split_x))
    with mpmath.workprec(bits):
        logs = tuple(mpmath.log(p) for p in primes)
    return primes, logs


def _required_terms(s, cfg: PrimeZetaSplit) -> int:
    """Smallest k whose term bound 2 k (1 + ks ln q)^2 q^-ks is below target_eps"""
    q = next_prime_after(cfg.split_x)
    ln_q = math.log(q)
    s = float(s)
    k = 1
    while 2 * k * (1 + k * s * ln_q) ** 2 * math.exp(-k * s * ln_q) >= cfg.target_eps:
        k += 1
    return k


@lru_cache(maxsize=64)
def prime_zeta_all(s, cfg: PrimeZetaSplit = DEFAULT_SPLIT) -> Tuple:
    """
    (P(s), P'(s), P''(s)) as mpf at the Euler-Maclaurin working precision

    Raises:
        PreconditionError: s < 2
        TruncationError: cfg.k_max below the terms the tolerance needs
    """
    if s < MIN_S:
        raise PreconditionError(f"prime zeta is defined here for s >= 2 only, got s = {s}")

    k_needed = _required_terms(s, cfg)
    if k_needed > cfg.k_max:
        logger.error(f"Moebius series at s = {s} needs {k_needed} terms, k_max = {cfg.k_max}")
        raise TruncationError(
            f"Moebius series at s = {s} with split {cfg.split_x} needs k_max >= {k_needed}, "
            f"configured {cfg.k_max}",
            required_k_max=k_needed,
        )

    bits = cfg.em.working_bits
    primes, logs = _split_primes(cfg.split_x, bits)
    with mpmath.workprec(bits):
        s = mpmath.mpf(s)
        p0 = mpmath.mpf(0)
        p1 = mpmath.mpf(0)
        p2 = mpmath.mpf(0)
        for p, ln_p in zip(primes, logs):
            w = mpmath.exp(-s * ln_p)
            p0 += w
            p1 -= ln_p * w
            p2 += ln_p ** 2 * w

        for k in range(1, k_needed + 1):
            mu = mobius(k)
            if mu == 0:
                continue
            t = k * s
            z0, z1, z2 = zeta_derivatives(t, 2, cfg.em)
            log_part = mpmath.log(z0)
            d1_part = z1 / z0
            d2_part = z2 / z0 - d1_part ** 2
            for p, ln_p in zip(primes, logs):
                pt = mpmath.exp(t * ln_p)
                log_part += mpmath.log1p(-1 / pt)
                d1_part += ln_p / (pt - 1)
                d2_part -= ln_p ** 2 / (pt + 1 / pt - 2)

            term = log_part / k
            if abs(term) > 2 * mpmath.power(2, -t):
                logger.error(f"Moebius term k = {k} at s = {s} is {mpmath.nstr(term, 5)}")
                raise ConvergenceError(
                    f"Moebius term {k} at s = {mpmath.nstr(s, 10)} exceeds 2 * 2^-ks"
                )
            p0 += mu * term
            p1 += mu * d1_part
            p2 += k * mu * d2_part

        logger.debug(f"Prime zeta at s = {mpmath.nstr(s, 10)}: {k_needed} Moebius terms")
        return p0, p1, p2


def prime_zeta(s, cfg: PrimeZetaSplit = DEFAULT_SPLIT) -> DD:
    return dd_from_mpf(prime_zeta_all(s, cfg)[0])


def prime_zeta_d1(s, cfg: PrimeZetaSplit = DEFAULT_SPLIT) -> DD:
    return dd_from_mpf(prime_zeta_all(s, cfg)[1])


def prime_zeta_d2(s, cfg: PrimeZetaSplit = DEFAULT_SPLIT) -> DD:
    return dd_from_mpf(prime_zeta_all(s, cfg)[2])


def prime_zeta_order(s, order: int, cfg: PrimeZetaSplit = DEFAULT_SPLIT) -> DD:
    """P, P' or P'' selected by order 0, 1 or 2"""
    if order not in (0, 1, 2):
        raise PreconditionError(f"prime zeta order must be 0, 1 or 2, got {order}")
    return dd_from_mpf(prime_zeta_all(s, cfg)[order])


@lru_cache(maxsize=8)
def derived_constants_mpf(cfg: PrimeZetaSplit = DEFAULT_SPLIT) -> Tuple:
    """(Cb, Ca) at working precision"""
    _, d1_at_2, d2_at_2 = prime_zeta_all(2, cfg)
    _, _, d2_at_3 = prime_zeta_all(3, cfg)
    with mpmath.workprec(cfg.em.working_bits):
        cb = 1 - constant_mpf("exp_gamma") * d1_at_2
        ca = 1 + constant_mpf("exp_2gamma") * (2 * d2_at_2 - d2_at_3)

    for name, value, (low, high) in (("Cb", cb, CB_ENVELOPE), ("Ca", ca, CA_ENVELOPE)):
        if not low < value < high:
            logger.error(f"{name} = {mpmath.nstr(value, 20)} outside ({low}, {high})")
            raise ConvergenceError(f"{name} = {mpmath.nstr(value, 20)} outside ({low}, {high})")
    return cb, ca


def derived_constants(cfg: PrimeZetaSplit = DEFAULT_SPLIT) -> DerivedConstants:
    """Cb = 1 - e^gamma P'(2) and Ca = 1 + e^(2 gamma) (2 P''(2) - P''(3))"""
    cb, ca = derived_constants_mpf(cfg)
    constants = DerivedConstants(Cb=dd_from_mpf(cb), Ca=dd_from_mpf(ca))
    logger.info(f"Derived constants: Cb = {float(constants.Cb):.16f}, Ca = {float(constants.Ca):.16f}")
    return constants
