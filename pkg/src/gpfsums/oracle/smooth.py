# src/gpfsums/oracle/smooth.py
"""
Smooth-number identities behind the prime-sum transformation:

    sum_{G(n)=p} 1/n    = M(p)/p
    sum_{G(n)=p} d(n)/n = M(p)^2 (1 - ((p-1)/p)^2)

checked by enumerating every n = p * (p-smooth m) with exponents up to a
depth, completing the exponent tails in closed form, and comparing with
the engine's per-prime increments M(p)/p^2 and (2 - 1/p) M(p)^2/p^2.
"""

import itertools
import logging
from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, List

from ..errors import PreconditionError
from ..engine import SeriesEngine
from ..precision import DD


logger = logging.getLogger(__name__)

SUPPORTED_PRIMES = (2, 3, 5, 7)
ENGINE_TOLERANCE = 1e-25


@dataclass(frozen=True)
class SmoothIdentityReport:
    p: int
    depth: int
    terms: int
    enumerated: Fraction
    tail: Fraction
    expected: Fraction
    weighted_enumerated: Fraction
    weighted_tail: Fraction
    weighted_expected: Fraction
    engine_increment_sb: DD
    engine_increment_sa: DD
    engine_error_sb: float
    engine_error_sa: float

    @property
    def discrepancy(self) -> Fraction:
        return self.enumerated + self.tail - self.expected

    @property
    def weighted_discrepancy(self) -> Fraction:
        return self.weighted_enumerated + self.weighted_tail - self.weighted_expected

    @property
    def passed(self) -> bool:
        return (
            self.discrepancy == 0
            and self.weighted_discrepancy == 0
            and self.engine_error_sb <= ENGINE_TOLERANCE
            and self.engine_error_sa <= ENGINE_TOLERANCE
        )

    def to_dict(self) -> Dict:
        return {
            "p": self.p,
            "depth": self.depth,
            "terms": self.terms,
            "enumerated": float(self.enumerated),
            "tail": float(self.tail),
            "expected": str(self.expected),
            "discrepancy": str(self.discrepancy),
            "weighted_expected": str(self.weighted_expected),
            "weighted_discrepancy": str(self.weighted_discrepancy),
            "engine_error_sb": self.engine_error_sb,
            "engine_error_sa": self.engine_error_sa,
            "passed": self.passed,
        }


def _primes_up_to(p: int) -> List[int]:
    return [q for q in SUPPORTED_PRIMES if q <= p]


def _truncated(q: int, depth: int, first: int, weighted: bool) -> Fraction:
    """sum_{e=first}^{depth} w(e) q^-e with w(e) = e + 1 or 1"""
    return sum(
        (Fraction(e + 1 if weighted else 1, q ** e) for e in range(first, depth + 1)),
        Fraction(0),
    )


def _complete(q: int, first: int, weighted: bool) -> Fraction:
    """Closed form of the infinite exponent sum"""
    r = Fraction(1, q)
    if weighted:
        full = 1 / (1 - r) ** 2
        return full - 1 if first == 1 else full
    full = 1 / (1 - r)
    return full - 1 if first == 1 else full


def smooth_identity_check(p: int, depth: int = 12, engine: SeriesEngine = None) -> SmoothIdentityReport:
    """
    Enumerate n with G(n) = p and exponents <= depth, add the closed-form
    tails, and compare both identities exactly and against the engine
    """
    if p not in SUPPORTED_PRIMES:
        raise PreconditionError(f"smooth_identity_check supports p in {SUPPORTED_PRIMES}, got {p}")
    if depth < 1:
        raise PreconditionError(f"depth must be >= 1, got {depth}")

    primes = _primes_up_to(p)
    enumerated = Fraction(0)
    weighted = Fraction(0)
    terms = 0
    ranges = [range(0, depth + 1)] * (len(primes) - 1) + [range(1, depth + 1)]
    for exponents in itertools.product(*ranges):
        n = 1
        divisors = 1
        for q, e in zip(primes, exponents):
            n *= q ** e
            divisors *= e + 1
        enumerated += Fraction(1, n)
        weighted += Fraction(divisors, n)
        terms += 1

    firsts = [0] * (len(primes) - 1) + [1]
    truncated = Fraction(1)
    truncated_w = Fraction(1)
    complete = Fraction(1)
    complete_w = Fraction(1)
    for q, first in zip(primes, firsts):
        truncated *= _truncated(q, depth, first, False)
        truncated_w *= _truncated(q, depth, first, True)
        complete *= _complete(q, first, False)
        complete_w *= _complete(q, first, True)

    mertens = Fraction(1)
    for q in primes:
        mertens *= Fraction(q, q - 1)
    expected = mertens / p
    weighted_expected = mertens ** 2 * (1 - Fraction(p - 1, p) ** 2)

    engine = engine or SeriesEngine()
    m_engine = engine.mertens_product(p)
    increment_sb = m_engine / (p * p)
    increment_sa = DD.of(Fraction(2 * p - 1, p ** 3)) * (m_engine * m_engine)
    error_sb = float(abs(increment_sb.to_fraction() - expected / p))
    error_sa = float(abs(increment_sa.to_fraction() - weighted_expected / p))

    report = SmoothIdentityReport(
        p=p,
        depth=depth,
        terms=terms,
        enumerated=enumerated,
        tail=complete - truncated,
        expected=expected,
        weighted_enumerated=weighted,
        weighted_tail=complete_w - truncated_w,
        weighted_expected=weighted_expected,
        engine_increment_sb=increment_sb,
        engine_increment_sa=increment_sa,
        engine_error_sb=error_sb,
        engine_error_sa=error_sa,
    )
    logger.info(f"Smooth identity p = {p}, depth {depth}: {terms} terms, passed = {report.passed}")
    return report
