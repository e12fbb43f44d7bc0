"""
Sieve Package
"""

from .segmented import (
    SegmentPlan,
    base_primes,
    for_each_prime,
    iter_segments,
    next_prime_after,
    primes_between,
)
from .tables import (
    OracleTables,
    divisor_count_block,
    divisor_count_table,
    gpf_block,
    gpf_table,
    oracle_tables,
)

__all__ = [
    "SegmentPlan",
    "base_primes",
    "for_each_prime",
    "iter_segments",
    "next_prime_after",
    "primes_between",
    "OracleTables",
    "divisor_count_block",
    "divisor_count_table",
    "gpf_block",
    "gpf_table",
    "oracle_tables",
]
