# tests/test_sieve.py
import numpy as np
import pytest

from src.gpfsums.errors import ConfigurationError, OracleMemoryError, PreconditionError
from src.gpfsums.sieve import (
    SegmentPlan,
    base_primes,
    divisor_count_block,
    divisor_count_table,
    for_each_prime,
    gpf_block,
    gpf_table,
    iter_segments,
    next_prime_after,
    oracle_tables,
    primes_between,
)


def _naive_primes(limit):
    return [n for n in range(2, limit + 1) if all(n % d for d in range(2, int(n ** 0.5) + 1))]


def _naive_gpf(n):
    if n == 1:
        return 1
    largest, d = 1, 2
    while d * d <= n:
        while n % d == 0:
            largest, n = d, n // d
        d += 1
    return max(largest, n) if n > 1 else largest


def test_base_primes_small():
    assert base_primes(1).tolist() == []
    assert base_primes(30).tolist() == [2, 3, 5, 7, 11, 13, 17, 19, 23, 29]


def test_primes_between_matches_trial_division():
    assert primes_between(1, 5000).tolist() == _naive_primes(5000)
    assert primes_between(4000, 5000).tolist() == [p for p in _naive_primes(5000) if p >= 4000]


def test_prime_counts():
    assert len(primes_between(2, 10 ** 6)) == 78498
    assert len(primes_between(2, 10 ** 7)) == 664579


def test_segment_size_does_not_change_the_primes():
    lo, hi = 10 ** 6, 10 ** 6 + 500_000
    small = np.concatenate(list(iter_segments(SegmentPlan(lo, hi, 2 ** 16))))
    large = np.concatenate(list(iter_segments(SegmentPlan(lo, hi, 2 ** 22))))
    assert np.array_equal(small, large)


def test_segments_are_ascending_and_cover_two():
    chunks = list(iter_segments(SegmentPlan(2, 3 * 2 ** 17, 2 ** 16)))
    assert chunks[0][0] == 2
    flat = np.concatenate(chunks)
    assert np.all(np.diff(flat) > 0)


def test_for_each_prime_visits_in_order():
    seen = []
    count = for_each_prime(SegmentPlan(90, 130), seen.append)
    assert seen == [97, 101, 103, 107, 109, 113, 127]
    assert count == 7


@pytest.mark.parametrize("plan", [(1, 10, 2 ** 16), (10, 5, 2 ** 16), (2, 10, 1000), (2, 10, 2 ** 15)])
def test_invalid_segment_plans(plan):
    with pytest.raises(ConfigurationError):
        SegmentPlan(*plan)


def test_next_prime_after():
    assert next_prime_after(1) == 2
    assert next_prime_after(2) == 3
    assert next_prime_after(51841229) > 51841229
    # maximal gap below 1e6 follows 492113
    assert next_prime_after(492113) == 492227


def test_gpf_block_matches_factorization():
    a, b = 1, 3000
    assert gpf_block(a, b).tolist() == [_naive_gpf(n) for n in range(a, b + 1)]
    assert gpf_block(99_000, 99_100).tolist() == [_naive_gpf(n) for n in range(99_000, 99_101)]


def test_divisor_counts():
    table = divisor_count_table(1000)
    assert table[1] == 1 and table[12] == 6 and table[997] == 2 and table[720] == 30
    block = divisor_count_block(500, 1000)
    assert block.tolist() == table[500:1001].tolist()


def test_gpf_table_layout():
    table = gpf_table(100)
    assert table[0] == 0 and table[1] == 1 and table[2] == 2 and table[100] == 5 and table[97] == 97


def test_tables_respect_memory_cap():
    with pytest.raises(OracleMemoryError) as info:
        oracle_tables(10 ** 6, memory_cap_bytes=10 ** 6)
    assert info.value.advisory
    assert oracle_tables(1000).n_max == 1000


def test_block_arguments_are_checked():
    with pytest.raises(PreconditionError):
        gpf_block(0, 10)
    with pytest.raises(PreconditionError):
        divisor_count_block(10, 5)
