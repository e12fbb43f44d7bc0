# tests/test_engine.py
import math
import sys

import mpmath
import numpy as np
import pytest

from src.gpfsums.engine import (
    LEVEL_PRODUCT,
    LEVEL_SA,
    LEVEL_SB,
    MODE_ACCELERATED,
    MODE_RAW,
    SeriesEngine,
    TAIL_LEMMA_THRESHOLD,
    VALIDITY_THRESHOLD,
    block_bounds,
    block_of,
    numerical_slack,
    ordered_map,
    ra_bounds,
    rb_bounds,
    scan_block,
    tail_lemma,
)
from src.gpfsums.engine.stream import block_count
from src.gpfsums.errors import ConfigurationError, PreconditionError
from src.gpfsums.precision import CONSTANTS, DD
from src.gpfsums.sieve import primes_between
from src.gpfsums.zeta import derived_constants, prime_zeta_all

SB_LIMIT = "2.254435359519071"
SA_LIMIT = "8.115653111459203"


def _reference_sums(x):
    """Independent high-precision evaluation of the streamed sums"""
    with mpmath.workprec(200):
        m = mpmath.mpf(1)
        raw_sb = mpmath.mpf(1)
        raw_sa = mpmath.mpf(1)
        log_sb = mpmath.mpf(0)
        log_sa = mpmath.mpf(0)
        theta = mpmath.mpf(0)
        for p in primes_between(2, x).tolist():
            m = m * p / (p - 1)
            ln_p = mpmath.log(p)
            w = (2 - mpmath.mpf(1) / p) / p ** 2
            raw_sb += m / p ** 2
            raw_sa += w * m ** 2
            log_sb += ln_p / p ** 2
            log_sa += w * ln_p ** 2
            theta += ln_p
        return {"product": m, "raw_sb": raw_sb, "raw_sa": raw_sa, "log_sb": log_sb, "log_sa": log_sa, "theta": theta}


def test_block_geometry():
    assert block_count(10, 4) == 3
    assert block_bounds(0, 10, 4) == (2, 4)
    assert block_bounds(2, 10, 4) == (9, 10)
    assert [block_of(n, 4) for n in (1, 4, 5, 8, 9)] == [0, 0, 1, 1, 2]


def test_scan_block_product_of_first_primes():
    totals = scan_block(0, 10, LEVEL_PRODUCT, block_span=2 ** 10)
    assert totals.primes == 4
    assert totals.last_prime == 7
    assert float(totals.product) == 4.375


def test_ordered_map_keeps_input_order():
    assert list(ordered_map(lambda v: v * v, range(20), threads=4)) == [v * v for v in range(20)]
    assert list(ordered_map(lambda v: v + 1, [], threads=2)) == []


def test_mertens_product_small(small_engine):
    assert float(small_engine.mertens_product(10)) == 4.375
    assert float(small_engine.mertens_product(2)) == 2.0


def test_accumulate_matches_independent_sums(small_engine):
    x = 20_000
    acc = small_engine.accumulate(x, LEVEL_SA)
    expected = _reference_sums(x)
    assert acc.primes_used == 2262
    assert acc.blocks == 5
    assert acc.state.p_last == 19997
    with mpmath.workprec(200):
        tolerance = mpmath.mpf("1e-26")
        assert abs(acc.state.product.to_mpf() - expected["product"]) < tolerance
        for name in ("raw_sb", "raw_sa", "log_sb", "log_sa", "theta"):
            value = getattr(acc, name).to_mpf()
            assert abs(value - expected[name]) < tolerance * max(1, abs(expected[name])), name
    assert acc.max_ln_drift < 1e-28


def test_theta_level_sb(small_engine):
    with mpmath.workprec(200):
        expected = mpmath.fsum(mpmath.log(p) for p in primes_between(2, 1000).tolist())
        assert abs(small_engine.theta(1000).to_mpf() - expected) < mpmath.mpf("1e-27")


def test_results_do_not_depend_on_threads_or_segments():
    x = 400_000
    base = SeriesEngine(threads=1, segment_size=2 ** 16, block_span=2 ** 15).accumulate(x)
    threaded = SeriesEngine(threads=3, segment_size=2 ** 16, block_span=2 ** 15).accumulate(x)
    wide = SeriesEngine(threads=2, segment_size=2 ** 18, block_span=2 ** 15).accumulate(x)
    assert base.to_dict() == threaded.to_dict() == wide.to_dict()


def _timing_free(result):
    record = result.to_dict()
    record.pop("elapsed_ms")
    record.pop("checkpoint")
    return record


def test_anchoring_threads_leave_the_global_precision_alone():
    x = 2 * 10 ** 6
    prec = mpmath.mp.prec
    interval = sys.getswitchinterval()
    sys.setswitchinterval(1e-6)
    try:
        runs = [
            SeriesEngine(threads=threads, segment_size=2 ** 16, block_span=2 ** 12, anchor_interval=16).accumulate(x)
            for threads in (1, 8)
        ]
    finally:
        sys.setswitchinterval(interval)
    assert mpmath.mp.prec == prec
    one, eight = runs
    assert one.to_dict() == eight.to_dict()
    assert one.max_ln_drift == eight.max_ln_drift < 1e-28


def test_mertens_product_tracks_exp_gamma_log(engine):
    x = 10 ** 6
    with mpmath.workprec(200):
        ratio = engine.mertens_product(x).to_mpf() / (mpmath.exp(mpmath.euler) * mpmath.log(x))
    # theta(x) < x here, so the product stays above e^gamma ln x
    assert 0 < float(ratio - 1) < 1e-4


def test_accelerated_partial_sums_are_close_to_the_limits(engine):
    x = 10 ** 6
    acc = engine.accumulate(x, LEVEL_SA)
    constants = derived_constants()
    center_sb = constants.Cb + (acc.raw_sb - 1) - CONSTANTS.exp_gamma * acc.log_sb
    center_sa = constants.Ca + (acc.raw_sa - 1) - CONSTANTS.exp_2gamma * acc.log_sa
    assert abs(float(center_sb - DD.of(SB_LIMIT))) < 1e-9
    assert abs(float(center_sa - DD.of(SA_LIMIT))) < 1e-7
    # raw sums stay below the limits
    assert float(acc.raw_sb) < float(SB_LIMIT)
    assert float(acc.raw_sa) < float(SA_LIMIT)


def test_cross_form_identity(engine):
    constants = derived_constants()
    with mpmath.workprec(200):
        d1_2 = DD.of(prime_zeta_all(2)[1])
        d2_2 = DD.of(prime_zeta_all(2)[2])
        d2_3 = DD.of(prime_zeta_all(3)[2])

    acc_b = engine.accumulate(10 ** 6, LEVEL_SB)
    center_b = constants.Cb + (acc_b.raw_sb - 1) - CONSTANTS.exp_gamma * acc_b.log_sb
    expected_b = CONSTANTS.exp_gamma * (-d1_2 - acc_b.log_sb)
    assert abs(float((center_b - acc_b.raw_sb) - expected_b)) <= 1e-20

    acc_a = engine.accumulate(10 ** 5, LEVEL_SA)
    center_a = constants.Ca + (acc_a.raw_sa - 1) - CONSTANTS.exp_2gamma * acc_a.log_sa
    expected_a = CONSTANTS.exp_2gamma * (2 * d2_2 - d2_3 - acc_a.log_sa)
    assert abs(float((center_a - acc_a.raw_sa) - expected_a)) <= 1e-20


def test_raw_mode_is_a_lower_bound(engine):
    result = engine.run_sb(1000, mode=MODE_RAW)
    assert result.mode == MODE_RAW
    assert result.remainder is None
    assert not result.enclosure.bounded
    assert result.certified_digits() == ""
    assert result.enclosure.lo.to_fraction() < DD.of(SB_LIMIT).to_fraction()
    assert result.value == result.partial

    sa = engine.run_sa(1000, mode=MODE_RAW)
    assert float(sa.enclosure.lo) < float(SA_LIMIT)
    assert sa.enclosure.lo.to_fraction() < sa.partial.to_fraction()


def test_accelerated_mode_refuses_small_x_before_sieving(engine):
    with pytest.raises(PreconditionError) as info:
        engine.run_sb(1000)
    assert str(VALIDITY_THRESHOLD) in str(info.value)
    with pytest.raises(PreconditionError):
        engine.run_sa(VALIDITY_THRESHOLD - 1, mode=MODE_ACCELERATED)


def test_invalid_mode_and_engine_settings(engine):
    with pytest.raises(ConfigurationError):
        engine.run_sb(1000, mode="fast")
    with pytest.raises(ConfigurationError):
        SeriesEngine(threads=0)
    with pytest.raises(ConfigurationError):
        SeriesEngine(block_span=1000)
    with pytest.raises(ConfigurationError):
        SeriesEngine(segment_size=1000)
    with pytest.raises(PreconditionError):
        engine.accumulate(1)
    with pytest.raises(ConfigurationError):
        engine.accumulate(100, level=7)


def test_numerical_slack_grows_with_primes():
    assert numerical_slack(0) == DD.of("1e-24")
    assert numerical_slack(10 ** 6).to_fraction() > numerical_slack(10).to_fraction()


def test_remainder_intervals():
    for x in (VALIDITY_THRESHOLD, 86028161, 2576983867):
        L = math.log(x)
        rb = rb_bounds(x)
        ra = ra_bounds(x)
        assert float(rb.lo) < 0 < float(rb.hi)
        assert float(ra.lo) < 0 < float(ra.hi)
        assert float(rb.hi) == pytest.approx(0.1 / (x * L ** 3), rel=1e-12)
        assert float(rb.lo) == pytest.approx(-0.034 / (x * L ** 3), rel=1e-12)
        assert float(ra.hi) == pytest.approx(0.72 / (x * L ** 2), rel=1e-12)
        assert float(ra.lo) == pytest.approx(-0.24 / (x * L ** 2), rel=1e-12)
    assert float(rb_bounds(86028161).width) < 3e-13
    with pytest.raises(PreconditionError):
        rb_bounds(VALIDITY_THRESHOLD - 1)


@pytest.mark.parametrize("x", [TAIL_LEMMA_THRESHOLD, 10 ** 8, 10 ** 9])
@pytest.mark.parametrize("m", [0.5, 1, 2, 3])
def test_tail_lemma_bracket(x, m):
    L = math.log(x)
    bound = float(tail_lemma(x, m))
    assert 0 < bound < 1 / (x * L ** (m + 1))


def test_tail_lemma_domain():
    with pytest.raises(PreconditionError):
        tail_lemma(10 ** 6, 1)
    with pytest.raises(PreconditionError):
        tail_lemma(10 ** 8, 0)


@pytest.mark.slow
def test_tail_lemma_bounds_the_prime_tail():
    # the primes in (1e8, 1e9] give a lower estimate of the full tail
    x, m = 10 ** 8, 1
    partial = 0.0
    for lo in range(x + 1, 10 ** 9, 10 ** 8):
        primes = primes_between(lo, lo + 10 ** 8 - 1).astype(np.float64)
        partial += float(np.sum(1.0 / (primes ** 2 * np.log(primes) ** m)))
    bound = float(tail_lemma(x, m))
    assert 0.5 * bound < partial < bound


@pytest.mark.slow
def test_accelerated_results_do_not_depend_on_segment_size():
    x = VALIDITY_THRESHOLD
    narrow = SeriesEngine(threads=4, segment_size=2 ** 18)
    wide = SeriesEngine(threads=4, segment_size=2 ** 22)
    assert _timing_free(narrow.run_sb(x)) == _timing_free(wide.run_sb(x))
    assert _timing_free(narrow.run_sa(x)) == _timing_free(wide.run_sa(x))


@pytest.mark.slow
def test_sa_at_one_hundred_million_contains_the_limit():
    result = SeriesEngine(threads=4).run_sa(10 ** 8)
    assert result.enclosure.contains("8.115653111459")
    assert result.enclosure.contains(SA_LIMIT)
    assert float(result.enclosure.width) < 1e-10
    assert result.certified_digits().startswith("8.1156531114")
