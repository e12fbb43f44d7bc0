# tests/test_bounds.py
import mpmath
import pytest

from src.gpfsums.bounds import (
    BOUND_FAMILIES,
    BoundFamily,
    MertensBoundsChecker,
    check_mertens_bounds,
    margin_at,
    theta,
)
from src.gpfsums.engine import SeriesEngine
from src.gpfsums.errors import ConfigurationError, PreconditionError
from src.gpfsums.sieve import next_prime_after, primes_between


@pytest.fixture(scope="module")
def fast_engine():
    return SeriesEngine(threads=2, block_span=2 ** 20)


@pytest.fixture(scope="module")
def dusart_report(fast_engine):
    return check_mertens_bounds(2_278_382, 3_000_000, family="dusart", engine=fast_engine)


def test_dusart_bounds_hold_past_their_threshold(dusart_report):
    report = dusart_report
    assert not report.violations
    assert report.primes_checked == len(primes_between(2_278_382, 3_000_000))
    assert report.min_upper_margin > 0
    assert report.min_lower_margin > 0
    assert 2_278_382 <= report.argmin_upper <= 3_000_000
    assert len(report.samples) == 10


def test_tight_bounds_hold_past_their_threshold(fast_engine):
    report = check_mertens_bounds(60_000_000, 60_500_000, engine=fast_engine)
    assert report.family == "tight"
    assert report.primes_checked > 0
    assert not report.violations
    assert report.to_dict()["first_violation"] is None


def test_margin_at_agrees_with_the_scan(dusart_report, small_engine):
    p = dusart_report.argmin_upper
    upper, _ = margin_at(p, small_engine.mertens_product(p), family="dusart")
    assert upper == pytest.approx(dusart_report.min_upper_margin, abs=1e-12)


def test_prime_endpoints_are_the_worst_case(dusart_report, fast_engine):
    for p, upper, lower in dusart_report.samples[:3]:
        q = next_prime_after(p)
        product = fast_engine.mertens_product(p)
        assert upper == pytest.approx(margin_at(p, product, "dusart")[0], abs=1e-12)
        assert lower == pytest.approx(margin_at(q, product, "dusart")[1], abs=1e-12)
        for x in (p + 0.5, (p + q) / 2, q - 0.5):
            inside_upper, inside_lower = margin_at(x, product, "dusart")
            assert inside_upper >= margin_at(p, product, "dusart")[0]
            assert inside_lower >= margin_at(q, product, "dusart")[1]


def test_running_product_agrees_with_the_engine(fast_engine):
    report = check_mertens_bounds(2_278_382, 4_500_000, "dusart", fast_engine)
    assert len(report.block_products) >= 3
    with mpmath.workprec(200):
        for p, product in report.block_products:
            expected = fast_engine.mertens_product(p).to_mpf()
            assert abs(product.to_mpf() / expected - 1) <= mpmath.mpf("1e-26"), p


def test_violations_are_reported(monkeypatch):
    monkeypatch.setitem(BOUND_FAMILIES, "tight", BoundFamily("tight", 0, 2, "tight bounds from x = 2"))
    report = MertensBoundsChecker(SeriesEngine(block_span=2 ** 12, segment_size=2 ** 16)).check(2, 1000)
    # M(2) = 2 exceeds e^gamma ln 2 (1 + 0.0561/ln^3 2)
    assert report.violations
    assert report.first_violation == 2
    assert report.violation_side == "upper"
    assert report.min_upper_margin < 0


def test_results_do_not_depend_on_threads():
    one = check_mertens_bounds(
        2_278_382, 2_500_000, "dusart", SeriesEngine(threads=1, block_span=2 ** 16)
    ).to_dict()
    three = check_mertens_bounds(
        2_278_382, 2_500_000, "dusart", SeriesEngine(threads=3, block_span=2 ** 16, segment_size=2 ** 17)
    ).to_dict()
    one.pop("elapsed_ms")
    three.pop("elapsed_ms")
    assert one == three


def test_range_checks(fast_engine):
    with pytest.raises(PreconditionError):
        check_mertens_bounds(10 ** 6, 2 * 10 ** 6, engine=fast_engine)
    with pytest.raises(PreconditionError):
        check_mertens_bounds(46_000_000, 47_000_000, family="axler", engine=fast_engine)
    empty = check_mertens_bounds(52_000_000, 51_900_000, engine=fast_engine)
    assert empty.primes_checked == 0 and not empty.violations
    with pytest.raises(ConfigurationError):
        check_mertens_bounds(52_000_000, 2 * 10 ** 9, engine=fast_engine)
    with pytest.raises(ConfigurationError):
        MertensBoundsChecker(fast_engine, family="robin")
    with pytest.raises(ConfigurationError):
        margin_at(10 ** 8, 1.0, family="robin")


def test_theta(small_engine):
    with mpmath.workprec(200):
        expected = mpmath.fsum(mpmath.log(p) for p in primes_between(2, 5000).tolist())
        assert abs(theta(5000, small_engine).to_mpf() - expected) < mpmath.mpf("1e-26")
    with pytest.raises(PreconditionError):
        theta(1, small_engine)


@pytest.mark.slow
def test_tight_bounds_up_to_one_hundred_million():
    report = check_mertens_bounds(51_841_229, 10 ** 8, engine=SeriesEngine(threads=4))
    assert not report.violations
    assert report.primes_checked == len(primes_between(51_841_229, 10 ** 8))


def test_theta_ratio_increases_toward_one(fast_engine):
    ratios = [float(theta(10 ** k, fast_engine)) / 10 ** k for k in (5, 6, 7)]
    assert ratios == sorted(ratios)
    assert len(set(ratios)) == 3
    assert ratios[-1] < 1


@pytest.mark.slow
def test_theta_ratio_at_one_hundred_million(fast_engine):
    below = float(theta(10 ** 7, fast_engine)) / 10 ** 7
    ratio = float(theta(10 ** 8, fast_engine)) / 10 ** 8
    assert below < ratio < 1
