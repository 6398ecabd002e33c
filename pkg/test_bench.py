import csv
import io
import itertools
import json

import pytest

import config
from bench import (CSV_COLUMNS, BenchReport, check_envelope, checksums_agree, emit_report,
                   lcg_bench, lcg_suite, prime_count_bench, sieve, sieve_count)


def lcg_reference(d, iterations, signed=False, a=None, b=config.LCG_INCREMENT, x=config.LCG_SEED):
    """The LCG chain computed with plain Python division."""
    if a is None:
        a = config.LCG_SIGNED_MULTIPLIER if signed else config.LCG_MULTIPLIER
    for _ in range(iterations):
        n = (a * x + b) % 2**32
        if signed:
            n = n - 2**32 if n >= 2**31 else n
            r = abs(n) % abs(d)
            x = -r if n < 0 else r
        else:
            x = n % d
    return x


def fake_clock(step=100):
    return itertools.count(0, step).__next__


# ---------------------------------------------------------------------------
# LCG
# ---------------------------------------------------------------------------

@pytest.mark.parametrize("strategy", config.LCG_STRATEGIES)
@pytest.mark.parametrize("d", [6, 19, 95, 128, 4096, 2**31 + 1])
def test_lcg_checksum_matches_reference(strategy, d):
    report = lcg_bench(d, strategy, iterations=2000, repeats=1, warmup=0)
    assert report.checksum == lcg_reference(d, 2000)
    assert report.iterations == 2000 and report.divisor == d


@pytest.mark.parametrize("strategy", config.LCG_SIGNED_STRATEGIES)
@pytest.mark.parametrize("d", [6, -19, 95, -128, 4096, -2**31])
def test_signed_lcg_checksum_matches_reference(strategy, d):
    report = lcg_bench(d, strategy, iterations=2000, signed=True, repeats=1, warmup=0)
    assert report.checksum == lcg_reference(d, 2000, signed=True)
    assert report.signed


def test_multiplier_override():
    report = lcg_bench(95, "lkk", iterations=500, multiplier=32, repeats=1, warmup=0)
    assert report.checksum == lcg_reference(95, 500, a=32)


def test_lcg_reports_median_of_repeats():
    report = lcg_bench(6, "lkk", iterations=10, repeats=3, warmup=5, clock=fake_clock())
    assert report.elapsed_ns == 100
    assert report.ns_per_op == 10.0


@pytest.mark.parametrize("kwargs", [
    {"d": 0},
    {"d": 2**32},
    {"d": 7, "strategy": "gm"},
    {"d": 7, "strategy": "gmw", "signed": True},
    {"d": 2**31, "signed": True},
    {"d": 7, "iterations": 0},
    {"d": 7, "repeats": 0},
])
def test_lcg_rejects_bad_arguments(kwargs):
    with pytest.raises(ValueError):
        lcg_bench(**{"strategy": "lkk", "iterations": 10, "warmup": 0, **kwargs})


def test_lcg_suite_checksums_agree():
    reports = lcg_suite(config.LCG_DIVISORS, config.LCG_STRATEGIES,
                        iterations=10_000, repeats=1, warmup=0)
    assert len(reports) == len(config.LCG_DIVISORS) * len(config.LCG_STRATEGIES)
    assert checksums_agree(reports)


def test_lcg_suite_parallel_cells():
    kwargs = {"iterations": 1000, "repeats": 1, "warmup": 0}
    sequential = lcg_suite((6, 95), ("lkk", "hardware"), **kwargs)
    parallel = lcg_suite((6, 95), ("lkk", "hardware"), parallel_cells=True, **kwargs)
    assert [r.checksum for r in parallel] == [r.checksum for r in sequential]


@pytest.mark.slow
def test_lcg_million_iterations():
    reports = lcg_suite(config.LCG_DIVISORS, config.LCG_STRATEGIES,
                        iterations=1_000_000, repeats=1, warmup=0)
    reports += lcg_suite(config.LCG_DIVISORS, config.LCG_SIGNED_STRATEGIES, signed=True,
                         iterations=1_000_000, repeats=1, warmup=0)
    assert checksums_agree(reports)


# ---------------------------------------------------------------------------
# Prime counting
# ---------------------------------------------------------------------------

def test_sieve():
    assert list(sieve(12).nonzero()[0]) == [2, 3, 5, 7, 11]
    assert sieve_count(10) == 4
    assert sieve_count(2000) == 303
    assert sieve_count(40_000) == 4203


@pytest.mark.parametrize("strategy", ["lkk", "gm", "hardware", "gmw"])
def test_prime_count(strategy):
    assert prime_count_bench(10, strategy, repeats=1).checksum == 4
    report = prime_count_bench(2000, strategy, repeats=1)
    assert report.checksum == 303
    assert report.limit == 2000 and report.divisor is None


def test_prime_count_tallies_divisibility_tests():
    # 5: {3}; 7: {3, 5}; 9: {3}
    assert prime_count_bench(10, "lkk", repeats=1).iterations == 4


@pytest.mark.parametrize("strategy, bits", [("lkk", 64), ("gm", 69), ("hardware", 32), ("gmw", 40)])
def test_prime_count_reports_storage_per_prime(strategy, bits):
    report = prime_count_bench(100, strategy, repeats=1)
    assert report.storage_bits == bits
    assert json.loads(emit_report([report]))[0]["storage_bits"] == bits
    assert f"({bits} bits/prime)" in emit_report([report], "human")
    assert "bits/prime" not in emit_report([_lcg("lkk", 6, 5)], "human")


def test_prime_count_rejects_bad_arguments():
    with pytest.raises(ValueError):
        prime_count_bench(2, "lkk")
    with pytest.raises(ValueError):
        prime_count_bench(100, "lkk-minimal")
    with pytest.raises(ValueError):
        prime_count_bench(100, "lkk", repeats=0)


@pytest.mark.slow
def test_prime_count_default_limit():
    for strategy in config.PRIME_STRATEGIES:
        assert prime_count_bench(strategy=strategy, repeats=1).checksum == 4203


# ---------------------------------------------------------------------------
# Reporting
# ---------------------------------------------------------------------------

def _lcg(strategy, d, checksum, elapsed_ns=1000, signed=False):
    return BenchReport("lcg", strategy, d, 100, elapsed_ns, checksum, signed)


def test_csv_report():
    out = emit_report([_lcg("lkk", 6, 5), _lcg("hardware", 6, 5)], "csv")
    rows = list(csv.reader(io.StringIO(out)))
    assert rows[0] == list(CSV_COLUMNS)
    assert rows[1] == ["lcg", "lkk", "6", "100", "1000", "10.000", "5"]
    assert len(rows) == 3


def test_csv_report_for_primes_leaves_divisor_blank():
    report = BenchReport("primes", "gm", None, 4, 400, 4, limit=10)
    rows = list(csv.reader(io.StringIO(emit_report([report], "csv"))))
    assert rows[1][2] == ""


def test_json_is_the_default():
    for fmt in ("", None, "json"):
        data = json.loads(emit_report([_lcg("lkk", 6, 5)], fmt))
        assert data[0]["checksum"] == 5 and data[0]["ns_per_op"] == 10.0


def test_human_report():
    out = emit_report([_lcg("lkk", -6, 5, signed=True)], "human")
    assert out.splitlines()[0].startswith("benchmark")
    assert "-6s" in out


def test_emit_report_errors():
    with pytest.raises(ValueError):
        emit_report([], "json")
    with pytest.raises(ValueError):
        emit_report([_lcg("lkk", 6, 5)], "xml")


def test_checksum_disagreement():
    assert checksums_agree([_lcg("lkk", 6, 5), _lcg("hardware", 6, 5), _lcg("lkk", 7, 1)])
    assert not checksums_agree([_lcg("lkk", 6, 5), _lcg("hardware", 6, 4)])
    wrong = BenchReport("primes", "lkk", None, 4, 400, 5, limit=10)
    assert not checksums_agree([wrong])


def test_envelope_warnings():
    slow = [_lcg("lkk", d, 0, elapsed_ns=2000) for d in (3, 5, 6, 7)]
    fast = [_lcg("hardware", d, 0, elapsed_ns=1000) for d in (3, 5, 6, 7)]
    warnings = check_envelope(slow + fast)
    assert warnings and "0/4" in warnings[0]

    quick = [_lcg("lkk", d, 0, elapsed_ns=500) for d in (3, 5, 6, 7)]
    assert check_envelope(quick + fast) == []


def test_envelope_prime_slowdown():
    lkk = BenchReport("primes", "lkk", None, 4, 2000, 4, limit=10)
    gm = BenchReport("primes", "gm", None, 4, 1000, 4, limit=10)
    assert any("gm" in w for w in check_envelope([lkk, gm]))
    assert check_envelope([gm, BenchReport("primes", "lkk", None, 4, 1000, 4, limit=10)]) == []
