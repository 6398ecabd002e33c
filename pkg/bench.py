"""Throughput benchmarks: LCG remainder chain and prime counting by trial divisibility.

Both loops go through the scalar strategy methods, one call per operation, so
the numbers compare per-call cost of the strategies under the interpreter.
They are useful as relative orderings only; the interpreter's call overhead
dominates absolute timings.

Every report carries a checksum (final LCG state or prime count). Strategies
must agree on it for the same configuration; that agreement decides the exit
code, timing never does.
"""

import csv
import io
import json
import logging
import math
import platform
import statistics
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass

import numpy as np

import config
from strategies import get_strategy

log = logging.getLogger(__name__)

MASK32 = 0xFFFFFFFF
CSV_COLUMNS = ("benchmark", "strategy", "divisor", "iterations", "elapsed_ns", "ns_per_op", "checksum")
FORMATS = ("json", "csv", "human")


@dataclass(frozen=True)
class BenchReport:
    benchmark: str           # "lcg" or "primes"
    strategy: str
    divisor: int             # None for primes
    iterations: int
    elapsed_ns: int          # median over repeats
    checksum: int
    signed: bool = False
    limit: int = None        # primes only
    storage_bits: int = None  # primes only: bits kept per prime

    @property
    def ns_per_op(self):
        return self.elapsed_ns / self.iterations if self.iterations else 0.0

    def to_dict(self):
        out = asdict(self)
        out["ns_per_op"] = round(self.ns_per_op, 3)
        return out

    def config_key(self):
        return (self.benchmark, self.divisor, self.signed, self.limit,
                None if self.benchmark == "primes" else self.iterations)


# ---------------------------------------------------------------------------
# LCG benchmark
# ---------------------------------------------------------------------------

def _lcg_run(mod, x, a, b, iterations, signed):
    # strict dependency chain: each step consumes the previous remainder
    if signed:
        for _ in range(iterations):
            n = (a * x + b) & MASK32
            if n > 0x7FFFFFFF:
                n -= 1 << 32
            x = mod(n)
    else:
        for _ in range(iterations):
            x = mod((a * x + b) & MASK32)
    return x


def lcg_bench(d, strategy="lkk", iterations=config.LCG_ITERATIONS, signed=False,
              multiplier=None, increment=config.LCG_INCREMENT, seed=config.LCG_SEED,
              repeats=config.BENCH_REPEATS, warmup=config.LCG_WARMUP_ITERATIONS,
              clock=time.perf_counter_ns):
    """Run x <- (a*x + b) mod d with 32-bit wrapping arithmetic and time it.

    One untimed warmup of min(warmup, iterations) steps precedes `repeats`
    timed runs; the median is reported.
    """
    allowed = config.LCG_SIGNED_STRATEGIES if signed else config.LCG_STRATEGIES
    if strategy not in allowed:
        raise ValueError(f"lcg benchmark supports {', '.join(allowed)} "
                         f"for {'signed' if signed else 'unsigned'} divisors, not {strategy!r}")
    if d == 0:
        raise ValueError("lcg benchmark needs a non-zero divisor")
    low, high = (-(1 << 31), 1 << 31) if signed else (1, 1 << 32)
    if not low <= d < high:
        raise ValueError(f"divisor {d} outside the {'signed' if signed else 'unsigned'} 32-bit range")
    if iterations < 1 or repeats < 1:
        raise ValueError("iterations and repeats must be at least 1")
    if multiplier is None:
        multiplier = config.LCG_SIGNED_MULTIPLIER if signed else config.LCG_MULTIPLIER

    mod = get_strategy(strategy, d, config.N_BITS, signed).mod
    _lcg_run(mod, seed, multiplier, increment, min(warmup, iterations), signed)

    timings = []
    checksum = None
    for _ in range(repeats):
        start = clock()
        checksum = _lcg_run(mod, seed, multiplier, increment, iterations, signed)
        timings.append(clock() - start)

    report = BenchReport("lcg", strategy, d, iterations, int(statistics.median(timings)),
                         checksum, signed)
    log.info("lcg d=%d %s%s: %.2f ns/op, checksum %d", d, strategy,
             " (signed)" if signed else "", report.ns_per_op, checksum)
    return report


def _lcg_cell(args):
    d, strategy, kwargs = args
    return lcg_bench(d, strategy, **kwargs)


def lcg_suite(divisors, strategies, parallel_cells=False, **kwargs):
    """lcg_bench over every (divisor, strategy) cell.

    Cells run one after another unless parallel_cells is set; concurrent
    cells share the CPU and skew each other's timings.
    """
    cells = [(d, s, kwargs) for d in divisors for s in strategies]
    if not parallel_cells:
        return [_lcg_cell(cell) for cell in cells]
    with ProcessPoolExecutor() as pool:
        return list(pool.map(_lcg_cell, cells))


# ---------------------------------------------------------------------------
# Prime counting
# ---------------------------------------------------------------------------

def sieve(limit):
    """Boolean primality table for [0, limit)."""
    is_prime = np.ones(max(limit, 0), dtype=bool)
    is_prime[:2] = False
    for p in range(2, math.isqrt(max(limit - 1, 0)) + 1):
        if is_prime[p]:
            is_prime[p * p::p] = False
    return is_prime


def sieve_count(limit):
    return int(np.count_nonzero(sieve(limit)))


def _divisibility_test(strategy):
    if "divisible" in strategy.operations:
        return strategy.divisible
    mod = strategy.mod
    return lambda n: mod(n) == 0


def _count_primes(limit, strategy):
    tests = []       # one precomputed test per odd prime found so far
    checks = 0
    for n in range(3, limit, 2):
        is_prime = True
        for divisible in tests:
            checks += 1
            if divisible(n):
                is_prime = False
                break
        if is_prime:
            tests.append(_divisibility_test(get_strategy(strategy, n)))
    return 1 + len(tests), checks     # 2 is also prime


def prime_count_bench(limit=config.PRIME_LIMIT, strategy="lkk", repeats=config.BENCH_REPEATS,
                      clock=time.perf_counter_ns):
    """Count primes below limit by testing odd n against every smaller prime.

    Each prime's divisor record is built once, when the prime is found.
    iterations counts divisibility tests.
    """
    if strategy not in config.PRIME_STRATEGIES + ("gmw",):
        raise ValueError(f"prime benchmark does not support strategy {strategy!r}")
    if limit < 3:
        raise ValueError(f"prime limit must be at least 3, got {limit}")
    if repeats < 1:
        raise ValueError("repeats must be at least 1")

    timings = []
    count = checks = 0
    for _ in range(repeats):
        start = clock()
        count, checks = _count_primes(limit, strategy)
        timings.append(clock() - start)

    storage_bits = get_strategy(strategy, 3).storage_bits
    report = BenchReport("primes", strategy, None, checks, int(statistics.median(timings)),
                         count, limit=limit, storage_bits=storage_bits)
    log.info("primes below %d with %s: %d (%d tests, %.2f ns/test, %d bits/prime)",
             limit, strategy, count, checks, report.ns_per_op, report.storage_bits)
    return report


# ---------------------------------------------------------------------------
# Reporting
# ---------------------------------------------------------------------------

def _csv_row(r):
    divisor = "" if r.divisor is None else r.divisor
    return [r.benchmark, r.strategy, divisor, r.iterations, r.elapsed_ns,
            f"{r.ns_per_op:.3f}", r.checksum]


def emit_report(reports, format="json"):
    """Serialize reports; an empty format means JSON."""
    if not reports:
        raise ValueError("no reports to emit")
    format = format or "json"
    if format == "json":
        return json.dumps([r.to_dict() for r in reports], indent=2)
    if format == "csv":
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(CSV_COLUMNS)
        writer.writerows(_csv_row(r) for r in reports)
        return buf.getvalue()
    if format == "human":
        lines = [f"{'benchmark':<8} {'strategy':<9} {'divisor':>11} {'iterations':>11} "
                 f"{'ms':>10} {'ns/op':>9} checksum"]
        for r in reports:
            label = "-" if r.divisor is None else f"{r.divisor}{'s' if r.signed else ''}"
            line = (f"{r.benchmark:<8} {r.strategy:<9} {label:>11} {r.iterations:>11} "
                    f"{r.elapsed_ns / 1e6:>10.1f} {r.ns_per_op:>9.2f} {r.checksum}")
            if r.storage_bits is not None:
                line += f" ({r.storage_bits} bits/prime)"
            lines.append(line)
        return "\n".join(lines)
    raise ValueError(f"unknown report format {format!r}; choose from {', '.join(FORMATS)}")


def checksums_agree(reports):
    """True iff every configuration has one checksum and prime counts match the sieve."""
    groups = {}
    for r in reports:
        groups.setdefault(r.config_key(), []).append(r)

    ok = True
    for key, group in groups.items():
        sums = {r.strategy: r.checksum for r in group}
        if len(set(sums.values())) > 1:
            log.error("checksum disagreement for %s: %s", key, sums)
            ok = False
    for r in reports:
        if r.benchmark == "primes":
            expected = sieve_count(r.limit)
            if r.checksum != expected:
                log.error("%s counted %d primes below %d, sieve says %d",
                          r.strategy, r.checksum, r.limit, expected)
                ok = False
    return ok


def check_envelope(reports):
    """Report-only performance expectations. Returns warning strings, never raises."""
    warnings = []
    by_cell = {(r.benchmark, r.divisor, r.signed, r.strategy): r for r in reports}

    contested = wins = 0
    for (bench, d, signed, strategy), r in by_cell.items():
        if bench != "lcg" or strategy != "lkk" or signed or d not in config.ENVELOPE_LCG_DIVISORS:
            continue
        if d & (d - 1) == 0:
            continue
        hw = by_cell.get(("lcg", d, False, "hardware"))
        if hw is None:
            continue
        contested += 1
        wins += r.elapsed_ns < hw.elapsed_ns
    if contested and wins / contested < config.ENVELOPE_LCG_WIN_FRACTION:
        warnings.append(f"lkk beat hardware division on {wins}/{contested} non-power-of-two "
                        f"divisors, below {config.ENVELOPE_LCG_WIN_FRACTION:.0%}")

    primes = {r.strategy: r for r in reports if r.benchmark == "primes"}
    if "lkk" in primes and "gm" in primes:
        ratio = primes["lkk"].elapsed_ns / max(primes["gm"].elapsed_ns, 1)
        if ratio > config.ENVELOPE_PRIME_SLOWDOWN:
            warnings.append(f"lkk prime counting took {ratio:.2f}x the time of gm "
                            f"(limit {config.ENVELOPE_PRIME_SLOWDOWN:.2f}x)")

    machine = platform.machine().lower()
    if warnings and machine not in ("x86_64", "amd64"):
        warnings.append(f"host is {machine or 'unknown'}, not x86-64; envelope is informational")
    for w in warnings:
        log.warning("performance envelope: %s", w)
    return warnings
