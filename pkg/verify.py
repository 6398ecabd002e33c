"""Bit-exact verification of every strategy against native division.

A sweep picks a width, a divisor set and a numerator coverage, evaluates each
strategy's vectorized kernels chunk by chunk, and compares quotient, remainder
and divisibility results with numpy's own division. Boundary numerators are
also pushed through the scalar APIs so the pure-Python paths share the report.

Narrow widths (8, 12, 16 bits) reuse the same formulas with N-parameterized
constants, which makes exhaustive sweeps over every (d, n) pair tractable.

Reports keep the first mismatches per strategy ordered by (signed, operation,
d, n), so merging partial reports is associative and order-independent: a
sweep split across worker processes yields the same report as a sequential
run.
"""

import functools
import json
import logging
import math
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, field

import numpy as np

import config
from baseline import multiplicative_inverse
from bench import sieve
from magic import (check_signed_condition, check_unsigned_condition, generic_divrem_array,
                   generic_signed_mod_array, is_power_of_two, minimal_signed_params,
                   minimal_unsigned_params, reciprocal_params)
from strategies import SIGNED_STRATEGIES, STRATEGIES, get_strategy
from strategies.hardware import truncated_divmod, truncated_divmod_array
from wideint import mask

log = logging.getLogger(__name__)

ORACLE = "oracle"
DIVISOR_SETS = ("all", "structured")
COVERAGES = ("exhaustive", "sampled")
SIGNEDNESS = ("unsigned", "signed", "both")
MIN_WIDTH = 2


def oracle_divmod(n, d):
    """Native division: floor for non-negative operands, truncated for signed."""
    if d == 0:
        raise ValueError("division by zero")
    return truncated_divmod(n, d)


# ---------------------------------------------------------------------------
# Sweep parameters
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class SweepSpec:
    width: int = config.N_BITS
    divisors: object = "structured"          # tuple of ints, "all" or "structured"
    numerators: str = "sampled"              # "exhaustive" or "sampled" (boundary + random)
    samples: int = config.VERIFY_SAMPLES
    seed: int = config.VERIFY_SEED
    signedness: str = "unsigned"
    strategies: tuple = config.VERIFY_STRATEGIES
    l_offset: int = 0                        # only used by lkk-minimal
    slow: bool = False

    @property
    def sides(self):
        return {"unsigned": (False,), "signed": (True,), "both": (False, True)}[self.signedness]

    def validate(self):
        if not MIN_WIDTH <= self.width <= config.N_BITS:
            raise ValueError(f"width must be in [{MIN_WIDTH}, {config.N_BITS}], got {self.width}")
        if self.signedness not in SIGNEDNESS:
            raise ValueError(f"signedness must be one of {SIGNEDNESS}, got {self.signedness!r}")
        if self.numerators not in COVERAGES:
            raise ValueError(f"numerators must be one of {COVERAGES}, got {self.numerators!r}")
        if self.samples < 0:
            raise ValueError("sample count must be non-negative")
        if not self.strategies:
            raise ValueError("no strategies selected")
        for name in self.strategies:
            if name != ORACLE and name not in STRATEGIES:
                raise ValueError(f"unknown strategy {name!r}")
        if self.width + self.l_offset > 2 * config.MAX_MAGIC_WIDTH:
            raise ValueError(f"L offset {self.l_offset} needs more than "
                             f"{2 * config.MAX_MAGIC_WIDTH} fractional bits at width {self.width}")
        if isinstance(self.divisors, str):
            if self.divisors not in DIVISOR_SETS:
                raise ValueError(f"divisor set must be a list or one of {DIVISOR_SETS}")
            if self.divisors == "all" and self.width > config.MAX_EXHAUSTIVE_DIVISOR_WIDTH:
                raise ValueError(f"'all' divisors needs width <= "
                                 f"{config.MAX_EXHAUSTIVE_DIVISOR_WIDTH}, got {self.width}")
        else:
            if not self.divisors:
                raise ValueError("empty divisor list")
            for signed in self.sides:
                for d in self.divisors:
                    _check_divisor(d, self.width, signed)
        if (self.numerators == "exhaustive" and self.width > config.MAX_EXHAUSTIVE_DIVISOR_WIDTH
                and not self.slow):
            raise ValueError(f"exhaustive numerators at width {self.width} needs slow mode")

    def to_dict(self):
        out = asdict(self)
        if not isinstance(self.divisors, str):
            out["divisors"] = list(self.divisors)
        out["strategies"] = list(self.strategies)
        return out


def _check_divisor(d, width, signed):
    if d == 0:
        raise ValueError("divisor 0: division by zero is undefined")
    if signed:
        half = 1 << (width - 1)
        ok = -half <= d < half
    else:
        ok = 0 < d < 1 << width
    if not ok:
        kind = "signed" if signed else "unsigned"
        raise ValueError(f"divisor {d} outside {kind} {width}-bit range")


# ---------------------------------------------------------------------------
# Divisor and numerator sets
# ---------------------------------------------------------------------------

@functools.lru_cache(maxsize=1)
def _prime_table():
    return sieve((1 << 16) + 2)


def largest_prime_below(limit):
    """Largest prime < limit, for limit <= 2^32 + 1."""
    table = _prime_table()
    small = np.flatnonzero(table)
    n = limit - 1
    while n > 1:
        if n < table.size:
            if table[n]:
                return n
        elif np.all(n % small[small * small <= n]):
            return n
        n -= 1
    raise ValueError(f"no prime below {limit}")


def structured_divisors(width, signed=False):
    """Small divisors, powers of two and their neighbours, the top of the range
    and the largest prime under each power of two."""
    top = 1 << (width - 1 if signed else width)
    found = set(range(2, min(config.STRUCTURED_SMALL_MAX, top - 1) + 1))
    for k in range(2, width):
        found.update({(1 << k) - 1, 1 << k, (1 << k) + 1})
    for k in range(2, width + 1):
        found.add(largest_prime_below(1 << k))
    found.update({(1 << width) - 1, (1 << width) - 2})
    positive = sorted(d for d in found if 0 < d < top)
    if not signed:
        return positive
    return sorted({-top, -1, 1} | set(positive) | {-d for d in positive})


def divisor_list(spec, signed):
    if spec.divisors == "all":
        if signed:
            half = 1 << (spec.width - 1)
            return [d for d in range(-half, half) if d != 0]
        return list(range(1, 1 << spec.width))
    if spec.divisors == "structured":
        return structured_divisors(spec.width, signed)
    return sorted(spec.divisors)


def boundary_numerators(d, width, signed=False):
    """0, 1, d-1, d, d+1 and the edges of the signed/unsigned halves, in range."""
    pd = abs(d)
    half = 1 << (width - 1)
    values = {0, 1, pd - 1, pd, pd + 1, half - 1, half, (1 << width) - 1}
    if signed:
        values |= {-v for v in values}
        values.add(-half)
        low, high = -half, half
    else:
        low, high = 0, 1 << width
    return sorted(v for v in values if low <= v < high)


def _rng(seed, width, signed, d):
    entropy = [seed & mask(64), width, int(signed), d & mask(64)]
    return np.random.Generator(np.random.Philox(np.random.SeedSequence(entropy)))


def numerator_chunks(spec, d, signed):
    """Yield numerator arrays: uint64 for unsigned sweeps, int64 for signed."""
    dtype = np.int64 if signed else np.uint64
    low = -(1 << (spec.width - 1)) if signed else 0
    high = low + (1 << spec.width)
    if spec.numerators == "exhaustive":
        for start in range(low, high, config.VERIFY_CHUNK):
            yield np.arange(start, min(start + config.VERIFY_CHUNK, high), dtype=dtype)
        return

    yield np.array(boundary_numerators(d, spec.width, signed), dtype=dtype)
    rng = _rng(spec.seed, spec.width, signed, d)
    remaining = spec.samples
    while remaining > 0:
        size = min(remaining, config.VERIFY_CHUNK)
        yield rng.integers(low, high, size=size, dtype=dtype)
        remaining -= size


# ---------------------------------------------------------------------------
# Reports
# ---------------------------------------------------------------------------

@dataclass(frozen=True, order=True)
class Mismatch:
    strategy: str
    signed: bool
    operation: str
    d: int
    n: int
    expected: int
    actual: int


@dataclass
class MismatchReport:
    spec: SweepSpec
    counts: dict = field(default_factory=dict)      # strategy -> mismatches
    checked: dict = field(default_factory=dict)     # strategy -> comparisons
    mismatches: list = field(default_factory=list)  # first VERIFY_MAX_REPORTED per strategy
    elapsed_ns: int = 0

    @property
    def passed(self):
        return not self.mismatches

    @property
    def mismatch_count(self):
        return sum(self.counts.values())

    def merge(self, other):
        counts = dict(self.counts)
        checked = dict(self.checked)
        for name, value in other.counts.items():
            counts[name] = counts.get(name, 0) + value
        for name, value in other.checked.items():
            checked[name] = checked.get(name, 0) + value
        return MismatchReport(self.spec, counts, checked,
                              _trim(self.mismatches + other.mismatches),
                              self.elapsed_ns + other.elapsed_ns)

    def first_mismatches(self, strategy):
        return [m for m in self.mismatches if m.strategy == strategy]

    def to_records(self):
        spec = self.spec.to_dict()
        return [{
            "spec": spec,
            "strategy": name,
            "mismatch_count": self.counts.get(name, 0),
            "first_mismatches": [asdict(m) for m in self.first_mismatches(name)],
            "elapsed_ns": self.elapsed_ns,
            "seed": self.spec.seed,
            "checked": self.checked.get(name, 0),
        } for name in self.spec.strategies]

    def to_json(self):
        return json.dumps(self.to_records(), indent=2)


def _trim(mismatches):
    kept = {}
    for m in sorted(mismatches):
        bucket = kept.setdefault(m.strategy, [])
        if len(bucket) < config.VERIFY_MAX_REPORTED:
            bucket.append(m)
    return [m for name in sorted(kept) for m in kept[name]]


class _Tally:
    """Mutable accumulator for one partition."""

    def __init__(self):
        self.counts = {}
        self.checked = {}
        self.mismatches = []

    def compare(self, name, signed, op, d, n, expected, actual):
        expected = np.asarray(expected)
        actual = np.asarray(actual)
        self.checked[name] = self.checked.get(name, 0) + n.size
        bad = np.flatnonzero(expected != actual)
        self.counts[name] = self.counts.get(name, 0) + bad.size
        if not bad.size:
            return
        bad = bad[np.argsort(n[bad], kind="stable")][:config.VERIFY_MAX_REPORTED]
        self.mismatches.extend(
            Mismatch(name, signed, op, d, int(n[i]), int(expected[i]), int(actual[i])) for i in bad
        )
        # keep memory bounded on badly broken sweeps
        if len(self.mismatches) > 10 * config.VERIFY_MAX_REPORTED:
            self.mismatches = _trim(self.mismatches)

    def compare_scalar(self, name, signed, op, d, n, expected, actual):
        self.checked[name] = self.checked.get(name, 0) + 1
        self.counts.setdefault(name, 0)
        if int(expected) != int(actual):
            self.counts[name] += 1
            self.mismatches.append(Mismatch(name, signed, op, d, n, int(expected), int(actual)))

    def report(self, spec, elapsed_ns):
        return MismatchReport(spec, self.counts, self.checked, _trim(self.mismatches), elapsed_ns)


# ---------------------------------------------------------------------------
# Sweep execution
# ---------------------------------------------------------------------------

def _reference(n, d, signed):
    if signed:
        return truncated_divmod_array(n, d)
    dd = np.uint64(d)
    q = n // dd
    return q, n - q * dd


def _postconditions(n, d, q, r):
    """q*d + r == n, |r| < |d| and r is zero or has the sign of n."""
    return q * d + r == n and abs(r) < abs(d) and (r == 0 or (r < 0) == (n < 0))


def _check_oracle(tally, signed, d, n, q, r):
    if signed:
        ok = ((q * np.int64(d) + r == n) & (np.abs(r) < abs(d))
              & ((r == 0) | (np.sign(r) == np.sign(n))))
    else:
        ok = (q * np.uint64(d) + r == n) & (r < np.uint64(d))
    tally.compare(ORACLE, signed, "postcondition", d, n, np.ones_like(ok), ok)


def _build(spec, name, d, signed):
    options = {"l_offset": spec.l_offset} if name == "lkk-minimal" and spec.l_offset else {}
    try:
        return get_strategy(name, d, spec.width, signed, **options)
    except ValueError as e:
        if options:
            log.debug("skipping d=%d for %s: %s", d, name, e)
            return None
        raise


def _sweep_divisor(spec, tally, d, signed):
    names = [s for s in spec.strategies if s != ORACLE and (not signed or s in SIGNED_STRATEGIES)]
    built = [(name, _build(spec, name, d, signed)) for name in names]
    built = [(name, s) for name, s in built if s is not None]

    for n in numerator_chunks(spec, d, signed):
        q, r = _reference(n, d, signed)
        divisible = r == 0
        if ORACLE in spec.strategies:
            _check_oracle(tally, signed, d, n, q, r)
        for name, strategy in built:
            if "mod" in strategy.operations:
                tally.compare(name, signed, "mod", d, n, r, strategy.mod_array(n))
            if "div" in strategy.operations:
                tally.compare(name, signed, "div", d, n, q, strategy.div_array(n))
            if "divisible" in strategy.operations:
                tally.compare(name, signed, "divisible", d, n, divisible, strategy.divisible_array(n))

    # the scalar library paths on the boundary numerators
    for n in boundary_numerators(d, spec.width, signed):
        q, r = oracle_divmod(n, d)
        if ORACLE in spec.strategies:
            tally.compare_scalar(ORACLE, signed, "postcondition:scalar", d, n,
                                 True, _postconditions(n, d, q, r))
        for name, strategy in built:
            if "mod" in strategy.operations:
                tally.compare_scalar(name, signed, "mod:scalar", d, n, r, strategy.mod(n))
            if "div" in strategy.operations:
                tally.compare_scalar(name, signed, "div:scalar", d, n, q, strategy.div(n))
            if "divisible" in strategy.operations:
                tally.compare_scalar(name, signed, "divisible:scalar", d, n, r == 0, strategy.divisible(n))


def _run_partition(spec, tasks):
    start = time.perf_counter_ns()
    tally = _Tally()
    for signed, d in tasks:
        _sweep_divisor(spec, tally, d, signed)
    return tally.report(spec, time.perf_counter_ns() - start)


def _partition(tasks, parts):
    size = max(1, math.ceil(len(tasks) / parts))
    return [tasks[i:i + size] for i in range(0, len(tasks), size)]


def run_sweep(spec, workers=None):
    """Compare every selected strategy with the oracle over spec's domain."""
    spec.validate()
    workers = workers or config.VERIFY_WORKERS
    tasks = [(signed, d) for signed in spec.sides for d in divisor_list(spec, signed)]
    skipped = [s for s in spec.strategies if s != ORACLE and s not in SIGNED_STRATEGIES]
    if True in spec.sides and skipped:
        log.warning("signed sweep skips unsigned-only strategies: %s", ", ".join(skipped))
    log.info("sweep: width=%d, %d divisor(s), %s numerators, %s, strategies=%s, seed=%#x",
             spec.width, len(tasks), spec.numerators, spec.signedness,
             ",".join(spec.strategies), spec.seed)

    start = time.perf_counter_ns()
    report = MismatchReport(spec)
    if workers <= 1:
        report = report.merge(_run_partition(spec, tasks))
    else:
        chunks = _partition(tasks, workers * 4)
        with ProcessPoolExecutor(max_workers=workers) as pool:
            for part in pool.map(_run_partition, [spec] * len(chunks), chunks):
                report = report.merge(part)
    report.elapsed_ns = time.perf_counter_ns() - start

    if report.passed:
        log.info("sweep passed: %d comparisons in %.1f s",
                 sum(report.checked.values()), report.elapsed_ns / 1e9)
    else:
        log.error("sweep found %d mismatch(es): %s", report.mismatch_count,
                  ", ".join(f"{k}={v}" for k, v in sorted(report.counts.items()) if v))
    return report


# ---------------------------------------------------------------------------
# Parameter checks
# ---------------------------------------------------------------------------

@dataclass
class CheckReport:
    name: str
    params: dict
    checked: int = 0
    failures: list = field(default_factory=list)
    failure_count: int = 0
    elapsed_ns: int = 0

    @property
    def passed(self):
        return self.failure_count == 0

    def fail(self, **detail):
        self.failure_count += 1
        if len(self.failures) < config.VERIFY_MAX_REPORTED:
            self.failures.append(detail)

    def to_dict(self):
        out = asdict(self)
        out["passed"] = self.passed
        return out


def _unsigned_minimality(report, d, n_bits, exhaustive, n_all):
    p = minimal_unsigned_params(d, n_bits)
    if not p.valid:
        report.fail(d=d, reason="minimal parameters invalid", l_bits=p.l_bits)
        return
    if not is_power_of_two(d):
        for lower in range(p.l_bits - 1, -1, -1):
            c = -(-(1 << (n_bits + lower)) // d)
            if check_unsigned_condition(c, d, n_bits, lower):
                report.fail(d=d, reason="condition holds below minimal L", l_bits=p.l_bits, lower=lower)
                return
    if not exhaustive:
        return
    q, r = generic_divrem_array(n_all, p)
    if np.any(q != n_all // np.uint64(d)) or np.any(r != n_all % np.uint64(d)):
        report.fail(d=d, reason="minimal parameters disagree with division", l_bits=p.l_bits)
    if is_power_of_two(d) or p.l_bits == 0:
        return
    under = reciprocal_params(d, n_bits, p.l_bits - 1)
    q, r = generic_divrem_array(n_all, under, check=False)
    if np.all(q == n_all // np.uint64(d)) and np.all(r == n_all % np.uint64(d)):
        report.fail(d=d, reason="no counterexample one bit below minimal L", l_bits=p.l_bits)


def _signed_minimality(report, d, n_bits, exhaustive, n_all):
    p = minimal_signed_params(d, n_bits)
    if not p.valid:
        report.fail(d=d, reason="minimal parameters invalid", l_bits=p.l_bits)
        return
    for lower in range(p.l_bits - 1, -1, -1):
        c = (1 << (n_bits - 1 + lower)) // d + 1
        if check_signed_condition(c, d, n_bits, lower):
            report.fail(d=d, reason="condition holds below minimal L", l_bits=p.l_bits, lower=lower)
            return
    if exhaustive and np.any(generic_signed_mod_array(n_all, p) != np.fmod(n_all, np.int64(d))):
        report.fail(d=d, reason="minimal parameters disagree with division", l_bits=p.l_bits)


def minimality_sweep(n_bits, signed=False, tightness=None):
    """Confirm the minimizer for every divisor at width N.

    Checks that the returned L is valid and that no smaller L satisfies the
    condition. With tightness on (default for N <= TIGHTNESS_MAX_WIDTH) the
    parameters are also evaluated on every numerator, and for unsigned
    non-power-of-two divisors L - 1 must produce a wrong result somewhere.
    """
    if not MIN_WIDTH <= n_bits <= config.N_BITS:
        raise ValueError(f"width must be in [{MIN_WIDTH}, {config.N_BITS}], got {n_bits}")
    if tightness is None:
        tightness = n_bits <= config.TIGHTNESS_MAX_WIDTH
    kind = "signed" if signed else "unsigned"
    report = CheckReport(f"minimality-{kind}", {"n_bits": n_bits, "signed": signed, "tightness": tightness})
    start = time.perf_counter_ns()

    if signed:
        half = 1 << (n_bits - 1)
        n_all = np.arange(-half, half, dtype=np.int64) if tightness else None
        for d in range(1, half):
            _signed_minimality(report, d, n_bits, tightness, n_all)
            report.checked += 1
    else:
        n_all = np.arange(0, 1 << n_bits, dtype=np.uint64) if tightness else None
        for d in range(1, 1 << n_bits):
            _unsigned_minimality(report, d, n_bits, tightness, n_all)
            report.checked += 1

    report.elapsed_ns = time.perf_counter_ns() - start
    log.info("%s: %d divisor(s), %d failure(s)", report.name, report.checked, report.failure_count)
    return report


def inverse_sweep(n_bits=config.N_BITS, exhaustive_below=config.INVERSE_EXHAUSTIVE_BELOW,
                  samples=config.INVERSE_RANDOM_SAMPLES, seed=config.VERIFY_SEED):
    """Newton inverses against pow(d, -1, 2^N) for small odd d and random odd d."""
    report = CheckReport("inverse", {"n_bits": n_bits, "exhaustive_below": exhaustive_below,
                                     "samples": samples, "seed": seed})
    start = time.perf_counter_ns()
    modulus = 1 << n_bits
    rng = _rng(seed, n_bits, False, 0)
    random_odd = rng.integers(0, modulus >> 1, size=samples, dtype=np.uint64) * np.uint64(2) + np.uint64(1)

    for d in list(range(1, min(exhaustive_below, modulus), 2)) + [int(v) for v in random_odd]:
        inv = multiplicative_inverse(d, n_bits)
        if (d * inv) % modulus != 1 or inv != pow(d, -1, modulus):
            report.fail(d=d, inverse=inv)
        report.checked += 1

    report.elapsed_ns = time.perf_counter_ns() - start
    log.info("inverse: %d divisor(s), %d failure(s)", report.checked, report.failure_count)
    return report
