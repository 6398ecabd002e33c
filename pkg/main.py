"""fastmod command line: reciprocal parameters, divisibility queries,
verification sweeps and benchmarks.

Usage:
    python main.py magic 95                          # F = 64 runtime constant
    python main.py magic 6 --n-bits 6 --minimal      # fewest fractional bits
    python main.py divisible 42 6 --strategy gm
    python main.py verify --width 16 --divisors all --numerators exhaustive --both
    python main.py verify --width 32 --divisors 95 --numerators exhaustive --slow
    python main.py verify --mode minimality --width 16
    python main.py verify --mode inverse
    python main.py bench lcg --d 95 --iters 1000000 --strategy lkk
    python main.py bench primes --limit 40000 --strategy gm

Global flags (--verbose, --format, --record) go before or after the subcommand.
Numbers are accepted in decimal or 0x-hex. Exit codes: 0 pass, 1 mismatch or
checksum disagreement (or "not divisible"), 2 usage error.
"""

import argparse
import json
import logging
import os
import platform
import sys

from dotenv import load_dotenv

load_dotenv()

import bench
import config
import logger
import verify
from magic import (convenient_signed_params, convenient_unsigned_params,
                   minimal_signed_params, minimal_unsigned_params)
from strategies import get_strategy

logging.basicConfig(
    level=logging.INFO,
    format="%(asctime)s %(name)s %(levelname)s %(message)s",
)
log = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_FAIL = 1
EXIT_USAGE = 2


def apply_env_overrides():
    """Pick up machine-specific settings from the environment (.env)."""
    if os.getenv("FASTMOD_DB_PATH"):
        config.DB_PATH = os.getenv("FASTMOD_DB_PATH")
    if os.getenv("FASTMOD_WORKERS"):
        config.VERIFY_WORKERS = int(os.getenv("FASTMOD_WORKERS"))
    if os.getenv("FASTMOD_SEED"):
        config.VERIFY_SEED = int(os.getenv("FASTMOD_SEED"), 0)


# ---------------------------------------------------------------------------
# Argument types
# ---------------------------------------------------------------------------

def parse_int(text):
    try:
        return int(text, 0)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}")


def parse_divisors(text):
    """'all', 'structured', or a comma list of integers and inclusive a..b ranges."""
    if text in verify.DIVISOR_SETS:
        return text
    values = []
    for item in text.split(","):
        item = item.strip()
        if ".." in item:
            low, high = (parse_int(part) for part in item.split("..", 1))
            if high < low:
                raise argparse.ArgumentTypeError(f"empty range {item!r}")
            values.extend(range(low, high + 1))
        elif item:
            values.append(parse_int(item))
    if not values:
        raise argparse.ArgumentTypeError("no divisors given")
    return tuple(values)


def parse_strategies(text):
    return tuple(s.strip() for s in text.split(",") if s.strip())


# ---------------------------------------------------------------------------
# Output helpers
# ---------------------------------------------------------------------------

def _emit_rows(rows, fmt):
    """Print a list of flat dicts as human key/value blocks, JSON, or CSV."""
    if fmt == "json":
        print(json.dumps(rows if len(rows) != 1 else rows[0], indent=2))
    elif fmt == "csv":
        cols = list(rows[0])
        print(",".join(cols))
        for row in rows:
            print(",".join("" if row[c] is None else str(row[c]) for c in cols))
    else:
        for i, row in enumerate(rows):
            if i:
                print()
            width = max(len(k) for k in row)
            for key, value in row.items():
                print(f"{key:<{width}} = {value}")


def _fmt_num(value):
    return f"{value} ({hex(value)})"


# ---------------------------------------------------------------------------
# Subcommands
# ---------------------------------------------------------------------------

def cmd_magic(args):
    d = abs(args.d) if args.signed else args.d
    if args.d == 0:
        raise ValueError("divisor must be non-zero")
    if args.minimal:
        choose = minimal_signed_params if args.signed else minimal_unsigned_params
    else:
        choose = convenient_signed_params if args.signed else convenient_unsigned_params
    params = choose(d, args.n_bits)

    if args.format == "human":
        print(f"d     = {_fmt_num(args.d) if args.d >= 0 else args.d}")
        print(f"N     = {params.n_bits}")
        print(f"L     = {params.l_bits}")
        print(f"F     = {params.f_bits}")
        print(f"c     = {_fmt_num(params.c)}")
        print(f"mode  = {'minimal' if params.minimal else 'convenient'}, "
              f"{'signed' if params.signed else 'unsigned'}")
        print(f"valid = {'yes' if params.valid else 'NO'}")
    else:
        row = params.to_dict()
        row["d"] = args.d
        _emit_rows([row], args.format)
    return EXIT_OK if params.valid else EXIT_FAIL


def cmd_divisible(args):
    n, d = args.n, args.d
    signed = n < 0 or d < 0
    if signed:
        if not -(1 << 31) <= n < 1 << 31:
            raise ValueError(f"numerator {n} outside the signed 32-bit range")
    elif not n < 1 << 32:
        raise ValueError(f"numerator {n} outside the unsigned 32-bit range")
    strategy = get_strategy(args.strategy, d, config.N_BITS, signed)
    result = bool(strategy.divisible(n))

    if args.format == "human":
        print(f"{n} is {'' if result else 'not '}divisible by {d}")
    else:
        _emit_rows([{"n": n, "d": d, "strategy": args.strategy, "signed": signed,
                     "divisible": result}], args.format)
    return EXIT_OK if result else EXIT_FAIL


def _print_sweep(report, fmt):
    if fmt == "json":
        print(report.to_json())
        return
    rows = [{"strategy": rec["strategy"], "checked": rec["checked"],
             "mismatch_count": rec["mismatch_count"], "elapsed_ns": rec["elapsed_ns"],
             "seed": rec["seed"]} for rec in report.to_records()]
    if fmt == "csv":
        _emit_rows(rows, fmt)
        return
    print(f"width {report.spec.width}, {report.spec.signedness}, "
          f"{report.spec.numerators} numerators, seed {report.spec.seed:#x}")
    for row in rows:
        print(f"  {row['strategy']:<16} {row['checked']:>14} checked  {row['mismatch_count']:>10} mismatches")
    for m in report.mismatches[:20]:
        print(f"  MISMATCH {m.strategy} {m.operation} d={m.d} n={m.n} "
              f"expected={m.expected} actual={m.actual}")
    print("PASS" if report.passed else "FAIL")


def _print_check(report, fmt):
    if fmt == "json":
        print(json.dumps(report.to_dict(), indent=2))
    elif fmt == "csv":
        _emit_rows([{"name": report.name, "checked": report.checked,
                     "failure_count": report.failure_count, "elapsed_ns": report.elapsed_ns}], fmt)
    else:
        print(f"{report.name}: {report.checked} checked, {report.failure_count} failure(s) "
              f"in {report.elapsed_ns / 1e9:.2f} s")
        for f in report.failures[:20]:
            print(f"  FAIL {f}")
        print("PASS" if report.passed else "FAIL")


def cmd_verify(args):
    if args.mode == "minimality":
        report = verify.minimality_sweep(args.width or 16, signed=args.signed)
    elif args.mode == "inverse":
        report = verify.inverse_sweep(args.width or config.N_BITS,
                                      exhaustive_below=config.INVERSE_EXHAUSTIVE_BELOW,
                                      samples=config.INVERSE_RANDOM_SAMPLES, seed=args.seed)
    else:
        report = None

    if report is not None:
        _print_check(report, args.format)
        if args.record:
            logger.log_check(report)
        return EXIT_OK if report.passed else EXIT_FAIL

    width = args.width or config.N_BITS
    divisors = args.divisors
    numerators = args.numerators
    if args.slow:
        divisors = divisors or config.SLOW_DIVISORS
        numerators = numerators or "exhaustive"
    strategies = args.strategies
    if args.l_offset and "lkk-minimal" not in strategies:
        strategies = strategies + ("lkk-minimal",)

    spec = verify.SweepSpec(
        width=width,
        divisors=divisors or "structured",
        numerators=numerators or "sampled",
        samples=args.samples,
        seed=args.seed,
        signedness="both" if args.both else "signed" if args.signed else "unsigned",
        strategies=strategies,
        l_offset=args.l_offset,
        slow=args.slow,
    )
    report = verify.run_sweep(spec, workers=args.workers)
    _print_sweep(report, args.format)
    if args.record:
        logger.log_sweep(report)
    return EXIT_OK if report.passed else EXIT_FAIL


def _finish_bench(reports, args):
    print(bench.emit_report(reports, args.format))
    agree = bench.checksums_agree(reports)
    bench.check_envelope(reports)
    if args.record:
        logger.log_bench(reports, host=platform.machine())
    return EXIT_OK if agree else EXIT_FAIL


def cmd_bench(args):
    if args.benchmark == "primes":
        reports = [bench.prime_count_bench(args.limit, s, repeats=args.repeats)
                   for s in args.strategy or config.PRIME_STRATEGIES]
        return _finish_bench(reports, args)

    if isinstance(args.d, str):
        raise ValueError("bench lcg needs explicit divisors")
    default = config.LCG_SIGNED_STRATEGIES if args.signed else config.LCG_STRATEGIES
    reports = bench.lcg_suite(
        args.d, args.strategy or default,
        parallel_cells=args.parallel_cells,
        iterations=args.iters,
        signed=args.signed,
        multiplier=args.multiplier,
        repeats=args.repeats,
        warmup=args.warmup,
    )
    return _finish_bench(reports, args)


# ---------------------------------------------------------------------------
# Parser
# ---------------------------------------------------------------------------

def build_parser():
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--verbose", action="store_true", default=argparse.SUPPRESS,
                        help="Debug logging and print the resolved configuration")
    common.add_argument("--format", choices=("human", "json", "csv"), default=argparse.SUPPRESS,
                        help="Output format (default: human)")
    common.add_argument("--record", action="store_true", default=argparse.SUPPRESS,
                        help=f"Append results to the SQLite log ({config.DB_PATH})")

    parser = argparse.ArgumentParser(
        description="Fast remainder, quotient and divisibility by invariant divisors",
        parents=[common],
    )
    parser.set_defaults(verbose=False, format="human", record=False)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("magic", parents=[common], help="Show reciprocal parameters for a divisor")
    p.add_argument("d", type=parse_int)
    p.add_argument("--n-bits", type=int, default=config.N_BITS, help="Numerator width N (default: 32)")
    p.add_argument("--signed", action="store_true", help="Signed numerators (F = N - 1 + L)")
    mode = p.add_mutually_exclusive_group()
    mode.add_argument("--minimal", action="store_true", help="Fewest fractional bits")
    mode.add_argument("--convenient", action="store_true", help="F = 2N (default)")
    p.set_defaults(func=cmd_magic)

    p = sub.add_parser("divisible", parents=[common], help="Test whether d divides n")
    p.add_argument("n", type=parse_int)
    p.add_argument("d", type=parse_int)
    p.add_argument("--strategy", choices=("lkk", "gm", "hardware"), default="lkk")
    p.set_defaults(func=cmd_divisible)

    p = sub.add_parser("verify", parents=[common], help="Compare strategies with native division")
    p.add_argument("--mode", choices=("sweep", "minimality", "inverse"), default="sweep")
    p.add_argument("--width", type=int, default=None,
                   help="Numerator width (default: 32; 16 for --mode minimality)")
    p.add_argument("--divisors", type=parse_divisors, default=None,
                   help="'all', 'structured' (default), or list like 3,7,0x5f,100..200")
    p.add_argument("--numerators", choices=verify.COVERAGES, default=None,
                   help="exhaustive, or sampled = boundaries + random (default)")
    side = p.add_mutually_exclusive_group()
    side.add_argument("--signed", action="store_true", help="Signed numerators and divisors")
    side.add_argument("--both", action="store_true", help="Unsigned and signed")
    p.add_argument("--strategies", type=parse_strategies, default=config.VERIFY_STRATEGIES,
                   help=f"Comma list (default: {','.join(config.VERIFY_STRATEGIES)})")
    p.add_argument("--seed", type=parse_int, default=config.VERIFY_SEED)
    p.add_argument("--samples", type=int, default=config.VERIFY_SAMPLES,
                   help="Random numerators per divisor in sampled mode")
    p.add_argument("--slow", action="store_true",
                   help="Allow exhaustive 32-bit numerators (defaults to d in 6, 95, 2^31+1)")
    p.add_argument("--workers", type=int, default=None, help="Worker processes")
    p.add_argument("--l-offset", type=int, default=0,
                   help="Shift lkk-minimal's L (negative values build undersized parameters)")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("bench", parents=[common], help="Run a benchmark")
    bench_sub = p.add_subparsers(dest="benchmark", required=True)

    b = bench_sub.add_parser("lcg", parents=[common], help="LCG remainder chain")
    b.add_argument("--d", type=parse_divisors, default=config.LCG_DIVISORS,
                   help="Divisor list, e.g. 95 or 3..1024")
    b.add_argument("--iters", type=int, default=config.LCG_ITERATIONS)
    b.add_argument("--strategy", action="append", choices=("lkk", "gmw", "hardware"),
                   help="Repeat for several (default: all that apply)")
    b.add_argument("--signed", action="store_true", help="Signed LCG (multiplier -31)")
    b.add_argument("--multiplier", type=int, default=None,
                   help="LCG multiplier (default: 31, or -31 with --signed)")
    b.add_argument("--repeats", type=int, default=config.BENCH_REPEATS)
    b.add_argument("--warmup", type=int, default=config.LCG_WARMUP_ITERATIONS)
    b.add_argument("--parallel-cells", action="store_true",
                   help="Run (divisor, strategy) cells concurrently; skews timings")
    b.set_defaults(func=cmd_bench)

    b = bench_sub.add_parser("primes", parents=[common], help="Prime counting by divisibility")
    b.add_argument("--limit", type=int, default=config.PRIME_LIMIT)
    b.add_argument("--strategy", action="append", choices=("lkk", "gm", "gmw", "hardware"),
                   help="Repeat for several (default: lkk, gm, hardware)")
    b.add_argument("--repeats", type=int, default=config.BENCH_REPEATS)
    b.set_defaults(func=cmd_bench)

    return parser


def main(argv=None):
    apply_env_overrides()
    args = build_parser().parse_args(argv)

    if args.verbose:
        logging.getLogger().setLevel(logging.DEBUG)
        resolved = {k: v for k, v in vars(args).items() if k != "func"}
        resolved.update(n_bits=config.N_BITS, f_bits=config.F_BITS, db_path=config.DB_PATH,
                        workers=config.VERIFY_WORKERS, seed=config.VERIFY_SEED)
        log.info("resolved configuration: %s", json.dumps(resolved, default=str))

    try:
        return args.func(args)
    except ValueError as e:
        log.error("%s", e)
        return EXIT_USAGE
    finally:
        logger.close()


if __name__ == "__main__":
    sys.exit(main())
