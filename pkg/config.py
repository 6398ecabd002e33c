"""Configuration for the fastmod toolkit.

Word widths, verification defaults, benchmark constants and the results database.
Machine-specific overrides (database location, worker count, seed) live in .env,
not here; see main.apply_env_overrides().
"""

# ---------------------------------------------------------------------------
# Word widths
# ---------------------------------------------------------------------------
N_BITS = 32                  # numerator width of the runtime paths
F_BITS = 2 * N_BITS          # fractional bits of the runtime reciprocal (L = N)
MAX_MAGIC_WIDTH = 32         # generic-width params keep F <= 64
MAX_EXHAUSTIVE_DIVISOR_WIDTH = 16   # "all" divisors only up to this width

# ---------------------------------------------------------------------------
# Verification
# ---------------------------------------------------------------------------
VERIFY_SEED = 0x5EED_0F_FA57_D1F5         # recorded in every report
VERIFY_SAMPLES = 10_000_000               # random numerators per 32-bit divisor
VERIFY_CHUNK = 1 << 22                    # numerators evaluated per numpy batch
VERIFY_MAX_REPORTED = 100                 # first_mismatches cap per strategy
VERIFY_WORKERS = 1                        # process pool size (1 = in-process)
VERIFY_STRATEGIES = ("lkk", "gmw", "gm-divisibility", "oracle")
SLOW_DIVISORS = (6, 95, 2**31 + 1)        # exhaustive-n divisors for --slow
STRUCTURED_SMALL_MAX = 1024               # 2..1024 in the structured set
TIGHTNESS_MAX_WIDTH = 12                  # counterexample search is exhaustive up to here
INVERSE_EXHAUSTIVE_BELOW = 1 << 16
INVERSE_RANDOM_SAMPLES = 1_000_000

# ---------------------------------------------------------------------------
# Benchmarks
# ---------------------------------------------------------------------------
LCG_SEED = 1234
LCG_MULTIPLIER = 31           # prose value; the published loop uses 32 (--multiplier 32)
LCG_SIGNED_MULTIPLIER = -31
LCG_INCREMENT = 27961
LCG_ITERATIONS = 100_000_000
LCG_WARMUP_ITERATIONS = 1_000_000
LCG_DIVISORS = (6, 19, 95, 128, 4096)
LCG_STRATEGIES = ("lkk", "gmw", "hardware")
LCG_SIGNED_STRATEGIES = ("lkk", "hardware")
PRIME_LIMIT = 40_000
PRIME_STRATEGIES = ("lkk", "gm", "hardware")
BENCH_REPEATS = 5             # median of this many timed runs

# Report-only performance envelope (warnings, never failures)
ENVELOPE_LCG_WIN_FRACTION = 0.90     # lkk beats hardware on this share of divisors
ENVELOPE_PRIME_SLOWDOWN = 1.05       # lkk may be at most 5% slower than gm
ENVELOPE_LCG_DIVISORS = range(3, 1025)

# ---------------------------------------------------------------------------
# Results database
# ---------------------------------------------------------------------------
DB_PATH = "fastmod.db"
HISTORY_LIMIT = 100
