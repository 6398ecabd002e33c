"""Signed truncated remainder and divisibility by an invariant divisor.

Remainders follow C semantics: the result has the sign of n (or is zero) and
does not depend on the sign of d. The fast path works on pd = |d| with

    c = floor((2^F - 1) / pd) + 1 + (1 if pd is a power of two)

which is floor(2^F / pd) + 1 and keeps 2^F < c*pd < 2^F + 2^(N+1). Divisors
with |d| = 1 and d = -2^(N-1) bypass the multiply at construction time.
"""

import logging
from dataclasses import dataclass

import numpy as np

import config
from fastmod import UnsignedFastDivisor, compute_reciprocal, is_divisible, is_divisible_array
from wideint import as_u64, mask, mul_high, wrapping_mul

log = logging.getLogger(__name__)

TRIVIAL_UNIT = "unit"      # |d| = 1, remainder always 0
TRIVIAL_MIN = "min"        # d = -2^(N-1), remainder by masking


@dataclass(frozen=True)
class SignedFastDivisor:
    d: int
    pd: int
    c: int
    unsigned: UnsignedFastDivisor    # reciprocal of pd for the divisibility test
    n_bits: int = config.N_BITS
    trivial: str = None

    @property
    def f_bits(self):
        return 2 * self.n_bits

    def to_dict(self):
        return {"d": self.d, "pd": self.pd, "c": self.c, "c_hex": hex(self.c),
                "n_bits": self.n_bits, "f_bits": self.f_bits, "trivial": self.trivial}


def compute_signed_reciprocal(d, n_bits=config.N_BITS):
    if d == 0:
        raise ValueError("division by zero: divisor must be non-zero")
    half = 1 << (n_bits - 1)
    if not -half <= d < half:
        raise ValueError(f"divisor {d} outside signed {n_bits}-bit range")

    pd = abs(d)
    unsigned = compute_reciprocal(pd, n_bits)
    if pd == 1:
        return SignedFastDivisor(d, pd, 0, unsigned, n_bits, TRIVIAL_UNIT)
    if d == -half:
        return SignedFastDivisor(d, pd, 0, unsigned, n_bits, TRIVIAL_MIN)

    f_bits = 2 * n_bits
    c = mask(f_bits) // pd + 1 + (1 if pd & (pd - 1) == 0 else 0)
    if not 1 << f_bits < c * pd < (1 << f_bits) + (1 << (n_bits + 1)):
        raise ArithmeticError(f"signed reciprocal bound violated for d={d}")
    return SignedFastDivisor(d, pd, c, unsigned, n_bits)


def fastmod_signed(n, div):
    if div.trivial == TRIVIAL_UNIT:
        return 0
    if div.trivial == TRIVIAL_MIN:
        half = div.pd
        low = n & (half - 1)
        return low - half if n < 0 and low else low

    lowbits = (div.c * n) & mask(div.f_bits)
    highbits = (lowbits * div.pd) >> div.f_bits
    # n >> (N-1) is -1 for negative n, so this subtracts pd - 1 exactly then
    return highbits - ((div.pd - 1) & (n >> (div.n_bits - 1)))


def is_divisible_signed(n, div):
    """d divides n iff |d| divides |n|; |-2^(N-1)| still fits the unsigned test."""
    return is_divisible(abs(n), div.unsigned)


# ---------------------------------------------------------------------------
# Vectorized twins (int64 arrays holding N-bit signed values)
# ---------------------------------------------------------------------------

def fastmod_signed_array(n, div):
    n = np.asarray(n, dtype=np.int64)
    if div.trivial == TRIVIAL_UNIT:
        return np.zeros_like(n)
    if div.trivial == TRIVIAL_MIN:
        low = n & (div.pd - 1)
        return np.where((n < 0) & (low != 0), low - div.pd, low)

    lowbits = wrapping_mul(div.c, as_u64(n), div.f_bits)
    highbits = mul_high(lowbits, div.pd, div.f_bits).astype(np.int64)
    return highbits - ((div.pd - 1) & (n >> (div.n_bits - 1)))


def is_divisible_signed_array(n, div):
    return is_divisible_array(np.abs(np.asarray(n, dtype=np.int64)), div.unsigned)
