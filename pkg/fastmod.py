"""Unsigned remainder, quotient and divisibility by an invariant divisor.

The divisor is replaced once by c = floor((2^F - 1) / d) + 1 with F = 2N
(F = 64 for 32-bit numerators). After that:

    n mod d   = ((c*n mod 2^F) * d) div 2^F
    n div d   = (c*n) div 2^F
    d | n    <=> c*n mod 2^F <= c - 1

The remainder never goes through the quotient. The scalar functions are the
runtime path; the *_array twins evaluate the same formulas over numpy arrays
for the verifier and are never used on a per-number basis.
"""

import logging
from dataclasses import dataclass

import numpy as np

import config
from wideint import as_u64, mask, mul_high, wrapping_mul

log = logging.getLogger(__name__)


@dataclass(frozen=True)
class UnsignedFastDivisor:
    d: int
    c: int                       # 0 for the d = 1 fast path (the wrapped formula value)
    n_bits: int = config.N_BITS
    trivial: bool = False        # d = 1

    @property
    def f_bits(self):
        return 2 * self.n_bits

    def to_dict(self):
        return {"d": self.d, "c": self.c, "c_hex": hex(self.c),
                "n_bits": self.n_bits, "f_bits": self.f_bits, "trivial": self.trivial}


def compute_reciprocal(d, n_bits=config.N_BITS):
    """Build the divisor record for d in [1, 2^N).

    d = 1 gets the trivial flag: the formula wraps to c = 0 there.
    """
    if d == 0:
        raise ValueError("division by zero: divisor must be non-zero")
    if not 0 < d < 1 << n_bits:
        raise ValueError(f"divisor {d} outside unsigned {n_bits}-bit range")
    if d == 1:
        return UnsignedFastDivisor(1, 0, n_bits, trivial=True)

    f_bits = 2 * n_bits
    c = mask(f_bits) // d + 1
    # 2^F <= c*d <= 2^F + 2^N, i.e. the exactness condition with L = N
    if not 1 << f_bits <= c * d <= (1 << f_bits) + (1 << n_bits):
        raise ArithmeticError(f"reciprocal bound violated for d={d}")
    return UnsignedFastDivisor(d, c, n_bits)


def fastmod(n, div):
    if div.trivial:
        return 0
    lowbits = (div.c * n) & mask(div.f_bits)
    return (lowbits * div.d) >> div.f_bits


def fastdiv(n, div):
    if div.trivial:
        return n
    return (div.c * n) >> div.f_bits


def is_divisible(n, div):
    if div.trivial:
        return True
    return (div.c * n) & mask(div.f_bits) <= div.c - 1


# ---------------------------------------------------------------------------
# Vectorized twins
# ---------------------------------------------------------------------------

def fastmod_array(n, div):
    n = as_u64(n)
    if div.trivial:
        return np.zeros_like(n)
    lowbits = wrapping_mul(div.c, n, div.f_bits)
    return mul_high(lowbits, div.d, div.f_bits)


def fastdiv_array(n, div):
    n = as_u64(n)
    if div.trivial:
        return n.copy()
    return mul_high(div.c, n, div.f_bits)


def is_divisible_array(n, div):
    n = as_u64(n)
    if div.trivial:
        return np.ones(n.shape, dtype=bool)
    return wrapping_mul(div.c, n, div.f_bits) <= np.uint64(div.c - 1)
