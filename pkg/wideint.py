"""numpy helpers for 64-bit wrapping and high-half products.

numpy has no 128-bit integer type, so the vectorized kernels build the
high half of a 64x32-bit product from two 32-bit limbs. Every constant that
touches a uint64 array is wrapped in np.uint64 first; mixing Python ints into
uint64 arithmetic silently promotes to float64 on older numpy releases.
"""

import numpy as np

U64 = np.uint64
LOW32 = U64(0xFFFFFFFF)
SHIFT32 = U64(32)


def mask(bits):
    """All-ones Python int of the given width."""
    return (1 << bits) - 1


def as_u64(values):
    """Return values as a uint64 array. Negative int64 input is reinterpreted
    as two's complement, which is the 64-bit sign extension the signed paths need."""
    arr = np.asarray(values)
    if arr.dtype.kind == "i":
        return np.asarray(arr, dtype=np.int64).view(np.uint64)
    return arr.astype(np.uint64, copy=False)


def wrapping_mul(a, b, f_bits=64):
    """(a * b) mod 2^f_bits for f_bits <= 64."""
    prod = as_u64(a) * as_u64(b)
    if f_bits < 64:
        prod &= U64(mask(f_bits))
    return prod


def mul_high(a, b, f_bits=64):
    """(a * b) div 2^f_bits for a < 2^64 and b < 2^32.

    The true product is up to 96 bits wide; the caller guarantees the shifted
    result fits in 64 bits.
    """
    a = as_u64(a)
    b = as_u64(b)
    lo = (a & LOW32) * b
    t = (a >> SHIFT32) * b + (lo >> SHIFT32)   # product div 2^32, cannot overflow
    if f_bits >= 32:
        return t >> U64(f_bits - 32)
    return (t << U64(32 - f_bits)) | ((lo & LOW32) >> U64(f_bits))
