"""Reference competitors: quotient-by-constant (multiply and shift) and
divisibility by multiplicative inverse.

gmw_* follows the compiler strategy: powers of two shift, most divisors use a
single N-bit multiplier and shift, even divisors whose multiplier would not fit
pre-shift the numerator, and the rest use an (N+1)-bit multiplier emulated with
an add, a shift and a fixup. gm_* tests divisibility by multiplying with the
inverse of the odd part modulo 2^N, rotating out the even part and comparing
against (2^N - 1) div d.
"""

import logging
from dataclasses import dataclass

import config
from wideint import U64, as_u64, mask, mul_high, wrapping_mul

log = logging.getLogger(__name__)

POWER_OF_TWO = "power-of-two"
MULTIPLY_SHIFT = "multiply-shift"
EVEN_PRESHIFT = "even-preshift"
ADD_SHIFT_FIXUP = "add-shift-fixup"
VARIANTS = (POWER_OF_TWO, MULTIPLY_SHIFT, EVEN_PRESHIFT, ADD_SHIFT_FIXUP)


def _ceil_div(a, b):
    return -(-a // b)


def _trailing_zeros(d):
    return (d & -d).bit_length() - 1


def _check_divisor(d, n_bits):
    if d == 0:
        raise ValueError("division by zero: divisor must be non-zero")
    if not 0 < d < 1 << n_bits:
        raise ValueError(f"divisor {d} outside unsigned {n_bits}-bit range")


# ---------------------------------------------------------------------------
# Quotient by constant
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class GmwDivisor:
    d: int
    variant: str
    n_bits: int = config.N_BITS
    k: int = 0          # pre-shift (even-preshift) or exponent (power-of-two)
    c: int = 0          # multiplier; c' = c - 2^N for add-shift-fixup
    shift: int = 0      # final shift; L for add-shift-fixup

    def to_dict(self):
        return {"d": self.d, "variant": self.variant, "n_bits": self.n_bits,
                "k": self.k, "c": self.c, "c_hex": hex(self.c), "shift": self.shift}


def gmw_prepare(d, n_bits=config.N_BITS):
    """Pick the variant for d, testing the branches in the compiler's order."""
    _check_divisor(d, n_bits)
    if d & (d - 1) == 0:
        k = d.bit_length() - 1
        return GmwDivisor(d, POWER_OF_TWO, n_bits, k=k, shift=k)

    two_n = 1 << n_bits
    l_bits = d.bit_length() - 1                  # floor(log2 d)
    c = _ceil_div(1 << (n_bits + l_bits), d)
    if c * (two_n - two_n % d - 1) < (two_n // d) << (n_bits + l_bits):
        return GmwDivisor(d, MULTIPLY_SHIFT, n_bits, c=c, shift=n_bits + l_bits)

    k = _trailing_zeros(d)
    if k > 0:
        d_odd = d >> k
        l_bits = (d_odd - 1).bit_length()        # ceil(log2 d')
        shift = n_bits - k + l_bits
        return GmwDivisor(d, EVEN_PRESHIFT, n_bits, k=k,
                          c=_ceil_div(1 << shift, d_odd), shift=shift)

    l_bits = (d - 1).bit_length()                # ceil(log2 d)
    c = _ceil_div(1 << (n_bits + l_bits), d)
    return GmwDivisor(d, ADD_SHIFT_FIXUP, n_bits, c=c - two_n, shift=l_bits)


def gmw_div(n, g):
    if g.variant == POWER_OF_TWO:
        return n >> g.k
    if g.variant == MULTIPLY_SHIFT:
        return (g.c * n) >> g.shift
    if g.variant == EVEN_PRESHIFT:
        return (g.c * (n >> g.k)) >> g.shift
    t = (g.c * n) >> g.n_bits
    return (t + ((n - t) >> 1)) >> (g.shift - 1)


def gmw_mod(n, g):
    return n - gmw_div(n, g) * g.d


def gmw_div_array(n, g):
    n = as_u64(n)
    if g.variant == POWER_OF_TWO:
        return n >> U64(g.k)
    if g.variant == MULTIPLY_SHIFT:
        return mul_high(g.c, n, g.shift)
    if g.variant == EVEN_PRESHIFT:
        return mul_high(g.c, n >> U64(g.k), g.shift)
    t = mul_high(g.c, n, g.n_bits)
    return (t + ((n - t) >> U64(1))) >> U64(g.shift - 1)


def gmw_mod_array(n, g):
    n = as_u64(n)
    return n - gmw_div_array(n, g) * U64(g.d)


# ---------------------------------------------------------------------------
# Divisibility by multiplicative inverse
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class GmDivisibility:
    d: int
    e: int              # trailing zeros of d
    dbar: int           # inverse of the odd part modulo 2^N
    thresh: int         # (2^N - 1) div d
    n_bits: int = config.N_BITS

    def to_dict(self):
        return {"d": self.d, "e": self.e, "dbar": self.dbar, "dbar_hex": hex(self.dbar),
                "thresh": self.thresh, "n_bits": self.n_bits}


def multiplicative_inverse(d, n_bits=config.N_BITS):
    """Inverse of odd d modulo 2^N by Newton iteration.

    The seed is correct to 5 bits and each step doubles that, so three steps
    cover any width up to 40 bits.
    """
    if d % 2 == 0:
        raise ValueError(f"multiplicative inverse needs an odd divisor, got {d}")
    m = mask(n_bits)
    x = (d + 2 * ((d + 1) & 4)) & m
    for _ in range(3):
        x = (x * (2 - d * x)) & m
    return x


def rotr(n, e, n_bits):
    """Rotate an N-bit word right by e bits."""
    return ((n >> e) | (n << ((n_bits - e) % n_bits))) & mask(n_bits)


def rotr32(n, e):
    return rotr(n, e, 32)


def gm_prepare(d, n_bits=config.N_BITS):
    _check_divisor(d, n_bits)
    e = _trailing_zeros(d)
    return GmDivisibility(d, e, multiplicative_inverse(d >> e, n_bits), mask(n_bits) // d, n_bits)


def gm_divisible(n, gm):
    return rotr((n * gm.dbar) & mask(gm.n_bits), gm.e, gm.n_bits) <= gm.thresh


def gm_divisible_array(n, gm):
    m = U64(mask(gm.n_bits))
    prod = wrapping_mul(n, gm.dbar, gm.n_bits)
    left = U64((gm.n_bits - gm.e) % gm.n_bits)
    rotated = ((prod >> U64(gm.e)) | (prod << left)) & m
    return rotated <= U64(gm.thresh)
