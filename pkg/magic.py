"""Generic-width reciprocal parameters: selection, validity and toy-width arithmetic.

A divisor d is replaced by a scaled approximate reciprocal c ~ 2^F / d. For
N-bit numerators, multiplying by c and keeping the low F bits of the product
leaves the fractional part of n / d; multiplying that fraction back by d and
keeping the high bits gives the remainder, and the high bits of c * n give the
quotient. F = N + L for unsigned numerators and F = N - 1 + L for signed ones.

Unsigned parameters are valid when

    2^(N+L) <= c*d <= 2^(N+L) + 2^L

and signed parameters need the strict version

    2^(N-1+L) < c*d < 2^(N-1+L) + 2^L

All arithmetic here is exact Python ints. Widths are capped at 32 bits so F
never exceeds 64 and every product fits in 128 bits. The *_array functions
are numpy twins of the scalar operations used by the verifier.
"""

import logging
from dataclasses import asdict, dataclass

import numpy as np

import config
from wideint import as_u64, mask, mul_high, wrapping_mul

log = logging.getLogger(__name__)


@dataclass(frozen=True)
class MagicParameters:
    d: int
    n_bits: int          # N
    l_bits: int          # L; negative only for unsigned powers of two
    f_bits: int          # F
    c: int
    signed: bool = False
    minimal: bool = False

    @property
    def valid(self):
        if self.signed:
            return check_signed_condition(self.c, self.d, self.n_bits, self.l_bits)
        return check_unsigned_condition(self.c, self.d, self.n_bits, self.l_bits)

    def to_dict(self):
        out = asdict(self)
        out["c_hex"] = hex(self.c)
        out["valid"] = self.valid
        return out


def is_power_of_two(d):
    return d > 0 and d & (d - 1) == 0


def _check_width(n_bits, signed=False):
    lowest = 2 if signed else 1
    if not lowest <= n_bits <= config.MAX_MAGIC_WIDTH:
        raise ValueError(f"width must be in [{lowest}, {config.MAX_MAGIC_WIDTH}], got {n_bits}")


def _check_divisor(d, n_bits, signed):
    _check_width(n_bits, signed)
    limit = 1 << (n_bits - 1 if signed else n_bits)
    if not 1 <= d < limit:
        raise ValueError(f"divisor must be in [1, {limit}) for {n_bits}-bit "
                         f"{'signed' if signed else 'unsigned'} numerators, got {d}")


# ---------------------------------------------------------------------------
# Validity predicates
# ---------------------------------------------------------------------------

def check_unsigned_condition(c, d, n_bits, l_bits):
    """True iff 2^(N+L) <= c*d <= 2^(N+L) + 2^L."""
    f_bits = n_bits + l_bits
    if l_bits < 0:
        # 2^L < 1, so only the exact power-of-two product qualifies
        return f_bits >= 0 and c * d == 1 << f_bits
    low = 1 << f_bits
    return low <= c * d <= low + (1 << l_bits)


def check_signed_condition(c, d, n_bits, l_bits):
    """True iff 2^(N-1+L) < c*d < 2^(N-1+L) + 2^L."""
    if l_bits < 0:
        return False
    low = 1 << (n_bits - 1 + l_bits)
    return low < c * d < low + (1 << l_bits)


# ---------------------------------------------------------------------------
# Parameter selection
# ---------------------------------------------------------------------------

def _ceil_div(a, b):
    return -(-a // b)


def minimal_unsigned_params(d, n_bits):
    """Fewest fractional bits that make the unsigned formulas exact for all N-bit n.

    Powers of two 2^K need no approximation: F = K and c = 1 (so L = K - N is
    negative). Otherwise L is the smallest integer with
    d <= (2^(N+L) mod d) + 2^L, and c = ceil(2^F / d).
    """
    _check_divisor(d, n_bits, signed=False)
    if is_power_of_two(d):
        k = d.bit_length() - 1
        return MagicParameters(d, n_bits, k - n_bits, k, 1, minimal=True)

    l_bits = 0
    while d > ((1 << (n_bits + l_bits)) % d) + (1 << l_bits):
        l_bits += 1
    f_bits = n_bits + l_bits
    return MagicParameters(d, n_bits, l_bits, f_bits, _ceil_div(1 << f_bits, d), minimal=True)


def minimal_signed_params(d, n_bits):
    """Smallest L for which c = floor(2^F / d) + 1 meets the strict signed bound.

    L = N + 1 always works, so the scan is bounded. Unlike the unsigned case
    there is no closed-form minimality argument; the verifier confirms the
    result exhaustively at small widths.
    """
    _check_divisor(d, n_bits, signed=True)
    for l_bits in range(n_bits + 2):
        f_bits = n_bits - 1 + l_bits
        c = (1 << f_bits) // d + 1
        if check_signed_condition(c, d, n_bits, l_bits):
            return MagicParameters(d, n_bits, l_bits, f_bits, c, signed=True, minimal=True)
    raise ArithmeticError(f"no signed parameters for d={d}, N={n_bits}")


def convenient_unsigned_params(d, n_bits=config.N_BITS):
    """F = 2N parameters; always valid. At N = 32 this is the runtime reciprocal."""
    _check_divisor(d, n_bits, signed=False)
    f_bits = 2 * n_bits
    return MagicParameters(d, n_bits, n_bits, f_bits, _ceil_div(1 << f_bits, d))


def convenient_signed_params(d, n_bits=config.N_BITS):
    """L = N + 1 (F = 2N) parameters with c = floor(2^F / d) + 1."""
    _check_divisor(d, n_bits, signed=True)
    f_bits = 2 * n_bits
    return MagicParameters(d, n_bits, n_bits + 1, f_bits, (1 << f_bits) // d + 1, signed=True)


def reciprocal_params(d, n_bits, l_bits, signed=False):
    """Parameters for an explicit L. The result may be invalid; check .valid."""
    _check_divisor(d, n_bits, signed)
    if l_bits < 0:
        raise ValueError(f"L must be non-negative, got {l_bits}")
    f_bits = n_bits - 1 + l_bits if signed else n_bits + l_bits
    if f_bits > 2 * config.MAX_MAGIC_WIDTH:
        raise ValueError(f"L={l_bits} gives F={f_bits} fractional bits; "
                         f"at most {2 * config.MAX_MAGIC_WIDTH} are supported")
    c = (1 << f_bits) // d + 1 if signed else _ceil_div(1 << f_bits, d)
    return MagicParameters(d, n_bits, l_bits, f_bits, c, signed=signed)


# ---------------------------------------------------------------------------
# Generic-width arithmetic
# ---------------------------------------------------------------------------

def _require(params, signed, check):
    if params.signed != signed:
        kind = "signed" if signed else "unsigned"
        raise ValueError(f"{kind} operation needs {kind} parameters")
    if check and not params.valid:
        raise ValueError(f"invalid parameters for d={params.d}: c={params.c}, "
                         f"N={params.n_bits}, L={params.l_bits}")


def _check_numerator(n, params):
    if params.signed:
        half = 1 << (params.n_bits - 1)
        if not -half <= n < half:
            raise ValueError(f"numerator {n} outside signed {params.n_bits}-bit range")
    elif not 0 <= n < 1 << params.n_bits:
        raise ValueError(f"numerator {n} outside unsigned {params.n_bits}-bit range")


def generic_divrem(n, params, check=True):
    """(n div d, n mod d) from the fractional bits of c * n.

    check=False skips the validity test so that undersized parameters can be
    evaluated when searching for counterexamples.
    """
    _require(params, signed=False, check=check)
    _check_numerator(n, params)
    product = params.c * n
    lowbits = product & mask(params.f_bits)
    return product >> params.f_bits, (lowbits * params.d) >> params.f_bits


def generic_is_divisible(n, params, check=True):
    """d divides n iff (c * n) mod 2^F < c."""
    _require(params, signed=False, check=check)
    _check_numerator(n, params)
    return (params.c * n) & mask(params.f_bits) < params.c


def generic_signed_mod(n, params, check=True):
    """Truncated n mod d for signed n and positive d.

    With mu = ((c * n mod 2^F) * d) div 2^F the remainder is mu for n >= 0 and
    mu - d + 1 for negative n.
    """
    _require(params, signed=True, check=check)
    _check_numerator(n, params)
    lowbits = (params.c * n) & mask(params.f_bits)
    mu = (lowbits * params.d) >> params.f_bits
    return mu if n >= 0 else mu - params.d + 1


# ---------------------------------------------------------------------------
# Vectorized twins (no range checks on n; callers pass in-range arrays)
# ---------------------------------------------------------------------------

def generic_divrem_array(n, params, check=True):
    """Quotients and remainders for a uint64 array of numerators."""
    _require(params, signed=False, check=check)
    n = as_u64(n)
    if params.d == 1:
        return n.copy(), np.zeros_like(n)
    lowbits = wrapping_mul(params.c, n, params.f_bits)
    return mul_high(params.c, n, params.f_bits), mul_high(lowbits, params.d, params.f_bits)


def generic_is_divisible_array(n, params, check=True):
    _require(params, signed=False, check=check)
    n = as_u64(n)
    if params.d == 1:
        return np.ones(n.shape, dtype=bool)
    return wrapping_mul(params.c, n, params.f_bits) < np.uint64(params.c)


def generic_signed_mod_array(n, params, check=True):
    """Truncated remainders for an int64 array of numerators."""
    _require(params, signed=True, check=check)
    n = np.asarray(n, dtype=np.int64)
    if params.d == 1:
        return np.zeros_like(n)
    lowbits = wrapping_mul(params.c, as_u64(n), params.f_bits)
    mu = mul_high(lowbits, params.d, params.f_bits).astype(np.int64)
    return np.where(n < 0, mu - params.d + 1, mu)
