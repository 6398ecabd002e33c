"""Native division: the ground truth every other strategy is measured against.

Python's // and % floor toward negative infinity; signed results here are
converted to truncated (C) semantics so they compare directly with the fast
paths.
"""

import logging

import numpy as np

import config

log = logging.getLogger(__name__)


def truncated_divmod(n, d):
    """(q, r) with q rounded toward zero and r carrying the sign of n."""
    if d == 0:
        raise ValueError("division by zero")
    q = abs(n) // abs(d)
    if (n < 0) != (d < 0):
        q = -q
    return q, n - q * d


def truncated_divmod_array(n, d):
    n = np.asarray(n, dtype=np.int64)
    r = np.fmod(n, np.int64(d))
    return (n - r) // np.int64(d), r


class HardwareStrategy:
    """Stores the divisor as-is and divides on every call."""

    name = "hardware"

    def __init__(self, d, n_bits=config.N_BITS, signed=False):
        if d == 0:
            raise ValueError("division by zero: divisor must be non-zero")
        if signed:
            half = 1 << (n_bits - 1)
            if not -half <= d < half:
                raise ValueError(f"divisor {d} outside signed {n_bits}-bit range")
        elif not 0 < d < 1 << n_bits:
            raise ValueError(f"divisor {d} outside unsigned {n_bits}-bit range")
        self.d = d
        self.n_bits = n_bits
        self.signed = signed
        self.operations = frozenset({"mod", "div", "divisible"})
        self.storage_bits = n_bits

    def mod(self, n):
        if self.signed:
            return truncated_divmod(n, self.d)[1]
        return n % self.d

    def div(self, n):
        if self.signed:
            return truncated_divmod(n, self.d)[0]
        return n // self.d

    def divisible(self, n):
        return n % self.d == 0

    def mod_array(self, n):
        if self.signed:
            return truncated_divmod_array(n, self.d)[1]
        return np.asarray(n, dtype=np.uint64) % np.uint64(self.d)

    def div_array(self, n):
        if self.signed:
            return truncated_divmod_array(n, self.d)[0]
        return np.asarray(n, dtype=np.uint64) // np.uint64(self.d)

    def divisible_array(self, n):
        return self.mod_array(n) == 0
