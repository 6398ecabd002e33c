"""Fractional-bits remainder with the fixed F = 2N reciprocal."""

import logging

import config
from fastmod import (compute_reciprocal, fastdiv, fastdiv_array, fastmod, fastmod_array,
                     is_divisible, is_divisible_array)
from fastmod_signed import (compute_signed_reciprocal, fastmod_signed, fastmod_signed_array,
                            is_divisible_signed, is_divisible_signed_array)

log = logging.getLogger(__name__)


class LkkStrategy:
    """Unsigned: remainder, quotient and divisibility. Signed: remainder and divisibility."""

    name = "lkk"

    def __init__(self, d, n_bits=config.N_BITS, signed=False):
        self.d = d
        self.n_bits = n_bits
        self.signed = signed
        if signed:
            self.divisor = compute_signed_reciprocal(d, n_bits)
            self.operations = frozenset({"mod", "divisible"})
        else:
            self.divisor = compute_reciprocal(d, n_bits)
            self.operations = frozenset({"mod", "div", "divisible"})
        self.storage_bits = 2 * n_bits

    def mod(self, n):
        if self.signed:
            return fastmod_signed(n, self.divisor)
        return fastmod(n, self.divisor)

    def div(self, n):
        if self.signed:
            raise ValueError("lkk has no signed quotient")
        return fastdiv(n, self.divisor)

    def divisible(self, n):
        if self.signed:
            return is_divisible_signed(n, self.divisor)
        return is_divisible(n, self.divisor)

    def mod_array(self, n):
        if self.signed:
            return fastmod_signed_array(n, self.divisor)
        return fastmod_array(n, self.divisor)

    def div_array(self, n):
        if self.signed:
            raise ValueError("lkk has no signed quotient")
        return fastdiv_array(n, self.divisor)

    def divisible_array(self, n):
        if self.signed:
            return is_divisible_signed_array(n, self.divisor)
        return is_divisible_array(n, self.divisor)
