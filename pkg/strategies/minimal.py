"""Fractional-bits remainder with the fewest fractional bits that are exact.

l_offset shifts L away from the minimum. A negative offset builds undersized
parameters on purpose; the verifier uses that to find the numerators where
the formulas stop being exact.
"""

import logging

import config
from magic import (generic_divrem, generic_divrem_array, generic_is_divisible,
                   generic_is_divisible_array, minimal_unsigned_params, reciprocal_params)

log = logging.getLogger(__name__)


class MinimalLkkStrategy:

    name = "lkk-minimal"

    def __init__(self, d, n_bits=config.N_BITS, signed=False, l_offset=0):
        if signed:
            raise ValueError("lkk-minimal is unsigned only")
        self.d = d
        self.n_bits = n_bits
        self.signed = False
        self.l_offset = l_offset
        params = minimal_unsigned_params(d, n_bits)
        if l_offset:
            l_bits = params.l_bits + l_offset
            if l_bits < 0:
                raise ValueError(f"L={params.l_bits} for d={d} leaves no room for offset {l_offset}")
            params = reciprocal_params(d, n_bits, l_bits)
            log.debug("lkk-minimal d=%d: L offset %+d gives valid=%s", d, l_offset, params.valid)
        self.params = params
        self.operations = frozenset({"mod", "div", "divisible"})
        self.storage_bits = params.f_bits

    def mod(self, n):
        return generic_divrem(n, self.params, check=False)[1]

    def div(self, n):
        return generic_divrem(n, self.params, check=False)[0]

    def divisible(self, n):
        return generic_is_divisible(n, self.params, check=False)

    def mod_array(self, n):
        return generic_divrem_array(n, self.params, check=False)[1]

    def div_array(self, n):
        return generic_divrem_array(n, self.params, check=False)[0]

    def divisible_array(self, n):
        return generic_is_divisible_array(n, self.params, check=False)
