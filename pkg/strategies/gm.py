"""Divisibility by multiplicative inverse and rotation."""

import logging

import config
from baseline import gm_divisible, gm_divisible_array, gm_prepare

log = logging.getLogger(__name__)


class GmStrategy:

    name = "gm"

    def __init__(self, d, n_bits=config.N_BITS, signed=False):
        if signed:
            raise ValueError("gm is unsigned only")
        self.d = d
        self.n_bits = n_bits
        self.signed = False
        self.divisor = gm_prepare(d, n_bits)
        self.operations = frozenset({"divisible"})
        self.storage_bits = 2 * n_bits + 5      # inverse, threshold, rotation count

    def divisible(self, n):
        return gm_divisible(n, self.divisor)

    def divisible_array(self, n):
        return gm_divisible_array(n, self.divisor)
