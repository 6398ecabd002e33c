"""Quotient by multiply-and-shift; remainder by one more multiply and a subtract."""

import logging

import config
from baseline import gmw_div, gmw_div_array, gmw_mod, gmw_mod_array, gmw_prepare

log = logging.getLogger(__name__)


class GmwStrategy:

    name = "gmw"

    def __init__(self, d, n_bits=config.N_BITS, signed=False):
        if signed:
            raise ValueError("gmw is unsigned only")
        self.d = d
        self.n_bits = n_bits
        self.signed = False
        self.divisor = gmw_prepare(d, n_bits)
        self.operations = frozenset({"mod", "div"})
        self.storage_bits = n_bits + 8      # multiplier plus shift/variant byte

    def mod(self, n):
        return gmw_mod(n, self.divisor)

    def div(self, n):
        return gmw_div(n, self.divisor)

    def mod_array(self, n):
        return gmw_mod_array(n, self.divisor)

    def div_array(self, n):
        return gmw_div_array(n, self.divisor)
