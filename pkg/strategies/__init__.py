"""Interchangeable remainder, quotient and divisibility implementations.

Every strategy is built from (d, n_bits, signed), lists the operations it
supports in .operations, and offers scalar mod/div/divisible methods plus
*_array twins over numpy arrays.
"""

import config
from strategies.gm import GmStrategy
from strategies.gmw import GmwStrategy
from strategies.hardware import HardwareStrategy
from strategies.lkk import LkkStrategy
from strategies.minimal import MinimalLkkStrategy

STRATEGIES = {
    "lkk": LkkStrategy,
    "lkk-minimal": MinimalLkkStrategy,
    "gmw": GmwStrategy,
    "gm": GmStrategy,
    "gm-divisibility": GmStrategy,
    "hardware": HardwareStrategy,
}

SIGNED_STRATEGIES = frozenset({"lkk", "hardware"})


def get_strategy(name, d, n_bits=config.N_BITS, signed=False, **options):
    """Construct the named strategy for divisor d. Raises ValueError if unknown."""
    cls = STRATEGIES.get(name)
    if cls is None:
        raise ValueError(f"unknown strategy {name!r}; choose from {', '.join(sorted(STRATEGIES))}")
    if signed and name not in SIGNED_STRATEGIES:
        raise ValueError(f"strategy {name!r} has no signed variant")
    return cls(d, n_bits=n_bits, signed=signed, **options)
