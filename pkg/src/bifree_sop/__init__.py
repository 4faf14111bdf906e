"""Exact combinatorics of free and bi-free probability.

Non-crossing and bi-non-crossing partition lattices, truncated power series
over the rationals, the free and bi-free transforms built on top of them, and
mechanical verification of the multiplicativity of the opposite two-variable
partial S-transform.
"""

from .errors import (
    BifreeError,
    CompositionError,
    ConfigError,
    DivisibilityError,
    DivisionError,
    DomainError,
    InversionError,
    OrderError,
    SizeError,
)
from .nc_lattice import Partition, enumerate_nc, enumerate_nc_prime, join, kreweras_nc, leq, mobius_nc
from .bnc_lattice import BNCPartition, ChiMap, classify_LR, enumerate_bnc, kreweras_bnc
from .power_series import Series1, Series2, compose1, compose2, div_monomial, div_unit, invert1
from .checks import Check
from .mult_functions import MultFn, pinched_convolve, star_convolve
from .transforms import PairSpec, opposite_partial_s, partial_s, s_transform
from .bifree_product import ProductContext, verify_sop_multiplicativity
from .conditional_formulas import ConditionalPairSpec

__all__ = [
    "BifreeError", "CompositionError", "ConfigError", "DivisibilityError", "DivisionError",
    "DomainError", "InversionError", "OrderError", "SizeError",
    "Partition", "enumerate_nc", "enumerate_nc_prime", "join", "kreweras_nc", "leq", "mobius_nc",
    "BNCPartition", "ChiMap", "classify_LR", "enumerate_bnc", "kreweras_bnc",
    "Series1", "Series2", "compose1", "compose2", "div_monomial", "div_unit", "invert1",
    "Check", "MultFn", "pinched_convolve", "star_convolve",
    "PairSpec", "opposite_partial_s", "partial_s", "s_transform",
    "ProductContext", "verify_sop_multiplicativity", "ConditionalPairSpec",
]

__version__ = "0.1.0"
