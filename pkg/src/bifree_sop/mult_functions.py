"""Multiplicative functions on the incidence algebra of non-crossing partitions.

A multiplicative function is determined by its values ``f(0_n, 1_n)`` on the
full lattices, so :class:`MultFn` stores only those.  Its value on an interval
``[0_n, pi]`` is the product over the blocks of ``pi``.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Sequence

from . import nc_lattice as ncl
from .errors import DomainError, OrderError
from .nc_lattice import Partition
from .checks import Check, compare, values_equal
from .power_series import Series1, compose1, invert1


@dataclass(frozen=True)
class MultFn:
    """Values ``f(0_n, 1_n)`` for ``n = 1..order``; ``values[0]`` is ``f(0_1, 1_1)``."""

    values: tuple[Fraction, ...]

    def __init__(self, values: Sequence):
        object.__setattr__(self, "values", tuple(Fraction(v) for v in values))

    @property
    def order(self) -> int:
        return len(self.values)

    def __getitem__(self, n: int) -> Fraction:
        """``f(0_n, 1_n)`` (1-based)."""
        if not 1 <= n <= self.order:
            raise OrderError(f"no value for n={n}; order is {self.order}")
        return self.values[n - 1]

    def is_unital(self) -> bool:
        """Membership in the class with ``f(0_1, 1_1) = 1``."""
        return bool(self.values) and self.values[0] == 1

    def to_json(self) -> dict:
        from .jsonio import rational_to_json
        return {"order": self.order, "values": [rational_to_json(v) for v in self.values]}


def eval_on(f: MultFn, p: Partition) -> Fraction:
    """``f(0_n, p)``: product of ``f(0_|V|, 1_|V|)`` over the blocks ``V`` of ``p``."""
    out = Fraction(1)
    for size in p.block_sizes():
        out *= f[size]
    return out


def _eval_sizes(f: MultFn, sizes: tuple[int, ...]) -> Fraction:
    out = Fraction(1)
    for s in sizes:
        out *= f.values[s - 1]
    return out


@lru_cache(maxsize=None)
def _kreweras_profiles(n: int, pinched: bool) -> tuple[tuple[tuple[int, ...], tuple[int, ...], int], ...]:
    """Aggregate ``(block sizes of pi, block sizes of K(pi))`` over NC(n) or NC'(n)."""
    pool = ncl.enumerate_nc_prime(n) if pinched else ncl.enumerate_nc(n)
    counts = Counter(
        (tuple(sorted(p.block_sizes())), tuple(sorted(ncl.kreweras_nc(p).block_sizes())))
        for p in pool)
    return tuple((a, b, c) for (a, b), c in sorted(counts.items()))


def _convolve(f: MultFn, g: MultFn, pinched: bool) -> MultFn:
    if f.order != g.order:
        raise ValueError(f"order mismatch: {f.order} vs {g.order}")
    out = []
    for n in range(1, f.order + 1):
        total = Fraction(0)
        for sizes_p, sizes_k, count in _kreweras_profiles(n, pinched):
            total += count * _eval_sizes(f, sizes_p) * _eval_sizes(g, sizes_k)
        out.append(total)
    return MultFn(out)


def star_convolve(f: MultFn, g: MultFn) -> MultFn:
    """``(f * g)(0_n, 1_n) = sum over NC(n) of f(0_n, pi) g(0_n, K(pi))``."""
    return _convolve(f, g, pinched=False)


def pinched_convolve(f: MultFn, g: MultFn) -> MultFn:
    """The same sum restricted to partitions in which ``{1}`` is a block.

    Not commutative in general.
    """
    if not (f.is_unital() and g.is_unital()):
        raise DomainError("pinched convolution needs f(0_1,1_1) = g(0_1,1_1) = 1")
    return _convolve(f, g, pinched=True)


def phi_series(f: MultFn) -> Series1:
    """``sum_n f(0_n, 1_n) z^n`` with zero constant term."""
    return Series1((Fraction(0),) + f.values)


def verify_pinched_composition(f1: MultFn, f2: MultFn) -> Check:
    """``phi_{f1 v f2}(phi_{f1*f2}^{<-1>}(z)) = phi_{f1}^{<-1>}(z)``."""
    lhs = compose1(phi_series(pinched_convolve(f1, f2)), invert1(phi_series(star_convolve(f1, f2))))
    return compare("pinched_composition", lhs, invert1(phi_series(f1)))


def verify_inverse_product(f1: MultFn, f2: MultFn) -> Check:
    """``z phi_{f1*f2}^{<-1>}(z) = phi_{f1}^{<-1>}(z) phi_{f2}^{<-1>}(z)``."""
    lhs = invert1(phi_series(star_convolve(f1, f2))).mul_z()
    return compare("inverse_product", lhs, invert1(phi_series(f1)) * invert1(phi_series(f2)))


def verify_unpinched_composition(f1: MultFn, f2: MultFn) -> Check:
    """``phi_{f1}(phi_{f1 v f2}(z)) = phi_{f1*f2}(z)``."""
    lhs = compose1(phi_series(f1), phi_series(pinched_convolve(f1, f2)))
    return compare("unpinched_composition", lhs, phi_series(star_convolve(f1, f2)))


def verify_star_commutative(f1: MultFn, f2: MultFn) -> Check:
    return values_equal("star_commutative", list(star_convolve(f1, f2).values),
                        list(star_convolve(f2, f1).values))
