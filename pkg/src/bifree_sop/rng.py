"""Deterministic random rational data.

SplitMix64 is used so that runs are reproducible across platforms and easy
to port: ``state += 0x9E3779B97F4A7C15``, then the usual two xor-shift-multiply
rounds.  Integers in ``[lo, hi]`` are ``lo + next() % (hi - lo + 1)``.
Random rationals have numerator in ``[-9, 9]`` and denominator in ``[1, 9]``;
first cumulants redraw the numerator until it is nonzero.
"""

from __future__ import annotations

from fractions import Fraction

from .transforms import PairSpec
from .mult_functions import MultFn

_MASK = (1 << 64) - 1


class SplitMix64:
    def __init__(self, seed: int):
        self.state = seed & _MASK

    def next(self) -> int:
        self.state = (self.state + 0x9E3779B97F4A7C15) & _MASK
        z = self.state
        z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & _MASK
        z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & _MASK
        return z ^ (z >> 31)

    def rand_int(self, lo: int, hi: int) -> int:
        return lo + self.next() % (hi - lo + 1)

    def rational(self, nonzero: bool = False) -> Fraction:
        num = self.rand_int(-9, 9)
        while nonzero and num == 0:
            num = self.rand_int(-9, 9)
        return Fraction(num, self.rand_int(1, 9))

    def sequence(self, length: int, nonzero_first: bool = True) -> list[Fraction]:
        return [self.rational(nonzero=nonzero_first and k == 0) for k in range(length)]


def random_pair_spec(rng: SplitMix64, orders: tuple[int, int], unit_means: bool = False) -> PairSpec:
    """Draws ``kappa_a``, then ``kappa_b``, then ``kappa_ab`` row by row."""
    n, m = orders
    ka = rng.sequence(n)
    kb = rng.sequence(m)
    kab = [[rng.rational() for _ in range(m)] for _ in range(n)]
    if unit_means:
        ka[0] = kb[0] = Fraction(1)
    return PairSpec(ka, kb, kab)


def random_mult_fn(rng: SplitMix64, order: int, unital: bool = True) -> MultFn:
    values = rng.sequence(order)
    if unital:
        values[0] = Fraction(1)
    return MultFn(values)
