"""Conditional (two-state) bi-free expressions.

Conditional cumulants are taken as free input data alongside the ordinary
cumulants of the pair; nothing here derives them from moments.  The module
evaluates the conditional S-transform of a single variable and the two
closed-form right-hand sides for the composed conditional mixed-cumulant
series of a product pair, one for each multiplication order.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .checks import Check, compare
from .errors import DomainError
from .power_series import Series1, Series2, compose1, compose2, div_monomial, invert1
from .transforms import PairSpec, Side, partial_s, series_K


@dataclass(frozen=True)
class ConditionalPairSpec:
    """Cumulants of ``(a, b)`` for both states.

    ``base`` holds the cumulants for the first state; ``cond`` holds the
    conditional cumulants in the same layout.
    """

    base: PairSpec
    cond: PairSpec

    def __post_init__(self):
        if self.base.orders != self.cond.orders:
            raise ValueError(f"orders differ: {self.base.orders} vs {self.cond.orders}")

    @classmethod
    def from_parts(cls, base: PairSpec, kappa_c_a: Sequence, kappa_c_b: Sequence,
                   kappa_c_ab: Sequence[Sequence]) -> "ConditionalPairSpec":
        return cls(base, PairSpec(kappa_c_a, kappa_c_b, kappa_c_ab))

    @classmethod
    def single_state(cls, base: PairSpec) -> "ConditionalPairSpec":
        """Both states equal, so the conditional cumulants are the ordinary ones."""
        return cls(base, base)

    @property
    def orders(self) -> tuple[int, int]:
        return self.base.orders

    def to_json(self) -> dict:
        out = self.base.to_json()
        cond = self.cond.to_json()
        for key in ("kappa_a", "kappa_b", "kappa_ab"):
            out["kappa_c_" + key.split("_", 1)[1]] = cond[key]
        return out


def _c_series(kappa: Sequence[Fraction]) -> Series1:
    return Series1((Fraction(0),) + tuple(kappa))


def _marginals(cs: ConditionalPairSpec, side: Side) -> tuple[tuple[Fraction, ...], tuple[Fraction, ...]]:
    if side == "a":
        return cs.base.kappa_a, cs.cond.kappa_a
    if side == "b":
        return cs.base.kappa_b, cs.cond.kappa_b
    raise ValueError(f"side must be 'a' or 'b', not {side!r}")


def conditional_ratio(cs: ConditionalPairSpec, side: Side) -> Series1:
    """``c^c(c^{<-1>}(z)) / z``, an ordinary series with constant term ``kappa^c_1 / kappa_1``."""
    kappa, kappa_c = _marginals(cs, side)
    if not kappa or kappa[0] == 0:
        raise DomainError(f"conditional S-transform of {side} needs a nonzero first cumulant")
    return compose1(_c_series(kappa_c), invert1(_c_series(kappa))).div_z()


def conditional_s(cs: ConditionalPairSpec, side: Side) -> Series1:
    """``S^c(z) = c^c(c^{<-1>}(z)) / c^{<-1>}(z)``.

    Both numerator and denominator are divisible by ``z``; after dividing,
    the denominator has constant term ``1/kappa_1``, so the constant term of
    the result is ``kappa^c_1``.
    """
    ratio = conditional_ratio(cs, side)
    kappa, _ = _marginals(cs, side)
    return ratio / invert1(_c_series(kappa)).div_z()


def _q(p: PairSpec, k_source: PairSpec) -> Series2:
    """``K`` of ``k_source`` composed with the inverse cumulant series of ``p``."""
    return compose2(series_K(k_source), invert1(_c_series(p.kappa_a)), invert1(_c_series(p.kappa_b)))


def _lift_z(s: Series1, orders: tuple[int, int]) -> Series2:
    return Series2.from_z(s, orders[1]).truncate((min(s.order, orders[0]), orders[1]))


def _lift_w(s: Series1, orders: tuple[int, int]) -> Series2:
    return Series2.from_w(s, orders[0]).truncate((orders[0], min(s.order, orders[1])))


def conditional_K_rhs_same_order(cs1: ConditionalPairSpec, cs2: ConditionalPairSpec) -> Series2:
    """Right-hand side for the product ``(a1 a2, b1 b2)``:

    ``A2 B2 Q^c_2 + [1 + (1/z + 1/w + 1/(zw)) Q_2] Q^c_1`` with
    ``A2 = c^c_{a2}(c_{a2}^{<-1>}(z))/z`` and ``B2`` likewise in ``w``.
    """
    for cs in (cs1, cs2):
        cs.base.require_nonzero_mean()
    q2 = _q(cs2.base, cs2.base)
    qc1, qc2 = _q(cs1.base, cs1.cond), _q(cs2.base, cs2.cond)
    o = q2.orders
    a2 = _lift_z(conditional_ratio(cs2, "a"), o)
    b2 = _lift_w(conditional_ratio(cs2, "b"), o)
    bracket = 1 + div_monomial(q2, "z") + div_monomial(q2, "w") + div_monomial(q2, "zw")
    return a2 * b2 * qc2 + bracket * qc1


def conditional_K_rhs_opposite_order(cs1: ConditionalPairSpec, cs2: ConditionalPairSpec) -> Series2:
    """Right-hand side for the product ``(a1 a2, b2 b1)``:

    ``[B2 (1 + Q2/z) Q^c_1 + A1 (1 + Q1/w) Q^c_2] / (1 - Q1 Q2/(zw))``.
    """
    for cs in (cs1, cs2):
        cs.base.require_nonzero_mean()
    q1, q2 = _q(cs1.base, cs1.base), _q(cs2.base, cs2.base)
    qc1, qc2 = _q(cs1.base, cs1.cond), _q(cs2.base, cs2.cond)
    o = q1.orders
    a1 = _lift_z(conditional_ratio(cs1, "a"), o)
    b2 = _lift_w(conditional_ratio(cs2, "b"), o)
    num = b2 * (1 + div_monomial(q2, "z")) * qc1 + a1 * (1 + div_monomial(q1, "w")) * qc2
    den = 1 - div_monomial(q1 * q2, "zw")
    return num / den


def same_order_reference(p1: PairSpec, p2: PairSpec) -> Series2:
    """Composed mixed-cumulant series of ``(a1 a2, b1 b2)`` implied by
    multiplicativity of the partial S-transform: ``(S1 S2 - 1) zw / (1 + z + w)``."""
    prod = partial_s(p1) * partial_s(p2)
    lifted = (prod - 1).mul_monomial("zw")
    o = lifted.orders
    return lifted / (1 + Series2.z(o) + Series2.w(o))


def verify_same_order_reduction(p1: PairSpec, p2: PairSpec) -> Check:
    rhs = conditional_K_rhs_same_order(ConditionalPairSpec.single_state(p1), ConditionalPairSpec.single_state(p2))
    return compare("conditional_same_order", rhs, same_order_reference(p1, p2))


def verify_opposite_order_reduction(p1: PairSpec, p2: PairSpec) -> Check:
    from .bifree_product import k_expression_rhs
    rhs = conditional_K_rhs_opposite_order(ConditionalPairSpec.single_state(p1),
                                           ConditionalPairSpec.single_state(p2))
    num, den = k_expression_rhs(_q(p1, p1), _q(p2, p2))
    return compare("conditional_opposite_order", rhs, num / den)


def verify_conditional_s_reduction(p: PairSpec, side: Side) -> Check:
    """With a single state, ``S^c(z) S(z) = 1``."""
    from .transforms import s_transform
    s_c = conditional_s(ConditionalPairSpec.single_state(p), side)
    prod = s_c * s_transform(p, side)
    return compare(f"conditional_s[{side}]", prod, Series1.constant(1, prod.order))
