from fractions import Fraction

import pytest

from bifree_sop.bifree_product import k_expression_rhs
from bifree_sop.conditional_formulas import (
    ConditionalPairSpec, conditional_K_rhs_opposite_order, conditional_K_rhs_same_order,
    conditional_ratio, conditional_s, same_order_reference, verify_conditional_s_reduction,
    verify_opposite_order_reduction, verify_same_order_reduction,
)
from bifree_sop.errors import DomainError
from bifree_sop.jsonio import conditional_spec_from_json
from bifree_sop.power_series import Series1, Series2, compose2, invert1
from bifree_sop.rng import SplitMix64, random_pair_spec
from bifree_sop.transforms import PairSpec, normalize, s_transform, series_K

F = Fraction


def random_conditional(rng, orders, normalized=True):
    base = random_pair_spec(rng, orders)
    if normalized:
        base = normalize(base)[0]
    return ConditionalPairSpec(base, random_pair_spec(rng, orders))


def zero_mixed(p):
    return PairSpec.independent(p.kappa_a, p.kappa_b)


@pytest.mark.parametrize("seed", range(4))
def test_single_state_reductions(seed):
    rng = SplitMix64(seed)
    p1, p2 = random_pair_spec(rng, (4, 4)), random_pair_spec(rng, (4, 4))
    p1, p2 = normalize(p1)[0], normalize(p2)[0]
    assert verify_same_order_reduction(p1, p2)
    assert verify_opposite_order_reduction(p1, p2)
    for side in ("a", "b"):
        assert verify_conditional_s_reduction(p1, side)


def test_opposite_reduction_is_main_expression():
    rng = SplitMix64(21)
    p1, p2 = (normalize(random_pair_spec(rng, (3, 3)))[0] for _ in range(2))
    rhs = conditional_K_rhs_opposite_order(ConditionalPairSpec.single_state(p1),
                                           ConditionalPairSpec.single_state(p2))
    q = [compose2(series_K(p), invert1(Series1([0, *p.kappa_a])), invert1(Series1([0, *p.kappa_b])))
         for p in (p1, p2)]
    num, den = k_expression_rhs(*q)
    assert rhs * den == num.truncate(rhs.orders)


def test_conditional_s_examples():
    base = PairSpec.independent([1, 0, 0], [1, 0, 0])
    assert conditional_s(ConditionalPairSpec.single_state(base), "a") == Series1([1, 0, 0])
    rng = SplitMix64(22)
    cs = random_conditional(rng, (4, 3), normalized=False)
    s = conditional_s(cs, "a")
    assert s[0] == cs.cond.kappa_a[0]
    assert conditional_ratio(cs, "a")[0] == cs.cond.kappa_a[0] / cs.base.kappa_a[0]
    p = cs.base
    assert conditional_s(ConditionalPairSpec.single_state(p), "b") * s_transform(p, "b") == Series1([1, 0, 0])
    with pytest.raises(DomainError):
        conditional_s(ConditionalPairSpec.single_state(PairSpec.independent([0, 1], [1, 1])), "a")


def test_zero_conditional_grids_give_zero():
    rng = SplitMix64(23)
    cs1, cs2 = random_conditional(rng, (3, 3)), random_conditional(rng, (3, 3))
    z1 = ConditionalPairSpec(cs1.base, zero_mixed(cs1.cond))
    z2 = ConditionalPairSpec(cs2.base, zero_mixed(cs2.cond))
    for rhs in (conditional_K_rhs_same_order(z1, z2), conditional_K_rhs_opposite_order(z1, z2)):
        assert rhs == Series2.zero(rhs.orders)


def test_trivial_second_pair_same_order():
    rng = SplitMix64(24)
    cs1 = random_conditional(rng, (3, 3))
    triv = PairSpec.independent([1, 0, 0], [1, 0, 0])
    cs2 = ConditionalPairSpec(triv, zero_mixed(random_pair_spec(rng, (3, 3))))
    rhs = conditional_K_rhs_same_order(cs1, cs2)
    p = cs1.base
    expect = compose2(series_K(cs1.cond), invert1(Series1([0, *p.kappa_a])), invert1(Series1([0, *p.kappa_b])))
    assert rhs == expect.truncate(rhs.orders)


def test_trivial_first_pair_opposite_order():
    rng = SplitMix64(25)
    triv = PairSpec.independent([1, 0, 0], [1, 0, 0])
    cs1 = ConditionalPairSpec(triv, random_pair_spec(rng, (3, 3)))
    cs1 = ConditionalPairSpec(triv, zero_mixed(cs1.cond))
    cs2 = random_conditional(rng, (3, 3))
    rhs = conditional_K_rhs_opposite_order(cs1, cs2)
    a1 = conditional_ratio(cs1, "a")
    p = cs2.base
    qc2 = compose2(series_K(cs2.cond), invert1(Series1([0, *p.kappa_a])), invert1(Series1([0, *p.kappa_b])))
    expect = Series2.from_z(a1, qc2.orders[1]).truncate(rhs.orders) * qc2
    assert rhs == expect.truncate(rhs.orders)


def test_same_order_rhs_is_asymmetric():
    # exchanging the two pairs changes the same-order expression
    rng = SplitMix64(26)
    cs1, cs2 = random_conditional(rng, (3, 3)), random_conditional(rng, (3, 3))
    assert conditional_K_rhs_same_order(cs1, cs2) != conditional_K_rhs_same_order(cs2, cs1)


def test_same_order_reference_leading_cell():
    rng = SplitMix64(27)
    p1, p2 = (normalize(random_pair_spec(rng, (3, 3)))[0] for _ in range(2))
    assert same_order_reference(p1, p2)[0, 0] == 0
    k1, k2 = p1.kappa(1, 1), p2.kappa(1, 1)
    assert same_order_reference(p1, p2)[1, 1] == k1 + k2 + k1 * k2


def test_json_round_trip():
    cs = random_conditional(SplitMix64(28), (2, 3))
    assert conditional_spec_from_json(cs.to_json()) == cs
    with pytest.raises(ValueError):
        ConditionalPairSpec(cs.base, random_pair_spec(SplitMix64(1), (3, 3)))
