from fractions import Fraction

import pytest

from bifree_sop import nc_lattice as ncl
from bifree_sop.errors import DomainError, OrderError
from bifree_sop.mult_functions import (
    MultFn, eval_on, phi_series, pinched_convolve, star_convolve, verify_inverse_product,
    verify_pinched_composition, verify_star_commutative, verify_unpinched_composition,
)
from bifree_sop.nc_lattice import Partition
from bifree_sop.power_series import Series1
from bifree_sop.rng import random_mult_fn
from bifree_sop.transforms import PairSpec, series_c


def convolve_direct(f, g, pool):
    return [sum((eval_on(f, p) * eval_on(g, ncl.kreweras_nc(p)) for p in pool(n)), Fraction(0))
            for n in range(1, f.order + 1)]


def test_eval_on_examples():
    f = MultFn([3, 5, 7])
    assert eval_on(f, ncl.zero(3)) == 27
    assert eval_on(f, ncl.one(3)) == 7
    assert eval_on(MultFn([1, 5]), Partition.from_blocks([[1, 2], [3]])) == 5
    with pytest.raises(OrderError):
        eval_on(MultFn([1, 5]), ncl.one(3))


def test_star_examples(rng):
    f, g = random_mult_fn(rng, 3), random_mult_fn(rng, 3)
    assert star_convolve(f, g)[1] == f[1] * g[1]
    assert star_convolve(f, g)[2] == f[2] + g[2]
    with pytest.raises(ValueError):
        star_convolve(f, random_mult_fn(rng, 4))


def test_pinched_examples(rng):
    f, g = random_mult_fn(rng, 3), random_mult_fn(rng, 3)
    h = pinched_convolve(f, g)
    assert h[1] == 1 and h[2] == g[2]
    with pytest.raises(DomainError):
        pinched_convolve(MultFn([2, 1]), MultFn([1, 1]))


def test_pinched_not_commutative():
    f, g = MultFn([1, 2, 0]), MultFn([1, 0, 0])
    assert pinched_convolve(f, g) != pinched_convolve(g, f)


def test_convolutions_match_direct_sum(rng):
    for _ in range(3):
        f, g = random_mult_fn(rng, 6), random_mult_fn(rng, 6)
        assert list(star_convolve(f, g).values) == convolve_direct(f, g, ncl.enumerate_nc)
        assert list(pinched_convolve(f, g).values) == convolve_direct(f, g, ncl.enumerate_nc_prime)


def test_phi_series_examples(rng):
    assert phi_series(MultFn([1, 1, 1])) == Series1([0, 1, 1, 1])
    assert phi_series(MultFn([1, 0, 0])) == Series1.variable(3)
    kappa = [Fraction(2), Fraction(-1, 3), Fraction(5)]
    assert phi_series(MultFn(kappa)) == series_c(PairSpec.independent(kappa, [1]), "a")


@pytest.mark.parametrize("trial", range(5))
def test_identities_on_random_pairs(rng, trial):
    f1, f2 = random_mult_fn(rng, 6), random_mult_fn(rng, 6)
    for check in (verify_pinched_composition, verify_inverse_product,
                  verify_unpinched_composition, verify_star_commutative):
        result = check(f1, f2)
        assert result, result.to_json()


def test_failed_check_reports_cell():
    from bifree_sop.checks import compare
    c = compare("demo", Series1([0, 1, 2]), Series1([0, 1, 3]))
    assert not c
    assert c.to_json()["first_failure"] == {"cell": [2], "lhs": {"num": "2", "den": "1"},
                                            "rhs": {"num": "3", "den": "1"}}
