from fractions import Fraction

import pytest

from bifree_sop import nc_lattice as ncl
from bifree_sop.errors import OrderError, SizeError
from bifree_sop.nc_lattice import Partition

from conftest import crosses_literal, noncrossing_brute, set_partitions

P = Partition.from_blocks


@pytest.mark.parametrize("n", range(1, 11))
def test_count_is_catalan(n):
    assert len(ncl.enumerate_nc(n)) == ncl.catalan(n)


@pytest.mark.parametrize("n", range(1, 8))
def test_enumeration_matches_brute_force(n):
    ours = {p.membership for p in ncl.enumerate_nc(n)}
    brute = {P(b).membership for b in noncrossing_brute(n)}
    assert ours == brute


def test_enumeration_order_is_lexicographic():
    memb = [p.membership for p in ncl.enumerate_nc(6)]
    assert memb == sorted(memb)


@pytest.mark.parametrize("n", range(1, 8))
def test_gap_crossing_agrees_with_literal(n):
    for blocks in set_partitions(n):
        assert P(blocks).is_noncrossing() == (not crosses_literal(blocks))


def test_small_examples():
    assert [p.to_json() for p in ncl.enumerate_nc(1)] == [[[1]]]
    assert len(ncl.enumerate_nc(3)) == 5
    assert P([[1, 3], [2, 4]]) not in ncl.enumerate_nc(4)


def test_cap():
    with pytest.raises(SizeError):
        ncl.enumerate_nc(6, cap=5)


def test_leq():
    assert ncl.leq(ncl.zero(3), ncl.one(3))
    assert not ncl.leq(ncl.one(3), ncl.zero(3))
    assert ncl.leq(P([[1, 2], [3]]), P([[1, 2, 3]]))
    with pytest.raises(ValueError):
        ncl.leq(ncl.zero(2), ncl.zero(3))


def test_join_examples():
    p = P([[1, 3], [2], [4]])
    assert ncl.join(p, P([[2, 4], [1], [3]])) == ncl.one(4)
    assert ncl.join(p, ncl.zero(4)) == p
    assert ncl.join(p, p) == p


@pytest.mark.parametrize("n", range(1, 6))
def test_join_is_least_upper_bound(n):
    parts = ncl.enumerate_nc(n)
    for p in parts:
        for q in parts:
            j = ncl.join(p, q)
            uppers = [r for r in parts if ncl.leq(p, r) and ncl.leq(q, r)]
            assert j in uppers
            assert all(ncl.leq(j, r) for r in uppers)


def test_kreweras_golden():
    p = P([[1, 4], [2, 3], [5], [6, 7]])
    assert ncl.kreweras_nc(p).to_json() == [[1, 3], [2], [4, 5, 7], [6]]


@pytest.mark.parametrize("n", range(1, 7))
def test_kreweras_top_bottom_and_block_count(n):
    assert ncl.kreweras_nc(ncl.zero(n)) == ncl.one(n)
    assert ncl.kreweras_nc(ncl.one(n)) == ncl.zero(n)
    for p in ncl.enumerate_nc(n):
        assert p.num_blocks + ncl.kreweras_nc(p).num_blocks == n + 1


def _interleave(p, tau):
    """p on odd positions 1,3,.. and tau on even positions 2,4,.. of {1..2n}."""
    blocks = [[2 * x - 1 for x in b] for b in p.blocks] + [[2 * x for x in b] for b in tau.blocks]
    return P(blocks)


def _kreweras_brute(p):
    """Largest tau in NC(n) such that p and tau interleave without crossing."""
    n = p.n
    ok = [t for t in ncl.enumerate_nc(n) if _interleave(p, t).is_noncrossing()]
    top = [t for t in ok if all(ncl.leq(s, t) for s in ok)]
    assert len(top) == 1
    return top[0]


@pytest.mark.parametrize("n", range(1, 7))
def test_kreweras_matches_maximal_interleaving(n):
    for p in ncl.enumerate_nc(n):
        assert ncl.kreweras_nc(p) == _kreweras_brute(p)


@pytest.mark.parametrize("n", range(1, 7))
def test_kreweras_join_characterization(n):
    pairing = P([[2 * k - 1, 2 * k] for k in range(1, n + 1)])
    candidates = ncl.enumerate_nc(n)
    for p in ncl.enumerate_nc_prime(n):
        hits = [t for t in candidates
                if _interleave(p, t).is_noncrossing()
                and ncl.join(_interleave(p, t), pairing) == ncl.one(2 * n)]
        assert hits == [ncl.kreweras_nc(p)]


@pytest.mark.parametrize("n", range(1, 8))
def test_kreweras_is_bijection(n):
    parts = ncl.enumerate_nc(n)
    assert len({ncl.kreweras_nc(p) for p in parts}) == len(parts)


def test_nc_prime():
    assert [p.to_json() for p in ncl.enumerate_nc_prime(1)] == [[[1]]]
    assert [p.to_json() for p in ncl.enumerate_nc_prime(2)] == [[[1], [2]]]
    assert len(ncl.enumerate_nc_prime(4)) == 5
    for n in range(1, 9):
        assert len(ncl.enumerate_nc_prime(n)) == ncl.catalan(n - 1)


def test_mobius_examples():
    assert ncl.mobius_nc(ncl.zero(1), ncl.one(1)) == 1
    assert ncl.mobius_nc(ncl.zero(2), ncl.one(2)) == -1
    assert ncl.mobius_nc(ncl.zero(3), ncl.one(3)) == 2
    assert isinstance(ncl.mobius_nc(ncl.zero(3), ncl.one(3)), Fraction)
    with pytest.raises(OrderError):
        ncl.mobius_nc(ncl.one(3), ncl.zero(3))


@pytest.mark.parametrize("n", range(1, 13))
def test_mobius_closed_form(n):
    assert ncl.mobius_full(n) == (-1) ** (n - 1) * ncl.catalan(n - 1)


@pytest.mark.parametrize("n", range(1, 6))
def test_mobius_to_top_matches_recursion(n):
    top = ncl.one(n)
    for p in ncl.enumerate_nc(n):
        assert ncl.mobius_to_top(p) == ncl.mobius_nc(p, top)


def test_partition_validation():
    with pytest.raises(ValueError):
        P([[1, 3]])
    with pytest.raises(ValueError):
        Partition((1, 0))
    assert P([[2], [1]]).to_json() == [[1], [2]]
