import pytest

from bifree_sop import bnc_lattice as bnc
from bifree_sop import nc_lattice as ncl
from bifree_sop.bnc_lattice import BNCPartition, ChiMap

from conftest import bnc_brute


def tagged(n, m, blocks):
    return BNCPartition.from_tagged(n, m, blocks)


def as_sets(p):
    return frozenset(frozenset(b) for b in p.tagged_blocks())


def test_s_chi_examples():
    assert bnc.s_chi(ChiMap.standard(2, 0)) == (1, 2)
    assert bnc.s_chi(ChiMap.standard(1, 1)) == (1, 2)
    assert bnc.s_chi(ChiMap.standard(1, 2)) == (1, 3, 2)


@pytest.mark.parametrize("n,m", [(n, s - n) for s in range(1, 11) for n in range(s + 1)])
def test_count_is_catalan(n, m):
    assert len(bnc.enumerate_bnc(n, m)) == ncl.catalan(n + m)


@pytest.mark.parametrize("n,m", [(1, 0), (0, 2), (1, 1), (2, 1), (1, 3), (3, 2), (2, 4)])
def test_matches_brute_force(n, m):
    assert {as_sets(p) for p in bnc.enumerate_bnc(n, m)} == bnc_brute(n, m)


def test_enumeration_examples():
    assert len(bnc.enumerate_bnc(1, 0)) == 1
    got = {as_sets(p) for p in bnc.enumerate_bnc(1, 1)}
    assert got == {as_sets(tagged(1, 1, [[("l", 1)], [("r", 1)]])),
                   as_sets(tagged(1, 1, [[("l", 1), ("r", 1)]]))}
    assert len(bnc.enumerate_bnc(2, 2)) == 14


def test_rejects_crossing_after_reordering():
    # on (2,2) the order is 1_l, 2_l, 2_r, 1_r, so {1_l, 2_r} with {2_l, 1_r} crosses
    with pytest.raises(ValueError):
        tagged(2, 2, [[("l", 1), ("r", 2)], [("l", 2), ("r", 1)]])


def test_kreweras_examples():
    full = bnc.one_bnc(2, 3)
    assert bnc.kreweras_bnc(full) == bnc.zero_bnc(2, 3)
    split = tagged(1, 1, [[("l", 1)], [("r", 1)]])
    joined = tagged(1, 1, [[("l", 1), ("r", 1)]])
    assert bnc.kreweras_bnc(split) == joined
    assert bnc.kreweras_bnc(joined) == split


def test_double_embed_examples():
    joined = tagged(1, 1, [[("l", 1), ("r", 1)]])
    expect = tagged(2, 2, [[("l", 1), ("r", 2)], [("l", 2)], [("r", 1)]])
    assert bnc.double_embed(joined) == expect
    assert bnc.double_embed(tagged(1, 0, [[("l", 1)]])) == tagged(2, 0, [[("l", 1)], [("l", 2)]])


@pytest.mark.parametrize("n,m", [(1, 1), (2, 1), (1, 2), (2, 2), (3, 1), (1, 3)])
def test_double_image_characterization(n, m):
    image = {bnc.double_embed(p) for p in bnc.enumerate_bnc(n, m)}
    assert len(image) == ncl.catalan(n + m)
    hits = {s for s in bnc.enumerate_bnc(2 * n, 2 * m) if bnc.in_double_image(s)}
    assert hits == image


def test_classify_examples():
    assert bnc.classify_LR(tagged(1, 1, [[("l", 1), ("r", 1)]])) == "L"
    assert bnc.classify_LR(tagged(1, 1, [[("l", 1)], [("r", 1)]])) == "R"
    with pytest.raises(ValueError):
        bnc.classify_LR(bnc.one_bnc(2, 0))


@pytest.mark.parametrize("n,m", [(1, 1), (2, 1), (1, 2), (2, 2), (3, 2), (2, 3), (3, 3)])
def test_dichotomy(n, m):
    # every partition is L or R, and R exactly when the K-side witness exists
    for p in bnc.enumerate_bnc(n, m):
        assert (bnc.classify_LR(p) == "R") == bnc.is_R_witness(p)


def _bottom_brute(n_left, n_right, sigma):
    """Literal filter: no block mixes an even and an odd index, join with sigma is full."""
    out = []
    for p in bnc.enumerate_bnc(n_left, n_right):
        pure = all(len({k % 2 for _, k in b}) == 1 for b in p.tagged_blocks())
        if pure and bnc.join_bnc(p, sigma) == bnc.one_bnc(n_left, n_right):
            out.append(p)
    return out


@pytest.mark.parametrize("n,m", [(0, 0), (1, 0), (0, 1), (1, 1), (2, 1), (1, 2), (2, 2)])
def test_bottom_classes_match_filter(n, m):
    assert bnc.enumerate_bnc_lb(n, m) == _bottom_brute(2 * n + 1, 2 * m, bnc.sigma_L(n, m))
    assert bnc.enumerate_bnc_rb(n, m) == _bottom_brute(2 * n, 2 * m + 1, bnc.sigma_R(n, m))


def test_bottom_class_examples():
    assert [as_sets(p) for p in bnc.enumerate_bnc_lb(0, 0)] == [as_sets(tagged(1, 0, [[("l", 1)]]))]
    assert [as_sets(p) for p in bnc.enumerate_bnc_rb(0, 0)] == [as_sets(tagged(0, 1, [[("r", 1)]]))]
    for n in range(0, 5):
        assert len(bnc.enumerate_bnc_lb(n, 0)) == ncl.catalan(n)
        assert len(bnc.enumerate_bnc_rb(0, n)) == ncl.catalan(n)


def test_lb_pure_one_side_is_nc_prime():
    # in BNC_Lb(2n+1, 0), {1} plus the even-position blocks shifted to 2..n+1 runs
    # over NC'(n+1), and the odd-position blocks are its Kreweras complement
    for n in range(0, 5):
        seen = set()
        for p in bnc.enumerate_bnc_lb(n, 0):
            even = [[k // 2 + 1 for _, k in b] for b in p.tagged_blocks() if b[0][1] % 2 == 0]
            odd = [[(k + 1) // 2 for _, k in b] for b in p.tagged_blocks() if b[0][1] % 2]
            pi = ncl.Partition.from_blocks([[1]] + even, n + 1)
            assert ncl.kreweras_nc(pi) == ncl.Partition.from_blocks(odd, n + 1)
            seen.add(pi)
        assert seen == set(ncl.enumerate_nc_prime(n + 1))
