"""Cumulants of the product pair ``(a1 a2, b2 b1)`` of two bi-free pairs.

Every series here is a sum over bi-non-crossing partitions of products of
cumulants of the two pairs.  As in :mod:`transforms`, sums are aggregated by
block-type profiles so each lattice is walked once per shape.

The decomposition into the classes L and R, the auxiliary series built on
the bottom classes, and the chain of identities leading to the
multiplicativity of the opposite partial S-transform are all verified
exactly, with series denominators cleared by cross-multiplication.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache

from . import bnc_lattice as bnc
from .checks import Check, all_of, compare
from .mult_functions import MultFn, phi_series, pinched_convolve, star_convolve
from .nc_lattice import DEFAULT_CAP
from .power_series import Series1, Series2, compose2, div_monomial, invert1
from .transforms import PairSpec, normalize, opposite_partial_s, series_K

Types = tuple[tuple[int, int], ...]


@dataclass(frozen=True)
class ProductContext:
    """Two pairs ``(a1, b1)`` and ``(a2, b2)`` assumed bi-free.

    ``p1`` and ``p2`` are rescaled to unit first cumulants when
    ``normalized`` is set (the default); the data as given is kept in
    ``raw1``/``raw2`` together with the factors used.
    """

    raw1: PairSpec
    raw2: PairSpec
    normalized: bool = True
    p1: PairSpec = field(init=False)
    p2: PairSpec = field(init=False)
    scales: tuple[tuple[Fraction, Fraction], tuple[Fraction, Fraction]] = field(init=False)

    def __post_init__(self):
        if self.raw1.orders != self.raw2.orders:
            raise ValueError(f"pair orders differ: {self.raw1.orders} vs {self.raw2.orders}")
        if self.normalized:
            p1, l1, m1 = normalize(self.raw1)
            p2, l2, m2 = normalize(self.raw2)
        else:
            p1, p2 = self.raw1, self.raw2
            l1 = m1 = l2 = m2 = Fraction(1)
        object.__setattr__(self, "p1", p1)
        object.__setattr__(self, "p2", p2)
        object.__setattr__(self, "scales", ((l1, m1), (l2, m2)))

    @property
    def orders(self) -> tuple[int, int]:
        return self.p1.orders

    def mult_fns(self) -> tuple[MultFn, MultFn, MultFn, MultFn]:
        """``(f1, f2, g1, g2)``: cumulant sequences of ``a1, a2, b1, b2``."""
        return (MultFn(self.p1.kappa_a), MultFn(self.p2.kappa_a),
                MultFn(self.p1.kappa_b), MultFn(self.p2.kappa_b))


# ---- partition profiles --------------------------------------------------

def _types(p: bnc.BNCPartition) -> Types:
    return tuple(sorted(p.block_types()))


@lru_cache(maxsize=None)
def product_profiles(n: int, m: int, cap: int = DEFAULT_CAP) -> dict[str, tuple[tuple[Types, Types, int], ...]]:
    """Aggregate ``(types of pi, types of K(pi))`` over BNC(n, m), split by class.

    Keys are ``"L"`` and ``"R"`` when ``n, m >= 1`` and ``"all"`` otherwise.
    """
    if n + m == 0:
        return {"all": (((), (), 1),)}
    split = n >= 1 and m >= 1
    counts: dict[str, Counter] = {}
    for p in bnc.enumerate_bnc(n, m, cap):
        key = bnc.classify_LR(p) if split else "all"
        counts.setdefault(key, Counter())[(_types(p), _types(bnc.kreweras_bnc(p)))] += 1
    return {k: tuple((a, b, c) for (a, b), c in sorted(v.items())) for k, v in counts.items()}


def _alternating_pair(pos_in_side: int, odd_pair: int) -> int:
    return odd_pair if pos_in_side % 2 else 3 - odd_pair


def _word_profile(p: bnc.BNCPartition, odd_pair: int) -> tuple[tuple[int, int, int], ...]:
    """Per block ``(pair, #left, #right)`` on an alternating word.

    Within each side, odd positions carry pair ``odd_pair`` and even positions
    the other pair.  Parity purity of the bottom classes makes each block
    read a single pair; this is asserted.
    """
    out = []
    for block in p.tagged_blocks():
        pairs = {_alternating_pair(k, odd_pair) for _, k in block}
        if len(pairs) != 1:
            raise AssertionError(f"block {block} mixes pairs")
        left = sum(1 for side, _ in block if side == "l")
        out.append((pairs.pop(), left, len(block) - left))
    return tuple(sorted(out))


@lru_cache(maxsize=None)
def bottom_profiles(kind: str, n: int, m: int, cap: int = DEFAULT_CAP) -> tuple[tuple[tuple, int], ...]:
    """Aggregated word profiles of BNC_Lb(2n+1, 2m) (``kind="L"``) or BNC_Rb(2n, 2m+1)."""
    if kind == "L":
        parts, odd_pair = bnc.enumerate_bnc_lb(n, m, cap), 2
    elif kind == "R":
        parts, odd_pair = bnc.enumerate_bnc_rb(n, m, cap), 1
    else:
        raise ValueError(f"kind must be 'L' or 'R', not {kind!r}")
    counts = Counter(_word_profile(p, odd_pair) for p in parts)
    return tuple(sorted(counts.items()))


def _prod(spec: PairSpec, types: Types) -> Fraction:
    out = Fraction(1)
    for i, j in types:
        out *= spec.kappa(i, j)
        if not out:
            break
    return out


def _class_sum(p1: PairSpec, p2: PairSpec, n: int, m: int, classes: tuple[str, ...], cap: int) -> Fraction:
    total = Fraction(0)
    for key, rows in product_profiles(n, m, cap).items():
        if key not in classes:
            continue
        for t1, t2, count in rows:
            v = _prod(p1, t1)
            if v:
                total += count * v * _prod(p2, t2)
    return total


# ---- product cumulants and the L/R split ---------------------------------

def product_pair_cumulants(ctx: ProductContext, raw: bool = False, cap: int = DEFAULT_CAP) -> PairSpec:
    """Cumulants of ``(a1 a2, b2 b1)``: sum over BNC(n, m) of ``kappa_pi(a1,b1) kappa_K(pi)(a2,b2)``."""
    p1, p2 = (ctx.raw1, ctx.raw2) if raw else (ctx.p1, ctx.p2)
    n_max, m_max = ctx.orders
    every = ("all", "L", "R")
    grid = [[_class_sum(p1, p2, n, m, every, cap) for m in range(m_max + 1)] for n in range(n_max + 1)]
    return PairSpec([row[0] for row in grid[1:]], grid[0][1:], [row[1:] for row in grid[1:]])


def _class_series(ctx: ProductContext, cls: str, cap: int) -> Series2:
    n_max, m_max = ctx.orders
    cells = {(n, m): _class_sum(ctx.p1, ctx.p2, n, m, (cls,), cap)
             for n in range(1, n_max + 1) for m in range(1, m_max + 1)}
    return Series2.from_cells(cells, ctx.orders)


def phi_series_L(ctx: ProductContext, cap: int = DEFAULT_CAP) -> Series2:
    return _class_series(ctx, "L", cap)


def phi_series_R(ctx: ProductContext, cap: int = DEFAULT_CAP) -> Series2:
    return _class_series(ctx, "R", cap)


def _bottom_series(ctx: ProductContext, kind: str, cap: int) -> Series2:
    n_max, m_max = ctx.orders
    specs = {1: ctx.p1, 2: ctx.p2}
    cells = {}
    # weight z^{n+1} w^m for L, z^n w^{m+1} for R
    dz, dw = (1, 0) if kind == "L" else (0, 1)
    for n in range(n_max + 1 - dz):
        for m in range(m_max + 1 - dw):
            total = Fraction(0)
            for profile, count in bottom_profiles(kind, n, m, cap):
                term = Fraction(count)
                for pair, i, j in profile:
                    term *= specs[pair].kappa(i, j)
                    if not term:
                        break
                total += term
            cells[(n + dz, m + dw)] = total
    return Series2.from_cells(cells, ctx.orders)


def psi_series_L(ctx: ProductContext, cap: int = DEFAULT_CAP) -> Series2:
    return _bottom_series(ctx, "L", cap)


def psi_series_R(ctx: ProductContext, cap: int = DEFAULT_CAP) -> Series2:
    return _bottom_series(ctx, "R", cap)


def q_series(ctx: ProductContext, which: int) -> Series2:
    """``K_k(c_{a_k}^{<-1>}(z), c_{b_k}^{<-1>}(w))`` for pair ``k``."""
    p = {1: ctx.p1, 2: ctx.p2}[which]
    c_a = Series1((Fraction(0),) + p.kappa_a)
    c_b = Series1((Fraction(0),) + p.kappa_b)
    return compose2(series_K(p), invert1(c_a), invert1(c_b))


# ---- identities ---------------------------------------------------------

def _pinched(ctx: ProductContext):
    f1, f2, g1, g2 = ctx.mult_fns()
    return {
        "f12": phi_series(pinched_convolve(f1, f2)),
        "f21": phi_series(pinched_convolve(f2, f1)),
        "g12": phi_series(pinched_convolve(g1, g2)),
        "g21": phi_series(pinched_convolve(g2, g1)),
    }


def _lift_z(s: Series1, orders: tuple[int, int]) -> Series2:
    return Series2.from_z(s, orders[1]).truncate((min(s.order, orders[0]), orders[1]))


def _lift_w(s: Series1, orders: tuple[int, int]) -> Series2:
    return Series2.from_w(s, orders[0]).truncate((orders[0], min(s.order, orders[1])))


def verify_decomposition(ctx: ProductContext, cap: int = DEFAULT_CAP) -> Check:
    """``phi_L + phi_R`` equals the mixed-cumulant series of the product pair."""
    lhs = phi_series_L(ctx, cap) + phi_series_R(ctx, cap)
    return compare("decomposition", lhs, series_K(product_pair_cumulants(ctx, cap=cap)))


def verify_lemma_phiL(ctx: ProductContext, cap: int = DEFAULT_CAP) -> Check:
    """``phi_L * phi_{f1 v f2}(z) = K_1(phi_{f1 v f2}(z), phi_{g1 v g2}(w)) * psi_L``."""
    ph = _pinched(ctx)
    o = ctx.orders
    lhs = phi_series_L(ctx, cap) * _lift_z(ph["f12"], o)
    rhs = compose2(series_K(ctx.p1), ph["f12"], ph["g12"]) * psi_series_L(ctx, cap)
    return compare("lemma_phiL", lhs, rhs)


def verify_lemma_phiR(ctx: ProductContext, cap: int = DEFAULT_CAP) -> Check:
    """``phi_R * phi_{g2 v g1}(w) = K_2(phi_{f2 v f1}(z), phi_{g2 v g1}(w)) * psi_R``."""
    ph = _pinched(ctx)
    o = ctx.orders
    lhs = phi_series_R(ctx, cap) * _lift_w(ph["g21"], o)
    rhs = compose2(series_K(ctx.p2), ph["f21"], ph["g21"]) * psi_series_R(ctx, cap)
    return compare("lemma_phiR", lhs, rhs)


def verify_lemma_psiL(ctx: ProductContext, cap: int = DEFAULT_CAP) -> Check:
    """``(psi_L - phi_{f1 v f2}(z)) phi_{f2 v f1}(z) phi_{g2 v g1}(w) = z K_2(..) psi_R``."""
    ph = _pinched(ctx)
    o = ctx.orders
    lhs = (psi_series_L(ctx, cap) - _lift_z(ph["f12"], o)) * _lift_z(ph["f21"], o) * _lift_w(ph["g21"], o)
    k2 = compose2(series_K(ctx.p2), ph["f21"], ph["g21"])
    rhs = (k2 * psi_series_R(ctx, cap)).mul_monomial("z")
    return compare("lemma_psiL", lhs, rhs)


def verify_lemma_psiR(ctx: ProductContext, cap: int = DEFAULT_CAP) -> Check:
    """``(psi_R - phi_{g2 v g1}(w)) phi_{f1 v f2}(z) phi_{g1 v g2}(w) = w K_1(..) psi_L``."""
    ph = _pinched(ctx)
    o = ctx.orders
    lhs = (psi_series_R(ctx, cap) - _lift_w(ph["g21"], o)) * _lift_z(ph["f12"], o) * _lift_w(ph["g12"], o)
    k1 = compose2(series_K(ctx.p1), ph["f12"], ph["g12"])
    rhs = (k1 * psi_series_L(ctx, cap)).mul_monomial("w")
    return compare("lemma_psiR", lhs, rhs)


def _inverse_phis(ctx: ProductContext):
    f1, f2, g1, g2 = ctx.mult_fns()
    return {
        "f1": invert1(phi_series(f1)),
        "g2": invert1(phi_series(g2)),
        "f": invert1(phi_series(star_convolve(f1, f2))),
        "g": invert1(phi_series(star_convolve(g1, g2))),
    }


def verify_lemma_Psi_solved(ctx: ProductContext, cap: int = DEFAULT_CAP) -> Check:
    """Closed forms of ``psi_L``, ``psi_R`` composed with the inverse product series.

    Checked as ``Psi_L (zw - Q1 Q2) = phi_{f1}^{<-1>}(z) (zw + w Q2)`` and the
    mirror ``Psi_R (zw - Q1 Q2) = phi_{g2}^{<-1>}(w) (zw + z Q1)``.
    """
    inv = _inverse_phis(ctx)
    o = ctx.orders
    big_psi_l = compose2(psi_series_L(ctx, cap), inv["f"], inv["g"])
    big_psi_r = compose2(psi_series_R(ctx, cap), inv["f"], inv["g"])
    q1, q2 = q_series(ctx, 1), q_series(ctx, 2)
    zw = Series2.from_cells({(1, 1): 1}, o)
    denom = zw - q1 * q2
    return all_of("lemma_Psi_solved", [
        compare("Psi_L", big_psi_l * denom, _lift_z(inv["f1"], o) * (zw + q2.mul_monomial("w").truncate(o))),
        compare("Psi_R", big_psi_r * denom, _lift_w(inv["g2"], o) * (zw + q1.mul_monomial("z").truncate(o))),
    ])


def composed_product_K(ctx: ProductContext, cap: int = DEFAULT_CAP) -> Series2:
    """``K_{a1a2,b2b1}(c_{a1a2}^{<-1>}(z), c_{b2b1}^{<-1>}(w))`` for the normalized pairs."""
    prod = product_pair_cumulants(ctx, cap=cap)
    c_a = Series1((Fraction(0),) + prod.kappa_a)
    c_b = Series1((Fraction(0),) + prod.kappa_b)
    return compose2(series_K(prod), invert1(c_a), invert1(c_b))


def k_expression_rhs(q1: Series2, q2: Series2) -> tuple[Series2, Series2]:
    """``(numerator, denominator)`` of the closed form for the composed product ``K``.

    Numerator ``Q1 + Q2 + (1/z + 1/w) Q1 Q2`` and denominator
    ``1 - Q1 Q2 / (zw)``; both are ordinary series since ``Q1 Q2`` is
    divisible by ``z^2 w^2``.
    """
    qq = q1 * q2
    num = q1 + q2 + div_monomial(qq, "z") + div_monomial(qq, "w")
    den = 1 - div_monomial(qq, "zw")
    return num, den


def verify_main_K_expression(ctx: ProductContext, cap: int = DEFAULT_CAP) -> Check:
    """``K~_prod (1 - Q1 Q2/(zw)) = Q1 + Q2 + (1/z + 1/w) Q1 Q2``."""
    num, den = k_expression_rhs(q_series(ctx, 1), q_series(ctx, 2))
    return compare("main_K_expression", composed_product_K(ctx, cap) * den, num)


def verify_sop_multiplicativity(ctx: ProductContext, cap: int = DEFAULT_CAP) -> Check:
    """``S^op`` of the product pair equals the product of the two ``S^op``.

    Uses the pairs as given (not rescaled), and additionally checks the
    cross-multiplied identity
    ``(1 + Q1/w)(1 + Q2/w)(1 + K~/z) = (1 + Q1/z)(1 + Q2/z)(1 + K~/w)``
    on the normalized pairs.
    """
    for p in (ctx.raw1, ctx.raw2):
        p.require_nonzero_mean()
    raw_product = product_pair_cumulants(ctx, raw=True, cap=cap)
    lhs = opposite_partial_s(raw_product)
    rhs = opposite_partial_s(ctx.raw1) * opposite_partial_s(ctx.raw2)
    q1, q2 = q_series(ctx, 1), q_series(ctx, 2)
    kt = composed_product_K(ctx, cap)
    by_w = (1 + div_monomial(q1, "w")) * (1 + div_monomial(q2, "w")) * (1 + div_monomial(kt, "z"))
    by_z = (1 + div_monomial(q1, "z")) * (1 + div_monomial(q2, "z")) * (1 + div_monomial(kt, "w"))
    return all_of("sop_multiplicativity", [
        compare("sop_product", lhs, rhs),
        compare("sop_cross_multiplied", by_w, by_z),
    ])
