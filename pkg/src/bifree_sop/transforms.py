"""Free and bi-free transform series of a two-faced pair.

Cumulant data (:class:`PairSpec`) is the primary representation; moments are
derived from it by summing over (bi-)non-crossing partitions.  Sums are
aggregated by the multiset of block types ``(#left, #right)``, which is all
a product of cumulants depends on, so each lattice is enumerated once per
shape and cached.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Literal, Sequence

from . import nc_lattice as ncl
from .checks import Check, all_of, compare
from .errors import DomainError
from .nc_lattice import DEFAULT_CAP
from .power_series import Series1, Series2, compose2, div_monomial, invert1

Side = Literal["a", "b"]
Profile = tuple[tuple[int, int], ...]


def _fractions(seq) -> tuple[Fraction, ...]:
    return tuple(Fraction(x) for x in seq)


@dataclass(frozen=True)
class PairSpec:
    """Cumulants of a two-faced pair ``(a, b)`` up to orders ``(N, M)``.

    ``kappa_a[n-1]`` is the free cumulant of ``a`` of order ``n``,
    ``kappa_b[m-1]`` that of ``b``, and ``kappa_ab[n-1][m-1]`` the mixed
    cumulant with ``n`` left and ``m`` right legs.
    """

    kappa_a: tuple[Fraction, ...]
    kappa_b: tuple[Fraction, ...]
    kappa_ab: tuple[tuple[Fraction, ...], ...]

    def __init__(self, kappa_a: Sequence, kappa_b: Sequence, kappa_ab: Sequence[Sequence]):
        ka, kb = _fractions(kappa_a), _fractions(kappa_b)
        kab = tuple(_fractions(row) for row in kappa_ab)
        if len(kab) != len(ka) or any(len(row) != len(kb) for row in kab):
            raise ValueError("kappa_ab must be an N x M grid matching the marginals")
        object.__setattr__(self, "kappa_a", ka)
        object.__setattr__(self, "kappa_b", kb)
        object.__setattr__(self, "kappa_ab", kab)

    @classmethod
    def independent(cls, kappa_a: Sequence, kappa_b: Sequence) -> "PairSpec":
        """A pair whose mixed cumulants all vanish."""
        return cls(kappa_a, kappa_b, [[0] * len(kappa_b) for _ in kappa_a])

    @property
    def orders(self) -> tuple[int, int]:
        return len(self.kappa_a), len(self.kappa_b)

    def kappa(self, i: int, j: int) -> Fraction:
        """``kappa_{i,j}`` with the conventions for ``i = 0`` or ``j = 0``."""
        if i == 0 and j == 0:
            return Fraction(1)
        if j == 0:
            return self.kappa_a[i - 1]
        if i == 0:
            return self.kappa_b[j - 1]
        return self.kappa_ab[i - 1][j - 1]

    def truncate(self, orders: tuple[int, int]) -> "PairSpec":
        n, m = orders
        if n > self.orders[0] or m > self.orders[1]:
            raise ValueError(f"cannot extend orders {self.orders} to {orders}")
        return PairSpec(self.kappa_a[:n], self.kappa_b[:m], [row[:m] for row in self.kappa_ab[:n]])

    def require_nonzero_mean(self) -> None:
        if not self.kappa_a or self.kappa_a[0] == 0:
            raise DomainError("first cumulant of a must be nonzero")
        if not self.kappa_b or self.kappa_b[0] == 0:
            raise DomainError("first cumulant of b must be nonzero")

    def to_json(self) -> dict:
        from .jsonio import rational_to_json as enc
        return {"orders": list(self.orders),
                "kappa_a": [enc(x) for x in self.kappa_a],
                "kappa_b": [enc(x) for x in self.kappa_b],
                "kappa_ab": [[enc(x) for x in row] for row in self.kappa_ab]}


@dataclass(frozen=True)
class MomentSpec:
    """Ordered moments ``phi(a^n b^m)`` for ``0 <= n <= N``, ``0 <= m <= M``."""

    moments: tuple[tuple[Fraction, ...], ...]

    def __init__(self, moments: Sequence[Sequence]):
        grid = tuple(_fractions(row) for row in moments)
        if not grid or any(len(r) != len(grid[0]) for r in grid):
            raise ValueError("moments must be a rectangular grid")
        if grid[0][0] != 1:
            raise ValueError("phi(1) must equal 1")
        object.__setattr__(self, "moments", grid)

    @property
    def orders(self) -> tuple[int, int]:
        return len(self.moments) - 1, len(self.moments[0]) - 1

    def __getitem__(self, ij: tuple[int, int]) -> Fraction:
        return self.moments[ij[0]][ij[1]]

    def to_json(self) -> dict:
        from .jsonio import rational_to_json as enc
        return {"orders": list(self.orders),
                "moments": [[enc(x) for x in row] for row in self.moments]}


# ---- block-type profiles -------------------------------------------------

def _types(memb: tuple[int, ...], n_left: int) -> Profile:
    nb = max(memb) + 1
    left = [0] * nb
    size = [0] * nb
    for pos, b in enumerate(memb):
        size[b] += 1
        if pos < n_left:
            left[b] += 1
    return tuple(sorted((l, s - l) for l, s in zip(left, size)))


@lru_cache(maxsize=None)
def type_profiles(n: int, m: int, cap: int = DEFAULT_CAP) -> tuple[tuple[Profile, int], ...]:
    """Multiset of block types over BNC(n, m), aggregated: ``(profile, count)`` pairs.

    BNC(n, m) is NC(n+m) relabelled by ``s_chi``, which sends ``1..n`` to the
    left nodes, so a block's type can be read on the NC side.
    """
    if n + m == 0:
        return (((), 1),)
    counts = Counter(_types(memb, n) for memb in ncl.iter_nc(n + m, cap))
    return tuple(sorted(counts.items()))


@lru_cache(maxsize=None)
def mobius_profiles(n: int, m: int, cap: int = DEFAULT_CAP) -> tuple[tuple[Profile, int], ...]:
    """Like :func:`type_profiles` but weighting each partition by ``mu(pi, 1)``."""
    if n + m == 0:
        return (((), 1),)
    weights: Counter = Counter()
    for memb in ncl.iter_nc(n + m, cap):
        weights[_types(memb, n)] += ncl.mobius_to_top(ncl.Partition(memb))
    return tuple(sorted((k, v) for k, v in weights.items() if v))


def _profile_sum(profiles, value) -> Fraction:
    total = Fraction(0)
    for profile, weight in profiles:
        term = Fraction(weight)
        for t in profile:
            term *= value(*t)
            if not term:
                break
        total += term
    return total


# ---- moment / cumulant conversions --------------------------------------

def free_cumulants_to_moments(kappa: Sequence, cap: int = DEFAULT_CAP) -> list[Fraction]:
    """``m_n = sum over NC(n) of the product of kappa_|V|``, for ``n = 1..len(kappa)``."""
    k = _fractions(kappa)
    return [_profile_sum(type_profiles(n, 0, cap), lambda i, j: k[i - 1]) for n in range(1, len(k) + 1)]


def free_moments_to_cumulants(moments: Sequence, cap: int = DEFAULT_CAP) -> list[Fraction]:
    """Inverse of :func:`free_cumulants_to_moments` via the Moebius function of NC(n)."""
    mo = _fractions(moments)
    return [_profile_sum(mobius_profiles(n, 0, cap), lambda i, j: mo[i - 1]) for n in range(1, len(mo) + 1)]


def bifree_cumulants_to_moments(p: PairSpec, cap: int = DEFAULT_CAP) -> MomentSpec:
    """``phi(a^n b^m) = sum over BNC(n, m) of kappa_pi(a, b)``."""
    n_max, m_max = p.orders
    grid = [[_profile_sum(type_profiles(n, m, cap), p.kappa) for m in range(m_max + 1)]
            for n in range(n_max + 1)]
    return MomentSpec(grid)


def bifree_moments_to_cumulants(mom: MomentSpec, cap: int = DEFAULT_CAP) -> PairSpec:
    n_max, m_max = mom.orders

    def value(i: int, j: int) -> Fraction:
        return mom.moments[i][j]

    grid = [[_profile_sum(mobius_profiles(n, m, cap), value) for m in range(m_max + 1)]
            for n in range(n_max + 1)]
    return PairSpec([row[0] for row in grid[1:]], grid[0][1:], [row[1:] for row in grid[1:]])


# ---- one-variable series --------------------------------------------------

def _marginal(p: PairSpec, side: Side) -> tuple[Fraction, ...]:
    if side == "a":
        return p.kappa_a
    if side == "b":
        return p.kappa_b
    raise ValueError(f"side must be 'a' or 'b', not {side!r}")


def series_c(p: PairSpec, side: Side) -> Series1:
    """Cumulant series ``sum kappa_n z^n``."""
    return Series1((Fraction(0),) + _marginal(p, side))


def series_h(p: PairSpec, side: Side, cap: int = DEFAULT_CAP) -> Series1:
    """Moment series ``1 + sum m_n z^n``."""
    return Series1([Fraction(1)] + free_cumulants_to_moments(_marginal(p, side), cap))


def series_psi(p: PairSpec, side: Side, cap: int = DEFAULT_CAP) -> Series1:
    return series_h(p, side, cap) - 1


def series_chi(p: PairSpec, side: Side, cap: int = DEFAULT_CAP) -> Series1:
    """Compositional inverse of ``psi = h - 1``."""
    _require_mean(_marginal(p, side), side)
    return invert1(series_psi(p, side, cap))


def _require_mean(kappa: Sequence[Fraction], side: str) -> None:
    if not kappa or kappa[0] == 0:
        raise DomainError(f"S-transform of {side} needs a nonzero first cumulant")


def s_transform_from_cumulants(kappa: Sequence) -> Series1:
    """``c^{<-1>}(z) / z``; order drops by one."""
    kappa = _fractions(kappa)
    _require_mean(kappa, "this variable")
    return invert1(Series1((Fraction(0),) + kappa)).div_z()


def s_transform_from_moments(moments: Sequence) -> Series1:
    """``(1 + z) / z`` times the inverse of the moment series minus 1."""
    moments = _fractions(moments)
    _require_mean(moments, "this variable")
    chi = invert1(Series1((Fraction(0),) + moments))
    return (chi + chi.mul_z().truncate(chi.order)).div_z()


def s_transform(p: PairSpec, side: Side, route: Literal["cumulant", "chi"] = "cumulant",
                cap: int = DEFAULT_CAP) -> Series1:
    kappa = _marginal(p, side)
    if route == "cumulant":
        return s_transform_from_cumulants(kappa)
    if route == "chi":
        _require_mean(kappa, side)
        return s_transform_from_moments(free_cumulants_to_moments(kappa, cap))
    raise ValueError(f"unknown route {route!r}")


def verify_s_routes(p: PairSpec, side: Side, cap: int = DEFAULT_CAP) -> Check:
    return compare(f"s_routes[{side}]", s_transform(p, side, "chi", cap), s_transform(p, side, "cumulant"))


# ---- two-variable series -------------------------------------------------

def series_C(p: PairSpec) -> Series2:
    n, m = p.orders
    return Series2([[p.kappa(i, j) for j in range(m + 1)] for i in range(n + 1)])


def series_K(p: PairSpec) -> Series2:
    """Mixed part of ``C``: support ``n, m >= 1``."""
    n, m = p.orders
    zero = Fraction(0)
    return Series2([[p.kappa(i, j) if i and j else zero for j in range(m + 1)] for i in range(n + 1)])


def series_H(p: PairSpec, cap: int = DEFAULT_CAP) -> Series2:
    return Series2(bifree_cumulants_to_moments(p, cap).moments)


def series_HCK(p: PairSpec, cap: int = DEFAULT_CAP) -> tuple[Series2, Series2, Series2]:
    return series_H(p, cap), series_C(p), series_K(p)


def verify_moment_cumulant_identity(p: PairSpec, cap: int = DEFAULT_CAP) -> Check:
    """``h_a(z) + h_b(w) = h_a(z) h_b(w) / H(z, w) + C(z h_a(z), w h_b(w))``."""
    n, m = p.orders
    h_a, h_b = series_h(p, "a", cap), series_h(p, "b", cap)
    H, C, _ = series_HCK(p, cap)
    ha2, hb2 = Series2.from_z(h_a, m), Series2.from_w(h_b, n)
    lhs = ha2 + hb2
    rhs = ha2 * hb2 / H + compose2(C, h_a.mul_z().truncate(n), h_b.mul_z().truncate(m))
    return compare("moment_cumulant", lhs, rhs)


def composed_K(p: PairSpec) -> Series2:
    """``K(c_a^{<-1>}(z), c_b^{<-1>}(w))``."""
    p.require_nonzero_mean()
    return compose2(series_K(p), invert1(series_c(p, "a")), invert1(series_c(p, "b")))


def composed_H(p: PairSpec, cap: int = DEFAULT_CAP) -> Series2:
    """``H(X_a(z), X_b(w))`` with ``X`` the inverse of ``h - 1``."""
    p.require_nonzero_mean()
    return compose2(series_H(p, cap), series_chi(p, "a", cap), series_chi(p, "b", cap))


def _one_plus(s: Series2, which: Literal["z", "w"]) -> Series2:
    """``1 + z`` or ``1 + w`` on the grid of ``s``."""
    gen = Series2.z(s.orders) if which == "z" else Series2.w(s.orders)
    return gen + 1


def partial_s(p: PairSpec, form: Literal["cumulant", "h"] = "cumulant", cap: int = DEFAULT_CAP) -> Series2:
    """Two-variable partial bi-free S-transform.

    The cumulant form is ``1 + (1 + z + w) K~ / (zw)`` with ``K~`` the
    composed mixed-cumulant series; the H form is
    ``(1+z)(1+w) (G - 1 - z - w) / (zw G)`` with ``G = H(X_a, X_b)``.
    """
    if form == "cumulant":
        kt = div_monomial(composed_K(p), "zw")
        return 1 + (_one_plus(kt, "z") + Series2.w(kt.orders)) * kt
    if form == "h":
        g = composed_H(p, cap)
        core = div_monomial(g - _one_plus(g, "z") - Series2.w(g.orders), "zw")
        return _one_plus(core, "z") * _one_plus(core, "w") * core / g.truncate(core.orders)
    raise ValueError(f"unknown form {form!r}")


def opposite_partial_s(p: PairSpec, form: Literal["ratio", "h"] = "ratio", cap: int = DEFAULT_CAP) -> Series2:
    """Opposite two-variable partial bi-free S-transform.

    The ratio form is ``(1 + K~/z) / (1 + K~/w)``.  The H form is
    ``(1+z)/(1+w) * [(G - 1 - w)/z] / [(G - 1 - z)/w]`` where both brackets
    are exact divisions with constant term 1.
    """
    if form == "ratio":
        kt = composed_K(p)
        return (1 + div_monomial(kt, "z")) / (1 + div_monomial(kt, "w"))
    if form == "h":
        g = composed_H(p, cap)
        num = div_monomial(g - _one_plus(g, "w"), "z")
        den = div_monomial(g - _one_plus(g, "z"), "w")
        return _one_plus(num, "z") * num / (_one_plus(den, "w") * den)
    raise ValueError(f"unknown form {form!r}")


def verify_partial_s_forms(p: PairSpec, cap: int = DEFAULT_CAP) -> Check:
    return compare("partial_s_forms", partial_s(p, "h", cap), partial_s(p, "cumulant"))


def verify_sop_forms(p: PairSpec, cap: int = DEFAULT_CAP) -> Check:
    return compare("sop_forms", opposite_partial_s(p, "h", cap), opposite_partial_s(p, "ratio"))


def rescale(p: PairSpec, lam, mu) -> PairSpec:
    """Cumulants of ``(lam a, mu b)``: ``kappa_{n,m}`` scales by ``lam^n mu^m``."""
    lam, mu = Fraction(lam), Fraction(mu)
    if lam == 0 or mu == 0:
        raise ValueError("rescaling factors must be nonzero")
    return PairSpec([k * lam ** n for n, k in enumerate(p.kappa_a, 1)],
                    [k * mu ** m for m, k in enumerate(p.kappa_b, 1)],
                    [[k * lam ** n * mu ** m for m, k in enumerate(row, 1)]
                     for n, row in enumerate(p.kappa_ab, 1)])


def normalize(p: PairSpec) -> tuple[PairSpec, Fraction, Fraction]:
    """Rescale to unit first cumulants; returns the spec and the factors used."""
    p.require_nonzero_mean()
    lam, mu = 1 / p.kappa_a[0], 1 / p.kappa_b[0]
    return rescale(p, lam, mu), lam, mu


def swap(p: PairSpec) -> PairSpec:
    """Cumulant data of the pair ``(b, a)``."""
    return PairSpec(p.kappa_b, p.kappa_a, [list(col) for col in zip(*p.kappa_ab)] if p.kappa_ab else [])


def verify_swap_symmetry(p: PairSpec) -> Check:
    """``S_{b,a}(z, w) = S_{a,b}(w, z)`` and ``S^op_{b,a}(z, w) = 1 / S^op_{a,b}(w, z)``."""
    q = swap(p)
    s_ab, s_ba = partial_s(p), partial_s(q)
    sop_ab, sop_ba = opposite_partial_s(p), opposite_partial_s(q)
    return all_of("swap", [
        compare("partial_s_swap", s_ba, s_ab.transpose()),
        compare("sop_swap", sop_ba * sop_ab.transpose(), Series2.constant(1, sop_ba.orders)),
    ])


def verify_rescale_invariance(p: PairSpec, lam, mu) -> Check:
    return compare("sop_rescale", opposite_partial_s(rescale(p, lam, mu)), opposite_partial_s(p))


def verify_chi_into_moment(p: PairSpec, side: Side, cap: int = DEFAULT_CAP) -> Check:
    """``h(X(z)) = 1 + z``."""
    h = series_h(p, side, cap)
    lhs = h.compose(series_chi(p, side, cap))
    return compare(f"chi_into_moment[{side}]", lhs, Series1([1, 1] + [0] * (lhs.order - 1)))
