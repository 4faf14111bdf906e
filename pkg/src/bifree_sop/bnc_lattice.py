"""Bi-non-crossing partitions BNC(chi).

A :class:`BNCPartition` stores its blocks on the flat positions ``1..n+m`` of
the standard map ``chi_{n,m}``: positions ``1..n`` are the left nodes
``1_l..n_l`` and positions ``n+1..n+m`` are the right nodes ``1_r..m_r``.
Everything reduces to NC(n+m) through the permutation ``s_chi``, which reads
left positions top-down and then right positions bottom-up.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property, lru_cache
from typing import Iterable, Literal

from . import nc_lattice as ncl
from .nc_lattice import DEFAULT_CAP, Partition

Side = Literal["l", "r"]


@dataclass(frozen=True)
class ChiMap:
    labels: tuple[str, ...]

    def __post_init__(self):
        if any(x not in ("l", "r") for x in self.labels):
            raise ValueError(f"labels must be 'l' or 'r': {self.labels}")

    @classmethod
    def standard(cls, n_left: int, n_right: int) -> "ChiMap":
        if n_left < 0 or n_right < 0:
            raise ValueError("side sizes must be nonnegative")
        return cls(("l",) * n_left + ("r",) * n_right)

    @property
    def n_left(self) -> int:
        return self.labels.count("l")

    @property
    def n_right(self) -> int:
        return self.labels.count("r")

    @property
    def size(self) -> int:
        return len(self.labels)

    @cached_property
    def s(self) -> tuple[int, ...]:
        """``s_chi`` as a tuple: ``s[j - 1] = s_chi(j)``."""
        lefts = [k + 1 for k, x in enumerate(self.labels) if x == "l"]
        rights = [k + 1 for k, x in enumerate(self.labels) if x == "r"]
        return tuple(lefts + rights[::-1])

    @cached_property
    def s_inv(self) -> tuple[int, ...]:
        inv = [0] * self.size
        for j, k in enumerate(self.s):
            inv[k - 1] = j + 1
        return tuple(inv)

    def tag(self, pos: int) -> tuple[Side, int]:
        """Flat position -> (side, within-side index)."""
        side = self.labels[pos - 1]
        return side, self.labels[:pos].count(side)

    def position(self, side: Side, index: int) -> int:
        seen = 0
        for k, x in enumerate(self.labels):
            if x == side:
                seen += 1
                if seen == index:
                    return k + 1
        raise ValueError(f"no node {index}_{side}")


def s_chi(chi: ChiMap) -> tuple[int, ...]:
    return chi.s


@dataclass(frozen=True)
class BNCPartition:
    chi: ChiMap
    partition: Partition

    def __post_init__(self):
        if self.partition.n != self.chi.size:
            raise ValueError("partition size does not match chi")
        if not self.to_nc().is_noncrossing():
            raise ValueError(f"{self.partition} is not bi-non-crossing for {self.chi.labels}")

    @classmethod
    def from_nc(cls, chi: ChiMap, p: Partition) -> "BNCPartition":
        """The element ``s_chi . p`` of BNC(chi); ``p`` must be non-crossing."""
        out = object.__new__(cls)
        object.__setattr__(out, "chi", chi)
        object.__setattr__(out, "partition", p.relabel(chi.s))
        return out

    @classmethod
    def from_tagged(cls, n_left: int, n_right: int,
                    blocks: Iterable[Iterable[tuple[Side, int]]]) -> "BNCPartition":
        chi = ChiMap.standard(n_left, n_right)
        flat = [[chi.position(side, k) for side, k in b] for b in blocks]
        return cls(chi, Partition.from_blocks(flat, chi.size))

    def to_nc(self) -> Partition:
        """``s_chi^{-1} . pi``, a non-crossing partition."""
        return self.partition.relabel(self.chi.s_inv)

    @property
    def n_left(self) -> int:
        return self.chi.n_left

    @property
    def n_right(self) -> int:
        return self.chi.n_right

    @property
    def blocks(self) -> tuple[tuple[int, ...], ...]:
        return self.partition.blocks

    def tagged_blocks(self) -> list[list[tuple[Side, int]]]:
        return [[self.chi.tag(x) for x in b] for b in self.partition.blocks]

    def block_types(self) -> list[tuple[int, int]]:
        """``(#left, #right)`` for each block."""
        out = []
        for b in self.partition.blocks:
            left = sum(1 for x in b if self.chi.labels[x - 1] == "l")
            out.append((left, len(b) - left))
        return out

    def to_json(self) -> list[list[dict]]:
        return [[{"side": side, "index": k} for side, k in b] for b in self.tagged_blocks()]

    def __repr__(self) -> str:
        inner = ", ".join("{" + ",".join(f"{k}{side}" for side, k in b) + "}"
                          for b in self.tagged_blocks())
        return f"BNC({self.n_left},{self.n_right})[{inner}]"


@lru_cache(maxsize=None)
def _bnc_tuple(n: int, m: int, cap: int) -> tuple[BNCPartition, ...]:
    chi = ChiMap.standard(n, m)
    return tuple(BNCPartition.from_nc(chi, p) for p in ncl._nc_tuple(n + m, cap))


def enumerate_bnc(n: int, m: int, cap: int = DEFAULT_CAP) -> list[BNCPartition]:
    """BNC(n, m) as the image of NC(n+m) under ``s_chi``."""
    if n < 0 or m < 0 or n + m < 1:
        raise ValueError("need n, m >= 0 and n + m >= 1")
    return list(_bnc_tuple(n, m, cap))


def one_bnc(n: int, m: int) -> BNCPartition:
    return BNCPartition(ChiMap.standard(n, m), ncl.one(n + m))


def zero_bnc(n: int, m: int) -> BNCPartition:
    return BNCPartition(ChiMap.standard(n, m), ncl.zero(n + m))


def kreweras_bnc(p: BNCPartition) -> BNCPartition:
    """``K(pi) = s_chi . K_NC(s_chi^{-1} . pi)``."""
    return BNCPartition.from_nc(p.chi, ncl.kreweras_nc(p.to_nc()))


def join_bnc(p: BNCPartition, q: BNCPartition) -> BNCPartition:
    if p.chi != q.chi:
        raise ValueError("partitions for different chi maps")
    return BNCPartition.from_nc(p.chi, ncl.join(p.to_nc(), q.to_nc()))


def double_embed(p: BNCPartition) -> BNCPartition:
    """View ``(pi, K(pi))`` as one element of BNC(2n, 2m).

    ``pi`` goes to odd left / even right nodes and ``K(pi)`` to even left /
    odd right nodes.
    """
    n, m = p.n_left, p.n_right
    chi2 = ChiMap.standard(2 * n, 2 * m)

    def place(part: BNCPartition, left_shift: int, right_shift: int) -> list[list[int]]:
        out = []
        for b in part.tagged_blocks():
            out.append([chi2.position(side, 2 * k - (left_shift if side == "l" else right_shift))
                        for side, k in b])
        return out

    blocks = place(p, 1, 0) + place(kreweras_bnc(p), 0, 1)
    return BNCPartition(chi2, Partition.from_blocks(blocks, chi2.size))


def sigma_nm(n: int, m: int) -> BNCPartition:
    """Pairing ``{(2i-1)_l, (2i)_l}`` and ``{(2j-1)_r, (2j)_r}`` in BNC(2n, 2m)."""
    pairs = [[("l", 2 * i - 1), ("l", 2 * i)] for i in range(1, n + 1)]
    pairs += [[("r", 2 * j - 1), ("r", 2 * j)] for j in range(1, m + 1)]
    return BNCPartition.from_tagged(2 * n, 2 * m, pairs)


def in_double_image(sigma: BNCPartition) -> bool:
    """Whether ``sigma`` in BNC(2n, 2m) arises as ``double_embed`` of some pi."""
    if sigma.n_left % 2 or sigma.n_right % 2:
        return False
    n, m = sigma.n_left // 2, sigma.n_right // 2
    for b in sigma.tagged_blocks():
        lpar = {k % 2 for side, k in b if side == "l"}
        rpar = {k % 2 for side, k in b if side == "r"}
        if len(lpar) > 1 or len(rpar) > 1:
            return False
        # even left with even right, or odd left with odd right
        if lpar and rpar and lpar == rpar:
            return False
    return join_bnc(sigma, sigma_nm(n, m)) == one_bnc(2 * n, 2 * m)


def classify_LR(p: BNCPartition) -> Literal["L", "R"]:
    """``L`` iff the doubled block of ``1_l`` reaches an even right node."""
    if p.n_left < 1 or p.n_right < 1:
        raise ValueError("classification needs n, m >= 1")
    sigma = double_embed(p)
    block = sigma.partition.block_of(sigma.chi.position("l", 1))
    for x in block:
        side, k = sigma.chi.tag(x)
        if side == "r" and k % 2 == 0:
            return "L"
    return "R"


def is_R_witness(p: BNCPartition) -> bool:
    """The block of K(pi) containing ``1_r`` reaches an even left node (doubled picture)."""
    sigma = double_embed(p)
    block = sigma.partition.block_of(sigma.chi.position("r", 1))
    return any(side == "l" and k % 2 == 0 for side, k in map(sigma.chi.tag, block))


def _parity_pure(p: BNCPartition) -> bool:
    n = p.n_left
    parity: dict[int, int] = {}
    for pos, b in enumerate(p.partition.membership, start=1):
        k = pos if pos <= n else pos - n
        if parity.setdefault(b, k % 2) != k % 2:
            return False
    return True


def sigma_L(n: int, m: int) -> BNCPartition:
    pairs = [[("l", 2 * i), ("l", 2 * i + 1)] for i in range(1, n + 1)]
    pairs += [[("r", 2 * j - 1), ("r", 2 * j)] for j in range(1, m + 1)]
    singles = [[("l", 1)]]
    return BNCPartition.from_tagged(2 * n + 1, 2 * m, singles + pairs)


def sigma_R(n: int, m: int) -> BNCPartition:
    pairs = [[("l", 2 * i - 1), ("l", 2 * i)] for i in range(1, n + 1)]
    pairs += [[("r", 2 * j), ("r", 2 * j + 1)] for j in range(1, m + 1)]
    singles = [[("r", 1)]]
    return BNCPartition.from_tagged(2 * n, 2 * m + 1, singles + pairs)


def _bottom_class(n_left: int, n_right: int, sigma: BNCPartition, cap: int) -> tuple[BNCPartition, ...]:
    full = one_bnc(n_left, n_right)
    return tuple(p for p in _bnc_tuple(n_left, n_right, cap)
                 if _parity_pure(p) and join_bnc(p, sigma) == full)


@lru_cache(maxsize=None)
def _lb(n: int, m: int, cap: int) -> tuple[BNCPartition, ...]:
    return _bottom_class(2 * n + 1, 2 * m, sigma_L(n, m), cap)


@lru_cache(maxsize=None)
def _rb(n: int, m: int, cap: int) -> tuple[BNCPartition, ...]:
    return _bottom_class(2 * n, 2 * m + 1, sigma_R(n, m), cap)


def enumerate_bnc_lb(n: int, m: int, cap: int = DEFAULT_CAP) -> list[BNCPartition]:
    """BNC_Lb(2n+1, 2m): parity-pure partitions whose join with sigma_L is full."""
    return list(_lb(n, m, cap))


def enumerate_bnc_rb(n: int, m: int, cap: int = DEFAULT_CAP) -> list[BNCPartition]:
    """BNC_Rb(2n, 2m+1): mirror of :func:`enumerate_bnc_lb`."""
    return list(_rb(n, m, cap))
