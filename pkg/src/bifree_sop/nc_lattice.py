"""The lattice NC(n) of non-crossing partitions.

Partitions are stored as membership vectors: ``membership[k]`` is the block
id of element ``k + 1``, with blocks numbered ``0, 1, ...`` in order of their
least element.  This normal form makes equality and hashing cheap and gives a
canonical enumeration order (lexicographic on the membership vector).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property, lru_cache
from typing import Iterable, Iterator, Sequence

from .errors import OrderError, SizeError

DEFAULT_CAP = 14


def catalan(n: int) -> int:
    return math.comb(2 * n, n) // (n + 1)


def _normalize(labels: Sequence[int]) -> tuple[int, ...]:
    relabel: dict[int, int] = {}
    out = []
    for x in labels:
        if x not in relabel:
            relabel[x] = len(relabel)
        out.append(relabel[x])
    return tuple(out)


@dataclass(frozen=True)
class Partition:
    """A set partition of ``{1, ..., n}``."""

    membership: tuple[int, ...]

    def __post_init__(self):
        if _normalize(self.membership) != tuple(self.membership):
            raise ValueError(f"membership vector not in normal form: {self.membership}")

    @classmethod
    def from_blocks(cls, blocks: Iterable[Iterable[int]], n: int | None = None) -> "Partition":
        blocks = [sorted(b) for b in blocks]
        elems = sorted(x for b in blocks for x in b)
        if n is None:
            n = len(elems)
        if elems != list(range(1, n + 1)):
            raise ValueError(f"blocks do not partition {{1..{n}}}: {blocks}")
        if any(len(b) == 0 for b in blocks):
            raise ValueError("empty block")
        label = [0] * n
        for i, b in enumerate(blocks):
            for x in b:
                label[x - 1] = i
        return cls(_normalize(label))

    @classmethod
    def from_labels(cls, labels: Sequence[int]) -> "Partition":
        """Build from any block labelling of ``1..n`` (labels need not be normalized)."""
        return cls(_normalize(labels))

    @property
    def n(self) -> int:
        return len(self.membership)

    @cached_property
    def blocks(self) -> tuple[tuple[int, ...], ...]:
        """Blocks as sorted 1-based tuples, ordered by least element."""
        out: list[list[int]] = [[] for _ in range(self.num_blocks)]
        for k, b in enumerate(self.membership):
            out[b].append(k + 1)
        return tuple(tuple(b) for b in out)

    @property
    def num_blocks(self) -> int:
        return max(self.membership) + 1 if self.membership else 0

    def block_of(self, x: int) -> tuple[int, ...]:
        return self.blocks[self.membership[x - 1]]

    def block_sizes(self) -> tuple[int, ...]:
        return tuple(len(b) for b in self.blocks)

    def is_noncrossing(self) -> bool:
        return _first_crossing(self.blocks) is None

    def relabel(self, perm: Sequence[int]) -> "Partition":
        """Apply ``x -> perm[x - 1]`` (a permutation of ``1..n``) to every element."""
        labels = [0] * self.n
        for k, b in enumerate(self.membership):
            labels[perm[k] - 1] = b
        return Partition.from_labels(labels)

    def to_json(self) -> list[list[int]]:
        return [list(b) for b in self.blocks]

    def __repr__(self) -> str:
        inner = ", ".join("{" + ",".join(map(str, b)) + "}" for b in self.blocks)
        return f"Partition({{{inner}}})"


def zero(n: int) -> Partition:
    return Partition(tuple(range(n)))


def one(n: int) -> Partition:
    return Partition((0,) * n)


def _blocks_cross(x: Sequence[int], y: Sequence[int]) -> bool:
    # y crosses x iff some element of y sits in a gap of x while another sits outside it
    for lo, hi in zip(x, x[1:]):
        inside = outside = False
        for v in y:
            if lo < v < hi:
                inside = True
            else:
                outside = True
            if inside and outside:
                return True
    return False


def _first_crossing(blocks: Sequence[Sequence[int]]) -> tuple[int, int] | None:
    for i in range(len(blocks)):
        for j in range(i + 1, len(blocks)):
            if _blocks_cross(blocks[i], blocks[j]) or _blocks_cross(blocks[j], blocks[i]):
                return i, j
    return None


def iter_nc(n: int, cap: int = DEFAULT_CAP) -> Iterator[tuple[int, ...]]:
    """Yield membership vectors of NC(n) in canonical (lexicographic) order.

    Element ``k`` may join an existing block only if that block is still open,
    i.e. on the stack of blocks not yet enclosed by a later block; joining it
    closes every block opened after it.
    """
    if n < 1:
        raise ValueError("n must be positive")
    if n > cap:
        raise SizeError(f"NC({n}) exceeds enumeration cap {cap}")
    memb = [0] * n

    def rec(k: int, nblocks: int, stack: list[int]) -> Iterator[tuple[int, ...]]:
        if k == n:
            yield tuple(memb)
            return
        for idx, b in enumerate(stack):
            memb[k] = b
            yield from rec(k + 1, nblocks, stack[: idx + 1])
        memb[k] = nblocks
        yield from rec(k + 1, nblocks + 1, stack + [nblocks])

    return rec(0, 0, [])


@lru_cache(maxsize=None)
def _nc_tuple(n: int, cap: int) -> tuple[Partition, ...]:
    return tuple(Partition(m) for m in iter_nc(n, cap))


def enumerate_nc(n: int, cap: int = DEFAULT_CAP) -> list[Partition]:
    """All non-crossing partitions of ``{1..n}``, in canonical order."""
    return list(_nc_tuple(n, cap))


def enumerate_nc_prime(n: int, cap: int = DEFAULT_CAP) -> list[Partition]:
    """NC'(n): non-crossing partitions in which ``{1}`` is a singleton block."""
    return [p for p in _nc_tuple(n, cap) if p.n == 1 or p.membership[0] not in p.membership[1:]]


def _check_same_n(p: Partition, q: Partition) -> None:
    if p.n != q.n:
        raise ValueError(f"partitions on different ground sets: {p.n} vs {q.n}")


def leq(p: Partition, q: Partition) -> bool:
    """Refinement order: every block of ``p`` lies inside a block of ``q``."""
    _check_same_n(p, q)
    image: dict[int, int] = {}
    for bp, bq in zip(p.membership, q.membership):
        if image.setdefault(bp, bq) != bq:
            return False
    return True


def set_join(p: Partition, q: Partition) -> Partition:
    """Join in the lattice of all set partitions (connected components)."""
    _check_same_n(p, q)
    parent = list(range(p.n))

    def find(x: int) -> int:
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for part in (p, q):
        first: dict[int, int] = {}
        for k, b in enumerate(part.membership):
            if b in first:
                ra, rb = find(first[b]), find(k)
                if ra != rb:
                    parent[max(ra, rb)] = min(ra, rb)
            else:
                first[b] = k
    return Partition.from_labels([find(k) for k in range(p.n)])


def nc_closure(p: Partition) -> Partition:
    """Smallest non-crossing partition above ``p``: merge crossing blocks until none cross."""
    blocks = [list(b) for b in p.blocks]
    while True:
        hit = _first_crossing(blocks)
        if hit is None:
            return Partition.from_blocks(blocks, p.n)
        i, j = hit
        blocks[i] = sorted(blocks[i] + blocks[j])
        del blocks[j]


def join(p: Partition, q: Partition) -> Partition:
    """Join in NC(n)."""
    return nc_closure(set_join(p, q))


def kreweras_nc(p: Partition) -> Partition:
    """Kreweras complement of a non-crossing partition.

    Computed as the permutation ``p^{-1} o gamma`` where ``p`` is read as the
    product of its blocks as increasing cycles and ``gamma = (1 2 ... n)``.
    """
    n = p.n
    prev = [0] * n  # inverse cycle permutation of p, 0-based
    for b in p.blocks:
        for i, x in enumerate(b):
            prev[b[(i + 1) % len(b)] - 1] = x - 1
    labels = [-1] * n
    nb = 0
    for start in range(n):
        if labels[start] >= 0:
            continue
        x = start
        while labels[x] < 0:
            labels[x] = nb
            x = prev[(x + 1) % n]
        nb += 1
    return Partition.from_labels(labels)


def interval(p: Partition, q: Partition, cap: int = DEFAULT_CAP) -> list[Partition]:
    if not leq(p, q):
        raise OrderError(f"{p} is not below {q}")
    return [r for r in _nc_tuple(p.n, cap) if leq(p, r) and leq(r, q)]


@lru_cache(maxsize=None)
def _mobius(p: Partition, q: Partition) -> int:
    if p == q:
        return 1
    return -sum(_mobius(p, r) for r in interval(p, q) if r != q)


def mobius_nc(p: Partition, q: Partition) -> Fraction:
    """Moebius function of NC(n) on the interval ``[p, q]`` via the defining recursion."""
    if not leq(p, q):
        raise OrderError(f"{p} is not below {q}")
    return Fraction(_mobius(p, q))


@lru_cache(maxsize=None)
def mobius_full(n: int) -> int:
    """mu(0_n, 1_n) by the recursion ``sum_{0_n <= r <= 1_n} mu(0_n, r) = 0``.

    Each lower interval ``[0_n, r]`` is a product of full lattices over the
    blocks of ``r``, so the recursion is memoized on block sizes alone.
    """
    if n == 1:
        return 1
    profiles: dict[tuple[int, ...], int] = {}
    for memb in iter_nc(n, cap=max(n, DEFAULT_CAP)):
        sizes = [0] * (max(memb) + 1)
        for b in memb:
            sizes[b] += 1
        if len(sizes) == 1:
            continue
        key = tuple(sorted(sizes))
        profiles[key] = profiles.get(key, 0) + 1
    total = 0
    for sizes, count in profiles.items():
        term = count
        for s in sizes:
            term *= mobius_full(s)
        total += term
    return -total


def mobius_to_top(p: Partition) -> int:
    """mu(p, 1_n) as a product over the blocks of K(p).

    ``[p, 1_n]`` is isomorphic to ``[0_n, K(p)]``, a product of full lattices
    ``NC(|W|)`` over the blocks ``W`` of ``K(p)``.
    """
    out = 1
    for size in kreweras_nc(p).block_sizes():
        out *= mobius_full(size)
    return out
