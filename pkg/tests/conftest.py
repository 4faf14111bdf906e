"""Shared brute-force oracles, independent of the library's fast paths."""

from itertools import combinations

import pytest

from bifree_sop.rng import SplitMix64


def set_partitions(n):
    """All set partitions of 1..n as lists of sorted blocks (restricted growth strings)."""
    def rec(k, labels, nblocks):
        if k == n:
            blocks = [[] for _ in range(nblocks)]
            for i, b in enumerate(labels):
                blocks[b].append(i + 1)
            yield blocks
            return
        for b in range(nblocks + 1):
            yield from rec(k + 1, labels + [b], max(nblocks, b + 1))
    yield from rec(0, [], 0)


def crosses_literal(blocks):
    """The a < b < c < d test: a, c in one block and b, d in another."""
    for x, y in combinations(blocks, 2):
        for u, v in ((x, y), (y, x)):
            for a, c in combinations(u, 2):
                for b, d in combinations(v, 2):
                    if a < b < c < d:
                        return True
    return False


def noncrossing_brute(n):
    return [p for p in set_partitions(n) if not crosses_literal(p)]


def bnc_brute(n, m):
    """Tagged partitions that become non-crossing when lefts are read ascending
    and then rights descending."""
    order = [("l", k) for k in range(1, n + 1)] + [("r", k) for k in range(m, 0, -1)]
    out = set()
    for blocks in set_partitions(n + m):
        if not crosses_literal(blocks):
            out.add(frozenset(frozenset(order[x - 1] for x in b) for b in blocks))
    return out


@pytest.fixture
def rng():
    return SplitMix64(20261015)


# one line per acceptance criterion, echoed in the terminal summary
ACCEPTANCE: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE:
            terminalreporter.write_line(line)
