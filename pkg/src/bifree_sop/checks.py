"""Outcome of comparing two truncated series."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .power_series import Series, Series1, first_mismatch


@dataclass(frozen=True)
class Check:
    """Result of an exact identity check; truthy iff the identity holds.

    ``orders`` is the region both sides define; ``first_failure`` is
    ``(cell, lhs, rhs)`` for the first differing cell in row-major order.
    """

    name: str
    orders: tuple[int, ...]
    holds: bool
    first_failure: tuple | None = None

    def __bool__(self) -> bool:
        return self.holds

    def to_json(self) -> dict:
        from .jsonio import rational_to_json
        failure = None
        if self.first_failure is not None:
            cell, lhs, rhs = self.first_failure
            failure = {"cell": list(cell) if isinstance(cell, tuple) else [cell],
                       "lhs": rational_to_json(lhs), "rhs": rational_to_json(rhs)}
        return {"name": self.name, "orders": list(self.orders), "holds": self.holds,
                "first_failure": failure}


def compare(name: str, lhs: Series, rhs: Series) -> Check:
    """Compare ``lhs`` and ``rhs`` on the region both define."""
    if isinstance(lhs, Series1):
        orders: tuple[int, ...] = (min(lhs.order, rhs.order),)
    else:
        orders = (min(lhs.orders[0], rhs.orders[0]), min(lhs.orders[1], rhs.orders[1]))
    miss = first_mismatch(lhs, rhs)
    return Check(name, orders, miss is None, miss)


def all_of(name: str, checks: list[Check]) -> Check:
    """Combine several checks; reports the first failing one."""
    for c in checks:
        if not c.holds:
            return Check(f"{name}:{c.name}", c.orders, False, c.first_failure)
    orders = tuple(min(c.orders[k] for c in checks) for k in range(len(checks[0].orders)))
    return Check(name, orders, True, None)


def values_equal(name: str, lhs: list[Fraction], rhs: list[Fraction]) -> Check:
    for k, (a, b) in enumerate(zip(lhs, rhs)):
        if a != b:
            return Check(name, (len(lhs),), False, (k, a, b))
    return Check(name, (min(len(lhs), len(rhs)),), len(lhs) == len(rhs), None)
