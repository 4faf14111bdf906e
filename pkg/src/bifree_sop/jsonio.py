"""JSON encoding of exact rationals, series, partitions and cumulant data."""

from __future__ import annotations

from fractions import Fraction
from typing import Any

from .power_series import Series1, Series2


def rational_to_json(x) -> dict[str, str]:
    x = Fraction(x)
    return {"num": str(x.numerator), "den": str(x.denominator)}


def rational_from_json(obj: Any) -> Fraction:
    """Accepts ``{"num": .., "den": ..}``, an integer, or a ``"p/q"`` string."""
    if isinstance(obj, bool):
        raise ValueError(f"not a rational: {obj!r}")
    if isinstance(obj, int):
        return Fraction(obj)
    if isinstance(obj, str):
        return Fraction(obj.strip())
    if isinstance(obj, dict) and set(obj) == {"num", "den"}:
        den = int(obj["den"])
        if den == 0:
            raise ValueError("zero denominator")
        return Fraction(int(obj["num"]), den)
    raise ValueError(f"not a rational: {obj!r}")


def rational_to_str(x) -> str:
    x = Fraction(x)
    return f"{x.numerator}/{x.denominator}"


def series_to_json(s: Series1 | Series2) -> dict:
    if isinstance(s, Series1):
        return {"orders": [s.order], "coeffs": [rational_to_json(c) for c in s.coeffs]}
    return {"orders": list(s.orders),
            "coeffs": [rational_to_json(c) for row in s.coeffs for c in row]}


def series_from_json(obj: dict) -> Series1 | Series2:
    orders = obj["orders"]
    coeffs = [rational_from_json(c) for c in obj["coeffs"]]
    if len(orders) == 1:
        if len(coeffs) != orders[0] + 1:
            raise ValueError("coefficient count does not match order")
        return Series1(coeffs)
    n, m = orders
    if len(coeffs) != (n + 1) * (m + 1):
        raise ValueError("coefficient count does not match orders")
    return Series2([coeffs[i * (m + 1):(i + 1) * (m + 1)] for i in range(n + 1)])


def _rationals(seq, length: int, what: str) -> list[Fraction]:
    if not isinstance(seq, list) or len(seq) != length:
        raise ValueError(f"{what} must be a list of {length} rationals")
    return [rational_from_json(x) for x in seq]


def _grid(rows, n: int, m: int, what: str) -> list[list[Fraction]]:
    if not isinstance(rows, list) or len(rows) != n:
        raise ValueError(f"{what} must have {n} rows")
    return [_rationals(r, m, f"{what} row") for r in rows]


def _orders(obj: dict) -> tuple[int, int]:
    orders = obj.get("orders")
    if (not isinstance(orders, list) or len(orders) != 2
            or not all(isinstance(x, int) and not isinstance(x, bool) and x >= 1 for x in orders)):
        raise ValueError("orders must be a pair of positive integers")
    return orders[0], orders[1]


def pair_spec_from_json(obj: dict):
    from .transforms import PairSpec
    if not isinstance(obj, dict):
        raise ValueError("a pair spec must be a JSON object")
    n, m = _orders(obj)
    return PairSpec(_rationals(obj.get("kappa_a"), n, "kappa_a"),
                    _rationals(obj.get("kappa_b"), m, "kappa_b"),
                    _grid(obj.get("kappa_ab"), n, m, "kappa_ab"))


def conditional_spec_from_json(obj: dict):
    from .conditional_formulas import ConditionalPairSpec
    base = pair_spec_from_json(obj)
    n, m = base.orders
    return ConditionalPairSpec.from_parts(
        base,
        _rationals(obj.get("kappa_c_a"), n, "kappa_c_a"),
        _rationals(obj.get("kappa_c_b"), m, "kappa_c_b"),
        _grid(obj.get("kappa_c_ab"), n, m, "kappa_c_ab"))


def partition_from_json(obj, n: int | None = None):
    from .nc_lattice import Partition
    if not isinstance(obj, list) or not all(isinstance(b, list) for b in obj):
        raise ValueError("a partition must be a list of blocks")
    return Partition.from_blocks(obj, n)


def bnc_partition_from_json(obj, n_left: int, n_right: int):
    from .bnc_lattice import BNCPartition
    if not isinstance(obj, list) or not all(isinstance(b, list) for b in obj):
        raise ValueError("a partition must be a list of blocks")
    blocks = [[(tag["side"], int(tag["index"])) for tag in b] for b in obj]
    return BNCPartition.from_tagged(n_left, n_right, blocks)
