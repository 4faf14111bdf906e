"""Truncated formal power series in one and two variables over the rationals.

A series carries its truncation order: ``Series1`` of order ``N`` knows the
coefficients of ``z^0 .. z^N``; ``Series2`` of orders ``(N, M)`` knows the
rectangle ``z^i w^j`` with ``i <= N`` and ``j <= M``.  Binary operations work
on the intersection of the known regions, and dividing by a monomial shrinks
the region, so every coefficient a series reports is exact.
"""

from __future__ import annotations

from fractions import Fraction
from numbers import Rational
from typing import Iterable, Literal

from .errors import CompositionError, DivisibilityError, DivisionError, InversionError

Number = int | Fraction
_ZERO = Fraction(0)
_ONE = Fraction(1)


def _is_scalar(x) -> bool:
    return isinstance(x, (int, Rational)) and not isinstance(x, bool)


class Series1:
    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable[Number]):
        coeffs = tuple(Fraction(c) for c in coeffs)
        if not coeffs:
            raise ValueError("a series needs at least a constant term")
        self.coeffs = coeffs

    @classmethod
    def zero(cls, order: int) -> "Series1":
        return cls([_ZERO] * (order + 1))

    @classmethod
    def constant(cls, c: Number, order: int) -> "Series1":
        return cls([c] + [_ZERO] * order)

    @classmethod
    def variable(cls, order: int) -> "Series1":
        """The series ``z``."""
        if order < 1:
            raise ValueError("order must be at least 1 to hold z")
        return cls([_ZERO, _ONE] + [_ZERO] * (order - 1))

    @property
    def order(self) -> int:
        return len(self.coeffs) - 1

    def __getitem__(self, k: int) -> Fraction:
        return self.coeffs[k]

    def __iter__(self):
        return iter(self.coeffs)

    def truncate(self, order: int) -> "Series1":
        if order > self.order:
            raise ValueError(f"cannot extend order {self.order} to {order}")
        return Series1(self.coeffs[: order + 1])

    def __eq__(self, other) -> bool:
        return isinstance(other, Series1) and self.coeffs == other.coeffs

    def __hash__(self):
        return hash(self.coeffs)

    def __repr__(self) -> str:
        terms = [f"{c}*z^{k}" for k, c in enumerate(self.coeffs) if c]
        return f"Series1({' + '.join(terms) or '0'} + O(z^{self.order + 1}))"

    def __neg__(self) -> "Series1":
        return Series1(-c for c in self.coeffs)

    def __add__(self, other) -> "Series1":
        if _is_scalar(other):
            return Series1((self.coeffs[0] + other,) + self.coeffs[1:])
        if not isinstance(other, Series1):
            return NotImplemented
        n = min(self.order, other.order)
        return Series1(a + b for a, b in zip(self.coeffs[: n + 1], other.coeffs))

    __radd__ = __add__

    def __sub__(self, other) -> "Series1":
        if _is_scalar(other) or isinstance(other, Series1):
            return self + (-other)
        return NotImplemented

    def __rsub__(self, other) -> "Series1":
        return (-self) + other

    def __mul__(self, other) -> "Series1":
        if _is_scalar(other):
            return Series1(c * other for c in self.coeffs)
        if not isinstance(other, Series1):
            return NotImplemented
        n = min(self.order, other.order)
        a, b = self.coeffs, other.coeffs
        out = []
        for k in range(n + 1):
            s = _ZERO
            for i in range(k + 1):
                if a[i] and b[k - i]:
                    s += a[i] * b[k - i]
            out.append(s)
        return Series1(out)

    __rmul__ = __mul__

    def __truediv__(self, other) -> "Series1":
        if _is_scalar(other):
            return Series1(c / other for c in self.coeffs)
        if not isinstance(other, Series1):
            return NotImplemented
        return div_unit(self, other)

    def __rtruediv__(self, other) -> "Series1":
        if _is_scalar(other):
            return div_unit(Series1.constant(other, self.order), self)
        return NotImplemented

    def __pow__(self, k: int) -> "Series1":
        out = Series1.constant(1, self.order)
        for _ in range(k):
            out = out * self
        return out

    def mul_z(self) -> "Series1":
        return Series1((_ZERO,) + self.coeffs)

    def div_z(self) -> "Series1":
        if self.coeffs[0]:
            raise DivisibilityError("constant term is nonzero; not divisible by z")
        if self.order < 1:
            raise DivisibilityError("nothing known after dividing by z")
        return Series1(self.coeffs[1:])

    def compose(self, inner: "Series1") -> "Series1":
        return compose1(self, inner)

    def inverse(self) -> "Series1":
        return invert1(self)


class Series2:
    """Series in ``z`` (first index) and ``w`` (second index)."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable[Iterable[Number]]):
        rows = tuple(tuple(Fraction(c) for c in row) for row in coeffs)
        if not rows or not rows[0]:
            raise ValueError("a series needs at least a constant term")
        if any(len(r) != len(rows[0]) for r in rows):
            raise ValueError("ragged coefficient grid")
        self.coeffs = rows

    @classmethod
    def _raw(cls, rows: tuple[tuple[Fraction, ...], ...]) -> "Series2":
        out = object.__new__(cls)
        out.coeffs = rows
        return out

    @classmethod
    def zero(cls, orders: tuple[int, int]) -> "Series2":
        n, m = orders
        return cls([[_ZERO] * (m + 1) for _ in range(n + 1)])

    @classmethod
    def constant(cls, c: Number, orders: tuple[int, int]) -> "Series2":
        out = [[_ZERO] * (orders[1] + 1) for _ in range(orders[0] + 1)]
        out[0][0] = Fraction(c)
        return cls(out)

    @classmethod
    def from_cells(cls, cells: dict[tuple[int, int], Number], orders: tuple[int, int]) -> "Series2":
        out = [[_ZERO] * (orders[1] + 1) for _ in range(orders[0] + 1)]
        for (i, j), c in cells.items():
            if i <= orders[0] and j <= orders[1]:
                out[i][j] = Fraction(c)
        return cls(out)

    @classmethod
    def z(cls, orders: tuple[int, int]) -> "Series2":
        return cls.from_cells({(1, 0): 1}, orders)

    @classmethod
    def w(cls, orders: tuple[int, int]) -> "Series2":
        return cls.from_cells({(0, 1): 1}, orders)

    @classmethod
    def from_z(cls, s: Series1, m: int) -> "Series2":
        """``s(z)`` viewed as a two-variable series, exact up to ``w^m``."""
        return cls._raw(tuple((c,) + (_ZERO,) * m for c in s.coeffs))

    @classmethod
    def from_w(cls, s: Series1, n: int) -> "Series2":
        """``s(w)`` viewed as a two-variable series, exact up to ``z^n``."""
        rows = [s.coeffs] + [(_ZERO,) * len(s.coeffs)] * n
        return cls._raw(tuple(rows))

    @property
    def orders(self) -> tuple[int, int]:
        return len(self.coeffs) - 1, len(self.coeffs[0]) - 1

    def __getitem__(self, ij: tuple[int, int]) -> Fraction:
        i, j = ij
        return self.coeffs[i][j]

    def cells(self):
        for i, row in enumerate(self.coeffs):
            for j, c in enumerate(row):
                yield (i, j), c

    def truncate(self, orders: tuple[int, int]) -> "Series2":
        n, m = orders
        if n > self.orders[0] or m > self.orders[1]:
            raise ValueError(f"cannot extend orders {self.orders} to {orders}")
        return Series2._raw(tuple(row[: m + 1] for row in self.coeffs[: n + 1]))

    def row(self, i: int) -> Series1:
        """Coefficient of ``z^i`` as a series in ``w``."""
        return Series1(self.coeffs[i])

    def column(self, j: int) -> Series1:
        """Coefficient of ``w^j`` as a series in ``z``."""
        return Series1(row[j] for row in self.coeffs)

    def transpose(self) -> "Series2":
        """Swap the roles of ``z`` and ``w``."""
        return Series2._raw(tuple(zip(*self.coeffs)))

    def __eq__(self, other) -> bool:
        return isinstance(other, Series2) and self.coeffs == other.coeffs

    def __hash__(self):
        return hash(self.coeffs)

    def __repr__(self) -> str:
        terms = [f"{c}*z^{i}w^{j}" for (i, j), c in self.cells() if c]
        return f"Series2({' + '.join(terms) or '0'}; orders={self.orders})"

    def _common(self, other: "Series2") -> tuple[int, int]:
        return min(self.orders[0], other.orders[0]), min(self.orders[1], other.orders[1])

    def __neg__(self) -> "Series2":
        return Series2._raw(tuple(tuple(-c for c in row) for row in self.coeffs))

    def __add__(self, other) -> "Series2":
        if _is_scalar(other):
            rows = [list(r) for r in self.coeffs]
            rows[0][0] += other
            return Series2(rows)
        if not isinstance(other, Series2):
            return NotImplemented
        n, m = self._common(other)
        return Series2._raw(tuple(
            tuple(a + b for a, b in zip(ra[: m + 1], rb[: m + 1]))
            for ra, rb in zip(self.coeffs[: n + 1], other.coeffs[: n + 1])))

    __radd__ = __add__

    def __sub__(self, other) -> "Series2":
        if _is_scalar(other) or isinstance(other, Series2):
            return self + (-other)
        return NotImplemented

    def __rsub__(self, other) -> "Series2":
        return (-self) + other

    def __mul__(self, other) -> "Series2":
        if _is_scalar(other):
            other = Fraction(other)
            return Series2._raw(tuple(tuple(c * other for c in row) for row in self.coeffs))
        if not isinstance(other, Series2):
            return NotImplemented
        n, m = self._common(other)
        a, b = self.coeffs, other.coeffs
        nz_a = [(i, j, c) for i, row in enumerate(a[: n + 1]) for j, c in enumerate(row[: m + 1]) if c]
        nz_b = [(i, j, c) for i, row in enumerate(b[: n + 1]) for j, c in enumerate(row[: m + 1]) if c]
        out = [[_ZERO] * (m + 1) for _ in range(n + 1)]
        for i1, j1, c1 in nz_a:
            for i2, j2, c2 in nz_b:
                i, j = i1 + i2, j1 + j2
                if i <= n and j <= m:
                    out[i][j] += c1 * c2
        return Series2._raw(tuple(tuple(r) for r in out))

    __rmul__ = __mul__

    def __truediv__(self, other) -> "Series2":
        if _is_scalar(other):
            return self * (Fraction(1) / Fraction(other))
        if not isinstance(other, Series2):
            return NotImplemented
        return div_unit(self, other)

    def __rtruediv__(self, other) -> "Series2":
        if _is_scalar(other):
            return div_unit(Series2.constant(other, self.orders), self)
        return NotImplemented

    def mul_monomial(self, by: Literal["z", "w", "zw"]) -> "Series2":
        """Multiply by ``z``, ``w`` or ``zw``; the known region grows accordingly."""
        rows = self.coeffs
        if "w" in by:
            rows = tuple((_ZERO,) + r for r in rows)
        if "z" in by:
            rows = ((_ZERO,) * len(rows[0]),) + rows
        return Series2._raw(rows)

    def div_monomial(self, by: Literal["z", "w", "zw"]) -> "Series2":
        return div_monomial(self, by)

    def compose(self, inner_z: Series1, inner_w: Series1) -> "Series2":
        return compose2(self, inner_z, inner_w)


Series = Series1 | Series2


def add(a: Series, b: Series) -> Series:
    return a + b


def sub(a: Series, b: Series) -> Series:
    return a - b


def mul(a: Series, b: Series) -> Series:
    return a * b


def _inverse1(b: Series1) -> Series1:
    if not b.coeffs[0]:
        raise DivisionError("constant term of divisor is zero")
    c0 = b.coeffs[0]
    inv = [_ONE / c0]
    for k in range(1, b.order + 1):
        s = _ZERO
        for i in range(1, k + 1):
            if b.coeffs[i]:
                s += b.coeffs[i] * inv[k - i]
        inv.append(-s / c0)
    return Series1(inv)


def _inverse2(b: Series2) -> Series2:
    c0 = b.coeffs[0][0]
    if not c0:
        raise DivisionError("constant term of divisor is zero")
    n, m = b.orders
    nz = [(i, j, c) for (i, j), c in b.cells() if c and (i, j) != (0, 0)]
    inv = [[_ZERO] * (m + 1) for _ in range(n + 1)]
    for i in range(n + 1):
        for j in range(m + 1):
            s = _ONE if (i, j) == (0, 0) else _ZERO
            for k, l, c in nz:
                if k <= i and l <= j:
                    s -= c * inv[i - k][j - l]
            inv[i][j] = s / c0
    return Series2._raw(tuple(tuple(r) for r in inv))


def div_unit(a: Series, b: Series) -> Series:
    """``q`` with ``q * b = a``; ``b`` must have a nonzero constant term."""
    if isinstance(a, Series1) and isinstance(b, Series1):
        return a * _inverse1(b)
    if isinstance(a, Series2) and isinstance(b, Series2):
        return a * _inverse2(b)
    raise TypeError("div_unit needs two series with the same number of variables")


def div_monomial(a: Series2, by: Literal["z", "w", "zw"]) -> Series2:
    """Exact division by ``z``, ``w`` or ``zw``.

    The top row (for ``z``) or column (for ``w``) of the result is no longer
    known, so the orders shrink.
    """
    if by not in ("z", "w", "zw"):
        raise ValueError(f"unknown monomial {by!r}")
    rows = a.coeffs
    if "z" in by:
        if any(rows[0]):
            raise DivisibilityError("coefficients with z^0 are nonzero; not divisible by z")
        if len(rows) < 2:
            raise DivisibilityError("nothing known after dividing by z")
        rows = rows[1:]
    if "w" in by:
        if any(r[0] for r in rows):
            raise DivisibilityError("coefficients with w^0 are nonzero; not divisible by w")
        if len(rows[0]) < 2:
            raise DivisibilityError("nothing known after dividing by w")
        rows = tuple(r[1:] for r in rows)
    return Series2._raw(rows)


def _powers1(inner: Series1, count: int, order: int) -> list[tuple[Fraction, ...]]:
    """``inner^0 .. inner^count`` truncated at ``order``."""
    inner = inner.truncate(order)
    out = [Series1.constant(1, order)]
    for _ in range(count):
        out.append(out[-1] * inner)
    return [p.coeffs for p in out]


def compose1(outer: Series1, inner: Series1) -> Series1:
    """``outer(inner(z))``; ``inner`` must have zero constant term."""
    if inner.coeffs[0]:
        raise CompositionError("inner series has a nonzero constant term")
    n = min(outer.order, inner.order)
    pw = _powers1(inner, n, n)
    out = [_ZERO] * (n + 1)
    for i in range(n + 1):
        c = outer.coeffs[i]
        if c:
            for k in range(i, n + 1):
                out[k] += c * pw[i][k]
    return Series1(out)


def compose2(outer: Series2, inner_z: Series1, inner_w: Series1) -> Series2:
    """``outer(inner_z(z), inner_w(w))``; both inner series need zero constant term."""
    if inner_z.coeffs[0] or inner_w.coeffs[0]:
        raise CompositionError("inner series has a nonzero constant term")
    n = min(outer.orders[0], inner_z.order)
    m = min(outer.orders[1], inner_w.order)
    pz = _powers1(inner_z, n, n)
    pw = _powers1(inner_w, m, m)
    # first substitute in w along every row, then in z
    rows = []
    for i in range(n + 1):
        row = [_ZERO] * (m + 1)
        for j in range(m + 1):
            c = outer.coeffs[i][j]
            if c:
                for q in range(j, m + 1):
                    if pw[j][q]:
                        row[q] += c * pw[j][q]
        rows.append(row)
    out = [[_ZERO] * (m + 1) for _ in range(n + 1)]
    for i in range(n + 1):
        if not any(rows[i]):
            continue
        for p in range(i, n + 1):
            f = pz[i][p]
            if f:
                target = out[p]
                for q, c in enumerate(rows[i]):
                    if c:
                        target[q] += f * c
    return Series2._raw(tuple(tuple(r) for r in out))


def invert1(f: Series1) -> Series1:
    """Compositional inverse ``g`` with ``f(g(z)) = g(f(z)) = z``.

    Solved degree by degree: the ``z^k`` coefficient of ``f(g)`` is
    ``f_1 g_k`` plus terms involving only ``g_1 .. g_{k-1}``.
    """
    if f.coeffs[0]:
        raise InversionError("series has a nonzero constant term")
    if f.order < 1 or not f.coeffs[1]:
        raise InversionError("linear coefficient is zero")
    n = f.order
    f1 = f.coeffs[1]
    g = [_ZERO, _ONE / f1] + [_ZERO] * (n - 1)
    for k in range(2, n + 1):
        partial = compose1(f.truncate(k), Series1(g[: k + 1]))
        g[k] = -partial.coeffs[k] / f1
    return Series1(g)


def first_mismatch(a: Series, b: Series):
    """First cell (row-major) where ``a`` and ``b`` differ on their common region, or None."""
    if isinstance(a, Series1) and isinstance(b, Series1):
        for k in range(min(a.order, b.order) + 1):
            if a.coeffs[k] != b.coeffs[k]:
                return k, a.coeffs[k], b.coeffs[k]
        return None
    if isinstance(a, Series2) and isinstance(b, Series2):
        n, m = a._common(b)
        for i in range(n + 1):
            for j in range(m + 1):
                if a.coeffs[i][j] != b.coeffs[i][j]:
                    return (i, j), a.coeffs[i][j], b.coeffs[i][j]
        return None
    raise TypeError("cannot compare series with different numbers of variables")


def agree(a: Series, b: Series) -> bool:
    """Exact equality on the common known region."""
    return first_mismatch(a, b) is None


def common_orders(*series: Series2) -> tuple[int, int]:
    return min(s.orders[0] for s in series), min(s.orders[1] for s in series)
