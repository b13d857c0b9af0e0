"""Exact truncated power series and the generating functions for 132-avoiders.

Series are built from a handful of radical primitives in ``1 - 4x`` whose
coefficients have closed forms, combined with sums, products, quotients and
shifts. Every coefficient is a :class:`~fractions.Fraction`; no floating
point is involved anywhere.

Named series (all ordinary generating functions over ``n``):

====  ===========================================================
C     Catalan numbers
D     inversions (copies of 21) over all 132-avoiders
H     non-inversions (copies of 12)
Z     ``n * c_n``, entries over all 132-avoiders
A     copies of 213
B     copies of 231
====  ===========================================================
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import reduce
from typing import Sequence

from .avoiders import catalan

DEFAULT_ORDER = 200


class SeriesError(ValueError):
    pass


class PowerSeries:
    """Coefficients ``c[0..order]`` of a series known up to ``x**order``."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Sequence):
        self.coeffs = tuple(Fraction(c) for c in coeffs)
        if not self.coeffs:
            raise SeriesError("a series needs at least one coefficient")

    @property
    def order(self) -> int:
        return len(self.coeffs) - 1

    def __getitem__(self, n: int) -> Fraction:
        if n > self.order:
            raise IndexError(f"coefficient {n} beyond truncation order {self.order}")
        return self.coeffs[n]

    def __len__(self) -> int:
        return len(self.coeffs)

    def __eq__(self, other) -> bool:
        if not isinstance(other, PowerSeries):
            return NotImplemented
        n = min(self.order, other.order)
        return self.coeffs[: n + 1] == other.coeffs[: n + 1]

    def __repr__(self) -> str:
        head = ", ".join(str(c) for c in self.coeffs[:8])
        return f"PowerSeries([{head}{', ...' if len(self) > 8 else ''}], order={self.order})"

    def truncate(self, order: int) -> "PowerSeries":
        return PowerSeries(self.coeffs[: order + 1])

    def __add__(self, other: "PowerSeries") -> "PowerSeries":
        n = min(self.order, other.order)
        return PowerSeries([a + b for a, b in zip(self.coeffs[: n + 1], other.coeffs)])

    def __neg__(self) -> "PowerSeries":
        return PowerSeries([-a for a in self.coeffs])

    def __sub__(self, other: "PowerSeries") -> "PowerSeries":
        return self + (-other)

    def scale(self, c) -> "PowerSeries":
        c = Fraction(c)
        return PowerSeries([c * a for a in self.coeffs])

    def __mul__(self, other: "PowerSeries") -> "PowerSeries":
        n = min(self.order, other.order)
        da, a = _integerize(self.coeffs[: n + 1])
        db, b = _integerize(other.coeffs[: n + 1])
        out = [sum(a[i] * b[j - i] for i in range(j + 1)) for j in range(n + 1)]
        return PowerSeries([Fraction(c, da * db) for c in out])

    def inverse(self) -> "PowerSeries":
        g = self.coeffs
        if g[0] == 0:
            raise SeriesError("cannot invert a series with zero constant term")
        inv = [1 / g[0]]
        for j in range(1, len(g)):
            inv.append(-sum(g[i] * inv[j - i] for i in range(1, j + 1)) / g[0])
        return PowerSeries(inv)

    def __truediv__(self, other: "PowerSeries") -> "PowerSeries":
        n = min(self.order, other.order)
        return self.truncate(n) * other.truncate(n).inverse()

    def times_x(self) -> "PowerSeries":
        return PowerSeries((0,) + self.coeffs)

    def over_x(self) -> "PowerSeries":
        if self.coeffs[0] != 0:
            raise SeriesError("division by x needs a zero constant term")
        if self.order == 0:
            raise SeriesError("division by x needs at least order 1")
        return PowerSeries(self.coeffs[1:])

    def integers(self) -> list[int]:
        """Coefficients as ints; raises if any is not integral."""
        out = []
        for n, c in enumerate(self.coeffs):
            if c.denominator != 1:
                raise SeriesError(f"coefficient {n} is not an integer: {c}")
            out.append(c.numerator)
        return out


def _integerize(coeffs: Sequence[Fraction]) -> tuple[int, list[int]]:
    d = reduce(math.lcm, (c.denominator for c in coeffs), 1)
    return d, [c.numerator * (d // c.denominator) for c in coeffs]


# primitive coefficient formulas for (1 - 4x)^e

def _central(n: int) -> int:
    return math.comb(2 * n, n)


RADICALS = {
    Fraction(-1): lambda n: 4 ** n,
    Fraction(-1, 2): _central,
    Fraction(-3, 2): lambda n: (2 * n + 1) * _central(n),
    Fraction(1, 2): lambda n: 1 if n == 0 else -2 * catalan(n - 1),
}


@dataclass(frozen=True)
class SeriesExpr:
    """A small expression tree evaluated exactly by :func:`series`.

    Leaves are ``one``, ``x``, constants, and ``(1 - 4x)**e`` for
    ``e`` in ``{-1, 1/2, -1/2, -3/2}``. Build composites with ``+ - * /``,
    scalar multiplication, and :meth:`over_x`.
    """

    op: str
    args: tuple = ()

    def __add__(self, other):
        return SeriesExpr("add", (self, _lift(other)))

    def __radd__(self, other):
        return SeriesExpr("add", (_lift(other), self))

    def __sub__(self, other):
        return SeriesExpr("sub", (self, _lift(other)))

    def __rsub__(self, other):
        return SeriesExpr("sub", (_lift(other), self))

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return SeriesExpr("scale", (self, Fraction(other)))
        return SeriesExpr("mul", (self, other))

    def __rmul__(self, other):
        return self * other

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            return SeriesExpr("scale", (self, 1 / Fraction(other)))
        return SeriesExpr("div", (self, other))

    def __neg__(self):
        return SeriesExpr("scale", (self, Fraction(-1)))

    def over_x(self) -> "SeriesExpr":
        return SeriesExpr("over_x", (self,))


def _lift(value) -> SeriesExpr:
    if isinstance(value, SeriesExpr):
        return value
    return SeriesExpr("const", (Fraction(value),))


ONE = SeriesExpr("const", (Fraction(1),))
X = SeriesExpr("x")


def radical(exponent) -> SeriesExpr:
    e = Fraction(exponent)
    if e not in RADICALS:
        raise SeriesError(f"unsupported radical exponent {e}")
    return SeriesExpr("radical", (e,))


def series(expr: SeriesExpr, order: int = DEFAULT_ORDER) -> PowerSeries:
    """Expand ``expr`` exactly up to ``x**order``."""
    if order < 0:
        raise SeriesError("order must be nonnegative")
    op, args = expr.op, expr.args
    if op == "const":
        return PowerSeries([args[0]] + [0] * order)
    if op == "x":
        return PowerSeries([0, 1] + [0] * (order - 1) if order else [0])
    if op == "radical":
        f = RADICALS[args[0]]
        return PowerSeries([f(n) for n in range(order + 1)])
    if op == "scale":
        return series(args[0], order).scale(args[1])
    if op == "over_x":
        return series(args[0], order + 1).over_x()
    a, b = (series(e, order) for e in args)
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    if op == "div":
        if b[0] == 0:
            raise SeriesError("division by a series with zero constant term")
        return a / b
    raise SeriesError(f"unknown operation {op!r}")


SQRT = radical(Fraction(1, 2))
INV_SQRT = radical(Fraction(-1, 2))
INV_SQRT3 = radical(Fraction(-3, 2))
INV = radical(-1)

C_EXPR = (ONE - SQRT).over_x() / 2
D_EXPR = X * INV * (INV_SQRT - C_EXPR)
H_EXPR = INV / 2 + (ONE - (ONE - X) * INV_SQRT).over_x() / 2
Z_EXPR = INV_SQRT - C_EXPR
A_EXPR = X * D_EXPR * C_EXPR / (ONE - 2 * X * C_EXPR)
B_EXPR = (X * Z_EXPR * Z_EXPR + X * H_EXPR * Z_EXPR) / (ONE - 2 * X * C_EXPR)
# partial-fraction form shared by A and B
AB_CLOSED_EXPR = X * INV * INV / 2 + (X - ONE) * INV_SQRT3 / 2 + INV / 2

NAMED = {"C": C_EXPR, "D": D_EXPR, "H": H_EXPR, "Z": Z_EXPR, "A": A_EXPR, "B": B_EXPR}


def named_series(name: str, order: int = DEFAULT_ORDER) -> PowerSeries:
    try:
        expr = NAMED[name]
    except KeyError:
        raise SeriesError(f"unknown series {name!r}; choose from {', '.join(NAMED)}") from None
    return series(expr, order)


def C_series(order: int = DEFAULT_ORDER) -> PowerSeries:
    return series(C_EXPR, order)


def D_series(order: int = DEFAULT_ORDER) -> PowerSeries:
    return series(D_EXPR, order)


def H_series(order: int = DEFAULT_ORDER) -> PowerSeries:
    return series(H_EXPR, order)


def Z_series(order: int = DEFAULT_ORDER) -> PowerSeries:
    return series(Z_EXPR, order)


def A_series(order: int = DEFAULT_ORDER) -> PowerSeries:
    return series(A_EXPR, order)


def B_series(order: int = DEFAULT_ORDER) -> PowerSeries:
    return series(B_EXPR, order)


def a_closed(n: int) -> int:
    """Copies of 213 over all 132-avoiders of length ``n``, for ``n >= 3``.

    The formula does not cover ``n < 3``; those totals are all zero.
    """
    if n < 3:
        raise ValueError("closed form holds for n >= 3 (the totals for n = 0, 1, 2 are 0)")
    return ((n + 4) * 2 ** (2 * n - 3)
            - (2 * n + 1) * math.comb(2 * n - 1, n - 1)
            + (2 * n - 1) * math.comb(2 * n - 3, n - 2))


def a_recurrence(order: int) -> list[int]:
    """Copies of 213 by position of the entry ``n``: left of it, right of it, or ending at it."""
    c = [catalan(i) for i in range(order + 1)]
    d = D_series(order).integers()
    a = [0] * (order + 1)
    for n in range(3, order + 1):
        a[n] = (sum(a[i - 1] * c[n - i] for i in range(1, n + 1))
                + sum(c[i - 1] * a[n - i] for i in range(1, n + 1))
                + sum(d[i - 1] * c[n - i] for i in range(3, n + 1)))
    return a


def b_recurrence(order: int) -> list[int]:
    """Copies of 231 split four ways around the entry ``n``.

    Entirely left, entirely right, ``n`` playing the 3, or a 12 on the
    left of ``n`` with the 1 on its right.
    """
    c = [catalan(i) for i in range(order + 1)]
    hh = H_series(order).integers()
    b = [0] * (order + 1)
    for n in range(3, order + 1):
        b[n] = (sum(b[i - 1] * c[n - i] for i in range(1, n + 1))
                + sum(c[i - 1] * b[n - i] for i in range(1, n + 1))
                + sum((i - 1) * (n - i) * c[i - 1] * c[n - i] for i in range(1, n + 1))
                + sum(hh[i - 1] * c[n - i] * (n - i) for i in range(1, n + 1)))
    return b
