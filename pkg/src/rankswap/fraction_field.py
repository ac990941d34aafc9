"""Fractions over Z_n(P): arithmetic, equality certificates, cross fractions, determinant ratios."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .errors import InvalidInput, PreconditionError, ZeroDenominator
from .rank import (
    DegenerateSample,
    GeometricConfiguration,
    RankContext,
    ZeroCertificate,
    determinant,
    evaluate_config,
    is_nonzero,
    is_zero_rank_n,
    oracle_test,
)
from .ring import Point, Polynomial, gap_points, gen

#: Cross-multiplying is skipped (oracle only) beyond this many monomial products.
EXPAND_BUDGET = 250_000


def _poly(x) -> Polynomial:
    return x if isinstance(x, Polynomial) else Polynomial.const(x)


@dataclass(frozen=True, eq=False)
class FractionElement:
    """``num / den`` kept unreduced; equality is by cross-multiplication certificate."""

    num: Polynomial
    den: Polynomial

    def __post_init__(self):
        object.__setattr__(self, "num", _poly(self.num))
        object.__setattr__(self, "den", _poly(self.den))
        if self.den.is_zero():
            raise ZeroDenominator("fraction with zero denominator")

    @classmethod
    def of(cls, x) -> "FractionElement":
        if isinstance(x, FractionElement):
            return x
        return cls(_poly(x), Polynomial.const(1))

    def certify(self, ctx: RankContext) -> "FractionElement":
        """Raise unless the denominator is NonZero in Z_n(P)."""
        if not is_nonzero(self.den, ctx):
            raise ZeroDenominator(f"denominator vanishes in Z_{ctx.n}(P): {self.den}")
        return self

    def same_as(self, other: "FractionElement") -> bool:
        """Structural identity of the stored pair (not equality in the field)."""
        return self.num == other.num and self.den == other.den

    # ---- arithmetic, unreduced
    def __add__(self, other) -> "FractionElement":
        other = FractionElement.of(other)
        if self.den == other.den:
            return FractionElement(self.num + other.num, self.den)
        return FractionElement(self.num * other.den + other.num * self.den, self.den * other.den)

    __radd__ = __add__

    def __neg__(self) -> "FractionElement":
        return FractionElement(-self.num, self.den)

    def __sub__(self, other) -> "FractionElement":
        return self + (-FractionElement.of(other))

    def __rsub__(self, other) -> "FractionElement":
        return FractionElement.of(other) - self

    def __mul__(self, other) -> "FractionElement":
        other = FractionElement.of(other)
        return FractionElement(self.num * other.num, self.den * other.den)

    __rmul__ = __mul__

    def invert(self, ctx: RankContext | None = None) -> "FractionElement":
        if self.num.is_zero() or (ctx is not None and not is_nonzero(self.num, ctx)):
            raise ZeroDenominator("cannot invert a zero fraction")
        return FractionElement(self.den, self.num)

    def __truediv__(self, other) -> "FractionElement":
        return self * FractionElement.of(other).invert()

    def __rtruediv__(self, other) -> "FractionElement":
        return FractionElement.of(other) / self

    def __pow__(self, e: int) -> "FractionElement":
        if e < 0:
            return self.invert() ** (-e)
        return FractionElement(self.num**e, self.den**e)

    def evaluate_config(self, c: GeometricConfiguration) -> int:
        d = evaluate_config(self.den, c)
        if not d:
            raise DegenerateSample("denominator vanished at the sample")
        return evaluate_config(self.num, c) * pow(d, -1, c.prime) % c.prime

    def __str__(self) -> str:
        if self.den == 1:
            return str(self.num)
        return f"({self.num}) / ({self.den})"

    def __repr__(self) -> str:
        return f"FractionElement({self})"


def frac_equal(F, G, ctx: RankContext) -> ZeroCertificate:
    """Certificate for ``F.num * G.den - G.num * F.den`` lying in R_n(P)."""
    F, G = FractionElement.of(F), FractionElement.of(G)
    size = len(F.num) * len(G.den) + len(G.num) * len(F.den)
    if size <= EXPAND_BUDGET:
        return is_zero_rank_n(F.num * G.den - G.num * F.den, ctx)

    def diff(c):
        return (
            evaluate_config(F.num, c) * evaluate_config(G.den, c)
            - evaluate_config(G.num, c) * evaluate_config(F.den, c)
        )

    return oracle_test(diff, ctx)


def frac_is_zero(F, ctx: RankContext) -> ZeroCertificate:
    return is_zero_rank_n(FractionElement.of(F).num, ctx)


def cross_fraction(x: Point, y: Point, z: Point, t: Point) -> FractionElement:
    """(xz * yt) / (xt * yz)."""
    if x == t or y == z:
        raise PreconditionError("cross fraction needs x != t and y != z")
    if x == z or y == t:
        raise PreconditionError("cross fraction needs x != z and y != t (nonzero numerator)")
    return FractionElement(gen(x, z) * gen(y, t), gen(x, t) * gen(y, z))


@dataclass(frozen=True, eq=False)
class DeterminantRatio:
    """E(x_1..x_{n-1} | t, y) realized with an explicit right tuple."""

    left: tuple
    t: Point
    y: Point
    right: tuple
    realized: FractionElement

    def __str__(self) -> str:
        return f"E([{', '.join(p.label for p in self.left)}]; {self.t.label}, {self.y.label})"


def default_right_tuple(t: Point, n: int) -> tuple[Point, ...]:
    """n fresh points in the gap just after ``t``."""
    return gap_points(t, n)


def det_ratio(
    left: Sequence[Point],
    t: Point,
    y: Point,
    ctx: RankContext,
    right: Sequence[Point] | None = None,
) -> DeterminantRatio:
    left = tuple(left)
    n = ctx.n
    if len(left) != n - 1:
        raise InvalidInput(f"determinant ratio needs {n - 1} left points, got {len(left)}")
    if len(set(left + (y,))) != n:
        raise PreconditionError("left points and y must be mutually distinct")
    right = default_right_tuple(t, n) if right is None else tuple(right)
    if len(right) != n or len(set(right)) != n:
        raise PreconditionError("right tuple must be n mutually distinct points")
    num = determinant(left + (t,), right)
    den = determinant(left + (y,), right)
    if den.is_zero() or not is_nonzero(den, ctx):
        raise ZeroDenominator(
            f"denominator of E vanishes for right tuple ({', '.join(p.label for p in right)})"
        )
    return DeterminantRatio(left, t, y, right, FractionElement(num, den))
