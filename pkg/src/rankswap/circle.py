"""Combinatorics of chords between marked points on a circle."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .errors import InvalidInput
from .ring import Point


@dataclass(frozen=True, order=True)
class HalfInt:
    """A value in {0, +-1/2, +-1}, stored doubled."""

    doubled: int

    def __post_init__(self):
        if self.doubled not in (-2, -1, 0, 1, 2):
            raise InvalidInput(f"HalfInt out of range: {self.doubled}/2")

    @property
    def value(self):
        return self.doubled // 2 if self.doubled % 2 == 0 else Fraction(self.doubled, 2)

    def __neg__(self) -> "HalfInt":
        return HalfInt(-self.doubled)

    def __bool__(self) -> bool:
        return self.doubled != 0

    def __eq__(self, other) -> bool:
        if isinstance(other, HalfInt):
            return self.doubled == other.doubled
        if isinstance(other, (int, Fraction)):
            return Fraction(self.doubled, 2) == other
        return NotImplemented

    def __hash__(self) -> int:
        return hash(Fraction(self.doubled, 2))

    def __str__(self) -> str:
        return str(self.value)


def sign(a) -> int:
    return (a > 0) - (a < 0)


def linking_from_positions(r, x, s, y) -> Fraction:
    """The linking-number formula on real coordinates sigma(r), sigma(x), ..."""
    d = sign(r - x)
    if not d:
        return 0
    twice = d * sign(r - y) * sign(y - x) - d * sign(r - s) * sign(s - x)
    return Fraction(twice, 2)


def linking_number(r: Point, x: Point, s: Point, y: Point) -> HalfInt:
    """J(rx, sy), with sigma(point) = its position."""
    return HalfInt(int(2 * linking_from_positions(r.pos, x.pos, s.pos, y.pos)))


def linking_value(r: Point, x: Point, s: Point, y: Point):
    """J(rx, sy) as a plain rational (``int`` or ``Fraction``)."""
    d = sign(r.pos - x.pos)
    if not d:
        return 0
    twice = d * (
        sign(r.pos - y.pos) * sign(y.pos - x.pos) - sign(r.pos - s.pos) * sign(s.pos - x.pos)
    )
    return twice // 2 if twice % 2 == 0 else Fraction(twice, 2)


def cyclically_ordered(*pts: Point) -> bool:
    """True iff the points are distinct and strictly anticlockwise in the given cyclic order."""
    pos = [p.pos for p in pts]
    if len(set(pos)) != len(pos):
        return False
    descents = sum(pos[k] > pos[(k + 1) % len(pos)] for k in range(len(pos)))
    return descents == 1


def parallel_number(i: Point, j: Point, ip: Point, jp: Point) -> HalfInt:
    """s_||(a_i a_j, a_i' a_j') from its five-case definition."""
    if i == j or ip == jp:
        raise InvalidInput("parallel number needs two genuine chords")
    if cyclically_ordered(i, ip, jp, j):
        return HalfInt(2)
    if cyclically_ordered(ip, i, j, jp):
        return HalfInt(-2)
    if (i == ip and cyclically_ordered(i, jp, j)) or (jp == j and cyclically_ordered(i, ip, j)):
        return HalfInt(1)
    if (ip == i and cyclically_ordered(i, j, jp)) or (j == jp and cyclically_ordered(ip, i, j)):
        return HalfInt(-1)
    return HalfInt(0)
