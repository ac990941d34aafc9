"""Sparse multivariate polynomials with exact rational coefficients.

The variable alphabet is abstract: any hashable, totally ordered value can
serve as a variable.  Two alphabets are used in this package, ordered point
pairs on a circle (:class:`PairGen`) and vertex-edge incidences of a planar
network (see :mod:`rankswap.networks`).

A monomial is a tuple of ``(variable, exponent)`` pairs sorted by variable,
with positive exponents only.  A :class:`Polynomial` maps monomials to
nonzero coefficients; coefficients are ``int`` whenever integral and
:class:`fractions.Fraction` otherwise, so structural equality is exact.
"""

from __future__ import annotations

from fractions import Fraction
from functools import cmp_to_key
from typing import Iterable, Mapping, NamedTuple

from .errors import IncompleteAssignment, InvalidInput

#: Spacing between consecutive base points; auxiliary points live in the gaps.
POINT_GAP = 1 << 32


class Point(NamedTuple):
    """A marked point on the circle.

    ``pos`` fixes the anticlockwise order (the basepoint sits below every
    position).  Base points ``a_k`` sit at ``k * POINT_GAP``.
    """

    pos: int
    label: str

    def __repr__(self) -> str:
        return self.label


class PairGen(NamedTuple):
    """The generator ``xy`` of Z(P): ``left`` is the vector slot, ``right`` the covector slot."""

    left: Point
    right: Point

    def __str__(self) -> str:
        return f"{self.left.label}.{self.right.label}"

    __repr__ = __str__


class PointSet:
    """A finite cyclically ordered set of points.

    ``PointSet.standard(r)`` gives ``a_1, ..., a_r``; enlargements insert
    auxiliary points into gaps without moving existing ones.
    """

    def __init__(self, points: Iterable[Point]):
        pts = tuple(sorted(set(points)))
        if len({p.pos for p in pts}) != len(pts):
            raise InvalidInput("two distinct points share a position")
        if len({p.label for p in pts}) != len(pts):
            raise InvalidInput("duplicate point labels")
        self.points = pts
        self._by_label = {p.label: p for p in pts}
        self._members = frozenset(pts)

    @classmethod
    def standard(cls, r: int) -> "PointSet":
        if r < 1:
            raise InvalidInput(f"need at least one point, got r={r}")
        return cls(Point(k * POINT_GAP, f"a{k}") for k in range(1, r + 1))

    def __iter__(self):
        return iter(self.points)

    def __len__(self) -> int:
        return len(self.points)

    def __contains__(self, p) -> bool:
        return p in self._members

    def __eq__(self, other) -> bool:
        return isinstance(other, PointSet) and self.points == other.points

    def __hash__(self) -> int:
        return hash(self.points)

    def __repr__(self) -> str:
        return f"PointSet({', '.join(p.label for p in self.points)})"

    def __getitem__(self, label: str) -> Point:
        try:
            return self._by_label[label]
        except KeyError:
            raise InvalidInput(f"unknown point name {label!r}") from None

    def a(self, k: int) -> Point:
        return self[f"a{k}"]

    def union(self, extra: Iterable[Point]) -> "PointSet":
        return PointSet(self.points + tuple(extra))

    def gen(self, p: Point, q: Point) -> "Polynomial":
        if p not in self or q not in self:
            raise InvalidInput(f"points {p!r}, {q!r} are not both in {self!r}")
        return gen(p, q)


def gap_points(after: Point, count: int, prefix: str = "v") -> tuple[Point, ...]:
    """``count`` auxiliary points just after ``after`` in the cyclic order.

    Positions are a fixed function of ``after`` so the same call always
    yields the same points; labels read ``v3_1, v3_2, ...`` for ``after = a3``.
    """
    step = POINT_GAP >> 8
    if count >= 1 << 7:
        raise InvalidInput("too many auxiliary points for one gap")
    base = after.label
    tag = base[1:] if base.startswith("a") else base
    return tuple(
        Point(after.pos + (s + 1) * step, f"{prefix}{tag}_{s + 1}") for s in range(count)
    )


# -- coefficients -------------------------------------------------------------


def _norm(c):
    if isinstance(c, Fraction) and c.denominator == 1:
        return c.numerator
    return c


def as_scalar(c):
    """Coerce ``c`` to an exact rational (``int`` or ``Fraction``)."""
    if isinstance(c, bool):
        raise InvalidInput("booleans are not scalars")
    if isinstance(c, int):
        return c
    if isinstance(c, Fraction):
        return _norm(c)
    if isinstance(c, str):
        return _norm(Fraction(c))
    raise InvalidInput(f"not an exact rational: {c!r}")


# -- monomials ----------------------------------------------------------------


def mono_mul(m1: tuple, m2: tuple) -> tuple:
    if not m1:
        return m2
    if not m2:
        return m1
    d = dict(m1)
    for v, e in m2:
        d[v] = d.get(v, 0) + e
    return tuple(sorted(d.items()))


def mono_from_counts(d: Mapping) -> tuple:
    return tuple(sorted((v, e) for v, e in d.items() if e))


def mono_degree(m: tuple) -> int:
    return sum(e for _, e in m)


def mono_divides(a: tuple, b: tuple) -> bool:
    db = dict(b)
    return all(db.get(v, 0) >= e for v, e in a)


def mono_div(b: tuple, a: tuple) -> tuple:
    """``b / a``; caller guarantees ``a`` divides ``b``."""
    d = dict(b)
    for v, e in a:
        d[v] -= e
    return mono_from_counts(d)


def grlex_cmp(m1: tuple, m2: tuple) -> int:
    """Graded lex; among variables the smaller one (by sort order) is larger."""
    d1, d2 = mono_degree(m1), mono_degree(m2)
    if d1 != d2:
        return -1 if d1 < d2 else 1
    for (v1, e1), (v2, e2) in zip(m1, m2):
        if v1 != v2:
            return 1 if v1 < v2 else -1
        if e1 != e2:
            return 1 if e1 > e2 else -1
    return 0


grlex_key = cmp_to_key(grlex_cmp)


def _alphabet_of(terms) -> type | None:
    for m in terms:
        if m:
            return type(m[0][0])
    return None


# -- polynomials --------------------------------------------------------------


class Polynomial:
    """Immutable sparse polynomial; build through :func:`gen`, :func:`var`, arithmetic."""

    __slots__ = ("terms", "alphabet", "_hash")

    def __init__(self, terms: Mapping | None = None):
        clean = {}
        if terms:
            for m, c in terms.items():
                if c:
                    clean[m] = _norm(c)
        self.terms: dict = clean
        self.alphabet = _alphabet_of(clean)
        self._hash = None

    @classmethod
    def _raw(cls, terms: dict) -> "Polynomial":
        # terms already cleaned: nonzero, normalised coefficients
        p = cls.__new__(cls)
        p.terms = terms
        p.alphabet = _alphabet_of(terms)
        p._hash = None
        return p

    @classmethod
    def const(cls, c) -> "Polynomial":
        c = as_scalar(c)
        return cls._raw({(): c} if c else {})

    # ---- inspection
    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self) -> bool:
        return bool(self.terms)

    def __len__(self) -> int:
        return len(self.terms)

    def degree(self) -> int:
        return max((mono_degree(m) for m in self.terms), default=-1)

    def variables(self) -> set:
        return {v for m in self.terms for v, _ in m}

    def constant_value(self):
        """The coefficient of the empty monomial when this is a constant, else ``None``."""
        if not self.terms:
            return 0
        if len(self.terms) == 1 and () in self.terms:
            return self.terms[()]
        return None

    def sorted_terms(self) -> list:
        return sorted(self.terms.items(), key=lambda mc: grlex_key(mc[0]), reverse=True)

    def leading_term(self):
        best = None
        for m in self.terms:
            if best is None or grlex_cmp(m, best) > 0:
                best = m
        return best, self.terms[best]

    # ---- equality
    def __eq__(self, other) -> bool:
        if isinstance(other, Polynomial):
            return self.terms == other.terms
        if isinstance(other, (int, Fraction)):
            return self.terms == Polynomial.const(other).terms
        return NotImplemented

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(frozenset(self.terms.items()))
        return self._hash

    # ---- arithmetic
    def _check(self, other: "Polynomial") -> None:
        a, b = self.alphabet, other.alphabet
        if a is not None and b is not None and a is not b:
            raise InvalidInput(f"mixed alphabets: {a.__name__} and {b.__name__}")

    @staticmethod
    def _coerce(x) -> "Polynomial":
        if isinstance(x, Polynomial):
            return x
        return Polynomial.const(x)

    def __add__(self, other) -> "Polynomial":
        other = self._coerce(other)
        self._check(other)
        if len(other.terms) > len(self.terms):
            big, small = other.terms, self.terms
        else:
            big, small = self.terms, other.terms
        out = dict(big)
        for m, c in small.items():
            s = out.get(m, 0) + c
            if s:
                out[m] = _norm(s)
            else:
                out.pop(m, None)
        return Polynomial._raw(out)

    __radd__ = __add__

    def __neg__(self) -> "Polynomial":
        return Polynomial._raw({m: -c for m, c in self.terms.items()})

    def __sub__(self, other) -> "Polynomial":
        return self + (-self._coerce(other))

    def __rsub__(self, other) -> "Polynomial":
        return self._coerce(other) - self

    def scale(self, c) -> "Polynomial":
        c = as_scalar(c)
        if not c:
            return Polynomial._raw({})
        if c == 1:
            return self
        return Polynomial._raw({m: _norm(k * c) for m, k in self.terms.items()})

    def __mul__(self, other) -> "Polynomial":
        if not isinstance(other, Polynomial):
            return self.scale(other)
        self._check(other)
        out: dict = {}
        get = out.get
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                m = mono_mul(m1, m2)
                out[m] = get(m, 0) + c1 * c2
        return Polynomial._raw({m: _norm(c) for m, c in out.items() if c})

    def __rmul__(self, other) -> "Polynomial":
        return self.scale(other)

    def __pow__(self, e: int) -> "Polynomial":
        if not isinstance(e, int) or e < 0:
            raise InvalidInput(f"exponent must be a non-negative integer, got {e!r}")
        result = Polynomial.const(1)
        base = self
        while e:
            if e & 1:
                result = result * base
            e >>= 1
            if e:
                base = base * base
        return result

    # ---- calculus & evaluation
    def diff(self, v) -> "Polynomial":
        return partial_derivative(self, v)

    def evaluate(self, assignment: Mapping, prime: int | None = None):
        return evaluate(self, assignment, prime)

    # ---- text
    def __str__(self) -> str:
        return render(self)

    def __repr__(self) -> str:
        return f"Polynomial({render(self)})"


def var(v) -> Polynomial:
    """The degree-one polynomial of an arbitrary variable."""
    return Polynomial._raw({((v, 1),): 1})


def gen(p: Point, q: Point) -> Polynomial:
    """The generator ``pq`` of Z(P); the zero polynomial when ``p == q``."""
    if not isinstance(p, Point) or not isinstance(q, Point):
        raise InvalidInput(f"gen expects points, got {p!r}, {q!r}")
    if p == q:
        return Polynomial._raw({})
    return var(PairGen(p, q))


def partial_derivative(f: Polynomial, v) -> Polynomial:
    out = {}
    for m, c in f.terms.items():
        for k, (w, e) in enumerate(m):
            if w == v:
                rest = m[:k] + (((w, e - 1),) if e > 1 else ()) + m[k + 1 :]
                out[rest] = out.get(rest, 0) + c * e
                break
    return Polynomial._raw({m: _norm(c) for m, c in out.items() if c})


def _coerce_mod(c, prime: int) -> int:
    if isinstance(c, Fraction):
        return c.numerator % prime * pow(c.denominator, -1, prime) % prime
    return c % prime


def evaluate(f: Polynomial, assignment: Mapping, prime: int | None = None):
    """Substitute scalars for variables.

    Exact over the rationals when ``prime`` is ``None``; otherwise every
    value and coefficient is reduced into ``[0, prime)``.
    """
    if prime is None:
        total = 0
        for m, c in f.terms.items():
            t = c
            for v, e in m:
                try:
                    x = assignment[v]
                except KeyError:
                    raise IncompleteAssignment(f"no value for variable {v}") from None
                t = t * (x if e == 1 else x**e)
            total += t
        return _norm(Fraction(total)) if isinstance(total, Fraction) else total
    total = 0
    for m, c in f.terms.items():
        t = _coerce_mod(c, prime)
        for v, e in m:
            try:
                x = assignment[v]
            except KeyError:
                raise IncompleteAssignment(f"no value for variable {v}") from None
            t = t * (x if e == 1 else pow(x, e, prime)) % prime
        total += t
    return total % prime


def _fmt_scalar(c) -> str:
    return str(c)


def render(f: Polynomial) -> str:
    """Canonical text: grlex-descending terms ``c * x.y^e * ...``."""
    if not f.terms:
        return "0"
    parts = []
    for idx, (m, c) in enumerate(f.sorted_terms()):
        body = " * ".join(f"{v}^{e}" if e > 1 else f"{v}" for v, e in m)
        mag = abs(c)
        piece = _fmt_scalar(mag) + (f" * {body}" if body else "")
        if idx == 0:
            parts.append(("-" if c < 0 else "") + piece)
        else:
            parts.append((" - " if c < 0 else " + ") + piece)
    return "".join(parts)
