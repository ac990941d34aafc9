"""Schubert-cell coordinates, their quadratic bracket, and the map to determinant ratios.

Coordinates ``m_ij`` (``i`` in the cell's index set I, ``j`` outside it) are
sent to ``E(a_I without a_i | a_j, a_i)``.  The verification engine checks
that brackets of images match images of brackets, one coordinate pair at a
time, with zero certificates in Q_n(P).
"""

from __future__ import annotations

import itertools
import random
import time
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, NamedTuple, Sequence

from .bracket import BracketParams, _params, bracket_at, bracket_fraction
from .circle import linking_value, parallel_number
from .errors import InvalidInput, PreconditionError
from .fraction_field import DeterminantRatio, FractionElement, det_ratio, frac_equal
from .rank import (
    GeometricConfiguration,
    RankContext,
    ZeroCertificate,
    oracle_test,
)
from .ring import Point, Polynomial, var


@dataclass(frozen=True)
class SchubertIndex:
    r: int
    I: tuple

    def __post_init__(self):
        I = tuple(self.I)
        object.__setattr__(self, "I", I)
        if any(b <= a for a, b in zip(I, I[1:])):
            raise InvalidInput(f"index set must be strictly increasing: {I}")
        if not I or I[0] < 1 or I[-1] > self.r:
            raise InvalidInput(f"index set {I} must lie in 1..{self.r}")

    @property
    def n(self) -> int:
        return len(self.I)

    def complement(self) -> tuple:
        return tuple(j for j in range(1, self.r + 1) if j not in self.I)

    def coords(self) -> list["CoordSymbol"]:
        return [CoordSymbol(i, j) for i in self.I for j in self.complement()]

    def replace(self, i: int, j: int) -> tuple:
        """I(i -> j), sorted."""
        return tuple(sorted((set(self.I) - {i}) | {j}))

    def __str__(self) -> str:
        return "{" + ",".join(map(str, self.I)) + "}"


class CoordSymbol(NamedTuple):
    i: int
    j: int

    def __str__(self) -> str:
        return f"m{self.i}_{self.j}"


def _check_coord(c: CoordSymbol, S: SchubertIndex) -> None:
    if c.i not in S.I or c.j in S.I or not 1 <= c.j <= S.r:
        raise InvalidInput(f"{c} is not a coordinate of the cell {S}")


def coord(i: int, j: int) -> Polynomial:
    """The formal coordinate m_ij as a one-term polynomial."""
    return var(CoordSymbol(i, j))


# -- Pluecker coordinates --------------------------------------------------------


def _det(rows: list[list]) -> Fraction:
    """Exact determinant by fraction-free Gaussian elimination."""
    M = [[Fraction(x) for x in row] for row in rows]
    n = len(M)
    det = Fraction(1)
    for k in range(n):
        piv = next((i for i in range(k, n) if M[i][k] != 0), None)
        if piv is None:
            return Fraction(0)
        if piv != k:
            M[k], M[piv] = M[piv], M[k]
            det = -det
        det *= M[k][k]
        for i in range(k + 1, n):
            f = M[i][k] / M[k][k]
            if f:
                for j in range(k, n):
                    M[i][j] -= f * M[k][j]
    return det


def plucker(M: Sequence[Sequence], I: Iterable[int]):
    """Minor of ``M`` on the (1-based) columns ``I`` taken in increasing order."""
    I = sorted(I)
    n = len(M)
    if not n or any(len(row) != len(M[0]) for row in M):
        raise InvalidInput("matrix rows must have equal length")
    if len(I) != n or I[0] < 1 or I[-1] > len(M[0]):
        raise InvalidInput(f"column set {I} does not fit a {n}x{len(M[0])} matrix")
    d = _det([[row[j - 1] for j in I] for row in M])
    return d.numerator if d.denominator == 1 else d


def schubert_cell_index(M: Sequence[Sequence]) -> SchubertIndex:
    """The lexicographically minimal column set with a nonzero Pluecker coordinate."""
    n, r = len(M), len(M[0])
    for I in itertools.combinations(range(1, r + 1), n):
        if plucker(M, I) != 0:
            return SchubertIndex(r, I)
    raise PreconditionError("matrix is not of full row rank")


def m_coordinate(M: Sequence[Sequence], S: SchubertIndex, c: CoordSymbol):
    """m_ij(M) = Delta_{I(i->j)}(M) / Delta_I(M)."""
    _check_coord(c, S)
    q = Fraction(plucker(M, S.replace(c.i, c.j))) / plucker(M, S.I)
    return q.numerator if q.denominator == 1 else q


# -- the quadratic bracket on coordinates -----------------------------------------


def formula_bracket(c: CoordSymbol, cp: CoordSymbol, p) -> Polynomial:
    """(a-b) s_||(a_i a_j, a_i' a_j') m_ij' m_i'j + (a+b) J(a_i a_j, a_i' a_j') m_ij m_i'j'."""
    p = _params(p)
    ai, aj, aip, ajp = (Point(k, f"a{k}") for k in (c.i, c.j, cp.i, cp.j))
    s_par = parallel_number(ai, aj, aip, ajp).value
    J = linking_value(ai, aj, aip, ajp)
    out = Polynomial.const(0)
    if s_par and p.alpha != p.beta:
        out = out + (coord(c.i, cp.j) * coord(cp.i, c.j)).scale((p.alpha - p.beta) * s_par)
    if J and p.alpha != -p.beta:
        out = out + (coord(c.i, c.j) * coord(cp.i, cp.j)).scale((p.alpha + p.beta) * J)
    return out


def target_params(p) -> BracketParams:
    """The swapping-bracket parameters (beta - alpha, alpha + beta) matched by (alpha, beta)."""
    p = _params(p)
    return BracketParams(p.beta - p.alpha, p.alpha + p.beta)


# -- the homomorphism -------------------------------------------------------------


class ThetaMap:
    """theta: K[m_ij] -> Q_n(P) for one Schubert cell; caches each image."""

    def __init__(self, S: SchubertIndex, ctx: RankContext):
        if ctx.n != S.n:
            raise InvalidInput(f"cell of size {S.n} needs rank context n={S.n}, got {ctx.n}")
        if len(ctx.points) < S.r:
            raise InvalidInput("rank context has fewer points than the cell's columns")
        self.S = S
        self.ctx = ctx
        self._cache: dict = {}

    def point(self, k: int) -> Point:
        return self.ctx.points.a(k)

    def ratio(self, c: CoordSymbol) -> DeterminantRatio:
        got = self._cache.get(c)
        if got is None:
            _check_coord(c, self.S)
            left = tuple(self.point(k) for k in self.S.I if k != c.i)
            got = det_ratio(left, self.point(c.j), self.point(c.i), self.ctx)
            self._cache[c] = got
        return got

    def image(self, c: CoordSymbol) -> FractionElement:
        return self.ratio(c).realized

    def extend(self, e: Polynomial) -> FractionElement:
        """Ring-homomorphic image of a coordinate polynomial (unreduced)."""
        total = FractionElement.of(0)
        by_den: dict = {}
        for m, coef in e.sorted_terms():
            term = FractionElement.of(Polynomial.const(coef))
            for sym, k in m:
                term = term * (self.image(sym) ** k)
            # group terms sharing a denominator to keep the sum small
            key = term.den
            by_den[key] = by_den[key] + term.num if key in by_den else term.num
        for den, num in by_den.items():
            total = total + FractionElement(num, den)
        return total

    def value_at(self, e: Polynomial, c: GeometricConfiguration) -> int:
        """theta(e) at a configuration, without expanding the fraction."""
        P = c.prime
        vals = {}
        total = 0
        for m, coef in e.terms.items():
            t = Fraction(coef)
            t = t.numerator % P * pow(t.denominator, -1, P) % P
            for sym, k in m:
                if sym not in vals:
                    vals[sym] = self.image(sym).evaluate_config(c)
                t = t * pow(vals[sym], k, P) % P
            total += t
        return total % P


def theta(c: CoordSymbol, S: SchubertIndex, ctx: RankContext) -> FractionElement:
    return ThetaMap(S, ctx).image(c)


def theta_extend(e: Polynomial, S: SchubertIndex, ctx: RankContext) -> FractionElement:
    return ThetaMap(S, ctx).extend(e)


# -- verification -----------------------------------------------------------------


def verify_theta_pair(
    c: CoordSymbol, cp: CoordSymbol, p, theta_map: ThetaMap, method: str = "pointwise"
) -> ZeroCertificate:
    """Certificate that {theta(c), theta(c')} in the target bracket equals theta of the formula bracket.

    ``method="symbolic"`` builds both sides as explicit fractions and calls
    :func:`frac_equal`; ``"pointwise"`` evaluates both sides at random
    configurations (the bracket via its bivector), never expanding.
    """
    p = _params(p)
    tp = target_params(p)
    rhs_expr = formula_bracket(c, cp, p)
    A, B = theta_map.image(c), theta_map.image(cp)
    ctx = theta_map.ctx
    if method == "symbolic":
        lhs = bracket_fraction(A, B, tp, ctx)
        rhs = theta_map.extend(rhs_expr)
        return frac_equal(lhs, rhs, ctx)
    if method != "pointwise":
        raise InvalidInput(f"unknown verification method {method!r}")

    def diff(cfg):
        return bracket_at(A, B, tp, cfg) - theta_map.value_at(rhs_expr, cfg)

    return oracle_test(diff, ctx)


def verify_lemma_01(c: CoordSymbol, cp: CoordSymbol, theta_map: ThetaMap, method: str = "pointwise"):
    """{E, E'}_{0,1} = J(a_i a_j, a_i' a_j') E E' in Q_n(P)."""
    A, B = theta_map.image(c), theta_map.image(cp)
    J = linking_value(*(theta_map.point(k) for k in (c.i, c.j, cp.i, cp.j)))
    ctx = theta_map.ctx
    if method == "symbolic":
        return frac_equal(bracket_fraction(A, B, (0, 1), ctx), (A * B) * Polynomial.const(J), ctx)

    P = ctx.prime
    Jm = Fraction(J)
    Jm = Jm.numerator % P * pow(Jm.denominator, -1, P) % P

    def diff(cfg):
        return bracket_at(A, B, (0, 1), cfg) - Jm * A.evaluate_config(cfg) * B.evaluate_config(cfg)

    return oracle_test(diff, ctx)


def coordinate_pairs(S: SchubertIndex, ordered: bool = False) -> list[tuple]:
    """Distinct unordered pairs by default; every ordered pair (diagonal included) when ``ordered``."""
    cs = S.coords()
    if ordered:
        return list(itertools.product(cs, cs))
    return list(itertools.combinations(cs, 2))


@dataclass
class PairResult:
    pair: tuple
    certificate: ZeroCertificate
    elapsed: float


def verify_main_theorem(
    S: SchubertIndex, p, ctx: RankContext, *, ordered: bool = False, method: str = "pointwise"
) -> list[PairResult]:
    tm = ThetaMap(S, ctx)
    out = []
    for c, cp in coordinate_pairs(S, ordered):
        t0 = time.perf_counter()
        cert = verify_theta_pair(c, cp, p, tm, method)
        out.append(PairResult((c, cp), cert, time.perf_counter() - t0))
    return out


def random_coord_poly(S: SchubertIndex, degree: int, rng: random.Random, max_terms: int = 4) -> Polynomial:
    """A random nonzero coordinate polynomial of total degree at most ``degree``."""
    cs = S.coords()
    while True:
        e = Polynomial.const(0)
        for _ in range(rng.randint(1, max_terms)):
            d = rng.randint(0, degree)
            term = Polynomial.const(rng.choice([-3, -2, -1, 1, 2, 3, Fraction(1, 2)]))
            for _ in range(d):
                term = term * coord(*rng.choice(cs))
            e = e + term
        if not e.is_zero():
            return e


@dataclass
class InjectivityReport:
    samples: list
    certificates: list
    red_flags: list

    @property
    def passed(self) -> bool:
        return not self.red_flags


def injectivity_spotcheck(
    S: SchubertIndex, ctx: RankContext, degree: int = 2, samples: int = 100, seed: int = 0
) -> InjectivityReport:
    """Random nonzero coordinate polynomials must have NonZero images."""
    tm = ThetaMap(S, ctx)
    rng = random.Random(seed)
    exprs, certs, flags = [], [], []
    for _ in range(samples):
        e = random_coord_poly(S, degree, rng)
        cert = oracle_test(lambda cfg, e=e: tm.value_at(e, cfg), ctx, stream="injectivity")
        exprs.append(e)
        certs.append(cert)
        if cert.is_zero:
            flags.append(e)
    return InjectivityReport(exprs, certs, flags)


def homomorphism_config(M: Sequence[Sequence], S: SchubertIndex, ctx: RankContext, prime: int | None = None):
    """Rational values of theta(m_ij) with column k of ``M`` as the vector of a_k.

    The right tuples' covectors cancel from every ratio, so any nondegenerate
    choice works; the standard dual basis is used.
    """
    tm = ThetaMap(S, ctx)
    vec = {tm.point(k): [Fraction(M[row][k - 1]) for row in range(S.n)] for k in range(1, S.r + 1)}

    def pairing(x: Point, y: Point, right: tuple):
        idx = right.index(y)
        return vec[x][idx]

    out = {}
    for c in S.coords():
        ratio = tm.ratio(c)
        rows_t = [vec[q] for q in ratio.left + (ratio.t,)]
        rows_y = [vec[q] for q in ratio.left + (ratio.y,)]
        val = _det(rows_t) / _det(rows_y)
        out[c] = val.numerator if val.denominator == 1 else val
    return out
