"""The rank-n quotient Z_n(P): minors, a division reducer, and the evaluation oracle.

Equality in Z_n(P) is decided in layers.  A polynomial that is structurally
zero, or whose division remainder by the (n+1)-minors is zero, is proved
zero.  Otherwise it is evaluated at random points of the geometric model
(a vector and a covector per circle point, with zero self-pairing) over a
large prime field; a nonzero value is a witness, and T zero values make it
probably zero with error at most (deg/p)^T.
"""

from __future__ import annotations

import enum
import heapq
import itertools
import random
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Callable, Iterable, Sequence

from .errors import InvalidInput, PreconditionError
from .ring import (
    PairGen,
    Point,
    PointSet,
    Polynomial,
    _coerce_mod,
    grlex_cmp,
    mono_degree,
    mono_div,
    mono_mul,
)

DEFAULT_PRIME = 2305843009213693951  # 2^61 - 1
DEFAULT_TRIALS = 20
#: Skip the reducer for inputs with more terms than this and go to the oracle.
REDUCE_TERM_BUDGET = 4000


def _is_probable_prime(p: int) -> bool:
    if p < 2:
        return False
    for q in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37):
        if p % q == 0:
            return p == q
    d, s = p - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37):
        x = pow(a, d, p)
        if x in (1, p - 1):
            continue
        for _ in range(s - 1):
            x = x * x % p
            if x == p - 1:
                break
        else:
            return False
    return True


@dataclass(frozen=True)
class RankContext:
    """Everything that pins down equality in Z_n(P)."""

    n: int
    points: PointSet
    prime: int = DEFAULT_PRIME
    trials: int = DEFAULT_TRIALS
    seed: int = 0
    order: str = "grlex"

    def __post_init__(self):
        if self.n < 2:
            raise InvalidInput(f"rank must be at least 2, got n={self.n}")
        if self.trials < 1:
            raise InvalidInput("need at least one oracle trial")
        if self.prime <= 1 << 50 or not _is_probable_prime(self.prime):
            raise InvalidInput(f"oracle modulus must be a prime above 2^50, got {self.prime}")
        if self.order != "grlex":
            raise InvalidInput(f"unsupported monomial order {self.order!r}")

    @classmethod
    def standard(cls, n: int, r: int, **kw) -> "RankContext":
        return cls(n=n, points=PointSet.standard(r), **kw)

    def with_seed(self, seed: int) -> "RankContext":
        return RankContext(self.n, self.points, self.prime, self.trials, seed, self.order)

    def config(self, trial: int, stream: str = "oracle") -> "GeometricConfiguration":
        return random_config(self, (self.seed, stream, trial))


# -- determinants ----------------------------------------------------------------


def determinant(xs: Sequence[Point], ys: Sequence[Point]) -> Polynomial:
    """Delta((x_1..x_d),(y_1..y_d)): the Leibniz expansion of the pairing matrix."""
    xs, ys = tuple(xs), tuple(ys)
    if len(xs) != len(ys):
        raise InvalidInput(f"determinant needs equal-length tuples, got {len(xs)} and {len(ys)}")
    return _determinant(xs, ys)


@lru_cache(maxsize=65536)
def _determinant(xs: tuple, ys: tuple) -> Polynomial:
    d = len(xs)
    if d == 0:
        return Polynomial.const(1)
    if len(set(xs)) < d or len(set(ys)) < d:
        return Polynomial.const(0)
    terms: dict = {}
    for perm in itertools.permutations(range(d)):
        mono = []
        for i, j in enumerate(perm):
            if xs[i] == ys[j]:
                break
            mono.append(PairGen(xs[i], ys[j]))
        else:
            # sign by inversion count
            inv = sum(perm[a] > perm[b] for a in range(d) for b in range(a + 1, d))
            counts: dict = {}
            for v in mono:
                counts[v] = counts.get(v, 0) + 1
            m = tuple(sorted(counts.items()))
            terms[m] = terms.get(m, 0) + (-1 if inv % 2 else 1)
    return Polynomial(terms)


def minor_generators(ctx: RankContext) -> list[Polynomial]:
    """All (n+1)-minors with strictly increasing row and column tuples, in a fixed order."""
    return [determinant(rows, cols) for rows, cols in minor_keys(ctx.points.points, ctx.n)]


def minor_keys(points: Sequence[Point], n: int) -> list[tuple]:
    pts = sorted(points)
    if len(pts) < n + 1:
        return []
    subsets = list(itertools.combinations(pts, n + 1))
    out = []
    for rows in subsets:
        for cols in subsets:
            if not determinant(rows, cols).is_zero():
                out.append((rows, cols))
    return out


# -- reduction -----------------------------------------------------------------


class _Desc:
    """Heap key putting the grlex-largest monomial first."""

    __slots__ = ("m",)

    def __init__(self, m):
        self.m = m

    def __lt__(self, other):
        return grlex_cmp(self.m, other.m) > 0


def _divisor_for(mono: tuple, n: int):
    """The first minor (in minor-list order) whose leading monomial divides ``mono``."""
    gens = [v for v, _ in mono]
    best = None
    for combo in itertools.combinations(gens, n + 1):
        rows = tuple(sorted(v.left for v in combo))
        cols = tuple(sorted(v.right for v in combo))
        if len(set(rows)) < n + 1 or len(set(cols)) < n + 1:
            continue
        key = (rows, cols)
        if best is not None and key >= best[0]:
            continue
        lm = _leading(rows, cols)
        if lm is None:
            continue
        if tuple(sorted(combo)) == tuple(v for v, _ in lm[0]):
            best = (key, lm)
    return best


@lru_cache(maxsize=65536)
def _leading(rows: tuple, cols: tuple):
    M = _determinant(rows, cols)
    if M.is_zero():
        return None
    lm, lc = M.leading_term()
    return lm, lc, M


def _div(c, d):
    q = Fraction(c) / d
    return q.numerator if q.denominator == 1 else q


def reduce_with_trace(f: Polynomial, ctx: RankContext) -> tuple[Polynomial, dict]:
    """Divide ``f`` by the (n+1)-minors.

    Returns ``(remainder, quotients)`` with
    ``f == remainder + sum(q * determinant(*key) for key, q in quotients.items())``.
    Only minors whose points occur in ``f`` can ever divide a term, so the
    minor list is never materialised.
    """
    n = ctx.n
    p = dict(f.terms)
    heap = [_Desc(m) for m in p]
    heapq.heapify(heap)
    remainder: dict = {}
    quotients: dict = {}
    while heap:
        m = heapq.heappop(heap).m
        c = p.pop(m, 0)
        if not c:
            continue
        # stale duplicates of m may sit in the heap; p no longer has m so they are skipped
        hit = _divisor_for(m, n) if mono_degree(m) > n else None
        if hit is None:
            remainder[m] = c
            continue
        key, (lm, lc, M) = hit
        qm = mono_div(m, lm)
        qc = _div(c, lc)
        quotients.setdefault(key, {})
        quotients[key][qm] = quotients[key].get(qm, 0) + qc
        for mm, cc in M.terms.items():
            if mm == lm:
                continue
            t = mono_mul(mm, qm)
            new = p.get(t, 0) - qc * cc
            if new:
                if t not in p:
                    heapq.heappush(heap, _Desc(t))
                p[t] = new
            else:
                p.pop(t, None)
    return Polynomial(remainder), {k: Polynomial(v) for k, v in quotients.items()}


def reduce(f: Polynomial, ctx: RankContext) -> Polynomial:
    """Remainder of ``f`` on division by the (n+1)-minors; zero certifies membership in R_n(P)."""
    return reduce_with_trace(f, ctx)[0]


# -- geometric model -----------------------------------------------------------


class DegenerateSample(ArithmeticError):
    """A sampled configuration hit a pole (a denominator vanished mod p)."""


class GeometricConfiguration:
    """A vector v_q and covector phi_q in F_p^n per point, with phi_q(v_q) = 0.

    Each point's data is derived from ``(seed, point position)`` alone, so
    points outside the declared set (auxiliary points) get data on demand and
    adding points never changes existing ones.
    """

    def __init__(self, n: int, prime: int, seed, points: Iterable[Point] = ()):
        self.n = n
        self.prime = prime
        self.seed = seed
        self._data: dict = {}
        self._pair: dict = {}
        for q in points:
            self._point(q)

    def _point(self, q: Point):
        got = self._data.get(q.pos)
        if got is not None:
            return got
        p, n = self.prime, self.n
        rng = random.Random(f"{self.seed!r}|{q.pos}")
        v = [rng.randrange(p) for _ in range(n)]
        while not any(v):
            v = [rng.randrange(p) for _ in range(n)]
        phi = [rng.randrange(p) for _ in range(n)]
        k = next(i for i, x in enumerate(v) if x)
        rest = sum(phi[i] * v[i] for i in range(n) if i != k) % p
        phi[k] = (-rest) * pow(v[k], -1, p) % p
        self._data[q.pos] = (v, phi)
        return v, phi

    def vector(self, q: Point) -> list[int]:
        return list(self._point(q)[0])

    def covector(self, q: Point) -> list[int]:
        return list(self._point(q)[1])

    def pairing(self, x: Point, y: Point) -> int:
        """Value of the generator xy: phi_y(v_x)."""
        key = (x.pos, y.pos)
        val = self._pair.get(key)
        if val is None:
            if x.pos == y.pos:
                val = 0
            else:
                vx = self._point(x)[0]
                py = self._point(y)[1]
                val = sum(a * b for a, b in zip(vx, py)) % self.prime
            self._pair[key] = val
        return val

    def value(self, g: PairGen) -> int:
        return self.pairing(g.left, g.right)

    def describe(self) -> dict:
        return {"seed": repr(self.seed), "n": self.n, "prime": self.prime}


def random_config(ctx: RankContext, seed) -> GeometricConfiguration:
    return GeometricConfiguration(ctx.n, ctx.prime, seed, ctx.points)


def evaluate_config(f: Polynomial, c: GeometricConfiguration) -> int:
    p = c.prime
    total = 0
    for m, coef in f.terms.items():
        t = _coerce_mod(coef, p) if not isinstance(coef, int) else coef
        for v, e in m:
            x = c.pairing(v.left, v.right)
            t = t * (x if e == 1 else pow(x, e, p)) % p
        total += t
    return total % p


# -- certificates ----------------------------------------------------------------


class Verdict(enum.Enum):
    PROVED_ZERO = "ProvedZero"
    PROBABLY_ZERO = "ProbablyZero"
    NON_ZERO = "NonZero"


@dataclass
class ZeroCertificate:
    verdict: Verdict
    method: str
    trials: int = 0
    witness: GeometricConfiguration | None = None
    value: int | None = None
    detail: dict = field(default_factory=dict)

    @property
    def is_zero(self) -> bool:
        return self.verdict is not Verdict.NON_ZERO

    def __bool__(self) -> bool:
        return self.is_zero

    def to_dict(self) -> dict:
        out = {"verdict": self.verdict.value, "method": self.method, "trials": self.trials}
        if self.witness is not None:
            out["witness"] = self.witness.describe()
            out["value"] = self.value
        if self.detail:
            out["detail"] = self.detail
        return out


MAX_DEGENERATE = 50


def oracle_test(
    evaluator: Callable[[GeometricConfiguration], int], ctx: RankContext, stream: str = "oracle"
) -> ZeroCertificate:
    """Run ``evaluator`` at ``ctx.trials`` configurations; any nonzero value is a witness.

    An evaluator may raise :class:`DegenerateSample` when the sample lands on
    a pole; such samples are replaced (a bounded number of times).
    """
    done = skipped = 0
    trial = 0
    while done < ctx.trials:
        c = ctx.config(trial, stream)
        trial += 1
        try:
            val = evaluator(c) % ctx.prime
        except DegenerateSample:
            skipped += 1
            if skipped > MAX_DEGENERATE:
                raise PreconditionError("oracle keeps hitting poles; expression is undefined")
            continue
        done += 1
        if val:
            return ZeroCertificate(Verdict.NON_ZERO, "oracle", done, c, val)
    detail = {"skipped_degenerate": skipped} if skipped else {}
    return ZeroCertificate(Verdict.PROBABLY_ZERO, "oracle", done, detail=detail)


def is_zero_rank_n(f: Polynomial, ctx: RankContext, *, use_reducer: bool = True) -> ZeroCertificate:
    """Layered zero test in Z_n(P): structural, then division, then random evaluation."""
    if f.is_zero():
        return ZeroCertificate(Verdict.PROVED_ZERO, "exact")
    if use_reducer and len(f) <= REDUCE_TERM_BUDGET:
        rem = reduce(f, ctx)
        if rem.is_zero():
            return ZeroCertificate(Verdict.PROVED_ZERO, "reduction")
    return oracle_test(lambda c: evaluate_config(f, c), ctx)


def is_nonzero(f: Polynomial, ctx: RankContext) -> bool:
    """Cheap NonZero check: a single nonzero evaluation suffices."""
    if f.is_zero():
        return False
    for t in range(ctx.trials):
        if evaluate_config(f, ctx.config(t, "nonzero")):
            return True
    return False
