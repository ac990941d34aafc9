"""The (alpha, beta)-swapping bracket and the alternative ways of computing it.

On generators ``{rx, sy} = J(rx, sy) * (alpha * ry * sx + beta * rx * sy)``;
everything else follows from bilinearity and Leibniz's rule.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .circle import linking_value
from .errors import InvalidInput, PreconditionError
from .fraction_field import FractionElement
from .rank import (
    DegenerateSample,
    GeometricConfiguration,
    RankContext,
    determinant,
    evaluate_config,
    is_nonzero,
)
from .ring import PairGen, Point, Polynomial, _coerce_mod, _norm, as_scalar, gen, mono_from_counts


@dataclass(frozen=True)
class BracketParams:
    alpha: object = 1
    beta: object = 0

    def __post_init__(self):
        object.__setattr__(self, "alpha", as_scalar(self.alpha))
        object.__setattr__(self, "beta", as_scalar(self.beta))

    def __str__(self) -> str:
        return f"({self.alpha},{self.beta})"


SWAP = BracketParams(1, 0)
SCALE = BracketParams(0, 1)


def _params(p) -> BracketParams:
    if p is None:
        return SWAP
    if isinstance(p, BracketParams):
        return p
    return BracketParams(*p)


def bracket_gen(rx: PairGen, sy: PairGen, p=SWAP) -> Polynomial:
    p = _params(p)
    (r, x), (s, y) = rx, sy
    J = linking_value(r, x, s, y)
    if not J:
        return Polynomial.const(0)
    return (gen(r, y) * gen(s, x)).scale(p.alpha) * J + (gen(r, x) * gen(s, y)).scale(p.beta) * J


def bracket_poly(f: Polynomial, g: Polynomial, p=SWAP) -> Polynomial:
    """Bilinear, Leibniz-extended bracket of two polynomials in pair generators."""
    p = _params(p)
    alpha, beta = p.alpha, p.beta
    if not f.terms or not g.terms:
        return Polynomial.const(0)
    f._check(g)
    jcache: dict = {}
    out: dict = {}
    for m1, c1 in f.terms.items():
        if not m1:
            continue
        for m2, c2 in g.terms.items():
            if not m2:
                continue
            base = None
            beta_coef = 0
            for v, e1 in m1:
                for w, e2 in m2:
                    key = (v, w)
                    J = jcache.get(key)
                    if J is None:
                        J = jcache[key] = linking_value(v.left, v.right, w.left, w.right)
                    if not J:
                        continue
                    weight = e1 * e2 * J
                    if beta:
                        beta_coef += weight
                    if alpha and v.left != w.right and w.left != v.right:
                        if base is None:
                            base = dict(m1)
                            for u, e in m2:
                                base[u] = base.get(u, 0) + e
                        d = dict(base)
                        d[v] -= 1
                        d[w] -= 1
                        ry = PairGen(v.left, w.right)
                        sx = PairGen(w.left, v.right)
                        d[ry] = d.get(ry, 0) + 1
                        d[sx] = d.get(sx, 0) + 1
                        m = mono_from_counts(d)
                        out[m] = out.get(m, 0) + c1 * c2 * weight * alpha
            if beta and beta_coef:
                if base is None:
                    base = dict(m1)
                    for u, e in m2:
                        base[u] = base.get(u, 0) + e
                m = mono_from_counts(base)
                out[m] = out.get(m, 0) + c1 * c2 * beta_coef * beta
    return Polynomial({m: c for m, c in out.items() if c})


def _check_den(F: FractionElement, ctx: RankContext | None):
    if ctx is not None and F.den.constant_value() is None and not is_nonzero(F.den, ctx):
        raise PreconditionError(f"denominator is zero in Z_{ctx.n}(P)")


def bracket_fraction(F, G, p=SWAP, ctx: RankContext | None = None) -> FractionElement:
    """{N1/D1, N2/D2} = ({N1,N2} D1 D2 - {N1,D2} D1 N2 - {D1,N2} N1 D2 + {D1,D2} N1 N2) / (D1 D2)^2."""
    F, G = FractionElement.of(F), FractionElement.of(G)
    _check_den(F, ctx)
    _check_den(G, ctx)
    N1, D1, N2, D2 = F.num, F.den, G.num, G.den
    d1_const = D1.constant_value() is not None
    d2_const = D2.constant_value() is not None
    num = bracket_poly(N1, N2, p) * (D1 * D2)
    if not d2_const:
        num = num - bracket_poly(N1, D2, p) * (D1 * N2)
    if not d1_const:
        num = num - bracket_poly(D1, N2, p) * (N1 * D2)
    if not (d1_const or d2_const):
        num = num + bracket_poly(D1, D2, p) * (N1 * N2)
    den = D1 * D1 * D2 * D2
    return FractionElement(num, den)


def bracket(A, B, p=SWAP, ctx: RankContext | None = None):
    """Polynomial bracket when both sides are polynomials, fraction bracket otherwise."""
    if isinstance(A, Polynomial) and isinstance(B, Polynomial):
        return bracket_poly(A, B, p)
    return bracket_fraction(A, B, p, ctx)


def log_bracket(A, B, p=SWAP, ctx: RankContext | None = None) -> FractionElement:
    """[A, B] = {A, B} / (A * B)."""
    A, B = FractionElement.of(A), FractionElement.of(B)
    for X in (A, B):
        if X.num.is_zero() or (ctx is not None and not is_nonzero(X.num, ctx)):
            raise PreconditionError("log bracket of a zero element")
    top = bracket_fraction(A, B, p, ctx)
    return FractionElement(top.num * A.den * B.den, top.den * A.num * B.num)


# -- pointwise evaluation ---------------------------------------------------------


def _value_and_gradient(F, c: GeometricConfiguration):
    """Value and partial derivatives (over pair generators) of F at ``c``, mod p."""
    P = c.prime
    if isinstance(F, FractionElement):
        nv, ng = _value_and_gradient(F.num, c)
        dv, dg = _value_and_gradient(F.den, c)
        if not dv:
            raise DegenerateSample("denominator vanished at the sample")
        inv = pow(dv, -1, P)
        inv2 = inv * inv % P
        grad = {}
        for v in set(ng) | set(dg):
            grad[v] = (ng.get(v, 0) * dv - nv * dg.get(v, 0)) * inv2 % P
        return nv * inv % P, grad
    val = 0
    grad: dict = {}
    for m, coef in F.terms.items():
        coef = _coerce_mod(coef, P)
        vals = [c.value(v) for v, _ in m]
        t = coef
        for (v, e), x in zip(m, vals):
            t = t * pow(x, e, P) % P
        val += t
        for k, (v, e) in enumerate(m):
            # d/dv of coef * prod x^e
            d = coef * e % P
            for kk, ((w, ee), x) in enumerate(zip(m, vals)):
                d = d * pow(x, ee - 1 if kk == k else ee, P) % P
            grad[v] = (grad.get(v, 0) + d) % P
    return val % P, grad


def bracket_at(F, G, p, c: GeometricConfiguration) -> int:
    """Value of {F, G} at a configuration, via the bivector sum over generator pairs.

    Substitution is a ring map, so this equals evaluating the expanded bracket.
    """
    p = _params(p)
    P = c.prime
    a = _coerce_mod(p.alpha, P)
    b = _coerce_mod(p.beta, P)
    _, gf = _value_and_gradient(F, c)
    _, gg = _value_and_gradient(G, c)
    total = 0
    for v, dv in gf.items():
        if not dv:
            continue
        for w, dw in gg.items():
            if not dw:
                continue
            J = linking_value(v.left, v.right, w.left, w.right)
            if not J:
                continue
            J = _coerce_mod(J, P)
            gen_val = (
                a * c.pairing(v.left, w.right) * c.pairing(w.left, v.right)
                + b * c.value(v) * c.value(w)
            ) % P
            total += dv * dw % P * J % P * gen_val
    return total % P


def value_at(F, c: GeometricConfiguration) -> int:
    if isinstance(F, FractionElement):
        return F.evaluate_config(c)
    return evaluate_config(F, c)


# -- Lemma-style alternative paths ----------------------------------------------


def on_right_side(a: Point, b: Point, q: Point) -> bool:
    """True when ``q`` lies in the closed arc running anticlockwise from b to a."""
    if q == a or q == b:
        return True
    if b.pos < a.pos:
        return b.pos < q.pos < a.pos
    return q.pos > b.pos or q.pos < a.pos


def boundary_order(a: Point, b: Point, pts: Sequence[Point]) -> tuple[Point, ...]:
    """Order ``pts`` anticlockwise so that those on the right of ab come first."""
    pts = sorted(set(pts))
    if not pts:
        return ()
    flags = [on_right_side(a, b, q) for q in pts]
    if all(flags) or not any(flags):
        return tuple(pts)
    # start just after a left->right transition
    k = next(i for i in range(len(pts)) if flags[i] and not flags[i - 1])
    return tuple(pts[k:] + pts[:k])


def _check_boundary_tuple(a, b, tup, name):
    if len(set(tup)) != len(tup):
        raise PreconditionError(f"{name} must be mutually distinct")
    pos = [q.pos for q in tup]
    descents = sum(pos[k] > pos[(k + 1) % len(pos)] for k in range(len(pos)))
    if len(pos) > 1 and descents != 1:
        raise PreconditionError(f"{name} must be anticlockwise ordered")
    flags = [on_right_side(a, b, q) for q in tup]
    cut = flags.index(False) if False in flags else len(flags)
    if any(flags[cut:]):
        raise PreconditionError(f"right-side members of {name} must come first")
    return cut


def bracket_det_boundary(
    a: Point, b: Point, xs: Sequence[Point], ys: Sequence[Point], side: str = "right",
    *, ranges: str = "closed",
) -> Polynomial:
    """{ab, Delta(xs, ys)} computed from one side of the oriented chord ab.

    ``side="right"`` sums over rows/columns on the closed right side of ab
    (coinciding with a or b included), paired with an auxiliary point u
    strictly on the left.  ``side="left"`` pairs with v strictly on the
    right and sums over the rows/columns not strictly on the right, i.e. the
    closed left side.  For the left side, ``ranges`` selects alternative
    index sets: ``"open"`` (d > l for rows, d > k for columns, so endpoints
    are excluded) or ``"printed"`` (d > k for rows, d > l for columns).
    Only the closed versions agree with the Leibniz bracket in general.
    """
    xs, ys = tuple(xs), tuple(ys)
    if a == b:
        raise PreconditionError("oriented chord needs distinct endpoints")
    if len(xs) != len(ys) or not xs:
        raise PreconditionError("boundary formula needs equal nonempty tuples")
    l = _check_boundary_tuple(a, b, xs, "xs")
    k = _check_boundary_tuple(a, b, ys, "ys")
    m = len(xs)
    u = Point(a.pos + 1, "u*")  # just after a: strictly left of ab
    v = Point(a.pos - 1, "v*")  # just before a: strictly right of ab
    if side == "right":
        aux, x_idx, y_idx = u, range(l), range(k)
    elif side == "left":
        aux = v
        if ranges == "closed":
            x_idx = [d for d in range(m) if d >= l or xs[d] in (a, b)]
            y_idx = [d for d in range(m) if d >= k or ys[d] in (a, b)]
        elif ranges == "open":
            x_idx, y_idx = range(l, m), range(k, m)
        elif ranges == "printed":
            x_idx, y_idx = range(k, m), range(l, m)
        else:
            raise InvalidInput(f"unknown ranges {ranges!r}")
    else:
        raise InvalidInput(f"side must be 'right' or 'left', got {side!r}")
    total = Polynomial.const(0)
    for d in x_idx:
        J = linking_value(a, b, xs[d], aux)
        if J:
            rows = xs[:d] + (a,) + xs[d + 1 :]
            total = total + (gen(xs[d], b) * determinant(rows, ys)).scale(J)
    for d in y_idx:
        J = linking_value(a, b, aux, ys[d])
        if J:
            cols = ys[:d] + (b,) + ys[d + 1 :]
            total = total + (gen(a, ys[d]) * determinant(xs, cols)).scale(J)
    return total


def bracket_cofactor(xs: Sequence[Point], ys: Sequence[Point], B, ctx=None, p=SWAP):
    """sum_{s,t} (-1)^(s+t) det(M_st) {c_s d_t, B}: bracket of a determinant by cofactors."""
    xs, ys = tuple(xs), tuple(ys)
    if len(xs) != len(ys) or not xs:
        raise InvalidInput("cofactor expansion needs a square nonempty determinant")
    frac = isinstance(B, FractionElement)
    total = FractionElement.of(0) if frac else Polynomial.const(0)
    n = len(xs)
    for s in range(n):
        for t in range(n):
            g = gen(xs[s], ys[t])
            if g.is_zero():
                continue
            minor = determinant(xs[:s] + xs[s + 1 :], ys[:t] + ys[t + 1 :])
            if minor.is_zero():
                continue
            sgn = -1 if (s + t) % 2 else 1
            term = bracket(g, B, p, ctx)
            total = total + term * minor.scale(sgn)
    return total


def compute_K(a: Point, b: Point, xs: Sequence[Point], ys: Sequence[Point]):
    """Sum of J(ab, x_i y_i); the scaling constant of {ab, Delta}_{0,1}."""
    if len(xs) != len(ys):
        raise InvalidInput("compute_K needs equal-length tuples")
    return _norm(Fraction(sum(linking_value(a, b, x, y) for x, y in zip(xs, ys))))
