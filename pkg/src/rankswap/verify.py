"""Verification sweeps shared by the CLI and the test suite.

Every sweep returns a list of :class:`Item` in a canonical order, so reports
built from them are reproducible given the same parameters and seed.
"""

from __future__ import annotations

import itertools
import random
import time
from dataclasses import dataclass, field

from .bracket import (
    SCALE,
    SWAP,
    _params,
    boundary_order,
    bracket,
    bracket_cofactor,
    bracket_det_boundary,
    bracket_poly,
)
from .circle import linking_from_positions, linking_value
from .errors import PreconditionError
from .fraction_field import cross_fraction, det_ratio, frac_equal
from .grassmannian import SchubertIndex, ThetaMap, coordinate_pairs, injectivity_spotcheck, verify_lemma_01, verify_theta_pair
from .networks import (
    PlanarNetwork,
    boundary_measurement,
    measurement_by_enumeration,
    network_bracket,
    verify_network_vs_formula,
)
from .rank import RankContext, Verdict, ZeroCertificate, determinant, is_zero_rank_n
from .ring import Point, PointSet, Polynomial, gap_points, gen, var


@dataclass
class Item:
    key: str
    verdict: str
    method: str
    trials: int = 0
    elapsed: float = 0.0
    detail: dict = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return self.verdict in ("ProvedZero", "ProbablyZero", "Pass")

    def to_dict(self, timings: bool = False) -> dict:
        out = {
            "key": self.key,
            "verdict": self.verdict,
            "method": self.method,
            "trials": self.trials,
            "elapsed": round(self.elapsed, 6) if timings else None,
        }
        if self.detail:
            out["detail"] = self.detail
        return out


def _exact(key: str, diff, t0: float, **detail) -> Item:
    zero = diff.is_zero()
    return Item(key, "ProvedZero" if zero else "NonZero", "exact", 0, time.perf_counter() - t0, detail)


def _from_cert(key: str, cert: ZeroCertificate, t0: float, **detail) -> Item:
    d = dict(detail)
    if cert.verdict is Verdict.NON_ZERO:
        d["witness"] = cert.witness.describe()
    return Item(key, cert.verdict.value, cert.method, cert.trials, time.perf_counter() - t0, d)


def all_passed(items: list[Item]) -> bool:
    return bool(items) and all(it.passed for it in items)


def generators(points: PointSet) -> list[Polynomial]:
    return [gen(x, y) for x, y in itertools.permutations(points, 2)]


def _gen_pairs(points: PointSet) -> list[tuple[Point, Point]]:
    return list(itertools.permutations(points, 2))


# -- circle combinatorics ----------------------------------------------------------


def linking_axioms(r: int = 6) -> list[Item]:
    """Antisymmetry, the cocycle identity and basepoint independence, exhaustively."""
    pts = list(PointSet.standard(r))
    t0 = time.perf_counter()
    anti = cocycle = base = 0
    bad = []
    quads = list(itertools.product(pts, repeat=4))
    for a, b, c, d in quads:
        if linking_value(a, b, c, d) != -linking_value(c, d, a, b):
            bad.append(("antisymmetry", a, b, c, d))
        anti += 1
        # cocycle in the second pair: J(ab,cd) + J(ab,de) + J(ab,ec) = 0
    for a, b, c, d, e in itertools.product(pts, repeat=5):
        if linking_value(a, b, c, d) + linking_value(a, b, d, e) + linking_value(a, b, e, c):
            bad.append(("cocycle", a, b, c, d, e))
        cocycle += 1
    for shift in range(r):
        sigma = {q: (k - shift) % r for k, q in enumerate(pts)}
        for a, b, c, d in quads:
            if linking_from_positions(sigma[a], sigma[b], sigma[c], sigma[d]) != linking_value(a, b, c, d):
                bad.append(("basepoint", shift, a, b, c, d))
            base += 1
    elapsed = time.perf_counter() - t0
    detail = {"antisymmetry": anti, "cocycle": cocycle, "basepoint": base}
    if bad:
        detail["first_failure"] = repr(bad[0])
    return [Item(f"r={r}", "Pass" if not bad else "Fail", "exhaustive", 0, elapsed, detail)]


# -- brackets on Z(P) --------------------------------------------------------------


def jacobi(r: int, p) -> list[Item]:
    """Jacobi identity on all unordered generator triples, exactly in Z(P)."""
    gens = generators(PointSet.standard(r))
    items = []
    for f, g, h in itertools.combinations_with_replacement(range(len(gens)), 3):
        f, g, h = gens[f], gens[g], gens[h]
        t0 = time.perf_counter()
        total = (
            bracket_poly(bracket_poly(f, g, p), h, p)
            + bracket_poly(bracket_poly(g, h, p), f, p)
            + bracket_poly(bracket_poly(h, f, p), g, p)
        )
        items.append(_exact(f"{_gname(f)},{_gname(g)},{_gname(h)}", total, t0))
    return items


def _gname(g: Polynomial) -> str:
    (m, _), = g.terms.items()
    return str(m[0][0])


def random_poly(points: PointSet, rng: random.Random, terms: int = 3, degree: int = 2) -> Polynomial:
    pairs = _gen_pairs(points)
    out = Polynomial.const(0)
    for _ in range(terms):
        t = Polynomial.const(rng.randint(-4, 4) or 1)
        for _ in range(rng.randint(0, degree)):
            t = t * gen(*rng.choice(pairs))
        out = out + t
    return out


def decomposition(r: int, p, samples: int = 100, seed: int = 0) -> list[Item]:
    """{f,g}_{a,b} = a {f,g}_{1,0} + b {f,g}_{0,1} on random pairs."""
    p = _params(p)
    P = PointSet.standard(r)
    rng = random.Random(seed)
    items = []
    for k in range(samples):
        f, g = random_poly(P, rng), random_poly(P, rng)
        t0 = time.perf_counter()
        diff = bracket_poly(f, g, p) - bracket_poly(f, g, SWAP).scale(p.alpha) - bracket_poly(f, g, SCALE).scale(p.beta)
        items.append(_exact(f"sample{k}", diff, t0))
    return items


def _valid_cross_fractions(P: PointSet):
    for x, y, z, t in itertools.product(P, repeat=4):
        if x != t and y != z and x != z and y != t:
            yield (x, y, z, t)


def cross_fraction_vanishing(r: int = 5) -> list[Item]:
    """{ab, cf}_{0,1} = 0 for every generator and every valid cross fraction."""
    P = PointSet.standard(r)
    items = []
    quads = list(_valid_cross_fractions(P))
    for a, b in _gen_pairs(P):
        t0 = time.perf_counter()
        bad = []
        for q in quads:
            if not bracket(gen(a, b), cross_fraction(*q), SCALE).num.is_zero():
                bad.append(q)
        detail = {"cross_fractions": len(quads)}
        if bad:
            detail["first_failure"] = repr(bad[0])
        items.append(Item(f"{a.label}.{b.label}", "NonZero" if bad else "ProvedZero", "exact", 0, time.perf_counter() - t0, detail))
    return items


def cross_fraction_brackets(r: int, p, samples: int = 50, seed: int = 0) -> list[Item]:
    """{mu, nu}_{a,b} = a {mu, nu}_{1,0} for random cross fractions mu, nu."""
    p = _params(p)
    P = PointSet.standard(r)
    quads = list(_valid_cross_fractions(P))
    rng = random.Random(seed)
    items = []
    for k in range(samples):
        q1, q2 = rng.choice(quads), rng.choice(quads)
        mu, nu = cross_fraction(*q1), cross_fraction(*q2)
        t0 = time.perf_counter()
        lhs = bracket(mu, nu, p)
        rhs = bracket(mu, nu, SWAP)
        # same denominators by construction, so compare numerators
        diff = lhs.num - rhs.num.scale(p.alpha) if lhs.den == rhs.den else (lhs - rhs * Polynomial.const(p.alpha)).num
        items.append(_exact(f"cf{q1}|cf{q2}", diff, t0))
    return items


def _determinants(P: PointSet, m: int):
    pts = list(P)
    for xs in itertools.combinations(pts, m):
        for ys in itertools.combinations(pts, m):
            yield xs, ys


def scaling_lemma(r: int = 6, max_m: int = 3) -> list[Item]:
    """{ab, Delta}_{0,1} = K ab Delta exactly, K the sum of the row-column linking numbers."""
    from .bracket import compute_K

    P = PointSet.standard(r)
    items = []
    for a, b in _gen_pairs(P):
        t0 = time.perf_counter()
        count, bad = 0, None
        for m in range(1, max_m + 1):
            for xs, ys in _determinants(P, m):
                D = determinant(xs, ys)
                if D.is_zero():
                    continue
                K = compute_K(a, b, xs, ys)
                diff = bracket_poly(gen(a, b), D, SCALE) - (gen(a, b) * D).scale(K)
                count += 1
                if not diff.is_zero() and bad is None:
                    bad = (xs, ys)
        detail = {"determinants": count}
        if bad:
            detail["first_failure"] = repr(bad)
        items.append(Item(f"{a.label}.{b.label}", "NonZero" if bad else "ProvedZero", "exact", 0, time.perf_counter() - t0, detail))
    return items


# -- the rank-n quotient -------------------------------------------------------------


def poisson_ideal(ctx: RankContext, p) -> list[Item]:
    """{g, M} lies in R_n(P) for every generator g and every (n+1)-minor M."""
    P = ctx.points
    minors = [
        (rows, cols) for rows in itertools.combinations(P, ctx.n + 1) for cols in itertools.combinations(P, ctx.n + 1)
    ]
    items = []
    for rows, cols in minors:
        M = determinant(rows, cols)
        for x, y in _gen_pairs(P):
            t0 = time.perf_counter()
            cert = is_zero_rank_n(bracket_poly(gen(x, y), M, p), ctx)
            key = f"{x.label}.{y.label}|det([{','.join(q.label for q in rows)}];[{','.join(q.label for q in cols)}])"
            items.append(_from_cert(key, cert, t0))
    return items


def boundary_lemma(ctx: RankContext, ranges: str = "closed") -> list[Item]:
    """The Leibniz bracket {ab, Delta} against both one-sided formulas, Delta of size n."""
    P = ctx.points
    items = []
    for a, b in _gen_pairs(P):
        for X, Y in _determinants(P, ctx.n):
            xs, ys = boundary_order(a, b, X), boundary_order(a, b, Y)
            lhs = bracket_poly(gen(a, b), determinant(xs, ys))
            key = f"{a.label}.{b.label}|det([{','.join(q.label for q in xs)}];[{','.join(q.label for q in ys)}])"
            for side in ("right", "left"):
                t0 = time.perf_counter()
                diff = bracket_det_boundary(a, b, xs, ys, side, ranges=ranges) - lhs
                cert = is_zero_rank_n(diff, ctx, use_reducer=False)
                items.append(_from_cert(f"{key}|{side}", cert, t0, exact_in_free_algebra=diff.is_zero()))
    return items


def cofactor_lemma(ctx: RankContext | None, r: int, m: int, p=SWAP) -> list[Item]:
    """Cofactor expansion of {Delta, B} against the Leibniz bracket, B over all generators.

    Without a rank context the comparison is exact in Z(P); with one it goes
    through the layered zero test of Z_n(P).
    """
    P = ctx.points if ctx is not None else PointSet.standard(r)
    items = []
    for xs, ys in _determinants(P, m):
        D = determinant(xs, ys)
        if D.is_zero():
            continue
        for x, y in _gen_pairs(P):
            B = gen(x, y)
            t0 = time.perf_counter()
            diff = bracket_cofactor(xs, ys, B, ctx, p) - bracket_poly(D, B, p)
            key = f"det([{','.join(q.label for q in xs)}];[{','.join(q.label for q in ys)}])|{x.label}.{y.label}"
            if ctx is None:
                items.append(_exact(key, diff, t0))
            else:
                items.append(_from_cert(key, is_zero_rank_n(diff, ctx), t0))
    return items


def det_ratio_independence(ctx: RankContext, samples: int = 50) -> list[Item]:
    """Two right-tuple realizations of the same E(left | t, y) are equal in Q_n(P)."""
    P = list(ctx.points)
    n = ctx.n
    rng = random.Random(f"det-ratio|{ctx.seed}")
    items = []
    attempts = 0
    while len(items) < samples:
        attempts += 1
        if attempts > 50 * samples:
            raise PreconditionError("could not draw enough valid determinant-ratio instances")
        pool = rng.sample(P, n)
        left, y = tuple(sorted(pool[:-1])), pool[-1]
        t = rng.choice([q for q in P if q != y])
        other = rng.choice(P)
        candidates = list(P) + list(gap_points(other, n, prefix="w"))
        right2 = tuple(sorted(rng.sample(candidates, n)))
        try:
            e1 = det_ratio(left, t, y, ctx)
            e2 = det_ratio(left, t, y, ctx, right=right2)
        except PreconditionError:
            continue
        if e1.right == e2.right:
            continue
        t0 = time.perf_counter()
        cert = frac_equal(e1.realized, e2.realized, ctx)
        key = f"{e1}|{','.join(q.label for q in e1.right)}|{','.join(q.label for q in e2.right)}"
        items.append(_from_cert(key, cert, t0))
    return items


# -- Grassmannian ---------------------------------------------------------------------


def lemma01(S: SchubertIndex, ctx: RankContext, method: str = "pointwise") -> list[Item]:
    """{E, E'}_{0,1} = J E E' for the images of every coordinate pair."""
    tm = ThetaMap(S, ctx)
    items = []
    for c, cp in coordinate_pairs(S, ordered=True):
        t0 = time.perf_counter()
        items.append(_from_cert(f"{c},{cp}", verify_lemma_01(c, cp, tm, method), t0))
    return items


def main_theorem(S: SchubertIndex, p, ctx: RankContext, method: str = "pointwise", ordered: bool = False) -> list[Item]:
    """Bracket of images equals the image of the quadratic coordinate bracket, pair by pair."""
    tm = ThetaMap(S, ctx)
    items = []
    for c, cp in coordinate_pairs(S, ordered):
        t0 = time.perf_counter()
        items.append(_from_cert(f"{c},{cp}", verify_theta_pair(c, cp, p, tm, method), t0))
    return items


def injectivity(S: SchubertIndex, ctx: RankContext, degree: int = 2, samples: int = 100) -> list[Item]:
    t0 = time.perf_counter()
    rep = injectivity_spotcheck(S, ctx, degree, samples, seed=ctx.seed)
    items = []
    for k, (e, cert) in enumerate(zip(rep.samples, rep.certificates)):
        # here a NonZero image is the success case
        verdict = "Pass" if cert.verdict is Verdict.NON_ZERO else "Fail"
        items.append(Item(f"sample{k}", verdict, cert.method, cert.trials, 0.0, {"expr": str(e), "image": cert.verdict.value}))
    if items:
        items[0].elapsed = time.perf_counter() - t0
    return items


# -- networks ------------------------------------------------------------------------


def network_jacobi(N: PlanarNetwork, p) -> Item:
    """Jacobi identity for the vertex bracket on all triples of network variables."""
    xs = [var(v) for v in N.variables()]
    t0 = time.perf_counter()
    bad = None
    for f, g, h in itertools.combinations(xs, 3):
        total = (
            network_bracket(network_bracket(f, g, N, p), h, N, p)
            + network_bracket(network_bracket(g, h, N, p), f, N, p)
            + network_bracket(network_bracket(h, f, N, p), g, N, p)
        )
        if not total.is_zero():
            bad = (str(f), str(g), str(h))
            break
    detail = {"first_failure": repr(bad)} if bad else {}
    return Item("jacobi", "NonZero" if bad else "ProvedZero", "exact", 0, time.perf_counter() - t0, detail)


def network_checks(N: PlanarNetwork, p) -> list[Item]:
    """Measurement vs path enumeration, Jacobi, and agreement with the coordinate formula."""
    items = []
    t0 = time.perf_counter()
    same = boundary_measurement(N) == measurement_by_enumeration(N)
    items.append(Item("measurement", "Pass" if same else "Fail", "exact", 0, time.perf_counter() - t0))
    items.append(network_jacobi(N, p))
    t0 = time.perf_counter()
    rep = verify_network_vs_formula(N, p)
    elapsed = time.perf_counter() - t0
    matching = [list(map(str, q)) for q in rep.matching_params]
    for res in rep.results:
        c, cp = res.pair
        detail = {} if res.match else {"network": str(res.induced), "formula": str(res.formula)}
        items.append(Item(f"{c},{cp}", "ProvedZero" if res.match else "NonZero", "exact", 0, elapsed / len(rep.results), detail))
    items.append(
        Item(
            "formula-params",
            "Pass" if rep.passed else "Fail",
            "exact",
            detail={"formula_params_matching_network": matching},
        )
    )
    return items
