"""Perfect planar networks: validation, boundary measurement, and the vertex Poisson bracket.

Only acyclic networks are accepted.  The planar embedding is described by the
clockwise order of edges at every inner vertex and is trusted as given.

Network file format (one record per line, ``#`` starts a comment)::

    vertex <id> boundary <k>
    vertex <id> white|black
    edge <id> <from> <to>
    order <vertex id> <edge id> <edge id> <edge id>
    sources <k> <k> ...
"""

from __future__ import annotations

import graphlib
import itertools
from dataclasses import dataclass, field
from typing import NamedTuple

from .bracket import _params
from .errors import InvalidInput, ParseError
from .grassmannian import SchubertIndex, formula_bracket
from .ring import Polynomial, mono_from_counts, var


class NetworkVar(NamedTuple):
    """The variable x_p attached to the incidence p = (vertex, edge)."""

    vertex: str
    edge: str

    def __str__(self) -> str:
        return f"x[{self.vertex},{self.edge}]"


@dataclass(frozen=True)
class PlanarNetwork:
    vertices: tuple  # ((id, kind, k_or_None), ...); kind in {"boundary", "white", "black"}
    edges: tuple  # ((id, from, to), ...)
    orders: tuple  # ((vertex id, (edge ids clockwise)), ...)
    sources: tuple  # boundary indices with one outgoing edge, increasing

    # ---- lookups
    @property
    def r(self) -> int:
        return sum(1 for _, kind, _ in self.vertices if kind == "boundary")

    @property
    def n(self) -> int:
        return len(self.sources)

    def kind(self, v: str) -> str:
        return self._vmap()[v][0]

    def _vmap(self) -> dict:
        return {vid: (kind, k) for vid, kind, k in self.vertices}

    def boundary_vertex(self, k: int) -> str:
        for vid, kind, kk in self.vertices:
            if kind == "boundary" and kk == k:
                return vid
        raise InvalidInput(f"no boundary vertex with index {k}")

    def edge_map(self) -> dict:
        return {eid: (a, b) for eid, a, b in self.edges}

    def order_map(self) -> dict:
        return dict(self.orders)

    def variables(self) -> list[NetworkVar]:
        out = []
        for eid, a, b in self.edges:
            out.append(NetworkVar(a, eid))
            out.append(NetworkVar(b, eid))
        return out

    def edge_weight(self, eid: str) -> Polynomial:
        a, b = self.edge_map()[eid]
        return var(NetworkVar(a, eid)) * var(NetworkVar(b, eid))

    def schubert_index(self) -> SchubertIndex:
        return SchubertIndex(self.r, self.sources)


# -- text format -------------------------------------------------------------------


def render_network(N: PlanarNetwork) -> str:
    lines = []
    for vid, kind, k in N.vertices:
        lines.append(f"vertex {vid} boundary {k}" if kind == "boundary" else f"vertex {vid} {kind}")
    for eid, a, b in N.edges:
        lines.append(f"edge {eid} {a} {b}")
    for vid, order in N.orders:
        lines.append(f"order {vid} {' '.join(order)}")
    lines.append("sources " + " ".join(str(k) for k in N.sources))
    return "\n".join(lines) + "\n"


def parse_network(text: str) -> PlanarNetwork:
    vertices, edges, orders, sources = [], [], [], None
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        tok = line.split()
        head = tok[0]
        try:
            if head == "vertex":
                if len(tok) == 4 and tok[2] == "boundary":
                    vertices.append((tok[1], "boundary", int(tok[3])))
                elif len(tok) == 3 and tok[2] in ("white", "black"):
                    vertices.append((tok[1], tok[2], None))
                else:
                    raise ValueError
            elif head == "edge" and len(tok) == 4:
                edges.append((tok[1], tok[2], tok[3]))
            elif head == "order" and len(tok) >= 2:
                orders.append((tok[1], tuple(tok[2:])))
            elif head == "sources":
                sources = tuple(int(t) for t in tok[1:])
            else:
                raise ValueError
        except ValueError:
            raise ParseError(f"bad network record on line {lineno}: {raw!r}") from None
    if sources is None:
        raise ParseError("network file has no 'sources' line")
    return PlanarNetwork(tuple(vertices), tuple(edges), tuple(orders), tuple(sources))


# -- validation ----------------------------------------------------------------------


def validate_network(N: PlanarNetwork) -> list[str]:
    """All violated invariants, each naming the offending vertex or edge; empty when valid."""
    errs = []
    vmap = {}
    for vid, kind, k in N.vertices:
        if vid in vmap:
            errs.append(f"vertex {vid}: declared twice")
        vmap[vid] = (kind, k)
    ks = sorted(k for kind, k in vmap.values() if kind == "boundary")
    if ks != list(range(1, len(ks) + 1)):
        errs.append(f"boundary indices must be 1..r exactly once, got {ks}")
    emap = {}
    for eid, a, b in N.edges:
        if eid in emap:
            errs.append(f"edge {eid}: declared twice")
        for end in (a, b):
            if end not in vmap:
                errs.append(f"edge {eid}: unknown vertex {end}")
        if a == b:
            errs.append(f"edge {eid}: loop at {a}")
        emap[eid] = (a, b)
    inc = {v: [] for v in vmap}
    out = {v: [] for v in vmap}
    for eid, (a, b) in emap.items():
        if a in out:
            out[a].append(eid)
        if b in inc:
            inc[b].append(eid)
    srcs = set(N.sources)
    if list(N.sources) != sorted(srcs):
        errs.append(f"sources must be strictly increasing, got {list(N.sources)}")
    orders = {}
    for vid, order in N.orders:
        if vid in orders:
            errs.append(f"vertex {vid}: edge order given twice")
        orders[vid] = order
    for vid, (kind, k) in vmap.items():
        nin, nout = len(inc[vid]), len(out[vid])
        if kind == "boundary":
            if k in srcs and (nout, nin) != (1, 0):
                errs.append(f"vertex {vid}: source boundary vertex needs 1 outgoing, 0 incoming edges")
            if k not in srcs and (nin, nout) != (1, 0):
                errs.append(f"vertex {vid}: sink boundary vertex needs 1 incoming, 0 outgoing edges")
        elif kind == "white":
            if (nin, nout) != (1, 2):
                errs.append(f"vertex {vid}: white vertex needs 1 incoming and 2 outgoing edges")
        elif kind == "black":
            if (nin, nout) != (2, 1):
                errs.append(f"vertex {vid}: black vertex needs 2 incoming and 1 outgoing edges")
        else:
            errs.append(f"vertex {vid}: unknown kind {kind!r}")
        if kind in ("white", "black"):
            order = orders.get(vid)
            if order is None:
                errs.append(f"vertex {vid}: missing clockwise edge order")
            elif sorted(order) != sorted(inc[vid] + out[vid]):
                errs.append(f"vertex {vid}: edge order {list(order)} does not list its incident edges")
    for vid in orders:
        if vid not in vmap or vmap[vid][0] == "boundary":
            errs.append(f"vertex {vid}: edge order only applies to inner vertices")
    for k in srcs:
        if k not in ks:
            errs.append(f"source {k} is not a boundary index")
    ts = graphlib.TopologicalSorter({v: set() for v in vmap})
    for eid, (a, b) in emap.items():
        if a in vmap and b in vmap:
            ts.add(b, a)
    try:
        ts.prepare()
    except graphlib.CycleError as exc:
        errs.append(f"directed cycle through {', '.join(map(str, exc.args[1]))}")
    return errs


def check_network(N: PlanarNetwork) -> None:
    errs = validate_network(N)
    if errs:
        raise InvalidInput("invalid network: " + "; ".join(errs))


def _topological(N: PlanarNetwork) -> list[str]:
    ts = graphlib.TopologicalSorter({vid: set() for vid, _, _ in N.vertices})
    for _, a, b in N.edges:
        ts.add(b, a)
    return list(ts.static_order())


# -- boundary measurement ---------------------------------------------------------


def boundary_measurement(N: PlanarNetwork) -> list[list[Polynomial]]:
    """The n x r matrix: identity on source columns, path-weight sums elsewhere."""
    check_network(N)
    order = _topological(N)
    into: dict = {}
    for eid, a, b in N.edges:
        into.setdefault(b, []).append((eid, a))
    weights = {eid: N.edge_weight(eid) for eid, _, _ in N.edges}
    rows = []
    for i in N.sources:
        src = N.boundary_vertex(i)
        paths = {src: Polynomial.const(1)}
        for v in order:
            if v == src:
                continue
            total = Polynomial.const(0)
            for eid, a in into.get(v, ()):
                if a in paths:
                    total = total + paths[a] * weights[eid]
            if not total.is_zero():
                paths[v] = total
        row = []
        for j in range(1, N.r + 1):
            if j in N.sources:
                row.append(Polynomial.const(1 if j == i else 0))
            else:
                row.append(paths.get(N.boundary_vertex(j), Polynomial.const(0)))
        rows.append(row)
    return rows


def enumerate_paths(N: PlanarNetwork, i: int, j: int) -> list[tuple]:
    """All directed paths from boundary vertex i to boundary vertex j, as edge-id tuples."""
    check_network(N)
    out_edges: dict = {}
    for eid, a, b in N.edges:
        out_edges.setdefault(a, []).append((eid, b))
    target = N.boundary_vertex(j)
    found = []

    def walk(v, path):
        if v == target:
            found.append(tuple(path))
            return
        for eid, b in out_edges.get(v, ()):
            walk(b, path + [eid])

    walk(N.boundary_vertex(i), [])
    return found


def measurement_by_enumeration(N: PlanarNetwork) -> list[list[Polynomial]]:
    """Boundary measurement recomputed by listing every path; slow but independent."""
    rows = []
    for i in N.sources:
        row = []
        for j in range(1, N.r + 1):
            if j in N.sources:
                row.append(Polynomial.const(1 if i == j else 0))
                continue
            total = Polynomial.const(0)
            for path in enumerate_paths(N, i, j):
                w = Polynomial.const(1)
                for eid in path:
                    w = w * N.edge_weight(eid)
                total = total + w
            row.append(total)
        rows.append(row)
    return rows


def _poly_det(M: list[list[Polynomial]]) -> Polynomial:
    n = len(M)
    total = Polynomial.const(0)
    for perm in itertools.permutations(range(n)):
        inv = sum(perm[a] > perm[b] for a in range(n) for b in range(a + 1, n))
        term = Polynomial.const(-1 if inv % 2 else 1)
        for i, j in enumerate(perm):
            term = term * M[i][j]
            if term.is_zero():
                break
        total = total + term
    return total


def network_coordinates(N: PlanarNetwork) -> dict:
    """m_ij = Delta_{I(i->j)} / Delta_I of the measured matrix (Delta_I = 1 here)."""
    A = boundary_measurement(N)
    S = N.schubert_index()
    out = {}
    for c in S.coords():
        cols = S.replace(c.i, c.j)
        out[c] = _poly_det([[row[k - 1] for k in cols] for row in A])
    return out


# -- the vertex bracket ------------------------------------------------------------


def vertex_bracket_table(N: PlanarNetwork, p) -> dict:
    """Nonzero log-canonical coefficients: ``{(x_q, x_r): c}`` meaning {x_q, x_r} = c x_q x_r."""
    p = _params(p)
    emap = N.edge_map()
    table = {}
    for vid, order in N.orders:
        kind = N.kind(vid)
        if kind == "white":
            start = next(e for e in order if emap[e][1] == vid)  # the incoming edge
            coef = p.alpha
        elif kind == "black":
            start = next(e for e in order if emap[e][0] == vid)  # the outgoing edge
            coef = p.beta
        else:
            continue
        k = order.index(start)
        _, q, r = order[k:] + order[:k]
        xq, xr = NetworkVar(vid, q), NetworkVar(vid, r)
        if coef:
            table[(xq, xr)] = coef
            table[(xr, xq)] = -coef
    return table


def network_bracket(f: Polynomial, g: Polynomial, N: PlanarNetwork, p) -> Polynomial:
    """{f, g}_N = sum over variable pairs of df/dx_p dg/dx_q {x_p, x_q}_N."""
    table = vertex_bracket_table(N, p)
    if not table or f.is_zero() or g.is_zero():
        return Polynomial.const(0)
    f._check(g)
    out: dict = {}
    for m1, c1 in f.terms.items():
        for m2, c2 in g.terms.items():
            w = 0
            for v, e1 in m1:
                for u, e2 in m2:
                    k = table.get((v, u))
                    if k:
                        w += e1 * e2 * k
            if w:
                d = dict(m1)
                for u, e in m2:
                    d[u] = d.get(u, 0) + e
                m = mono_from_counts(d)
                out[m] = out.get(m, 0) + c1 * c2 * w
    return Polynomial({m: c for m, c in out.items() if c})


def substitute(e: Polynomial, values: dict) -> Polynomial:
    total = Polynomial.const(0)
    for m, coef in e.terms.items():
        term = Polynomial.const(coef)
        for sym, k in m:
            term = term * values[sym] ** k
        total = total + term
    return total


@dataclass
class NetworkPairResult:
    pair: tuple
    match: bool
    induced: Polynomial
    formula: Polynomial


@dataclass
class NetworkReport:
    params: tuple
    results: list = field(default_factory=list)
    matching_params: list = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(r.match for r in self.results)


def verify_network_vs_formula(N: PlanarNetwork, p, ordered: bool = True) -> NetworkReport:
    """Compare the bracket induced on measured coordinates with the quadratic formula.

    Besides per-pair verdicts, records which of the parameter substitutions
    (a, b), (b, a), (-a, -b), (-b, -a) in the formula reproduce every induced
    bracket, so a convention mismatch is visible rather than absorbed.
    """
    p = _params(p)
    coords = network_coordinates(N)
    S = N.schubert_index()
    cs = S.coords()
    pairs = list(itertools.product(cs, cs)) if ordered else list(itertools.combinations_with_replacement(cs, 2))
    report = NetworkReport((p.alpha, p.beta))
    induced = {}
    for c, cp in pairs:
        lhs = network_bracket(coords[c], coords[cp], N, p)
        rhs = substitute(formula_bracket(c, cp, p), coords)
        induced[(c, cp)] = lhs
        report.results.append(NetworkPairResult((c, cp), lhs == rhs, lhs, rhs))
    a, b = p.alpha, p.beta
    for cand in dict.fromkeys(((a, b), (b, a), (-a, -b), (-b, -a))):
        if all(induced[k] == substitute(formula_bracket(*k, cand), coords) for k in pairs):
            report.matching_params.append(cand)
    return report


# -- fixtures -----------------------------------------------------------------------

GR12_TEXT = """\
vertex v1 boundary 1
vertex v2 boundary 2
edge e1 v1 v2
sources 1
"""

GR24_TEXT = """\
vertex v1 boundary 1
vertex v2 boundary 2
vertex v3 boundary 3
vertex v4 boundary 4
vertex w1 white
vertex b1 black
edge e1 v1 w1
edge e2 w1 v4
edge e3 w1 b1
edge e4 v2 b1
edge e5 b1 v3
order w1 e1 e2 e3
order b1 e5 e4 e3
sources 1 2
"""


def fixture(name: str) -> PlanarNetwork:
    texts = {"gr12": GR12_TEXT, "gr24": GR24_TEXT}
    try:
        return parse_network(texts[name])
    except KeyError:
        raise InvalidInput(f"unknown fixture {name!r}; choose from {sorted(texts)}") from None
