import itertools

import pytest

from rankswap.errors import InvalidInput, ParseError
from rankswap.grassmannian import CoordSymbol, formula_bracket
from rankswap.networks import (
    GR24_TEXT,
    NetworkVar,
    boundary_measurement,
    enumerate_paths,
    fixture,
    measurement_by_enumeration,
    network_bracket,
    network_coordinates,
    parse_network,
    render_network,
    substitute,
    validate_network,
    vertex_bracket_table,
    verify_network_vs_formula,
)
from rankswap.ring import Polynomial, var

GR24 = fixture("gr24")
GR12 = fixture("gr12")


def x(v, e):
    return var(NetworkVar(v, e))


def test_single_edge_is_valid():
    assert validate_network(GR12) == []
    assert validate_network(GR24) == []


def test_white_vertex_with_two_incoming_edges():
    text = GR24_TEXT.replace("edge e3 w1 b1", "edge e3 b1 w1")
    errs = validate_network(parse_network(text))
    assert any("w1" in e and "white" in e for e in errs)


def test_two_cycle_is_rejected():
    text = """\
vertex v1 boundary 1
vertex v2 boundary 2
vertex v3 boundary 3
vertex w1 white
vertex b1 black
edge e1 v1 w1
edge e2 w1 b1
edge e3 b1 w1
edge e4 w1 v2
edge e5 b1 v3
order w1 e1 e4 e2 e3
order b1 e2 e3 e5
sources 1
"""
    errs = validate_network(parse_network(text))
    assert any("cycle" in e for e in errs)
    with pytest.raises(InvalidInput):
        boundary_measurement(parse_network(text))


def test_missing_order_is_reported():
    text = GR24_TEXT.replace("order b1 e5 e4 e3\n", "")
    assert validate_network(parse_network(text)) == ["vertex b1: missing clockwise edge order"]


def test_text_round_trip_is_bit_exact():
    for N in (GR12, GR24):
        text = render_network(N)
        assert parse_network(text) == N
        assert render_network(parse_network(text)) == text
    assert render_network(GR24) == GR24_TEXT


def test_comments_and_bad_records():
    N = parse_network("# a comment\n\n" + render_network(GR12).replace("\n", "  # trailing\n", 1))
    assert N == GR12
    with pytest.raises(ParseError):
        parse_network("vertex v1 grey\nsources 1\n")
    with pytest.raises(ParseError):
        parse_network("vertex v1 boundary 1\n")


def test_single_edge_measurement():
    A = boundary_measurement(GR12)
    assert A == [[Polynomial.const(1), x("v1", "e1") * x("v2", "e1")]]


def test_gr24_measurement():
    A = boundary_measurement(GR24)
    w = lambda e, a, b: x(a, e) * x(b, e)
    assert A[0][3] == w("e1", "v1", "w1") * w("e2", "w1", "v4")
    assert A[1][3].is_zero()
    assert A[0][2] == w("e1", "v1", "w1") * w("e3", "w1", "b1") * w("e5", "b1", "v3")
    assert [A[0][0], A[0][1], A[1][0], A[1][1]] == [1, 0, 0, 1]
    assert A == measurement_by_enumeration(GR24)
    assert enumerate_paths(GR24, 2, 4) == []


def test_bracket_of_a_variable_with_itself():
    for v in GR24.variables():
        assert network_bracket(var(v), var(v), GR24, (2, 5)).is_zero()


def test_variables_at_distinct_vertices_commute():
    for p, q in itertools.combinations(GR24.variables(), 2):
        if p.vertex != q.vertex:
            assert network_bracket(var(p), var(q), GR24, (2, 5)).is_zero()


def test_vertex_rule():
    t = vertex_bracket_table(GR24, (2, 5))
    # white w1, clockwise from the incoming edge: e1, e2, e3
    assert t[(NetworkVar("w1", "e2"), NetworkVar("w1", "e3"))] == 2
    # black b1, clockwise from the outgoing edge: e5, e4, e3
    assert t[(NetworkVar("b1", "e4"), NetworkVar("b1", "e3"))] == 5
    assert len(t) == 4


def test_network_jacobi():
    xs = [var(v) for v in GR24.variables()]
    p = (2, 5)
    for f, g, h in itertools.combinations(xs, 3):
        total = (
            network_bracket(network_bracket(f, g, GR24, p), h, GR24, p)
            + network_bracket(network_bracket(g, h, GR24, p), f, GR24, p)
            + network_bracket(network_bracket(h, f, GR24, p), g, GR24, p)
        )
        assert total.is_zero()


def test_single_edge_formula():
    rep = verify_network_vs_formula(GR12, (1, 0))
    assert rep.passed and len(rep.results) == 1


def test_coordinates_are_plucker_ratios():
    m = network_coordinates(GR24)
    A = boundary_measurement(GR24)
    # I(1 -> 3) = {2, 3}: the identity column for row 1 moves, giving a sign
    assert m[CoordSymbol(1, 3)] == -A[0][2]
    assert m[CoordSymbol(2, 3)] == A[1][2]


@pytest.mark.parametrize("p", [(1, 0), (0, 1), (1, 1), (2, 5)])
def test_gr24_vertex_rule_matches_formula_with_negated_swapped_parameters(p):
    # observed: the clockwise vertex rule reproduces the quadratic formula
    # exactly when the formula's parameters are replaced by (-beta, -alpha)
    rep = verify_network_vs_formula(GR24, p)
    a, b = p
    assert (-b, -a) in rep.matching_params
    m = network_coordinates(GR24)
    for res in rep.results:
        c, cp = res.pair
        assert res.induced == substitute(formula_bracket(c, cp, (-b, -a)), m)


def test_rescaling_one_white_vertex_keeps_verdicts():
    lam = 7
    scale = {v: var(v).scale(lam) if v.vertex == "w1" else var(v) for v in GR24.variables()}
    m = {c: substitute(e, scale) for c, e in network_coordinates(GR24).items()}
    base = verify_network_vs_formula(GR24, (1, 1))
    for res in base.results:
        c, cp = res.pair
        lhs = network_bracket(m[c], m[cp], GR24, (1, 1))
        rhs = substitute(formula_bracket(c, cp, (1, 1)), m)
        assert (lhs == rhs) == res.match


def test_unknown_fixture():
    with pytest.raises(InvalidInput):
        fixture("gr36")
