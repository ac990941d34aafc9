"""Rank-n swapping algebra: exact brackets, the rank-n quotient, and Grassmannian coordinates."""

from .bracket import SCALE, SWAP, BracketParams, bracket, bracket_fraction, bracket_poly, log_bracket
from .circle import HalfInt, linking_number, linking_value, parallel_number
from .errors import (
    IncompleteAssignment,
    InvalidInput,
    ParseError,
    PreconditionError,
    RankSwapError,
    ZeroDenominator,
)
from .fraction_field import FractionElement, cross_fraction, det_ratio, frac_equal
from .grassmannian import SchubertIndex, ThetaMap, formula_bracket, theta, verify_main_theorem, verify_theta_pair
from .networks import PlanarNetwork, boundary_measurement, network_bracket, verify_network_vs_formula
from .parser import parse_expr, render_expr
from .rank import RankContext, Verdict, ZeroCertificate, determinant, is_zero_rank_n, reduce
from .ring import PairGen, Point, PointSet, Polynomial, gen, render

__all__ = [
    "BracketParams", "SWAP", "SCALE", "bracket", "bracket_poly", "bracket_fraction", "log_bracket",
    "HalfInt", "linking_number", "linking_value", "parallel_number",
    "RankSwapError", "InvalidInput", "ParseError", "IncompleteAssignment", "PreconditionError",
    "ZeroDenominator",
    "FractionElement", "cross_fraction", "det_ratio", "frac_equal",
    "SchubertIndex", "ThetaMap", "formula_bracket", "theta", "verify_main_theorem", "verify_theta_pair",
    "PlanarNetwork", "boundary_measurement", "network_bracket", "verify_network_vs_formula",
    "parse_expr", "render_expr",
    "RankContext", "Verdict", "ZeroCertificate", "determinant", "is_zero_rank_n", "reduce",
    "PairGen", "Point", "PointSet", "Polynomial", "gen", "render",
]
