"""Recursive-descent parser for expressions in pair generators.

Grammar::

    expr   := term (('+' | '-') term)*
    term   := factor (('*' | '/') factor)*
    factor := '-' factor | atom ('^' nat)?
    atom   := integer | pair | det | E | cf | '(' expr ')'
    pair   := name '.' name
    det    := 'det' '(' '[' names ']' ';' '[' names ']' ')'
    E      := 'E' '(' '[' names? ']' ';' name ',' name ')'
    cf     := 'cf' '(' name ',' name ',' name ',' name ')'

The unary minus is not needed to write expressions but lets rendered
polynomials (which may start with ``-``) parse back.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction

from .errors import InvalidInput, ParseError
from .fraction_field import FractionElement, cross_fraction, det_ratio
from .rank import RankContext, determinant
from .ring import PointSet, Polynomial, gen


# -- AST ---------------------------------------------------------------------------


@dataclass(frozen=True)
class Num:
    value: int


@dataclass(frozen=True)
class Pair:
    left: str
    right: str


@dataclass(frozen=True)
class Det:
    rows: tuple
    cols: tuple


@dataclass(frozen=True)
class ECall:
    left: tuple
    t: str
    y: str


@dataclass(frozen=True)
class CF:
    args: tuple


@dataclass(frozen=True)
class Neg:
    operand: object


@dataclass(frozen=True)
class BinOp:
    op: str
    lhs: object
    rhs: object


@dataclass(frozen=True)
class Pow:
    base: object
    exp: int


# -- tokenizer ---------------------------------------------------------------------

_TOKEN = re.compile(r"\s*(?:(\d+)|([A-Za-z_][A-Za-z0-9_]*)|(.))")


def _tokenize(text: str) -> list[tuple[str, str, int]]:
    toks = []
    pos = 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if m.group(0).strip() == "":
            break
        start = m.start(m.lastindex)
        if m.group(1):
            toks.append(("num", m.group(1), start))
        elif m.group(2):
            toks.append(("name", m.group(2), start))
        else:
            ch = m.group(3)
            if ch not in "+-*/^().,;[]":
                raise ParseError(f"unexpected character {ch!r}", start)
            toks.append(("op", ch, start))
        pos = m.end()
    toks.append(("end", "", len(text)))
    return toks


class _Parser:
    def __init__(self, text: str, points: PointSet | None):
        self.toks = _tokenize(text)
        self.k = 0
        self.points = points

    @property
    def tok(self):
        return self.toks[self.k]

    def _advance(self):
        t = self.toks[self.k]
        self.k += 1
        return t

    def _accept(self, value: str) -> bool:
        if self.tok[0] == "op" and self.tok[1] == value:
            self.k += 1
            return True
        return False

    def _expect(self, value: str):
        if not self._accept(value):
            kind, val, pos = self.tok
            found = "end of input" if kind == "end" else repr(val)
            raise ParseError(f"expected {value!r}, found {found}", pos)

    def _name(self) -> str:
        kind, val, pos = self.tok
        if kind != "name":
            raise ParseError("expected a point name", pos)
        if self.points is not None and val not in {p.label for p in self.points}:
            raise ParseError(f"unknown point name {val!r}", pos)
        self.k += 1
        return val

    def _names(self, closer: str) -> tuple:
        out = []
        if self._accept(closer):
            return ()
        out.append(self._name())
        while self._accept(","):
            out.append(self._name())
        self._expect(closer)
        return tuple(out)

    def parse(self):
        node = self.expr()
        if self.tok[0] != "end":
            raise ParseError(f"unexpected {self.tok[1]!r}", self.tok[2])
        return node

    def expr(self):
        node = self.term()
        while self.tok[0] == "op" and self.tok[1] in "+-":
            op = self._advance()[1]
            node = BinOp(op, node, self.term())
        return node

    def term(self):
        node = self.factor()
        while self.tok[0] == "op" and self.tok[1] in "*/":
            op = self._advance()[1]
            node = BinOp(op, node, self.factor())
        return node

    def factor(self):
        if self._accept("-"):
            return Neg(self.factor())
        node = self.atom()
        if self._accept("^"):
            kind, val, pos = self.tok
            if kind != "num":
                raise ParseError("exponent must be a natural number", pos)
            self.k += 1
            node = Pow(node, int(val))
        return node

    def atom(self):
        kind, val, pos = self.tok
        if kind == "num":
            self.k += 1
            return Num(int(val))
        if kind == "op" and val == "(":
            self.k += 1
            node = self.expr()
            self._expect(")")
            return node
        if kind == "name":
            nxt = self.toks[self.k + 1]
            if val in ("det", "E", "cf") and nxt[:2] == ("op", "("):
                self.k += 2
                return getattr(self, "_call_" + val)()
            left = self._name()
            self._expect(".")
            return Pair(left, self._name())
        found = "end of input" if kind == "end" else repr(val)
        raise ParseError(f"unexpected {found}", pos)

    def _call_det(self):
        self._expect("[")
        rows = self._names("]")
        self._expect(";")
        self._expect("[")
        cols = self._names("]")
        self._expect(")")
        if not rows or len(rows) != len(cols):
            raise ParseError("det needs two nonempty lists of equal length", self.toks[self.k - 1][2])
        return Det(rows, cols)

    def _call_E(self):
        self._expect("[")
        left = self._names("]")
        self._expect(";")
        t = self._name()
        self._expect(",")
        y = self._name()
        self._expect(")")
        return ECall(left, t, y)

    def _call_cf(self):
        args = [self._name()]
        for _ in range(3):
            self._expect(",")
            args.append(self._name())
        self._expect(")")
        return CF(tuple(args))


def parse_expr(text: str, points: PointSet | None = None):
    """Parse ``text`` to an AST; with ``points`` given, names must resolve in it."""
    return _Parser(text, points).parse()


# -- rendering ---------------------------------------------------------------------

_PREC = {"+": 1, "-": 1, "*": 2, "/": 2}


def render_expr(node) -> str:
    return _render(node, 0)


def _render(node, ctx_prec: int) -> str:
    if isinstance(node, Num):
        return str(node.value)
    if isinstance(node, Pair):
        return f"{node.left}.{node.right}"
    if isinstance(node, Det):
        return f"det([{','.join(node.rows)}];[{','.join(node.cols)}])"
    if isinstance(node, ECall):
        return f"E([{','.join(node.left)}]; {node.t}, {node.y})"
    if isinstance(node, CF):
        return f"cf({','.join(node.args)})"
    if isinstance(node, Neg):
        s = "-" + _render(node.operand, 3)
        return f"({s})" if ctx_prec > 2 else s
    if isinstance(node, Pow):
        s = f"{_render(node.base, 4)}^{node.exp}"
        return f"({s})" if ctx_prec > 3 else s  # '^' does not chain
    if isinstance(node, BinOp):
        prec = _PREC[node.op]
        # left-associative: the right operand needs parentheses at equal precedence
        s = f"{_render(node.lhs, prec)} {node.op} {_render(node.rhs, prec + 1)}"
        return f"({s})" if prec < ctx_prec else s
    raise TypeError(f"not an expression node: {node!r}")


# -- evaluation --------------------------------------------------------------------


def _simplify(x):
    """Fractions with constant denominators become polynomials."""
    if isinstance(x, FractionElement):
        d = x.den.constant_value()
        if d is not None:
            return x.num.scale(Fraction(1) / d) if d != 1 else x.num
    return x


def to_value(node, points: PointSet, ctx: RankContext | None = None):
    """Polynomial or FractionElement denoted by ``node``; ``E(...)`` needs a rank context."""
    if isinstance(node, Num):
        return Polynomial.const(node.value)
    if isinstance(node, Pair):
        return gen(points[node.left], points[node.right])
    if isinstance(node, Det):
        return determinant([points[x] for x in node.rows], [points[y] for y in node.cols])
    if isinstance(node, ECall):
        if ctx is None:
            raise InvalidInput("E(...) needs a rank (--rank)")
        return det_ratio([points[x] for x in node.left], points[node.t], points[node.y], ctx).realized
    if isinstance(node, CF):
        return cross_fraction(*(points[x] for x in node.args))
    if isinstance(node, Neg):
        return -to_value(node.operand, points, ctx)
    if isinstance(node, Pow):
        return _simplify(to_value(node.base, points, ctx) ** node.exp)
    if isinstance(node, BinOp):
        a = to_value(node.lhs, points, ctx)
        b = to_value(node.rhs, points, ctx)
        if node.op == "+":
            res = a + b if type(a) is type(b) or isinstance(a, FractionElement) else b + a
        elif node.op == "-":
            res = a - b if type(a) is type(b) or isinstance(a, FractionElement) else (-b) + a
        elif node.op == "*":
            res = a * b if type(a) is type(b) or isinstance(a, FractionElement) else b * a
        else:
            res = FractionElement.of(a) / FractionElement.of(b)
        return _simplify(res)
    raise TypeError(f"not an expression node: {node!r}")


def evaluate_text(text: str, points: PointSet, ctx: RankContext | None = None):
    return to_value(parse_expr(text, points), points, ctx)
