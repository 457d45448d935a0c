"""Recursive-descent parser for polynomial expressions in x and y.

Grammar::

    expr   := term { ("+"|"-") term }
    term   := factor { "*" factor }
    factor := ["-"] base [ "^" nat ]
    base   := "x" | "y" | rat | "(" expr ")"
    rat    := nat [ "/" nat ]

A leading minus binds looser than ``^``: ``-x^2`` is ``-(x^2)``.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import List, Optional, Tuple, Union

from .bipoly import BiPoly
from .errors import DomainError

__all__ = [
    "PolySyntaxError",
    "Var",
    "Rat",
    "Neg",
    "Pow",
    "Mul",
    "Add",
    "PolyExpr",
    "parse_expr",
    "parse_poly",
    "render",
    "to_bipoly",
]


class PolySyntaxError(DomainError):
    def __init__(self, message: str, column: int):
        super().__init__(f"column {column}: {message}")
        self.column = column


@dataclass(frozen=True)
class Var:
    name: str


@dataclass(frozen=True)
class Rat:
    num: int
    den: Optional[int] = None

    @property
    def value(self) -> Fraction:
        return Fraction(self.num, self.den or 1)


@dataclass(frozen=True)
class Neg:
    operand: "Node"


@dataclass(frozen=True)
class Pow:
    base: "Node"
    exponent: int


@dataclass(frozen=True)
class Mul:
    factors: Tuple["Node", ...]


@dataclass(frozen=True)
class Add:
    terms: Tuple[Tuple[str, "Node"], ...]  # (sign, term); sign in {"+", "-"}


Node = Union[Var, Rat, Neg, Pow, Mul, Add]


@dataclass(frozen=True)
class _Token:
    kind: str
    text: str
    column: int


def _tokenize(text: str) -> List[_Token]:
    tokens = []
    i = 0
    while i < len(text):
        ch = text[i]
        if ch.isspace():
            i += 1
            continue
        if ch.isdigit():
            j = i
            while j < len(text) and text[j].isdigit():
                j += 1
            tokens.append(_Token("nat", text[i:j], i + 1))
            i = j
            continue
        if ch in "xy":
            tokens.append(_Token("var", ch, i + 1))
        elif ch in "+-*^/()":
            tokens.append(_Token(ch, ch, i + 1))
        else:
            raise PolySyntaxError(f"unexpected character {ch!r}", i + 1)
        i += 1
    tokens.append(_Token("eof", "", len(text) + 1))
    return tokens


class _Parser:
    def __init__(self, text: str):
        self.tokens = _tokenize(text)
        self.pos = 0

    @property
    def tok(self) -> _Token:
        return self.tokens[self.pos]

    def take(self, kind: str) -> _Token:
        tok = self.tok
        if tok.kind != kind:
            found = "end of input" if tok.kind == "eof" else repr(tok.text)
            raise PolySyntaxError(f"expected {kind!r}, found {found}", tok.column)
        self.pos += 1
        return tok

    def parse(self) -> Node:
        node = self.expr()
        if self.tok.kind != "eof":
            raise PolySyntaxError(f"unexpected {self.tok.text!r}", self.tok.column)
        return node

    def expr(self) -> Node:
        terms = [("+", self.term())]
        while self.tok.kind in ("+", "-"):
            sign = self.take(self.tok.kind).kind
            terms.append((sign, self.term()))
        if len(terms) == 1:
            return terms[0][1]
        return Add(tuple(terms))

    def term(self) -> Node:
        factors = [self.factor()]
        while self.tok.kind == "*":
            self.take("*")
            factors.append(self.factor())
        return factors[0] if len(factors) == 1 else Mul(tuple(factors))

    def factor(self) -> Node:
        negate = False
        if self.tok.kind == "-":
            self.take("-")
            negate = True
        node = self.base()
        if self.tok.kind == "^":
            self.take("^")
            if self.tok.kind != "nat":
                raise PolySyntaxError("exponent must be a nonnegative integer literal", self.tok.column)
            node = Pow(node, int(self.take("nat").text))
        return Neg(node) if negate else node

    def base(self) -> Node:
        tok = self.tok
        if tok.kind == "var":
            self.pos += 1
            return Var(tok.text)
        if tok.kind == "nat":
            self.pos += 1
            num = int(tok.text)
            if self.tok.kind == "/":
                self.take("/")
                den_tok = self.take("nat")
                den = int(den_tok.text)
                if den == 0:
                    raise PolySyntaxError("zero denominator", den_tok.column)
                return Rat(num, den)
            return Rat(num)
        if tok.kind == "(":
            self.take("(")
            node = self.expr()
            self.take(")")
            return node
        found = "end of input" if tok.kind == "eof" else repr(tok.text)
        raise PolySyntaxError(f"expected x, y, a number or '(', found {found}", tok.column)


def parse_expr(text: str) -> Node:
    return _Parser(text).parse()


def _render_base(node: Node) -> str:
    if isinstance(node, (Var, Rat)):
        return render(node)
    return f"({render(node)})"


def _render_factor(node: Node) -> str:
    if isinstance(node, (Var, Rat, Pow, Neg)):
        return render(node)
    return f"({render(node)})"


def render(node: Node) -> str:
    """Canonical text that parses back to the same tree."""
    if isinstance(node, Var):
        return node.name
    if isinstance(node, Rat):
        return str(node.num) if node.den is None else f"{node.num}/{node.den}"
    if isinstance(node, Pow):
        return f"{_render_base(node.base)}^{node.exponent}"
    if isinstance(node, Neg):
        inner = node.operand
        if isinstance(inner, Pow):
            return f"-{render(inner)}"
        return f"-{_render_base(inner)}"
    if isinstance(node, Mul):
        return "*".join(_render_factor(f) for f in node.factors)
    if isinstance(node, Add):
        parts = []
        for k, (sign, term) in enumerate(node.terms):
            text = render(term) if isinstance(term, Mul) else _render_factor(term)
            if k == 0:
                parts.append(text)
            else:
                parts.append(f" {sign} {text}")
        return "".join(parts)
    raise TypeError(f"unknown node {node!r}")


_VARS = {"x": BiPoly.monomial(1, 0), "y": BiPoly.monomial(0, 1)}


def to_bipoly(node: Node) -> BiPoly:
    if isinstance(node, Var):
        return _VARS[node.name]
    if isinstance(node, Rat):
        return BiPoly.constant(node.value)
    if isinstance(node, Neg):
        return -to_bipoly(node.operand)
    if isinstance(node, Pow):
        return to_bipoly(node.base) ** node.exponent
    if isinstance(node, Mul):
        out = BiPoly.constant(1)
        for f in node.factors:
            out = out * to_bipoly(f)
        return out
    if isinstance(node, Add):
        out = BiPoly.zero()
        for sign, term in node.terms:
            p = to_bipoly(term)
            out = out + p if sign == "+" else out - p
        return out
    raise TypeError(f"unknown node {node!r}")


@dataclass(frozen=True)
class PolyExpr:
    source: str
    ast: Node

    @classmethod
    def parse(cls, text: str) -> "PolyExpr":
        return cls(text, parse_expr(text))

    def render(self) -> str:
        return render(self.ast)

    def to_bipoly(self) -> BiPoly:
        return to_bipoly(self.ast)


def parse_poly(text: str) -> BiPoly:
    """Parse ``text`` into an exact polynomial over Q."""
    return to_bipoly(parse_expr(text))
