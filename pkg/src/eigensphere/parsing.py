"""Text format for polynomials: recursive-descent parser and canonical renderer.

Grammar (whitespace insensitive):

    expression := term { ('+' | '-') term }
    term       := factor { '*' factor }
    factor     := '-' factor | power
    power      := primary [ '^' exponent ]
    primary    := integer [ '/' integer ]      rational literal
                | 'i'                          imaginary unit
                | 'x<k>'                       real variable, 1-based
                | 'z<j>'                       complex shorthand x_{2j-1} + i*x_{2j}
                | 'conj' '(' expression ')'    complex conjugation
                | '(' expression ')'

Multiplication is always explicit; exponents must be non-negative integer
literals.  `conj` conjugates the coefficients of its argument's expansion,
which is exactly complex conjugation because the variables are real-valued.

`render` produces a canonical string in the same grammar (x-variables only,
terms in descending graded-lexicographic order), and `parse(render(p), p.nvars)`
returns a polynomial equal to `p`.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from typing import List, Optional, Tuple, Union

from .errors import NegativeExponent, ParseError, VariableOutOfRange
from .polynomial import GaussianRational, Polynomial

# ---------------------------------------------------------------------------
# AST


@dataclass(frozen=True)
class RationalLit:
    value: Fraction


@dataclass(frozen=True)
class ImaginaryUnit:
    pass


@dataclass(frozen=True)
class VariableRef:
    kind: str  # "x" or "z"
    index: int  # 1-based


@dataclass(frozen=True)
class Negation:
    child: "Node"


@dataclass(frozen=True)
class Conjugation:
    child: "Node"


@dataclass(frozen=True)
class Sum:
    left: "Node"
    right: "Node"


@dataclass(frozen=True)
class Difference:
    left: "Node"
    right: "Node"


@dataclass(frozen=True)
class Product:
    left: "Node"
    right: "Node"


@dataclass(frozen=True)
class Power:
    base: "Node"
    exponent: int


Node = Union[
    RationalLit,
    ImaginaryUnit,
    VariableRef,
    Negation,
    Conjugation,
    Sum,
    Difference,
    Product,
    Power,
]


# ---------------------------------------------------------------------------
# Tokenizer

_TOKEN_RE = re.compile(
    r"\s*(?:(?P<int>\d+)|(?P<name>[A-Za-z_][A-Za-z_0-9]*)|(?P<op>[+\-*^()/]))"
)


@dataclass(frozen=True)
class Token:
    kind: str  # "int", "name", "op", "end"
    text: str
    pos: int


def _tokenize(text: str) -> List[Token]:
    tokens = []
    pos = 0
    while pos < len(text):
        rest = text[pos:]
        if not rest.strip():
            break
        match = _TOKEN_RE.match(text, pos)
        if match is None:
            bad = pos + len(rest) - len(rest.lstrip())
            char = text[bad]
            if char == ".":
                raise ParseError(
                    "decimal literals are not accepted; write an exact rational like 3/10", bad
                )
            raise ParseError(f"unexpected character {char!r}", bad)
        for kind in ("int", "name", "op"):
            if match.group(kind) is not None:
                tokens.append(Token(kind, match.group(kind), match.start(kind)))
                break
        pos = match.end()
    tokens.append(Token("end", "", len(text)))
    return tokens


# ---------------------------------------------------------------------------
# Parser

_VAR_RE = re.compile(r"^([xz])([0-9]+)$")


class _Parser:
    def __init__(self, text: str, nvars: int):
        self.text = text
        self.nvars = nvars
        self.tokens = _tokenize(text)
        self.at = 0

    def peek(self) -> Token:
        return self.tokens[self.at]

    def advance(self) -> Token:
        token = self.tokens[self.at]
        self.at += 1
        return token

    def expect_op(self, op: str) -> Token:
        token = self.peek()
        if token.kind != "op" or token.text != op:
            raise ParseError(f"expected {op!r}, found {self._describe(token)}", token.pos)
        return self.advance()

    @staticmethod
    def _describe(token: Token) -> str:
        return "end of input" if token.kind == "end" else repr(token.text)

    def parse(self) -> Node:
        node = self.expression()
        trailing = self.peek()
        if trailing.kind != "end":
            raise ParseError(f"unexpected {self._describe(trailing)}", trailing.pos)
        return node

    def expression(self) -> Node:
        node = self.term()
        while True:
            token = self.peek()
            if token.kind == "op" and token.text in "+-":
                self.advance()
                right = self.term()
                node = Sum(node, right) if token.text == "+" else Difference(node, right)
            else:
                return node

    def term(self) -> Node:
        node = self.factor()
        while True:
            token = self.peek()
            if token.kind == "op" and token.text == "*":
                self.advance()
                node = Product(node, self.factor())
            else:
                return node

    def factor(self) -> Node:
        token = self.peek()
        if token.kind == "op" and token.text == "-":
            self.advance()
            return Negation(self.factor())
        return self.power()

    def power(self) -> Node:
        base = self.primary()
        token = self.peek()
        if token.kind == "op" and token.text == "^":
            self.advance()
            return Power(base, self.exponent())
        return base

    def exponent(self) -> int:
        token = self.peek()
        if token.kind == "op" and token.text == "-":
            self.advance()
            follow = self.peek()
            if follow.kind == "int":
                raise NegativeExponent(
                    f"exponent -{follow.text} is negative; exponents must be >= 0", token.pos
                )
            raise ParseError(f"expected an integer exponent, found '-'", token.pos)
        if token.kind != "int":
            raise ParseError(
                f"expected a non-negative integer exponent, found {self._describe(token)}",
                token.pos,
            )
        self.advance()
        return int(token.text)

    def primary(self) -> Node:
        token = self.peek()
        if token.kind == "int":
            self.advance()
            value = Fraction(int(token.text))
            slash = self.peek()
            if slash.kind == "op" and slash.text == "/":
                self.advance()
                denom = self.peek()
                if denom.kind != "int":
                    raise ParseError(
                        f"expected an integer denominator, found {self._describe(denom)}",
                        denom.pos,
                    )
                self.advance()
                if int(denom.text) == 0:
                    raise ParseError("zero denominator in rational literal", denom.pos)
                value = value / int(denom.text)
            return RationalLit(value)
        if token.kind == "name":
            if token.text == "i":
                self.advance()
                return ImaginaryUnit()
            if token.text == "conj":
                self.advance()
                self.expect_op("(")
                inner = self.expression()
                self.expect_op(")")
                return Conjugation(inner)
            var = _VAR_RE.match(token.text)
            if var:
                kind, index = var.group(1), int(var.group(2))
                self.advance()
                if kind == "x" and not 1 <= index <= self.nvars:
                    raise VariableOutOfRange(
                        f"x{index} is outside the declared variables x1..x{self.nvars}",
                        token.pos,
                    )
                if kind == "z" and not (index >= 1 and 2 * index <= self.nvars):
                    raise VariableOutOfRange(
                        f"z{index} needs variables x{2 * index - 1}, x{2 * index}"
                        f" but only {self.nvars} are declared",
                        token.pos,
                    )
                return VariableRef(kind, index)
            raise ParseError(f"unknown identifier {token.text!r}", token.pos)
        if token.kind == "op" and token.text == "(":
            self.advance()
            inner = self.expression()
            self.expect_op(")")
            return inner
        raise ParseError(f"expected a value, found {self._describe(token)}", token.pos)


def _to_polynomial(node: Node, nvars: int) -> Polynomial:
    if isinstance(node, RationalLit):
        return Polynomial.constant(nvars, node.value)
    if isinstance(node, ImaginaryUnit):
        return Polynomial.constant(nvars, GaussianRational(Fraction(0), Fraction(1)))
    if isinstance(node, VariableRef):
        if node.kind == "x":
            return Polynomial.variable(nvars, node.index)
        re_part = Polynomial.variable(nvars, 2 * node.index - 1)
        im_part = Polynomial.variable(nvars, 2 * node.index)
        return re_part + Polynomial.constant(nvars, GaussianRational(Fraction(0), Fraction(1))) * im_part
    if isinstance(node, Negation):
        return -_to_polynomial(node.child, nvars)
    if isinstance(node, Conjugation):
        return _to_polynomial(node.child, nvars).conjugate()
    if isinstance(node, Sum):
        return _to_polynomial(node.left, nvars) + _to_polynomial(node.right, nvars)
    if isinstance(node, Difference):
        return _to_polynomial(node.left, nvars) - _to_polynomial(node.right, nvars)
    if isinstance(node, Product):
        return _to_polynomial(node.left, nvars) * _to_polynomial(node.right, nvars)
    if isinstance(node, Power):
        return _to_polynomial(node.base, nvars) ** node.exponent
    raise TypeError(f"unknown AST node {node!r}")


def parse_ast(text: str, nvars: int) -> Node:
    """Parse to the expression AST without expanding to a polynomial."""
    if nvars < 1:
        raise ValueError(f"nvars must be positive, got {nvars}")
    return _Parser(text, nvars).parse()


def parse(text: str, nvars: int) -> Polynomial:
    """Parse an expression into a canonical Polynomial in x1..x<nvars>."""
    return _to_polynomial(parse_ast(text, nvars), nvars)


# ---------------------------------------------------------------------------
# Renderer


def _render_fraction(q: Fraction) -> str:
    return str(q)  # Fraction renders as "p/q" or "p", already reduced


def _render_term(exps, coeff: GaussianRational) -> Tuple[str, str]:
    """One term as (sign, body) with sign in {"+", "-"}.

    Mixed complex coefficients keep their sign inside parentheses so the
    joining logic never has to negate them.
    """
    variables = []
    for position, e in enumerate(exps):
        if e == 1:
            variables.append(f"x{position + 1}")
        elif e > 1:
            variables.append(f"x{position + 1}^{e}")
    mono = "*".join(variables)

    if coeff.re != 0 and coeff.im != 0:
        im_sign = "+" if coeff.im > 0 else "-"
        body = f"({_render_fraction(coeff.re)}{im_sign}{_render_fraction(abs(coeff.im))}*i)"
        return "+", f"{body}*{mono}" if mono else body
    if coeff.im != 0:
        sign = "+" if coeff.im > 0 else "-"
        magnitude = abs(coeff.im)
        scale = "i" if magnitude == 1 else f"{_render_fraction(magnitude)}*i"
        return sign, f"{scale}*{mono}" if mono else scale
    sign = "+" if coeff.re > 0 else "-"
    magnitude = abs(coeff.re)
    if not mono:
        return sign, _render_fraction(magnitude)
    if magnitude == 1:
        return sign, mono
    return sign, f"{_render_fraction(magnitude)}*{mono}"


def render(p: Polynomial) -> str:
    """Canonical text form; terms in descending graded-lexicographic order."""
    if p.is_zero():
        return "0"
    pieces = []
    for exps, coeff in p.items():
        sign, body = _render_term(exps, coeff)
        if not pieces:
            pieces.append(body if sign == "+" else f"-{body}")
        else:
            pieces.append(f" {sign} {body}")
    return "".join(pieces)
