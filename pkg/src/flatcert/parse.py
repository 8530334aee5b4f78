"""Tokenizer and recursive-descent parser for polynomial expressions.

Grammar (whitespace-insensitive, '#' starts a comment running to end of
line):

    expr   := ['-'] term (('+' | '-') term)*
    term   := factor ('*' factor)*
    factor := base ('^' INT)?
    base   := INT ('/' INT)? | NAME | '(' expr ')'

'^' binds tighter than '*', which binds tighter than '+' and '-'.  There
is no implicit multiplication and no division operator; 'p/q' is only a
rational literal with integer parts.  Errors carry 1-based line and
column positions.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from fractions import Fraction

from .poly import AlgebraError, Polynomial, RingSignature


class ParseError(AlgebraError):
    """Syntax error with a source position."""

    def __init__(self, message: str, line: int, col: int):
        super().__init__(f"parse error at line {line}, col {col}: {message}")
        self.line = line
        self.col = col


@dataclass(frozen=True)
class Token:
    kind: str  # "name", "int", "eof", or the symbol text itself
    text: str
    line: int
    col: int


_TWO_CHAR = ("->", "==", "!=")
_ONE_CHAR = "+-*^/()[]{},;:="
_NAME_RE = re.compile(r"[A-Za-z_][A-Za-z0-9_]*")
_INT_RE = re.compile(r"[0-9]+")


def tokenize(text: str) -> list[Token]:
    tokens: list[Token] = []
    line, col = 1, 1
    i, n = 0, len(text)
    while i < n:
        ch = text[i]
        if ch == "\n":
            line += 1
            col = 1
            i += 1
            continue
        if ch in " \t\r":
            i += 1
            col += 1
            continue
        if ch == "#":
            while i < n and text[i] != "\n":
                i += 1
            continue
        two = text[i : i + 2]
        if two in _TWO_CHAR:
            tokens.append(Token(two, two, line, col))
            i += 2
            col += 2
            continue
        m = _NAME_RE.match(text, i)
        if m:
            tokens.append(Token("name", m.group(), line, col))
            col += len(m.group())
            i = m.end()
            continue
        m = _INT_RE.match(text, i)
        if m:
            tokens.append(Token("int", m.group(), line, col))
            col += len(m.group())
            i = m.end()
            continue
        if ch in _ONE_CHAR:
            tokens.append(Token(ch, ch, line, col))
            i += 1
            col += 1
            continue
        raise ParseError(f"unexpected character {ch!r}", line, col)
    tokens.append(Token("eof", "", line, col))
    return tokens


class TokenStream:
    def __init__(self, tokens: list[Token]):
        self.tokens = tokens
        self.pos = 0

    def peek(self) -> Token:
        return self.tokens[self.pos]

    def next(self) -> Token:
        tok = self.tokens[self.pos]
        if tok.kind != "eof":
            self.pos += 1
        return tok

    def expect(self, kind: str, what: str | None = None) -> Token:
        tok = self.peek()
        if tok.kind != kind:
            expected = what or f"{kind!r}"
            found = tok.text or "end of input"
            raise ParseError(f"expected {expected}, found {found!r}", tok.line, tok.col)
        return self.next()


# Expression AST.  Positions are carried for error reporting but ignored
# by equality so that pretty-printed scripts reparse to equal trees.


@dataclass(frozen=True)
class Num:
    value: Fraction
    line: int = field(default=0, compare=False)
    col: int = field(default=0, compare=False)


@dataclass(frozen=True)
class Var:
    name: str
    line: int = field(default=0, compare=False)
    col: int = field(default=0, compare=False)


@dataclass(frozen=True)
class Neg:
    operand: "Expr"
    line: int = field(default=0, compare=False)
    col: int = field(default=0, compare=False)


@dataclass(frozen=True)
class BinOp:
    op: str  # "+", "-", or "*"
    left: "Expr"
    right: "Expr"
    line: int = field(default=0, compare=False)
    col: int = field(default=0, compare=False)


@dataclass(frozen=True)
class Pow:
    base: "Expr"
    exponent: int
    line: int = field(default=0, compare=False)
    col: int = field(default=0, compare=False)


Expr = Num | Var | Neg | BinOp | Pow


def parse_expression(ts: TokenStream) -> Expr:
    tok = ts.peek()
    if tok.kind == "-":
        ts.next()
        node: Expr = Neg(_term(ts), tok.line, tok.col)
    else:
        node = _term(ts)
    while ts.peek().kind in ("+", "-"):
        op = ts.next()
        node = BinOp(op.kind, node, _term(ts), op.line, op.col)
    return node


def _term(ts: TokenStream) -> Expr:
    node = _factor(ts)
    while ts.peek().kind == "*":
        op = ts.next()
        node = BinOp("*", node, _factor(ts), op.line, op.col)
    return node


def _factor(ts: TokenStream) -> Expr:
    tok = ts.peek()
    if tok.kind == "-":
        ts.next()
        return Neg(_factor(ts), tok.line, tok.col)
    node = _base(ts)
    if ts.peek().kind == "^":
        caret = ts.next()
        tok = ts.peek()
        if tok.kind != "int":
            raise ParseError("malformed exponent", tok.line, tok.col)
        ts.next()
        node = Pow(node, int(tok.text), caret.line, caret.col)
    return node


def _base(ts: TokenStream) -> Expr:
    tok = ts.peek()
    if tok.kind == "int":
        ts.next()
        value = Fraction(int(tok.text))
        if ts.peek().kind == "/":
            ts.next()
            den = ts.peek()
            if den.kind != "int":
                raise ParseError("malformed rational literal", den.line, den.col)
            ts.next()
            if int(den.text) == 0:
                raise ParseError("zero denominator", den.line, den.col)
            value = Fraction(int(tok.text), int(den.text))
        return Num(value, tok.line, tok.col)
    if tok.kind == "name":
        ts.next()
        return Var(tok.text, tok.line, tok.col)
    if tok.kind == "(":
        ts.next()
        node = parse_expression(ts)
        ts.expect(")")
        return node
    found = tok.text or "end of input"
    raise ParseError(f"expected a number, variable, or '(', found {found!r}",
                     tok.line, tok.col)


def to_polynomial(node: Expr, sig: RingSignature) -> Polynomial:
    if isinstance(node, Num):
        return Polynomial.constant(sig, node.value)
    if isinstance(node, Var):
        if node.name not in sig.variables:
            raise ParseError(f"unknown variable {node.name!r}", node.line, node.col)
        return Polynomial.variable(sig, node.name)
    if isinstance(node, Neg):
        return -to_polynomial(node.operand, sig)
    if isinstance(node, BinOp):
        left = to_polynomial(node.left, sig)
        right = to_polynomial(node.right, sig)
        if node.op == "+":
            return left + right
        if node.op == "-":
            return left - right
        return left * right
    if isinstance(node, Pow):
        return to_polynomial(node.base, sig) ** node.exponent
    raise AlgebraError("unknown expression node")  # pragma: no cover


def parse_polynomial(text: str, sig: RingSignature) -> Polynomial:
    """Parse `text` as a polynomial over `sig` (canonical-form friendly)."""
    ts = TokenStream(tokenize(text))
    node = parse_expression(ts)
    tok = ts.peek()
    if tok.kind != "eof":
        raise ParseError(f"unexpected trailing input {tok.text!r}", tok.line, tok.col)
    return to_polynomial(node, sig)


_PRECEDENCE = {"+": 1, "-": 1, "*": 2}


def expr_text(node: Expr, parent_prec: int = 0) -> str:
    """Minimal-parenthesis rendering; reparses to an equal tree."""
    if isinstance(node, Num):
        return str(node.value)
    if isinstance(node, Var):
        return node.name
    if isinstance(node, Neg):
        text = f"-{expr_text(node.operand, 2)}"
        return f"({text})" if parent_prec > 1 else text
    if isinstance(node, BinOp):
        prec = _PRECEDENCE[node.op]
        left = expr_text(node.left, prec)
        right = expr_text(node.right, prec + 1)
        joint = f"{left}{node.op}{right}" if node.op == "*" else f"{left} {node.op} {right}"
        return f"({joint})" if prec < parent_prec else joint
    if isinstance(node, Pow):
        if isinstance(node.base, Var) or (isinstance(node.base, Num)
                                          and node.base.value >= 0):
            base = expr_text(node.base, 3)
        else:
            base = f"({expr_text(node.base)})"
        return f"{base}^{node.exponent}"
    raise AlgebraError("unknown expression node")  # pragma: no cover
