"""Expression language for the command line: tokenizer, parser, printer.

Grammar (loosest to tightest binding):

    expr   := term  (('+' | '-') term)*
    term   := factor (('*' | '#') factor)*        * quasi-shuffle, # shuffle
    factor := atom  ('.' atom)*                   . concatenation
    atom   := NUMBER | NAME '(' args ')' | '(' expr ')' | '-' atom

Numbers are integers or exact fractions like 3/2; ``w(1,2)`` is the word
literal.  Parsing and printing round-trip: parse(print(e)) == e.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction


class ParseError(ValueError):
    """Syntax error with position and the tokens that would have been accepted."""

    def __init__(self, message: str, line: int, col: int, expected: tuple[str, ...] = ()):
        self.message = message
        self.line = line
        self.col = col
        self.expected = tuple(expected)
        detail = f"{message} at line {line}, column {col}"
        if expected:
            detail += " (expected " + " or ".join(expected) + ")"
        super().__init__(detail)


@dataclass(frozen=True)
class Token:
    kind: str
    text: str
    line: int
    col: int


_TOKEN_RE = re.compile(
    r"""(?P<NUMBER>\d+(?:/\d+)?)
      | (?P<NAME>[A-Za-z_][A-Za-z0-9_]*)
      | (?P<OP>[()+\-*#.,])
      | (?P<WS>\s+)
      | (?P<BAD>.)""",
    re.VERBOSE,
)


def tokenize(src: str) -> list[Token]:
    tokens = []
    line, line_start = 1, 0
    for match in _TOKEN_RE.finditer(src):
        kind = match.lastgroup
        text = match.group()
        col = match.start() - line_start + 1
        if kind == "WS":
            newlines = text.count("\n")
            if newlines:
                line += newlines
                line_start = match.start() + text.rfind("\n") + 1
            continue
        if kind == "BAD":
            raise ParseError(f"unexpected character {text!r}", line, col)
        tokens.append(Token("OP" if kind == "OP" else kind, text, line, col))
    tokens.append(Token("EOF", "", line, len(src) - line_start + 1))
    return tokens


# -- AST ---------------------------------------------------------------------

@dataclass(frozen=True)
class Rational:
    value: Fraction


@dataclass(frozen=True)
class WordLit:
    parts: tuple[int, ...]


@dataclass(frozen=True)
class Neg:
    operand: "Expr"


@dataclass(frozen=True)
class BinOp:
    op: str  # one of + - * # .
    left: "Expr"
    right: "Expr"


@dataclass(frozen=True)
class Call:
    name: str
    args: tuple["Expr", ...]


Expr = Rational | WordLit | Neg | BinOp | Call

_PRECEDENCE = {"+": 1, "-": 1, "*": 2, "#": 2, ".": 3}


class _Parser:
    def __init__(self, tokens: list[Token]):
        self.tokens = tokens
        self.pos = 0

    def peek(self) -> Token:
        return self.tokens[self.pos]

    def advance(self) -> Token:
        tok = self.tokens[self.pos]
        self.pos += 1
        return tok

    def expect(self, text: str) -> Token:
        tok = self.peek()
        if tok.kind == "OP" and tok.text == text:
            return self.advance()
        raise ParseError(
            f"unexpected {tok.text!r}" if tok.kind != "EOF" else "unexpected end of input",
            tok.line, tok.col, expected=(repr(text),),
        )

    def parse(self) -> Expr:
        expr = self.parse_expr()
        tok = self.peek()
        if tok.kind != "EOF":
            raise ParseError(f"trailing input {tok.text!r}", tok.line, tok.col,
                             expected=("operator", "end of input"))
        return expr

    def parse_expr(self) -> Expr:
        node = self.parse_term()
        while self.peek().kind == "OP" and self.peek().text in "+-":
            op = self.advance().text
            node = BinOp(op, node, self.parse_term())
        return node

    def parse_term(self) -> Expr:
        node = self.parse_factor()
        while self.peek().kind == "OP" and self.peek().text in "*#":
            op = self.advance().text
            node = BinOp(op, node, self.parse_factor())
        return node

    def parse_factor(self) -> Expr:
        node = self.parse_atom()
        while self.peek().kind == "OP" and self.peek().text == ".":
            self.advance()
            node = BinOp(".", node, self.parse_atom())
        return node

    def parse_atom(self) -> Expr:
        tok = self.peek()
        if tok.kind == "NUMBER":
            self.advance()
            return Rational(Fraction(tok.text))
        if tok.kind == "NAME":
            self.advance()
            self.expect("(")
            args: list[Expr] = []
            if not (self.peek().kind == "OP" and self.peek().text == ")"):
                args.append(self.parse_expr())
                while self.peek().kind == "OP" and self.peek().text == ",":
                    self.advance()
                    args.append(self.parse_expr())
            self.expect(")")
            if tok.text == "w":
                return WordLit(_word_args(args, tok))
            return Call(tok.text, tuple(args))
        if tok.kind == "OP" and tok.text == "(":
            self.advance()
            node = self.parse_expr()
            self.expect(")")
            return node
        if tok.kind == "OP" and tok.text == "-":
            self.advance()
            node = self.parse_atom()
            if isinstance(node, Rational):
                return Rational(-node.value)  # fold so printing round-trips
            return Neg(node)
        raise ParseError(
            f"unexpected {tok.text!r}" if tok.kind != "EOF" else "unexpected end of input",
            tok.line, tok.col,
            expected=("number", "name", "'('", "'-'"),
        )


def _word_args(args: list[Expr], tok: Token) -> tuple[int, ...]:
    parts = []
    for a in args:
        if not (isinstance(a, Rational) and a.value.denominator == 1 and a.value >= 1):
            raise ParseError("word literals take positive integer parts", tok.line, tok.col)
        parts.append(int(a.value))
    return tuple(parts)


def parse(src: str) -> Expr:
    return _Parser(tokenize(src)).parse()


def to_source(expr: Expr) -> str:
    """Canonical printing; parse(to_source(e)) == e."""
    return _print(expr, 0)


def _print(expr: Expr, parent_prec: int) -> str:
    if isinstance(expr, Rational):
        v = expr.value
        if v < 0:
            text = f"-{-v}"
            return f"({text})" if parent_prec > 0 else text
        return str(v)
    if isinstance(expr, WordLit):
        return "w(" + ",".join(map(str, expr.parts)) + ")"
    if isinstance(expr, Call):
        return expr.name + "(" + ", ".join(_print(a, 0) for a in expr.args) + ")"
    if isinstance(expr, Neg):
        inner = _print(expr.operand, 4)
        text = f"-{inner}"
        return f"({text})" if parent_prec > 0 else text
    prec = _PRECEDENCE[expr.op]
    left = _print(expr.left, prec)
    # right association would reparse differently; force parens on same level
    right = _print(expr.right, prec + 1)
    spaced = expr.op if expr.op == "." else f" {expr.op} "
    text = f"{left}{spaced}{right}"
    return f"({text})" if prec < parent_prec else text
