"""Parser/evaluator for hyperbolic-number expressions like "(1+1h)*(1-1h)".

Grammar (h is only a literal suffix, * and / bind tighter than + and -):

    expr    := term (('+' | '-') term)*
    term    := unary (('*' | '/') unary)*
    unary   := ('-' | '+') unary | primary
    primary := NUMBER 'h'? | FUNC '(' expr ')' | '(' expr ')'
    FUNC    := 'exp' | 'conj' | 'mod'
"""

from __future__ import annotations

import re

from . import polar
from .algebra import HyperbolicNumber

_TOKEN = re.compile(
    r"\s*(?:(?P<number>\d+(?:\.\d*)?(?:[eE][+-]?\d+)?|\.\d+(?:[eE][+-]?\d+)?)"
    r"(?P<hsuffix>h)?"
    r"|(?P<name>[A-Za-z_]\w*)"
    r"|(?P<op>[-+*/()]))"
)

_FUNCS = ("exp", "conj", "mod")


class ParseError(ValueError):
    def __init__(self, message: str, position: int):
        self.position = position
        super().__init__(f"{message} (at position {position})")


def _tokenize(text: str):
    tokens = []
    pos = 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m:
            if text[pos:].strip():
                raise ParseError(f"unexpected character {text[pos]!r}", pos)
            break
        if m.group("number") is not None:
            kind = "hnum" if m.group("hsuffix") else "num"
            tokens.append((kind, float(m.group("number")), m.start()))
        elif m.group("name") is not None:
            name = m.group("name")
            if name not in _FUNCS:
                raise ParseError(f"unknown name {name!r}", m.start())
            tokens.append(("func", name, m.start()))
        else:
            tokens.append(("op", m.group("op"), m.start()))
        pos = m.end()
    return tokens


class _Parser:
    def __init__(self, text: str):
        self.text = text
        self.tokens = _tokenize(text)
        self.i = 0

    def peek(self):
        return self.tokens[self.i] if self.i < len(self.tokens) else None

    def take(self):
        tok = self.peek()
        if tok is None:
            raise ParseError("unexpected end of expression", len(self.text))
        self.i += 1
        return tok

    def expect_op(self, op: str):
        tok = self.take()
        if tok[0] != "op" or tok[1] != op:
            raise ParseError(f"expected {op!r}", tok[2])

    def parse(self) -> HyperbolicNumber:
        value = self.expr()
        tok = self.peek()
        if tok is not None:
            raise ParseError(f"trailing input {tok[1]!r}", tok[2])
        return value

    def expr(self) -> HyperbolicNumber:
        value = self.term()
        while (tok := self.peek()) and tok[0] == "op" and tok[1] in "+-":
            self.take()
            rhs = self.term()
            value = value + rhs if tok[1] == "+" else value - rhs
        return value

    def term(self) -> HyperbolicNumber:
        value = self.unary()
        while (tok := self.peek()) and tok[0] == "op" and tok[1] in "*/":
            self.take()
            rhs = self.unary()
            value = value * rhs if tok[1] == "*" else value / rhs
        return value

    def unary(self) -> HyperbolicNumber:
        tok = self.peek()
        if tok and tok[0] == "op" and tok[1] in "+-":
            self.take()
            inner = self.unary()
            return inner if tok[1] == "+" else -inner
        return self.primary()

    def primary(self) -> HyperbolicNumber:
        tok = self.take()
        if tok[0] == "num":
            return HyperbolicNumber(tok[1], 0.0)
        if tok[0] == "hnum":
            return HyperbolicNumber(0.0, tok[1])
        if tok[0] == "func":
            self.expect_op("(")
            arg = self.expr()
            self.expect_op(")")
            if tok[1] == "exp":
                return polar.exp(arg)
            if tok[1] == "conj":
                return arg.conjugate()
            return HyperbolicNumber(arg.modulus(), 0.0)  # mod
        if tok[0] == "op" and tok[1] == "(":
            value = self.expr()
            self.expect_op(")")
            return value
        raise ParseError(f"unexpected token {tok[1]!r}", tok[2])


def evaluate(text: str) -> HyperbolicNumber:
    """Evaluate an expression; raises ParseError or DivisionByZeroDivisor."""
    if not text.strip():
        raise ParseError("empty expression", 0)
    return _Parser(text).parse()
