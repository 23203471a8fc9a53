"""Parser for linear information expressions such as ``2H(X1,X2|M) - I(X1;X3|K) >= 0``.

Names are ``M``, ``K`` and ``X1``, ``X2``, ... (edge ``i`` is ``Xi``). Inside
a measure, names may be separated by commas or simply juxtaposed
(``H(X4|X1X2X3)``). Coefficients are integers or fractions ``p/q`` with an
optional ``*``. Either side of a comparison may be ``0``.
"""

from __future__ import annotations

import re
from fractions import Fraction

from .entropy import EntropyFunctional, VarSet, expand_measure
from .network import KEY, MSG

_TOKEN = re.compile(
    r"\s*(?:(?P<num>\d+(?:/\d+)?)|(?P<name>M|K|X\d+)|(?P<measure>[HI])(?=\s*\()"
    r"|(?P<op>>=|<=|=|[-+*(),;|]))"
)


class ExpressionError(ValueError):
    pass


def _tokens(text: str) -> list[tuple[str, str]]:
    out = []
    pos = 0
    text = text.rstrip()
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m or m.end() == pos:
            raise ExpressionError(f"unexpected character at position {pos}: {text[pos:pos + 10]!r}")
        kind = m.lastgroup
        out.append((kind, m.group(kind)))
        pos = m.end()
    return out


class _Parser:
    def __init__(self, text: str, n: int):
        self.toks = _tokens(text)
        self.i = 0
        self.n = n

    def peek(self) -> tuple[str, str] | None:
        return self.toks[self.i] if self.i < len(self.toks) else None

    def take(self, value: str | None = None) -> tuple[str, str]:
        tok = self.peek()
        if tok is None:
            raise ExpressionError("unexpected end of expression")
        if value is not None and tok[1] != value:
            raise ExpressionError(f"expected {value!r}, found {tok[1]!r}")
        self.i += 1
        return tok

    def index(self, name: str) -> int:
        if name == "M":
            return MSG
        if name == "K":
            return KEY
        e = int(name[1:])
        if not 1 <= e <= self.n - 2:
            raise ExpressionError(f"{name} is not an edge of this network")
        return e + 1

    def varset(self, stops: tuple[str, ...]) -> VarSet:
        members = []
        while True:
            tok = self.peek()
            if tok is None:
                raise ExpressionError("unterminated measure")
            if tok[0] == "name":
                members.append(self.index(tok[1]))
                self.i += 1
            elif tok[1] == ",":
                self.i += 1
            elif tok[1] in stops:
                break
            else:
                raise ExpressionError(f"unexpected {tok[1]!r} inside a measure")
        if not members:
            raise ExpressionError("empty variable list")
        return VarSet.of(self.n, members)

    def measure(self) -> EntropyFunctional:
        _, kind = self.take()
        self.take("(")
        if kind == "H":
            x = self.varset(("|", ")"))
            if self.peek()[1] == "|":
                self.take("|")
                y = self.varset((")",))
                self.take(")")
                return expand_measure("H|", x, y)
            self.take(")")
            return expand_measure("H", x)
        x = self.varset((";",))
        self.take(";")
        y = self.varset(("|", ")"))
        if self.peek()[1] == "|":
            self.take("|")
            z = self.varset((")",))
            self.take(")")
            return expand_measure("I|", x, y, z)
        self.take(")")
        return expand_measure("I", x, y)

    def side(self) -> EntropyFunctional:
        total = EntropyFunctional(self.n)
        first = True
        while True:
            tok = self.peek()
            if tok is None or tok[1] in (">=", "<=", "="):
                if first:
                    raise ExpressionError("missing expression")
                return total
            sign = 1
            if tok[1] in "+-" and tok[0] == "op":
                sign = -1 if tok[1] == "-" else 1
                self.i += 1
                tok = self.peek()
                if tok is None:
                    raise ExpressionError("dangling sign")
            elif not first:
                raise ExpressionError(f"expected '+' or '-', found {tok[1]!r}")
            first = False
            coef = Fraction(1)
            if tok[0] == "num":
                coef = Fraction(tok[1])
                self.i += 1
                nxt = self.peek()
                if nxt is not None and nxt[1] == "*":
                    self.i += 1
                    nxt = self.peek()
                if nxt is None or nxt[0] != "measure":
                    if coef != 0:
                        raise ExpressionError("constant terms other than 0 are not allowed")
                    continue
            if self.peek() is None or self.peek()[0] != "measure":
                raise ExpressionError("expected H(...) or I(...)")
            total = total + self.measure() * (sign * coef)


def parse_relation(text: str, n: int) -> tuple[EntropyFunctional, str]:
    """Parse ``lhs OP rhs`` (or a bare expression, read as ``>= 0``).

    Returns ``(f, rel)`` where ``rel`` is ``">="`` (``f >= 0``) or ``"="`` (``f = 0``).
    """
    p = _Parser(text, n)
    lhs = p.side()
    tok = p.peek()
    if tok is None:
        return lhs, ">="
    op = p.take()[1]
    rhs = p.side()
    if p.peek() is not None:
        raise ExpressionError(f"trailing input {p.peek()[1]!r}")
    if op == ">=":
        return lhs - rhs, ">="
    if op == "<=":
        return rhs - lhs, ">="
    return lhs - rhs, "="


def parse_functional(text: str, n: int) -> EntropyFunctional:
    f, rel = parse_relation(text, n)
    return f
