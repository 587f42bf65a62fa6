"""Plain-text polynomial expressions.

Grammar (whitespace is ignored)::

    expr    := term (('+' | '-') term)*
    term    := unary ('*' unary)*
    unary   := ('-' | '+') unary | power
    power   := atom ('^' INT)?
    atom    := NUMBER | 'i' | VARIABLE | '(' expr ')'
    NUMBER  := INT ('/' INT)?
    VARIABLE:= any variable of the target ring, e.g. z1 z2 zb1 zb2 s lam

Examples: ``z1*zb2 - (1/2+i)*z2^2``, ``(z1 + zb1)/2`` is *not* accepted
(division only inside a rational literal); write ``1/2*(z1 + zb1)``.

:func:`format_poly` emits strings in the same grammar, so output round-trips.
"""

from __future__ import annotations

import re

from .numbers import GaussianRational, format_rational
from .poly import Poly, PolyRing

__all__ = ["parse_poly", "format_poly", "format_gaussian", "ParseError"]


class ParseError(ValueError):
    pass


_TOKEN = re.compile(r"\s*(?:(\d+/\d+|\d+)|([A-Za-z][A-Za-z0-9]*)|(.))")


def _tokens(text: str):
    out = []
    pos = 0
    text = text.strip()
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if m is None:
            break
        num, name, op = m.groups()
        if num is not None:
            out.append(("num", num))
        elif name is not None:
            out.append(("name", name))
        elif op is not None and not op.isspace():
            if op not in "+-*^()":
                raise ParseError(f"unexpected character {op!r} at {m.start(3)}")
            out.append(("op", op))
        pos = m.end()
    out.append(("end", None))
    return out


class _Parser:
    def __init__(self, text: str, ring: PolyRing):
        self.toks = _tokens(text)
        self.pos = 0
        self.ring = ring

    def peek(self):
        return self.toks[self.pos]

    def take(self):
        t = self.toks[self.pos]
        self.pos += 1
        return t

    def expect(self, op):
        t = self.take()
        if t != ("op", op):
            raise ParseError(f"expected {op!r}, got {t[1]!r}")

    def expr(self) -> Poly:
        p = self.term()
        while self.peek() in (("op", "+"), ("op", "-")):
            op = self.take()[1]
            q = self.term()
            p = p + q if op == "+" else p - q
        return p

    def term(self) -> Poly:
        p = self.unary()
        while self.peek() == ("op", "*"):
            self.take()
            p = p * self.unary()
        return p

    def unary(self) -> Poly:
        t = self.peek()
        if t == ("op", "-"):
            self.take()
            return -self.unary()
        if t == ("op", "+"):
            self.take()
            return self.unary()
        return self.power()

    def power(self) -> Poly:
        p = self.atom()
        if self.peek() == ("op", "^"):
            self.take()
            kind, val = self.take()
            if kind != "num" or "/" in val:
                raise ParseError("exponent must be a non-negative integer")
            p = p ** int(val)
        return p

    def atom(self) -> Poly:
        kind, val = self.take()
        if kind == "num":
            return Poly.const(self.ring, GaussianRational(val))
        if kind == "name":
            if val == "i":
                return Poly.const(self.ring, GaussianRational(0, 1))
            if val not in self.ring.names:
                raise ParseError(f"unknown variable {val!r}; ring has {', '.join(self.ring.names)}")
            return Poly.var(self.ring, val)
        if (kind, val) == ("op", "("):
            p = self.expr()
            self.expect(")")
            return p
        raise ParseError(f"unexpected token {val!r}")


def parse_poly(text: str, ring: PolyRing) -> Poly:
    """Parse ``text`` into a canonical polynomial of ``ring``."""
    parser = _Parser(text, ring)
    p = parser.expr()
    if parser.peek()[0] != "end":
        raise ParseError(f"trailing input at token {parser.peek()[1]!r}")
    return p


def format_gaussian(c: GaussianRational) -> str:
    """``p/q+r/s i`` style used in reports."""
    return str(c)


def _coef_str(c: GaussianRational) -> str:
    if c.im == 0:
        return format_rational(c.re)
    if c.re == 0:
        return "i" if c.im == 1 else f"{format_rational(c.im)}*i"
    sign = "+" if c.im > 0 else "-"
    return f"({format_rational(c.re)}{sign}{format_rational(abs(c.im))}*i)"


def format_poly(p: Poly) -> str:
    if not p.terms:
        return "0"
    names = p.ring.names
    items = sorted(p.terms.items(), key=lambda kv: (sum(kv[0]), tuple(-k for k in kv[0])))
    parts = []
    for e, c in items:
        mono = "*".join(
            nm if k == 1 else f"{nm}^{k}" for nm, k in zip(names, e) if k
        )
        neg = (c.im == 0 and c.re < 0) or (c.re == 0 and c.im < 0)
        cc = -c if neg else c
        if not mono:
            body = _coef_str(cc)
        elif cc == 1:
            body = mono
        else:
            body = f"{_coef_str(cc)}*{mono}"
        parts.append(("- " if neg else "+ ") + body)
    s = " ".join(parts)
    return s[2:] if s.startswith("+ ") else "-" + s[2:]
