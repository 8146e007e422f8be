"""Parser and printer for the scalar expression grammar used by all file formats.

Integer literals, ``+ - * / ^`` with the usual precedence (``^`` binds
tightest and takes a non-negative integer literal), parentheses, parameter
identifiers, and the reserved names ``t``, ``I`` (= zeta^3), ``w`` (= zeta^4)
and ``zeta12``.
"""

from __future__ import annotations

import re
from fractions import Fraction

from .cyclotomic import I, OMEGA, ZETA, Cyclotomic
from .poly import Poly, grevlex_key
from .ratfun import RatFun, as_ratfun, collapse, div

__all__ = ["parse_scalar", "render", "render_poly", "ExprError", "CONSTANTS"]

CONSTANTS = {"I": I, "w": OMEGA, "zeta12": ZETA}

_TOKEN = re.compile(r"\s*(?:(\d+)|([A-Za-z_][A-Za-z_0-9]*)|(.))")


class ExprError(ValueError):
    pass


def _tokenize(text):
    out = []
    pos = 0
    text = text.rstrip()
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if m is None:
            break
        num, ident, op = m.groups()
        if num is not None:
            out.append(("int", int(num)))
        elif ident is not None:
            out.append(("id", ident))
        elif op in "+-*/^()":
            out.append(("op", op))
        else:
            raise ExprError(f"unexpected character {op!r} in {text!r}")
        pos = m.end()
    return out


class _Parser:
    def __init__(self, text, allowed):
        self.text = text
        self.toks = _tokenize(text)
        self.i = 0
        self.allowed = allowed

    def peek(self):
        return self.toks[self.i] if self.i < len(self.toks) else (None, None)

    def take(self):
        tok = self.peek()
        self.i += 1
        return tok

    def expect(self, op):
        tok = self.take()
        if tok != ("op", op):
            raise ExprError(f"expected {op!r} in {self.text!r}")

    def parse(self):
        if not self.toks:
            raise ExprError("empty expression")
        val = self.expr()
        if self.i != len(self.toks):
            raise ExprError(f"trailing input in {self.text!r}")
        return val

    def expr(self):
        val = self.term()
        while self.peek() in (("op", "+"), ("op", "-")):
            _, op = self.take()
            rhs = self.term()
            val = val + rhs if op == "+" else val - rhs
        return val

    def term(self):
        val = self.unary()
        while self.peek() in (("op", "*"), ("op", "/")):
            _, op = self.take()
            rhs = self.unary()
            val = val * rhs if op == "*" else div(val, rhs)
        return val

    def unary(self):
        if self.peek() == ("op", "-"):
            self.take()
            return -self.unary()
        if self.peek() == ("op", "+"):
            self.take()
            return self.unary()
        return self.power()

    def power(self):
        base = self.atom()
        if self.peek() == ("op", "^"):
            self.take()
            kind, e = self.take()
            if kind != "int":
                raise ExprError(f"exponent must be a non-negative integer literal in {self.text!r}")
            return base ** e if not isinstance(base, int) else base ** e
        return base

    def atom(self):
        kind, val = self.take()
        if kind == "int":
            return val
        if kind == "id":
            if val in CONSTANTS:
                return CONSTANTS[val]
            if self.allowed is not None and val not in self.allowed:
                raise ExprError(f"unknown identifier {val!r}")
            return RatFun.var(val)
        if (kind, val) == ("op", "("):
            inner = self.expr()
            self.expect(")")
            return inner
        raise ExprError(f"unexpected token {val!r} in {self.text!r}")


def parse_scalar(text, allowed=None):
    """Parse a scalar expression into an exact scalar.

    ``allowed`` optionally restricts the free identifiers (``None`` accepts any).
    """
    if isinstance(text, int):
        return text
    if not isinstance(text, str):
        raise ExprError(f"scalar expression must be a string, got {type(text).__name__}")
    return collapse(_Parser(text, allowed).parse())


def _render_rational(q):
    q = Fraction(q)
    if q.denominator == 1:
        return str(q.numerator)
    return f"{q.numerator}/{q.denominator}"


def _render_number(c):
    """Render a number; returns (text, is_atomic_sum) where atomic means no top-level +/-."""
    if isinstance(c, Cyclotomic):
        a, b, ci, d = c.iw_coordinates()
        parts = []
        for coeff, unit in ((a, ""), (b, "w"), (ci, "I"), (d, "I*w")):
            if coeff == 0:
                continue
            if unit == "":
                parts.append(_render_rational(coeff))
            elif coeff == 1:
                parts.append(unit)
            elif coeff == -1:
                parts.append("-" + unit)
            else:
                parts.append(f"{_render_rational(coeff)}*{unit}")
        text = parts[0]
        for p in parts[1:]:
            text += (" - " + p[1:]) if p.startswith("-") else (" + " + p)
        return text, len(parts) == 1 and not text.startswith("-")
    return _render_rational(c), False


def _render_monomial(gens, exp):
    parts = []
    for g, e in zip(gens, exp):
        if e == 1:
            parts.append(g)
        elif e > 1:
            parts.append(f"{g}^{e}")
    return "*".join(parts)


def render_poly(p):
    if p.is_zero():
        return "0"
    pieces = []
    for exp in sorted(p.terms, key=grevlex_key, reverse=True):
        c = p.terms[exp]
        mono = _render_monomial(p.gens, exp)
        if isinstance(c, Cyclotomic):
            ctext, _ = _render_number(c)
            sign, body = "+", (f"({ctext})*{mono}" if mono else f"({ctext})")
        else:
            sign = "-" if c < 0 else "+"
            mag = -c if c < 0 else c
            if mono:
                body = mono if mag == 1 else f"{_render_rational(mag)}*{mono}"
            else:
                body = _render_rational(mag)
        pieces.append((sign, body))
    text = ("-" if pieces[0][0] == "-" else "") + pieces[0][1]
    for sign, body in pieces[1:]:
        text += f" {sign} {body}"
    return text


def render(x):
    """Render a scalar in the expression grammar (round-trips through parse_scalar)."""
    if isinstance(x, RatFun):
        num = render_poly(x.num)
        if x.den.is_constant():
            return num
        return f"({num})/({render_poly(x.den)})"
    if isinstance(x, Poly):
        return render_poly(x)
    return render_poly(Poly.const(x)) if not isinstance(x, Cyclotomic) else _render_number(x)[0]
