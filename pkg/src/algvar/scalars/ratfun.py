"""Reduced rational functions and the scalar helpers used throughout the package.

A *scalar* is either a plain number (``int``, ``Fraction`` or
:class:`~algvar.scalars.cyclotomic.Cyclotomic`) or a :class:`RatFun` whose
numerator or denominator is non-constant.  Arithmetic on RatFun collapses
constant results back to plain numbers.
"""

from __future__ import annotations

import math
from numbers import Rational

from .cyclotomic import Cyclotomic, as_number, qdiv
from .poly import Poly, cdiv, poly_gcd

__all__ = [
    "RatFun", "NoLimit", "NO_LIMIT", "normalize", "t_valuation", "limit_at_zero",
    "substitute", "evaluate", "collapse", "div", "variables", "is_scalar",
]


class NoLimit:
    """Marker returned by :func:`limit_at_zero` when the limit does not exist."""

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self):
        return "NoLimit"


NO_LIMIT = NoLimit()


def _normalized_pair(num, den):
    if den.is_zero():
        raise ZeroDivisionError("division by zero")
    if num.is_zero():
        return Poly(), Poly.const(1)
    if den.is_constant():
        d = den.constant_value()
        if d != 1:
            num = num.scale(cdiv(1, d))
        return num, Poly.const(1)
    if not num.is_constant():
        g = poly_gcd(num, den)
        if not g.is_constant():
            num = num.exact_div(g)
            den = den.exact_div(g)
            if den.is_constant():
                return _normalized_pair(num, den)
    lc = den.leading_coefficient()
    if lc != 1:
        inv = cdiv(1, lc)
        num, den = num.scale(inv), den.scale(inv)
    return num, den


def _monic_den(num, den):
    """Coprime pair: make den monic (or 1 when constant)."""
    if den.is_constant():
        d = den.constant_value()
        if d != 1:
            num = num.scale(cdiv(1, d))
        return RatFun(num, _reduced=True)
    lc = den.leading_coefficient()
    if lc != 1:
        inv = cdiv(1, lc)
        num, den = num.scale(inv), den.scale(inv)
    return RatFun(num, den, _reduced=True)


class RatFun:
    """Quotient ``num/den`` of polynomials with coprime, monic-denominator form."""

    __slots__ = ("num", "den")

    def __init__(self, num, den=None, _reduced=False):
        if not isinstance(num, Poly):
            num = Poly.const(num)
        if den is None:
            den = Poly.const(1)
        elif not isinstance(den, Poly):
            den = Poly.const(den)
        if not _reduced:
            num, den = _normalized_pair(num, den)
        self.num = num
        self.den = den

    @classmethod
    def var(cls, name):
        return cls(Poly.var(name), _reduced=True)

    @property
    def gens(self):
        return tuple(sorted(set(self.num.gens) | set(self.den.gens)))

    def is_constant(self):
        return self.num.is_constant() and self.den.is_constant()

    def is_polynomial(self):
        return self.den.is_constant()

    def collapse(self):
        if self.num.is_constant() and self.den.is_constant():
            return as_number(self.num.constant_value())
        return self

    # arithmetic -----------------------------------------------------------

    def __add__(self, other):
        if isinstance(other, RatFun):
            if self.den.is_constant() and other.den.is_constant():
                return RatFun(self.num + other.num, _reduced=True).collapse()
            if self.den == other.den:
                return RatFun(self.num + other.num, self.den).collapse()
            g = poly_gcd(self.den, other.den)
            if g.is_constant():
                num = self.num * other.den + other.num * self.den
                if num.is_zero():
                    return 0
                return RatFun(num, self.den * other.den, _reduced=True).collapse()
            a, b = self.den.exact_div(g), other.den.exact_div(g)
            num = self.num * b + other.num * a
            if num.is_zero():
                return 0
            h = poly_gcd(num, g)
            if not h.is_constant():
                num, g = num.exact_div(h), g.exact_div(h)
            return _monic_den(num, g * a * b).collapse()
        if isinstance(other, (Rational, Cyclotomic)):
            if other == 0:
                return self
            return RatFun(self.num + self.den * other, self.den, _reduced=True).collapse()
        return NotImplemented

    __radd__ = __add__

    def __neg__(self):
        return RatFun(-self.num, self.den, _reduced=True)

    def __sub__(self, other):
        if isinstance(other, (RatFun, Rational, Cyclotomic)):
            return self + (-other)
        return NotImplemented

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, RatFun):
            if self.den.is_constant() and other.den.is_constant():
                return RatFun(self.num * other.num, _reduced=True).collapse()
            n1, d1, n2, d2 = self.num, self.den, other.num, other.den
            if n1.is_zero() or n2.is_zero():
                return 0
            g1 = poly_gcd(n1, d2) if not (n1.is_constant() or d2.is_constant()) else None
            g2 = poly_gcd(n2, d1) if not (n2.is_constant() or d1.is_constant()) else None
            if g1 is not None and not g1.is_constant():
                n1, d2 = n1.exact_div(g1), d2.exact_div(g1)
            if g2 is not None and not g2.is_constant():
                n2, d1 = n2.exact_div(g2), d1.exact_div(g2)
            return _monic_den(n1 * n2, d1 * d2).collapse()
        if isinstance(other, (Rational, Cyclotomic)):
            if other == 0:
                return 0
            return RatFun(self.num * other, self.den, _reduced=True)
        return NotImplemented

    __rmul__ = __mul__

    def inverse(self):
        if self.num.is_zero():
            raise ZeroDivisionError("division by zero")
        return RatFun(self.den, self.num).collapse()

    def __truediv__(self, other):
        if isinstance(other, RatFun):
            return RatFun(self.num * other.den, self.den * other.num).collapse()
        if isinstance(other, (Rational, Cyclotomic)):
            if other == 0:
                raise ZeroDivisionError("division by zero")
            return RatFun(self.num * cdiv(1, other), self.den, _reduced=True)
        return NotImplemented

    def __rtruediv__(self, other):
        if isinstance(other, (Rational, Cyclotomic)):
            return self.inverse() * other
        return NotImplemented

    def __pow__(self, e):
        if e < 0:
            return self.inverse() ** (-e)
        return RatFun(self.num ** e, self.den ** e, _reduced=True).collapse()

    def __eq__(self, other):
        if isinstance(other, RatFun):
            return self.num == other.num and self.den == other.den
        if isinstance(other, (Rational, Cyclotomic)):
            return self.den.is_constant() and self.num == other
        return NotImplemented

    def __hash__(self):
        if self.is_constant():
            return hash(as_number(self.num.constant_value()))
        return hash((self.num, self.den))

    def __bool__(self):
        return not self.num.is_zero()

    def __repr__(self):
        from .expr import render

        return f"RatFun({render(self)})"


def is_scalar(x):
    return isinstance(x, (Rational, Cyclotomic, RatFun))


def collapse(x):
    if isinstance(x, RatFun):
        return x.collapse()
    return as_number(x)


def as_ratfun(x):
    if isinstance(x, RatFun):
        return x
    if isinstance(x, Poly):
        return RatFun(x, _reduced=True)
    return RatFun(Poly.const(x), _reduced=True)


def div(a, b):
    """Exact quotient of two scalars."""
    if isinstance(a, RatFun) or isinstance(b, RatFun):
        return collapse(as_ratfun(a) / as_ratfun(b))
    if isinstance(a, Cyclotomic) or isinstance(b, Cyclotomic):
        if b == 0:
            raise ZeroDivisionError("division by zero")
        return as_number(a * (b.inverse() if isinstance(b, Cyclotomic) else qdiv(1, b)))
    return qdiv(a, b)


def variables(x):
    if isinstance(x, RatFun):
        return set(x.num.gens) | set(x.den.gens)
    return set()


def normalize(num, den):
    """Reduced, normalized representative of ``num/den`` (always a RatFun)."""
    if not isinstance(num, Poly):
        num = Poly.const(num)
    if not isinstance(den, Poly):
        den = Poly.const(den)
    return RatFun(num, den)


def t_valuation(f, var="t"):
    """Order of vanishing of ``f`` at ``var = 0``; ``math.inf`` for zero."""
    if isinstance(f, RatFun):
        if f.num.is_zero():
            return math.inf
        return f.num.min_degree(var) - f.den.min_degree(var)
    return math.inf if f == 0 else 0


def _lowest_coefficient(p, var):
    d = p.min_degree(var)
    return p.coeffs_in(var).get(d, Poly())


def limit_at_zero(f, var="t"):
    """Limit of ``f`` as ``var -> 0``, or :data:`NO_LIMIT`."""
    v = t_valuation(f, var)
    if v > 0:
        return 0
    if v < 0:
        return NO_LIMIT
    if not isinstance(f, RatFun):
        return f
    return collapse(RatFun(_lowest_coefficient(f.num, var), _lowest_coefficient(f.den, var)))


def _subs_poly(p, var, value):
    """Substitute var -> value (RatFun) in Poly p; returns (numerator Poly, power of den)."""
    coeffs = p.coeffs_in(var)
    if not coeffs:
        return Poly(), 0
    top = max(coeffs)
    vn, vd = value.num, value.den
    acc = Poly()
    for d, c in coeffs.items():
        acc = acc + c * vn ** d * vd ** (top - d)
    return acc, top


def substitute(f, var, value):
    """Exact composition ``f(var := value)``."""
    value = as_ratfun(value)
    if not isinstance(f, RatFun):
        return f
    a, da = _subs_poly(f.num, var, value)
    b, db = _subs_poly(f.den, var, value)
    if b.is_zero():
        raise ZeroDivisionError(f"substituting {var} makes the denominator vanish")
    q = value.den
    if da > db:
        b = b * q ** (da - db)
    elif db > da:
        a = a * q ** (db - da)
    return collapse(RatFun(a, b))


def evaluate(f, assignment):
    """Exact value of ``f`` at a point (name -> number)."""
    if not isinstance(f, RatFun):
        return f
    d = f.den.evaluate(assignment)
    if d == 0:
        from .expr import render_poly

        raise ZeroDivisionError(f"denominator factor {render_poly(f.den)} vanishes at the point")
    return as_number(f.num.evaluate(assignment) * (d.inverse() if isinstance(d, Cyclotomic) else qdiv(1, d)))
