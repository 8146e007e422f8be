"""Sparse multivariate polynomials over Q(zeta_12).

A :class:`Poly` carries its generator names and a map from exponent tuples to
nonzero coefficients.  Generators are kept in a canonical order (parameters by
name, then the deformation variables ``s`` and ``t``) and unused generators are
dropped after every operation, so constants always have ``gens == ()``.
"""

from __future__ import annotations

import math
from fractions import Fraction
from numbers import Rational

from .cyclotomic import Cyclotomic, qdiv

__all__ = ["Poly", "gen_key", "poly_gcd", "grevlex_key"]

DEFORMATION_VARS = ("s", "t")


def gen_key(name):
    return (name in DEFORMATION_VARS, name)


def grevlex_key(exp):
    return (sum(exp), tuple(-x for x in reversed(exp)))


def cdiv(a, b):
    """Exact quotient of two field coefficients."""
    if isinstance(a, Cyclotomic) or isinstance(b, Cyclotomic):
        if isinstance(b, Cyclotomic):
            return a * b.inverse()
        return a * qdiv(1, b)
    return qdiv(a, b)


class Poly:
    __slots__ = ("gens", "terms")

    def __init__(self, gens=(), terms=None):
        self.gens = tuple(gens)
        self.terms = terms if terms is not None else {}

    # constructors -------------------------------------------------------

    @classmethod
    def const(cls, c):
        if c == 0:
            return cls((), {})
        return cls((), {(): c})

    @classmethod
    def var(cls, name, power=1):
        return cls((name,), {(power,): 1})

    @classmethod
    def _make(cls, gens, terms):
        """Drop generators that no longer occur."""
        if gens:
            used = [False] * len(gens)
            for e in terms:
                for i, x in enumerate(e):
                    if x:
                        used[i] = True
            if not all(used):
                keep = [i for i, u in enumerate(used) if u]
                gens = tuple(gens[i] for i in keep)
                terms = {tuple(e[i] for i in keep): c for e, c in terms.items()}
        return cls(gens, terms)

    # structure ----------------------------------------------------------

    def is_zero(self):
        return not self.terms

    def is_constant(self):
        return not self.gens

    def constant_value(self):
        if self.gens:
            raise ValueError("polynomial is not constant")
        return self.terms.get((), 0)

    def is_monomial(self):
        return len(self.terms) == 1

    def total_degree(self):
        return max((sum(e) for e in self.terms), default=-1)

    def degree(self, name):
        if name not in self.gens:
            return 0 if self.terms else -1
        i = self.gens.index(name)
        return max((e[i] for e in self.terms), default=-1)

    def min_degree(self, name):
        if name not in self.gens:
            return 0
        i = self.gens.index(name)
        return min((e[i] for e in self.terms), default=0)

    def leading_term(self):
        exp = max(self.terms, key=grevlex_key)
        return exp, self.terms[exp]

    def leading_coefficient(self):
        if not self.terms:
            return 0
        return self.leading_term()[1]

    def _aligned(self, gens):
        if gens == self.gens:
            return self.terms
        idx = [gens.index(g) for g in self.gens]
        n = len(gens)
        out = {}
        for e, c in self.terms.items():
            full = [0] * n
            for i, x in zip(idx, e):
                full[i] = x
            out[tuple(full)] = c
        return out

    def _unify(self, other):
        if self.gens == other.gens:
            return self.gens, self.terms, other.terms
        if not other.gens:
            gens = self.gens
        elif not self.gens:
            gens = other.gens
        else:
            gens = tuple(sorted(set(self.gens) | set(other.gens), key=gen_key))
        return gens, self._aligned(gens), other._aligned(gens)

    # arithmetic ---------------------------------------------------------

    def __add__(self, other):
        if not isinstance(other, Poly):
            other = Poly.const(other)
        gens, a, b = self._unify(other)
        out = dict(a)
        for e, c in b.items():
            v = out.get(e, 0) + c
            if v == 0:
                out.pop(e, None)
            else:
                out[e] = v
        return Poly._make(gens, out)

    __radd__ = __add__

    def __neg__(self):
        return Poly(self.gens, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other):
        if not isinstance(other, Poly):
            other = Poly.const(other)
        return self + (-other)

    def __rsub__(self, other):
        return Poly.const(other) - self

    def scale(self, c):
        if c == 0:
            return Poly()
        return Poly(self.gens, {e: v * c for e, v in self.terms.items()})

    def __mul__(self, other):
        if not isinstance(other, Poly):
            return self.scale(other)
        if not other.gens:
            return self.scale(other.terms.get((), 0))
        if not self.gens:
            return other.scale(self.terms.get((), 0))
        gens, a, b = self._unify(other)
        out = {}
        for ea, ca in a.items():
            for eb, cb in b.items():
                e = tuple(x + y for x, y in zip(ea, eb))
                v = out.get(e, 0) + ca * cb
                if v == 0:
                    out.pop(e, None)
                else:
                    out[e] = v
        return Poly._make(gens, out)

    __rmul__ = __mul__

    def __pow__(self, e):
        if e < 0:
            raise ValueError("negative exponent")
        result, base = Poly.const(1), self
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def __eq__(self, other):
        if not isinstance(other, Poly):
            if isinstance(other, (Rational, Cyclotomic)):
                other = Poly.const(other)
            else:
                return NotImplemented
        return self.gens == other.gens and self.terms == other.terms

    def __hash__(self):
        return hash((self.gens, frozenset(self.terms.items())))

    def __repr__(self):
        from .expr import render_poly

        return f"Poly({render_poly(self)})"

    # recursive view -----------------------------------------------------

    def coeffs_in(self, name):
        """Return {degree: coefficient Poly} viewing self as univariate in ``name``."""
        if name not in self.gens:
            return {0: self} if self.terms else {}
        i = self.gens.index(name)
        rest = self.gens[:i] + self.gens[i + 1:]
        buckets = {}
        for e, c in self.terms.items():
            buckets.setdefault(e[i], {})[e[:i] + e[i + 1:]] = c
        return {d: Poly._make(rest, t) for d, t in buckets.items()}

    @classmethod
    def from_coeffs_in(cls, name, coeffs):
        x = cls.var(name)
        acc = cls()
        for d, c in coeffs.items():
            acc = acc + c * x ** d
        return acc

    def monomial_content(self):
        """Exponent-wise minimum over all terms."""
        if not self.terms:
            return ()
        it = iter(self.terms)
        m = list(next(it))
        for e in it:
            for i, x in enumerate(e):
                if x < m[i]:
                    m[i] = x
        return tuple(m)

    def divide_monomial(self, exp):
        return Poly._make(self.gens, {tuple(a - b for a, b in zip(e, exp)): c
                                      for e, c in self.terms.items()})

    def exact_div(self, other):
        """Quotient of an exact division; raises ArithmeticError otherwise."""
        if other.is_zero():
            raise ZeroDivisionError("division by zero")
        if not other.gens:
            return self.scale(cdiv(1, other.terms[()]))
        if self.is_zero():
            return Poly()
        if other.is_monomial():
            (oe, oc), = other.terms.items()
            gens, a, b = self._unify(other)
            (be,) = b.keys()
            out = {}
            inv = cdiv(1, oc)
            for e, c in a.items():
                q = tuple(x - y for x, y in zip(e, be))
                if min(q) < 0:
                    raise ArithmeticError("inexact division")
                out[q] = c * inv
            return Poly._make(gens, out)
        gens, a, b = self._unify(other)
        lead = max(b, key=grevlex_key)
        inv = cdiv(1, b[lead])
        rem = dict(a)
        quot = {}
        while rem:
            e = max(rem, key=grevlex_key)
            q = tuple(x - y for x, y in zip(e, lead))
            if min(q) < 0:
                raise ArithmeticError("inexact division")
            c = rem[e] * inv
            quot[q] = c
            for eb, cb in b.items():
                m = tuple(x + y for x, y in zip(q, eb))
                v = rem.get(m, 0) - c * cb
                if v == 0:
                    rem.pop(m, None)
                else:
                    rem[m] = v
        return Poly._make(gens, quot)

    def monic(self):
        if self.is_zero():
            return self
        lc = self.leading_coefficient()
        if lc == 1:
            return self
        return self.scale(cdiv(1, lc))

    def evaluate(self, assignment):
        """Evaluate at ``assignment`` (name -> number); all generators must be assigned."""
        missing = [g for g in self.gens if g not in assignment]
        if missing:
            raise KeyError(f"unassigned variables: {', '.join(missing)}")
        vals = [assignment[g] for g in self.gens]
        acc = 0
        for e, c in self.terms.items():
            term = c
            for v, k in zip(vals, e):
                if k:
                    term = term * v ** k
            acc = acc + term
        return acc


# gcd ----------------------------------------------------------------------


def _uni_deg(f):
    return max(f) if f else -1


def _uni_trim(f):
    return {d: c for d, c in f.items() if not c.is_zero()}


def _prem(a, b):
    """Pseudo-remainder of univariate polys with Poly coefficients."""
    n = _uni_deg(b)
    lb = b[n]
    r = dict(a)
    m = _uni_deg(r)
    for k in range(m - n, -1, -1):
        dr = _uni_deg(r)
        if dr == n + k:
            lr = r[dr]
            r = {d: c * lb for d, c in r.items()}
            for d, c in b.items():
                r[d + k] = r.get(d + k, Poly()) - lr * c
            r = _uni_trim(r)
        else:
            r = {d: c * lb for d, c in r.items()}
    return r


def _content_list(polys):
    g = None
    for c in polys:
        g = c if g is None else poly_gcd(g, c)
        if g.is_constant():
            return Poly.const(1)
    return g if g is not None else Poly()


def _integral(f):
    """Scale a rational-coefficient poly to integer coefficients (up to a constant)."""
    den = 1
    for c in f.terms.values():
        if isinstance(c, Fraction):
            den = den * c.denominator // math.gcd(den, c.denominator)
        elif not isinstance(c, int):
            return f
    if den == 1 and all(isinstance(c, int) for c in f.terms.values()):
        return f
    return Poly(f.gens, {e: int(c * den) for e, c in f.terms.items()})


def poly_gcd(f, g):
    """Monic gcd of two polynomials (content extraction + subresultant PRS)."""
    f, g = _integral(f), _integral(g)
    if f.is_zero():
        return g.monic()
    if g.is_zero():
        return f.monic()
    if f.is_constant() or g.is_constant():
        return Poly.const(1)
    if f.is_monomial() or g.is_monomial():
        gens, a, b = f._unify(g)
        ma = Poly(gens, a).monomial_content()
        mb = Poly(gens, b).monomial_content()
        return Poly._make(gens, {tuple(min(x, y) for x, y in zip(ma, mb)): 1})
    common = [v for v in f.gens if v in g.gens]
    if not common:
        return Poly.const(1)
    x = common[-1]
    fc, gc = f.coeffs_in(x), g.coeffs_in(x)
    cf = _content_list(fc.values())
    cg = _content_list(gc.values())
    c = poly_gcd(cf, cg)
    a = {d: v.exact_div(cf) for d, v in fc.items()}
    b = {d: v.exact_div(cg) for d, v in gc.items()}
    if _uni_deg(a) < _uni_deg(b):
        a, b = b, a
    gval = Poly.const(1)
    h = Poly.const(1)
    while True:
        delta = _uni_deg(a) - _uni_deg(b)
        r = _prem(a, b)
        if not r:
            break
        if _uni_deg(r) == 0:
            b = {0: Poly.const(1)}
            break
        a = b
        div = gval * h ** delta
        b = {d: v.exact_div(div) for d, v in r.items()}
        gval = a[_uni_deg(a)]
        if delta == 0:
            pass
        elif delta == 1:
            h = gval
        else:
            h = (gval ** delta).exact_div(h ** (delta - 1))
    cb = _content_list(b.values())
    prim = Poly.from_coeffs_in(x, {d: v.exact_div(cb) for d, v in b.items()})
    return (c * prim).monic()
