"""Arithmetic in the cyclotomic field Q(zeta) with zeta a primitive 12th root of unity.

Elements are stored as ``c0 + c1*z + c2*z^2 + c3*z^3`` reduced modulo the
cyclotomic polynomial ``z^4 - z^2 + 1``.  ``I = z^3`` and ``w = z^4 = z^2 - 1``.

Arithmetic helpers in this module accept plain rationals (``int`` or
``Fraction``) as well as :class:`Cyclotomic`; results that happen to be
rational are demoted back to plain rationals so the common case stays cheap.
"""

from __future__ import annotations

from fractions import Fraction
from numbers import Rational

__all__ = ["Cyclotomic", "ZETA", "I", "OMEGA", "as_number", "qdiv", "is_number"]


def qdiv(a, b):
    """Exact quotient of two rationals (``int`` / ``Fraction``)."""
    if b == 0:
        raise ZeroDivisionError("division by zero")
    if isinstance(a, int) and isinstance(b, int):
        if a % b == 0:
            return a // b
        return Fraction(a, b)
    q = Fraction(a) / Fraction(b)
    return q.numerator if q.denominator == 1 else q


def _demote_rational(q):
    if isinstance(q, Fraction) and q.denominator == 1:
        return q.numerator
    return q


def _reduce(c):
    # c: list of 7 coefficients for z^0..z^6
    # z^6 = -1, z^5 = z^3 - z, z^4 = z^2 - 1
    c0, c1, c2, c3, c4, c5, c6 = c
    c0 -= c6
    c3 += c5
    c1 -= c5
    c2 += c4
    c0 -= c4
    return (c0, c1, c2, c3)


class Cyclotomic:
    """Immutable element of Q(zeta_12)."""

    __slots__ = ("c", "_hash")

    def __init__(self, c0=0, c1=0, c2=0, c3=0):
        self.c = tuple(_demote_rational(Fraction(x) if not isinstance(x, int) else x)
                       for x in (c0, c1, c2, c3))
        self._hash = None

    @classmethod
    def _raw(cls, c):
        obj = object.__new__(cls)
        obj.c = c
        obj._hash = None
        return obj

    @staticmethod
    def make(c):
        """Build from a 4-tuple of rationals, demoting to a rational if possible."""
        c = tuple(_demote_rational(x) for x in c)
        if c[1] == 0 and c[2] == 0 and c[3] == 0:
            return c[0]
        return Cyclotomic._raw(c)

    @staticmethod
    def coeffs(x):
        if isinstance(x, Cyclotomic):
            return x.c
        return (x, 0, 0, 0)

    def is_rational(self):
        return self.c[1] == 0 and self.c[2] == 0 and self.c[3] == 0

    # arithmetic -------------------------------------------------------

    def __add__(self, other):
        if isinstance(other, Cyclotomic):
            a, b = self.c, other.c
            return Cyclotomic.make((a[0] + b[0], a[1] + b[1], a[2] + b[2], a[3] + b[3]))
        if isinstance(other, Rational):
            a = self.c
            return Cyclotomic._raw((a[0] + other, a[1], a[2], a[3]))
        return NotImplemented

    __radd__ = __add__

    def __neg__(self):
        a = self.c
        return Cyclotomic._raw((-a[0], -a[1], -a[2], -a[3]))

    def __sub__(self, other):
        if isinstance(other, (Cyclotomic, Rational)):
            return self + (-other)
        return NotImplemented

    def __rsub__(self, other):
        if isinstance(other, Rational):
            return (-self) + other
        return NotImplemented

    def __mul__(self, other):
        if isinstance(other, Cyclotomic):
            a, b = self.c, other.c
            prod = [0] * 7
            for i in range(4):
                ai = a[i]
                if ai == 0:
                    continue
                for j in range(4):
                    if b[j] != 0:
                        prod[i + j] += ai * b[j]
            return Cyclotomic.make(_reduce(prod))
        if isinstance(other, Rational):
            if other == 0:
                return 0
            a = self.c
            return Cyclotomic._raw((a[0] * other, a[1] * other, a[2] * other, a[3] * other))
        return NotImplemented

    __rmul__ = __mul__

    def galois(self, k):
        """Image under the automorphism z -> z^k (k coprime to 12)."""
        zk = ZETA_POWERS[k % 12]
        acc = 0
        power = 1
        for j, cj in enumerate(self.c):
            if cj != 0:
                acc = acc + cj * power
            power = power * zk
        return acc

    def norm(self):
        """Field norm down to Q."""
        n = self
        for k in (5, 7, 11):
            n = n * self.galois(k)
        assert not isinstance(n, Cyclotomic)
        return n

    def inverse(self):
        conj = 1
        for k in (5, 7, 11):
            conj = conj * self.galois(k)
        nrm = self * conj
        if nrm == 0:
            raise ZeroDivisionError("division by zero")
        return conj * qdiv(1, nrm)

    def __truediv__(self, other):
        if isinstance(other, Cyclotomic):
            return self * other.inverse()
        if isinstance(other, Rational):
            return self * qdiv(1, other)
        return NotImplemented

    def __rtruediv__(self, other):
        if isinstance(other, Rational):
            return other * self.inverse()
        return NotImplemented

    def __pow__(self, e):
        if not isinstance(e, int):
            return NotImplemented
        if e < 0:
            return self.inverse() ** (-e)
        result, base = 1, self
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    # comparison / hashing ----------------------------------------------

    def __eq__(self, other):
        if isinstance(other, Cyclotomic):
            return self.c == other.c
        if isinstance(other, Rational):
            return self.c[0] == other and self.is_rational()
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(self.c[0]) if self.is_rational() else hash(self.c)
        return self._hash

    def __bool__(self):
        return any(x != 0 for x in self.c)

    def __repr__(self):
        return f"Cyclotomic{self.c!r}"

    def iw_coordinates(self):
        """Coordinates (a, b, c, d) with self = a + b*w + c*I + d*I*w."""
        c0, c1, c2, c3 = self.c
        # z = -I*w, z^2 = w + 1, z^3 = I
        return (c0 + c2, c2, c3, -c1)


def is_number(x):
    return isinstance(x, (Rational, Cyclotomic))


def as_number(x):
    """Demote a Cyclotomic with zero irrational part to a rational."""
    if isinstance(x, Cyclotomic):
        return Cyclotomic.make(x.c)
    if isinstance(x, Fraction):
        return _demote_rational(x)
    return x


ZETA = Cyclotomic._raw((0, 1, 0, 0))
ZETA_POWERS = [1]
for _ in range(11):
    ZETA_POWERS.append(ZETA_POWERS[-1] * ZETA)
I = ZETA_POWERS[3]
OMEGA = ZETA_POWERS[4]
