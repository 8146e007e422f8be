"""Exact linear algebra over the scalar tower.

Row reduction works over the field of scalars (numbers or rational
functions).  Ranks over parameter fields use fraction-free Bareiss
elimination on polynomial entries so no gcds are needed.
"""

from __future__ import annotations

import math
from fractions import Fraction

from .scalars import Poly, RatFun, collapse, div
from .scalars.cyclotomic import Cyclotomic

__all__ = [
    "Subspace", "rref", "nullspace", "bareiss_rank", "determinant", "inverse",
    "matmul", "vecmat", "identity", "is_constant_scalar",
]


def is_constant_scalar(x):
    return not isinstance(x, RatFun)


def identity(n):
    return [[1 if i == j else 0 for j in range(n)] for i in range(n)]


def matmul(a, b):
    m = len(b[0]) if b else 0
    out = []
    for row in a:
        acc = [0] * m
        for k, x in enumerate(row):
            if x == 0:
                continue
            for j, y in enumerate(b[k]):
                if y != 0:
                    acc[j] = acc[j] + x * y
        out.append(acc)
    return out


def vecmat(v, m):
    """Row vector times matrix."""
    return matmul([v], m)[0]


def _pick_pivot(rows, col, start):
    best = None
    for r in range(start, len(rows)):
        x = rows[r][col]
        if x == 0:
            continue
        if is_constant_scalar(x):
            return r
        if best is None:
            best = r
    return best


def rref(rows, ncols=None):
    """Reduced row echelon form.

    Returns ``(rows, pivots, locus)`` where ``locus`` lists the non-constant
    pivot values: the result is valid wherever none of them vanishes.
    """
    rows = [list(r) for r in rows]
    if ncols is None:
        ncols = len(rows[0]) if rows else 0
    pivots = []
    locus = []
    r = 0
    for c in range(ncols):
        if r >= len(rows):
            break
        p = _pick_pivot(rows, c, r)
        if p is None:
            continue
        rows[r], rows[p] = rows[p], rows[r]
        pv = rows[r][c]
        if not is_constant_scalar(pv):
            locus.append(pv)
        if pv != 1:
            rows[r] = [div(x, pv) if x != 0 else 0 for x in rows[r]]
        for i in range(len(rows)):
            if i != r:
                f = rows[i][c]
                if f != 0:
                    rows[i] = [collapse(x - f * y) if y != 0 else x
                               for x, y in zip(rows[i], rows[r])]
        pivots.append(c)
        r += 1
    return rows[:r], pivots, locus


def nullspace(rows, ncols):
    """Basis of {x : rows . x = 0} (x as column vector)."""
    red, pivots, _ = rref(rows, ncols)
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for f in free:
        v = [0] * ncols
        v[f] = 1
        for row, pc in zip(red, pivots):
            if row[f] != 0:
                v[pc] = -row[f]
        basis.append(v)
    return basis


# fraction-free elimination ------------------------------------------------


def _as_poly_rows(rows):
    """Clear denominators row by row; returns Poly/number entries."""
    out = []
    symbolic = False
    for row in rows:
        dens = []
        for x in row:
            if isinstance(x, RatFun):
                symbolic = True
                if not x.den.is_constant() and x.den not in dens:
                    dens.append(x.den)
        scale = Poly.const(1)
        for d in dens:
            scale = scale * d
        new = []
        for x in row:
            if isinstance(x, RatFun):
                new.append((x * RatFun(scale, _reduced=True)).num if dens else x.num)
            else:
                new.append(x)
        out.append(new)
    if symbolic:
        out = [[x if isinstance(x, Poly) else Poly.const(x) for x in row] for row in out]
    else:
        out = [_integer_row(row) for row in out]
    return out, symbolic


def _integer_row(row):
    # rational rows scaled to integers keep Bareiss in exact int arithmetic
    if not all(isinstance(x, (int, Fraction)) for x in row):
        return row
    den = 1
    for x in row:
        if isinstance(x, Fraction):
            den = den * x.denominator // math.gcd(den, x.denominator)
    if den == 1:
        return [int(x) for x in row]
    return [int(x * den) for x in row]


def _exact(a, b, symbolic):
    if symbolic:
        return a.exact_div(b)
    if isinstance(a, int) and isinstance(b, int):
        q, r = divmod(a, b)
        if r == 0:
            return q
    return div(a, b)


def _bareiss(rows, ncols):
    m, symbolic = _as_poly_rows(rows)
    zero = Poly() if symbolic else 0
    is_zero = (lambda x: x.is_zero()) if symbolic else (lambda x: x == 0)
    is_const = (lambda x: x.is_constant()) if symbolic else (lambda x: True)
    prev = Poly.const(1) if symbolic else 1
    r = 0
    pivots = []
    nrows = len(m)
    for c in range(ncols):
        if r >= nrows:
            break
        p = None
        for i in range(r, nrows):
            if not is_zero(m[i][c]):
                if is_const(m[i][c]):
                    p = i
                    break
                if p is None:
                    p = i
        if p is None:
            continue
        m[r], m[p] = m[p], m[r]
        pv = m[r][c]
        for i in range(r + 1, nrows):
            a = m[i][c]
            row_i = m[i]
            row_r = m[r]
            for j in range(c + 1, ncols):
                v = pv * row_i[j] - a * row_r[j]
                row_i[j] = zero if is_zero(v) else _exact(v, prev, symbolic)
            row_i[c] = zero
        pivots.append(pv)
        prev = pv
        r += 1
    return r, pivots


def bareiss_rank(rows, ncols=None):
    """Generic rank (over the rational-function field) by Bareiss elimination.

    Returns ``(rank, last_pivot)``; the rank is attained wherever the last
    pivot (a polynomial) does not vanish.
    """
    if not rows:
        return 0, 1
    if ncols is None:
        ncols = len(rows[0])
    r, pivots = _bareiss(rows, ncols)
    last = pivots[-1] if pivots else 1
    if isinstance(last, Poly):
        last = collapse(RatFun(last, _reduced=True))
    return r, last


def determinant(m):
    """Determinant of a square matrix (scalars)."""
    n = len(m)
    if n == 0:
        return 1
    # Gaussian elimination over the scalar field, tracking swaps
    a = [list(r) for r in m]
    det = 1
    for c in range(n):
        p = _pick_pivot(a, c, c)
        if p is None:
            return 0
        if p != c:
            a[c], a[p] = a[p], a[c]
            det = -det
        pv = a[c][c]
        det = collapse(det * pv)
        for i in range(c + 1, n):
            f = a[i][c]
            if f != 0:
                q = div(f, pv)
                a[i] = [collapse(x - q * y) if y != 0 else x for x, y in zip(a[i], a[c])]
    return det


def inverse(m):
    n = len(m)
    aug = [list(row) + [1 if i == j else 0 for j in range(n)] for i, row in enumerate(m)]
    red, pivots, _ = rref(aug, n)
    if pivots != list(range(n)):
        raise ZeroDivisionError("singular matrix")
    return [row[n:] for row in red]


class Subspace:
    """Row-reduced basis of a subspace of the ambient coordinate space."""

    __slots__ = ("ambient", "basis", "pivots", "locus")

    def __init__(self, ambient, basis=(), _reduced=False):
        self.ambient = ambient
        if _reduced:
            self.basis, self.pivots, self.locus = list(basis), None, []
        else:
            rows = [list(v) for v in basis if any(x != 0 for x in v)]
            self.basis, self.pivots, self.locus = rref(rows, ambient)
        if self.pivots is None:
            self.pivots = [next(i for i, x in enumerate(r) if x != 0) for r in self.basis]

    @classmethod
    def zero(cls, n):
        return cls(n, [], _reduced=True)

    @classmethod
    def whole(cls, n):
        return cls(n, identity(n), _reduced=True)

    @classmethod
    def span_of_basis_vectors(cls, n, indices):
        return cls(n, [[1 if j == i else 0 for j in range(n)] for i in sorted(indices)],
                   _reduced=True)

    @property
    def dim(self):
        return len(self.basis)

    def is_zero(self):
        return not self.basis

    def __add__(self, other):
        return Subspace(self.ambient, self.basis + other.basis)

    def contains(self, v):
        if all(x == 0 for x in v):
            return True
        return Subspace(self.ambient, self.basis + [list(v)]).dim == self.dim

    def contains_subspace(self, other):
        return (self + other).dim == self.dim

    def __eq__(self, other):
        if not isinstance(other, Subspace):
            return NotImplemented
        return self.ambient == other.ambient and self.basis == other.basis

    def __hash__(self):
        return hash((self.ambient, len(self.basis)))

    def __repr__(self):
        from .scalars import render

        rows = ["(" + ", ".join(render(x) for x in r) + ")" for r in self.basis]
        return f"Subspace(dim={self.dim}, [{'; '.join(rows)}])"
