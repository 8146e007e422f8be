"""Buchberger's algorithm over Q(zeta_12) with graded reverse lexicographic order.

Only what the flag and null-subspace solvers need: reduced Groebner bases,
normal forms and the Nullstellensatz infeasibility test (1 in I).
"""

from __future__ import annotations

import enum
import heapq
import time
from dataclasses import dataclass, field

from ._kernels import kernels
from .scalars.poly import Poly, gen_key

__all__ = [
    "Budget", "BudgetExceeded", "PolyIdeal", "GroebnerBasis", "Answer",
    "buchberger", "normal_form", "is_infeasible",
]


class BudgetExceeded(Exception):
    """Raised when a Groebner computation hits its degree, size or time cap."""


@dataclass
class Budget:
    max_degree: int = 12
    max_basis: int = 500
    deadline: float | None = None  # absolute time.monotonic() value

    @classmethod
    def from_ms(cls, ms, **kw):
        if ms is None:
            return cls(**kw)
        return cls(deadline=time.monotonic() + ms / 1000.0, **kw)

    def expired(self):
        return self.deadline is not None and time.monotonic() > self.deadline


class Answer(enum.Enum):
    YES = "yes"
    NO = "no"
    BUDGET_EXCEEDED = "budget_exceeded"


@dataclass
class PolyIdeal:
    generators: list
    gens: tuple = field(default=None)

    def __post_init__(self):
        self.generators = [g if isinstance(g, Poly) else Poly.const(g) for g in self.generators]
        self.generators = [g for g in self.generators if not g.is_zero()]
        if self.gens is None:
            names = set()
            for g in self.generators:
                names.update(g.gens)
            self.gens = tuple(sorted(names, key=gen_key))
        else:
            self.gens = tuple(self.gens)

    def dicts(self):
        return [g._aligned(self.gens) for g in self.generators]


@dataclass
class GroebnerBasis:
    gens: tuple
    polys: list  # list of dicts, monic, sorted by leading exponent descending

    def as_polys(self):
        return [Poly._make(self.gens, dict(p)) for p in self.polys]

    def is_unit(self):
        return len(self.polys) == 1 and set(self.polys[0]) == {(0,) * len(self.gens)}

    def leads(self):
        return [(kernels.leading_exponent(p), p) for p in self.polys]


def _degree(f):
    return max(sum(e) for e in f)


def _reduce_basis(G):
    """Minimal then reduced basis from a list of (lead, monic dict)."""
    minimal = []
    for i, (le, g) in enumerate(G):
        if any(kernels.divides(lo, le) and (lo != le or j < i)
               for j, (lo, _) in enumerate(G) if j != i):
            continue
        minimal.append((le, g))
    reduced = []
    for i, (le, g) in enumerate(minimal):
        others = [x for j, x in enumerate(minimal) if j != i]
        tail = {e: c for e, c in g.items() if e != le}
        tail = kernels.normal_form(tail, others)
        tail[le] = 1
        reduced.append((le, tail))
    reduced.sort(key=lambda x: kernels.grevlex_key(x[0]), reverse=True)
    return reduced


def buchberger(ideal, budget=None):
    """Reduced Groebner basis of ``ideal``; raises :class:`BudgetExceeded`."""
    budget = budget or Budget()
    n = len(ideal.gens)
    zero = (0,) * n
    G = []
    for f in ideal.dicts():
        if f:
            G.append(kernels.make_monic(f))
    if any(le == zero for le, _ in G):
        return GroebnerBasis(ideal.gens, [{zero: 1}])
    pairs = set()
    heap = []

    def add_pair(i, j):
        pairs.add((i, j))
        heapq.heappush(heap, (sum(kernels.lcm(G[i][0], G[j][0])), i, j))

    for j in range(len(G)):
        for i in range(j):
            add_pair(i, j)

    while pairs:
        if budget.expired():
            raise BudgetExceeded("time budget exhausted")
        _, a, b = heapq.heappop(heap)
        p = (a, b)
        if p not in pairs:
            continue
        pairs.discard(p)
        i, j = p
        li, lj = G[i][0], G[j][0]
        m = kernels.lcm(li, lj)
        # first criterion: coprime leading monomials
        if all(x == 0 or y == 0 for x, y in zip(li, lj)):
            continue
        # second criterion (chain)
        skip = False
        for k in range(len(G)):
            if k == i or k == j:
                continue
            if kernels.divides(G[k][0], m):
                a, b = (min(i, k), max(i, k)), (min(j, k), max(j, k))
                if a not in pairs and b not in pairs:
                    skip = True
                    break
        if skip:
            continue
        s = kernels.spoly(li, G[i][1], lj, G[j][1])
        h = kernels.normal_form(s, G)
        if not h:
            continue
        le, h = kernels.make_monic(h)
        if le == zero:
            return GroebnerBasis(ideal.gens, [{zero: 1}])
        if _degree(h) > budget.max_degree:
            raise BudgetExceeded(f"degree {_degree(h)} exceeds {budget.max_degree}")
        G.append((le, h))
        if len(G) > budget.max_basis:
            raise BudgetExceeded(f"basis size exceeds {budget.max_basis}")
        new = len(G) - 1
        for k in range(new):
            add_pair(k, new)
    return GroebnerBasis(ideal.gens, [g for _, g in _reduce_basis(G)])


def normal_form(f, G, gens=None):
    """Remainder of ``f`` on division by the polynomials ``G`` (a list of Poly)."""
    if gens is None:
        names = set(f.gens)
        for g in G:
            names.update(g.gens)
        gens = tuple(sorted(names, key=gen_key))
    basis = [kernels.make_monic(g._aligned(gens)) for g in G if not g.is_zero()]
    return Poly._make(gens, kernels.normal_form(f._aligned(gens), basis))


def is_infeasible(ideal, budget=None):
    """YES iff the ideal has no common zero over C (reduced basis is {1})."""
    try:
        gb = buchberger(ideal, budget)
    except BudgetExceeded:
        return Answer.BUDGET_EXCEEDED
    return Answer.YES if gb.is_unit() else Answer.NO


def _linear_value(poly_dict, n):
    """If the dict is ``x_i - c``, return (i, c)."""
    if len(poly_dict) > 2:
        return None
    var = None
    const = 0
    for e, c in poly_dict.items():
        s = sum(e)
        if s == 0:
            const = c
        elif s == 1 and c == 1:
            var = e.index(1)
        else:
            return None
    if var is None:
        return None
    return var, -const


DEFAULT_CANDIDATES = (0, 1, -1, 2, -2, 3, -3)


def find_point(polys, gens=None, candidates=DEFAULT_CANDIDATES, budget=None):
    """Greedy search for a common zero with coordinates from ``candidates``.

    Variables pinned down by the ideal (a basis element ``x - c``) take that
    value directly.  Returns {name: value} or None when the greedy search fails
    (which does not prove infeasibility).
    """
    ideal = PolyIdeal(list(polys), gens)
    gens = ideal.gens
    n = len(gens)
    extra = []
    point = {}
    try:
        gb = buchberger(ideal, budget)
    except BudgetExceeded:
        return None
    if gb.is_unit():
        return None
    for _ in range(n + 1):
        for p in gb.polys:
            lv = _linear_value(p, n)
            if lv is not None:
                point[gens[lv[0]]] = lv[1]
        if len(point) == n:
            return point
        name = next(g for g in gens if g not in point)
        found = False
        for c in candidates:
            trial = extra + [Poly.var(name) - c]
            try:
                g2 = buchberger(PolyIdeal(ideal.generators + trial, gens), budget)
            except BudgetExceeded:
                return None
            if not g2.is_unit():
                extra, gb, found = trial, g2, True
                break
        if not found:
            return None
    return point if len(point) == n else None
