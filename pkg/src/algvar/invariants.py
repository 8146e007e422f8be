"""Basis-independent invariants and the necessary-condition screen.

Ranks over parameter fields are generic ranks (Bareiss over the rational
function field).  ``derivation_dim`` also samples a few rational points and
warns when a sampled rank differs, which flags a non-generic locus.
"""

from __future__ import annotations

import random
import warnings
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations

from .algebra import AlgebraStructure, basis_vector, left_mult_matrix, multiply, power_chain
from .groebner import Budget, BudgetExceeded, PolyIdeal, buchberger, find_point
from .linalg import Subspace, bareiss_rank
from .scalars import Poly, RatFun, collapse, evaluate

__all__ = [
    "InvariantProfile", "FamilyDimension", "NullSubspaceResult", "ScreenResult",
    "NonGenericWarning", "derivation_dim", "orbit_dim", "family_dimension",
    "annihilator_dim", "power_dims", "left_power_dims", "invariant_profile",
    "max_null_subspace_dim", "degeneration_screen", "effective_parameter_count",
]


class NonGenericWarning(UserWarning):
    """A sampled parameter point has a different rank than the generic one."""


def _derivation_rows(A):
    """Linear system for D with D(e_i e_j) = D(e_i) e_j + e_i D(e_j).

    Unknown ``D[a][b]`` (coefficient of e_a in D(e_b)) sits in column a*n+b.
    """
    n = A.dim
    tab = A.table()
    rows = []
    for i in range(n):
        for j in range(i, n):
            cij = tab[i][j]
            for k in range(n):
                row = [0] * (n * n)
                for m, c in enumerate(cij):
                    if c != 0:
                        row[k * n + m] = row[k * n + m] + c
                for a in range(n):
                    c = tab[a][j][k]
                    if c != 0:
                        row[a * n + i] = row[a * n + i] - c
                    c = tab[i][a][k]
                    if c != 0:
                        row[a * n + j] = row[a * n + j] - c
                row = [collapse(x) for x in row]
                if any(x != 0 for x in row):
                    rows.append(row)
    return rows


def _sample_points(names, count, seed):
    rng = random.Random(seed)
    return [{v: Fraction(rng.randint(-40, 40), rng.randint(1, 9)) for v in names}
            for _ in range(count)]


def _eval_rows(rows, point):
    return [[evaluate(x, point) if isinstance(x, RatFun) else x for x in row] for row in rows]


def derivation_dim(A, samples=3, seed=0):
    """Dimension of Der(A); generic over the parameter field when symbolic."""
    n = A.dim
    rows = _derivation_rows(A)
    rank, _ = bareiss_rank(rows, n * n) if rows else (0, 1)
    free = sorted(A.free_variables())
    if free and samples:
        for point in _sample_points(free, samples, seed):
            try:
                r2, _ = bareiss_rank(_eval_rows(rows, point), n * n)
            except ZeroDivisionError:
                continue
            if r2 != rank:
                warnings.warn(NonGenericWarning(
                    f"{A.name or 'algebra'}: derivation rank {r2} at {point} "
                    f"differs from generic rank {rank}"), stacklevel=2)
    return n * n - rank


def orbit_dim(A, samples=3):
    return A.dim ** 2 - derivation_dim(A, samples=samples)


def annihilator_dim(A):
    """Generic dimension of {x : xA = 0}."""
    n = A.dim
    rows = []
    for i in range(n):
        rows.extend(left_mult_matrix(A, basis_vector(n, i)))
    rows = [r for r in rows if any(x != 0 for x in r)]
    if not rows:
        return n
    return n - bareiss_rank(rows, n)[0]


def power_dims(A):
    """dims of A^1, A^2, ... (ideal powers) as computed by ``power_chain``."""
    return tuple(s.dim for s in power_chain(A))


def left_power_dims(A, depth=None):
    """dims of A, A*A, A*(A*A), ... until zero or ``depth`` terms."""
    n = A.dim
    depth = depth or n + 1
    whole = Subspace.whole(n)
    cur = whole
    out = [n]
    from .algebra import subspace_product

    while len(out) < depth and not cur.is_zero():
        cur = subspace_product(A, whole, cur)
        out.append(cur.dim)
    return tuple(out)


@dataclass(frozen=True)
class InvariantProfile:
    power_dims: tuple
    ann_dim: int
    der_dim: int
    orbit_dim: int
    nilpotency_index: int | None
    left_power_dims: tuple = ()

    def power(self, k):
        """dim A^k (k >= 1), extending the computed chain."""
        if k <= len(self.power_dims):
            return self.power_dims[k - 1]
        return self.power_dims[-1] if self.nilpotency_index is None else 0

    def to_dict(self):
        return {
            "power_dims": list(self.power_dims),
            "left_power_dims": list(self.left_power_dims),
            "ann_dim": self.ann_dim,
            "der_dim": self.der_dim,
            "orbit_dim": self.orbit_dim,
            "nilpotency_index": self.nilpotency_index,
        }


def invariant_profile(A, samples=3):
    dims = power_dims(A)
    nil = len(dims) if dims[-1] == 0 else None
    der = derivation_dim(A, samples=samples)
    return InvariantProfile(dims, annihilator_dim(A), der, A.dim ** 2 - der, nil,
                            left_power_dims(A))


# family dimension ------------------------------------------------------------


def _poly_diff(p, name):
    if name not in p.gens:
        return Poly()
    i = p.gens.index(name)
    terms = {}
    for e, c in p.terms.items():
        if e[i]:
            e2 = e[:i] + (e[i] - 1,) + e[i + 1:]
            terms[e2] = c * e[i]
    return Poly._make(p.gens, terms)


def _diff(x, name):
    if not isinstance(x, RatFun):
        return 0
    num = _poly_diff(x.num, name) * x.den - x.num * _poly_diff(x.den, name)
    return collapse(RatFun(num, x.den * x.den))


def effective_parameter_count(A):
    """Generic number of parameters that move the algebra off its orbit.

    Rank of (tangent space of the orbit + parameter derivatives) minus the
    orbit dimension, computed over the parameter field.
    """
    n = A.dim
    free = sorted(A.free_variables())
    if not free:
        return 0
    # orbit tangent vectors are the columns of the derivation system
    ncols = n * n
    nrows_full = n * n * (n + 1) // 2
    # rebuild the full (unfiltered) system so rows are indexed by (i,j,k)
    tab = A.table()
    vectors = [[0] * nrows_full for _ in range(ncols)]
    r = 0
    for i in range(n):
        for j in range(i, n):
            for k in range(n):
                for m in range(n):
                    c = tab[i][j][m]
                    if c != 0:
                        vectors[k * n + m][r] += c
                for a in range(n):
                    c = tab[a][j][k]
                    if c != 0:
                        vectors[a * n + i][r] -= c
                    c = tab[i][a][k]
                    if c != 0:
                        vectors[a * n + j][r] -= c
                r += 1
    vectors = [[collapse(x) for x in v] for v in vectors]
    base = bareiss_rank([v for v in vectors if any(x != 0 for x in v)], nrows_full)[0]
    for name in free:
        vec = []
        for i in range(n):
            for j in range(i, n):
                for k in range(n):
                    vec.append(_diff(tab[i][j][k], name))
        vectors.append(vec)
    full = bareiss_rank([v for v in vectors if any(x != 0 for x in v)], nrows_full)[0]
    return full - base


@dataclass(frozen=True)
class FamilyDimension:
    name: str
    der_dim: int
    param_count: int
    gdim: int
    orbit_dim: int


def family_dimension(name, param_count=None, samples=3):
    """gdim = generic orbit dimension + parameter count.

    ``param_count`` defaults to the number of catalog parameters.
    """
    from .catalog import catalog_get

    A = catalog_get(name)
    if param_count is None:
        param_count = len(A.parameters)
    der = derivation_dim(A, samples=samples)
    orb = A.dim ** 2 - der
    return FamilyDimension(name, der, param_count, orb + param_count, orb)


# null subspaces --------------------------------------------------------------


@dataclass
class NullSubspaceResult:
    verdict: str  # Yes | No | Inconclusive
    witness: list | None = None
    charts: int = 0
    note: str = ""

    def __bool__(self):
        return self.verdict == "Yes"


def _is_null(A, vecs):
    for a in range(len(vecs)):
        for b in range(a, len(vecs)):
            if any(x != 0 for x in multiply(A, vecs[a], vecs[b])):
                return False
    return True


def _chart_system(A, cols, d):
    n = A.dim
    others = [c for c in range(n) if c not in cols]
    rows = []
    names = []
    for r, p in enumerate(cols):
        row = [0] * n
        row[p] = 1
        for c in others:
            nm = f"x{r + 1}_{c + 1}"
            names.append(nm)
            row[c] = RatFun.var(nm)
        rows.append(row)
    eqs = []
    for a in range(d):
        for b in range(a, d):
            for x in multiply(A, rows[a], rows[b]):
                if x != 0:
                    eqs.append(x.num if isinstance(x, RatFun) else Poly.const(x))
    return eqs, rows, names


def max_null_subspace_dim(A, target_dim, budget_ms=None, deadline=None):
    """Search for a ``target_dim``-dimensional W with W*W = 0.

    Coordinate subspaces are tried first; then every coordinate chart of the
    Grassmannian is decided with a Groebner basis.  ``No`` means every chart
    system is inconsistent.
    """
    import time

    n = A.dim
    d = target_dim
    if d <= 0:
        return NullSubspaceResult("Yes", [], 0)
    if d > n:
        return NullSubspaceResult("No", None, 0, "target exceeds dimension")
    if A.free_variables():
        raise ValueError("max_null_subspace_dim needs specialized parameters")
    if deadline is None and budget_ms is not None:
        deadline = time.monotonic() + budget_ms / 1000
    for cols in combinations(range(n), d):
        vecs = [basis_vector(n, c) for c in cols]
        if _is_null(A, vecs):
            return NullSubspaceResult("Yes", vecs, 0, "coordinate subspace")
    charts = 0
    for cols in combinations(range(n), d):
        eqs, rows, names = _chart_system(A, cols, d)
        budget = Budget(deadline=deadline)
        try:
            gb = buchberger(PolyIdeal(eqs, None), budget) if eqs else None
        except BudgetExceeded:
            return NullSubspaceResult("Inconclusive", None, charts, "budget exhausted")
        charts += 1
        if gb is not None and gb.is_unit():
            continue
        point = find_point(eqs, budget=Budget(deadline=deadline)) if eqs else {}
        if point is not None:
            full = {nm: point.get(nm, 0) for nm in names}
            vecs = [[evaluate(x, full) if isinstance(x, RatFun) else x for x in r] for r in rows]
            if _is_null(A, vecs):
                return NullSubspaceResult("Yes", vecs, charts)
        return NullSubspaceResult("Yes", None, charts,
                                  f"chart {tuple(c + 1 for c in cols)} is consistent")
    return NullSubspaceResult("No", None, charts)


# screen --------------------------------------------------------------------


@dataclass
class ScreenResult:
    passed: bool
    reasons: list = field(default_factory=list)

    def __bool__(self):
        return self.passed

    def describe(self):
        if self.passed:
            return "Pass"
        return "Fail(" + "; ".join(self.reasons) + ")"


def _rel(a, b):
    return "<" if a < b else ("=" if a == b else ">")


def degeneration_screen(A, B, samples=0):
    """Necessary conditions for a proper degeneration A -> B.

    When both orbits have the same dimension the only possibility is an
    isomorphism, so all invariants must agree.
    """
    pa = A if isinstance(A, InvariantProfile) else invariant_profile(A, samples)
    pb = B if isinstance(B, InvariantProfile) else invariant_profile(B, samples)
    reasons = []
    top = max(len(pa.power_dims), len(pb.power_dims))
    if pa.orbit_dim == pb.orbit_dim:
        if pa.der_dim != pb.der_dim:
            reasons.append(f"dim Der {pa.der_dim} {_rel(pa.der_dim, pb.der_dim)} {pb.der_dim}")
        for k in range(2, top + 1):
            a, b = pa.power(k), pb.power(k)
            if a != b:
                reasons.append(f"dim A^{k} {a} {_rel(a, b)} {b}")
        if pa.ann_dim != pb.ann_dim:
            reasons.append(f"dim Ann {pa.ann_dim} {_rel(pa.ann_dim, pb.ann_dim)} {pb.ann_dim}")
        return ScreenResult(not reasons, reasons)
    if pa.der_dim >= pb.der_dim:
        reasons.append(f"dim Der {pa.der_dim} {_rel(pa.der_dim, pb.der_dim)} {pb.der_dim}")
    for k in range(2, top + 1):
        a, b = pa.power(k), pb.power(k)
        if a < b:
            reasons.append(f"dim A^{k} {a} < {b}")
    if pa.ann_dim > pb.ann_dim:
        reasons.append(f"dim Ann {pa.ann_dim} > {pb.ann_dim}")
    if pa.orbit_dim <= pb.orbit_dim:
        reasons.append(f"orbit dim {pa.orbit_dim} {_rel(pa.orbit_dim, pb.orbit_dim)} {pb.orbit_dim}")
    return ScreenResult(not reasons, reasons)
