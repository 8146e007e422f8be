"""Borel-stable closed sets and non-degeneration arguments.

A flag condition ``(i, j, k)`` reads ``A_i A_j ⊆ A_k`` with
``A_p = span(e_p, ..., e_n)`` and ``k = n + 1`` standing for zero.  If A lies
in such a set (in some basis) and B does not lie in it in any basis, then A
does not degenerate to B.

Refuting membership goes through a portfolio: identity evaluation,
basis-free bounds implied by the conditions, a null-subspace search, and as
a last resort a Groebner search over all Schubert cells of the flag variety.
"""

from __future__ import annotations

import json
import os
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import permutations

from .algebra import IDENTITIES, check_identity, multiply
from .groebner import Budget, BudgetExceeded, PolyIdeal, buchberger, find_point
from .invariants import (
    annihilator_dim, invariant_profile, left_power_dims, max_null_subspace_dim, power_dims,
)
from .scalars import Poly, RatFun, evaluate, parse_scalar, render

__all__ = [
    "ClosedSetSpec", "ArgumentFormatError", "Bound", "RefutationResult", "NonDegenerationArgument",
    "ArgumentReport", "check_in_basis", "abstract_bounds", "refute_membership", "verify_argument",
    "load_argument", "schubert_cells", "DEFAULT_SAMPLES",
]

DEFAULT_SAMPLES = (2, Fraction(3, 2), -5)


class ArgumentFormatError(ValueError):
    pass


@dataclass(frozen=True)
class ClosedSetSpec:
    kind: str  # flag | identity
    conditions: tuple = ()
    identity: str | None = None

    def __post_init__(self):
        if self.kind == "flag":
            norm = []
            for i, j, k in self.conditions:
                if i > j:
                    i, j = j, i
                if i < 1 or k < 2:
                    raise ValueError(f"bad flag condition ({i}, {j}, {k})")
                norm.append((i, j, k))
            object.__setattr__(self, "conditions", tuple(norm))
        elif self.kind == "identity":
            if self.identity not in IDENTITIES:
                raise ValueError(f"unknown identity {self.identity!r}")
        else:
            raise ValueError(f"unknown closed set kind {self.kind!r}")

    @classmethod
    def flag(cls, *conditions):
        return cls("flag", tuple(conditions))

    @classmethod
    def from_identity(cls, name):
        return cls("identity", (), name)

    def describe(self, n=5):
        if self.kind == "identity":
            return f"{{{self.identity}}}"
        parts = []
        for i, j, k in self.conditions:
            rhs = "0" if k == n + 1 else f"A_{k}"
            parts.append(f"A_{i}A_{j} ⊆ {rhs}")
        return "{" + ", ".join(parts) + "}"

    def to_dict(self):
        if self.kind == "identity":
            return {"type": "identity", "identity": self.identity}
        return {"type": "flag",
                "conditions": [{"i": i, "j": j, "k": k} for i, j, k in self.conditions]}

    @classmethod
    def from_dict(cls, data):
        if not isinstance(data, dict) or "type" not in data:
            raise ArgumentFormatError("closed_set must be an object with a 'type'")
        try:
            if data["type"] == "identity":
                if set(data) - {"type", "identity"}:
                    raise ArgumentFormatError("unknown fields in closed_set")
                return cls.from_identity(data["identity"])
            if data["type"] == "flag":
                if set(data) - {"type", "conditions"}:
                    raise ArgumentFormatError("unknown fields in closed_set")
                conds = []
                for c in data["conditions"]:
                    if set(c) != {"i", "j", "k"}:
                        raise ArgumentFormatError("flag condition needs exactly i, j, k")
                    conds.append((int(c["i"]), int(c["j"]), int(c["k"])))
                return cls.flag(*conds)
        except (KeyError, TypeError, ValueError) as exc:
            if isinstance(exc, ArgumentFormatError):
                raise
            raise ArgumentFormatError(str(exc)) from None
        raise ArgumentFormatError(f"unknown closed_set type {data['type']!r}")


def check_in_basis(A, R):
    """Does A satisfy R in its own basis?  Symbolic parameters must cancel identically."""
    if R.kind == "identity":
        return bool(check_identity(A, R.identity))
    n = A.dim
    for i, j, k in R.conditions:
        for p in range(i - 1, n):
            for q in range(j - 1, n):
                vec = A.product(p, q)
                if any(m < k - 1 for m in vec):
                    return False
    return True


# abstract bounds -------------------------------------------------------------


@dataclass(frozen=True)
class Bound:
    """A basis-free consequence of R.

    kind ``power`` / ``left``: dim of the ideal power A^k / left-normed
    product is at most ``value``; kind ``ann`` / ``null``: dim Ann / the
    largest null subspace is at least ``value``.
    """

    kind: str
    degree: int
    value: int

    def expression(self):
        if self.kind == "power":
            return f"A^{self.degree}"
        if self.kind == "left":
            expr = "A^2"
            for _ in range(self.degree - 2):
                expr = f"A*{expr}" if expr == "A^2" else f"A*({expr})"
            return expr
        return "Ann" if self.kind == "ann" else "null subspace"

    def describe(self):
        if self.kind in ("power", "left"):
            e = self.expression()
            return f"{e} = 0" if self.value == 0 else f"dim {e} ≤ {self.value}"
        if self.kind == "ann":
            return f"dim Ann ≥ {self.value}"
        return f"null subspace of dim ≥ {self.value}"

    def holds_for(self, actual):
        if self.kind in ("power", "left"):
            return actual <= self.value
        return actual >= self.value


def _best(R, n, p, q):
    """Guaranteed flag index of A_p * A_q."""
    if p > n or q > n:
        return n + 1
    if p > q:
        p, q = q, p
    best = 1
    for i, j, k in R.conditions:
        if (i <= p and j <= q) or (i <= q and j <= p):
            best = max(best, k)
    return best


def _flag_indices(R, n, depth):
    power = {1: 1}
    for k in range(2, depth + 1):
        power[k] = min(_best(R, n, power[a], power[k - a]) for a in range(1, k // 2 + 1))
    left = {1: 1}
    for k in range(2, depth + 1):
        left[k] = _best(R, n, 1, left[k - 1])
    return power, left


def abstract_bounds(R, n=5, depth=None):
    """Basis-free consequences of the flag conditions of R.

    Indices propagate through products: A_p * A_q lies in A_k for the best
    condition (i, j, k) with i <= p and j <= q.  A condition (i, j, n+1)
    makes A_j a null subspace, and with i = 1 an annihilating one.
    """
    if R.kind != "flag":
        return []
    depth = depth or n + 1
    power, left = _flag_indices(R, n, depth)
    out = []
    for k in range(2, depth + 1):
        if power[k] > max(1, power[k - 1]):
            out.append(Bound("power", k, n + 1 - power[k]))
        if k >= 3 and left[k] > left[k - 1] and left[k] != power[k]:
            out.append(Bound("left", k, n + 1 - left[k]))
        if power[k] == n + 1 and left[k] == n + 1:
            break
    ann = max((n + 1 - j for i, j, k in R.conditions if k == n + 1 and i == 1), default=0)
    if ann:
        out.append(Bound("ann", 1, ann))
    null = max((n + 1 - j for i, j, k in R.conditions if k == n + 1), default=0)
    if null > ann:
        out.append(Bound("null", 1, null))
    return out


# flag search -------------------------------------------------------------------


def schubert_cells(n):
    """(perm, free positions) for every cell; perm[p] is the pivot column of v_p."""
    cells = []
    for w in permutations(range(n)):
        free = []
        for p in range(n):
            later = {w[q] for q in range(p + 1, n)}
            free.extend((p, c) for c in range(w[p] + 1, n) if c not in later)
        cells.append((w, tuple(free)))
    cells.sort(key=lambda cell: (len(cell[1]), cell[0]))
    return cells


def _cell_vectors(n, w, free):
    vecs = [[0] * n for _ in range(n)]
    names = []
    for p in range(n):
        vecs[p][w[p]] = 1
    for p, c in free:
        name = f"u{p + 1}_{c + 1}"
        names.append(name)
        vecs[p][c] = RatFun.var(name)
    return vecs, names


def _coordinates(x, vecs, w):
    """Coordinates of x in the basis vecs (unipotent triangular solve)."""
    n = len(vecs)
    a = [0] * n
    for r in range(n - 1, -1, -1):
        s = x[w[r]]
        for q in range(r + 1, n):
            if a[q] != 0 and vecs[q][w[r]] != 0:
                s = s - a[q] * vecs[q][w[r]]
        a[r] = s
    return a


def _as_poly(x):
    if isinstance(x, RatFun):
        return x.num
    return Poly.const(x)


def _cell_system(A, R, w, free):
    n = A.dim
    vecs, names = _cell_vectors(n, w, free)
    eqs = []
    seen = set()
    for i, j, k in R.conditions:
        for p in range(i - 1, n):
            for q in range(j - 1, n):
                key = (min(p, q), max(p, q))
                prod = multiply(A, vecs[p], vecs[q])
                coords = _coordinates(prod, vecs, w)
                for r in range(k - 1):
                    if r >= n:
                        break
                    c = coords[r]
                    if c != 0 and (key, r) not in seen:
                        seen.add((key, r))
                        eqs.append(_as_poly(c))
    return eqs, vecs, names


def _solve_cell(args):
    A, R, w, free, deadline = args
    eqs, vecs, names = _cell_system(A, R, w, free)
    if any(e.is_constant() for e in eqs):
        return "infeasible", None
    if not eqs:
        return "feasible", [[x if not isinstance(x, RatFun) else 0 for x in v] for v in vecs]
    try:
        gb = buchberger(PolyIdeal(eqs, None), Budget(deadline=deadline))
    except BudgetExceeded:
        return "budget", None
    if gb.is_unit():
        return "infeasible", None
    try:
        point = find_point(eqs, budget=Budget(deadline=deadline))
    except BudgetExceeded:
        point = None
    if point is None:
        return "feasible", None
    full = {nm: point.get(nm, 0) for nm in names}
    return "feasible", [[evaluate(x, full) if isinstance(x, RatFun) else x for x in v] for v in vecs]


def _flag_search(A, R, deadline, jobs=1):
    cells = schubert_cells(A.dim)
    tasks = [(A, R, w, free, deadline) for w, free in cells]
    unknown = 0
    if jobs and jobs > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            results = list(pool.map(_solve_cell, tasks))
    else:
        results = []
        for t in tasks:
            res = _solve_cell(t)
            results.append(res)
            if res[0] == "feasible":
                break
    for (w, free), (status, witness) in zip(cells, results):
        if status == "feasible":
            return "feasible", w, witness, len(cells)
        if status == "budget":
            unknown += 1
    if unknown:
        return "budget", None, None, unknown
    return "infeasible", None, None, len(cells)


# refutation --------------------------------------------------------------------


@dataclass
class RefutationResult:
    verdict: str  # Refuted | Member | Inconclusive
    reason: str = ""
    method: str = ""
    witness: list | None = None

    @property
    def refuted(self):
        return self.verdict == "Refuted"

    def to_dict(self):
        out = {"verdict": self.verdict, "method": self.method, "reason": self.reason}
        if self.witness is not None:
            out["witness"] = [[render(x) for x in row] for row in self.witness]
        return out


def _actual(A, bound, cache):
    if bound.kind == "power":
        if "power" not in cache:
            cache["power"] = power_dims(A)
        dims = cache["power"]
        return dims[bound.degree - 1] if bound.degree <= len(dims) else dims[-1]
    if bound.kind == "left":
        if "left" not in cache:
            cache["left"] = left_power_dims(A)
        dims = cache["left"]
        return dims[bound.degree - 1] if bound.degree <= len(dims) else dims[-1]
    if bound.kind == "ann":
        if "ann" not in cache:
            cache["ann"] = annihilator_dim(A)
        return cache["ann"]
    raise ValueError(bound.kind)


def refute_membership(B, R, budget_ms=None, deadline=None, jobs=1, use_flag_search=True):
    """Decide whether B can be represented inside R (in some basis)."""
    if deadline is None and budget_ms is not None:
        deadline = time.monotonic() + budget_ms / 1000
    if R.kind == "identity":
        res = check_identity(B, R.identity)
        if res:
            return RefutationResult("Member", f"satisfies the {R.identity} identity", "identity")
        return RefutationResult("Refuted", res.describe(), "identity")
    n = B.dim
    if check_in_basis(B, R):
        ident = [[1 if i == j else 0 for j in range(n)] for i in range(n)]
        return RefutationResult("Member", "satisfies R in its own basis", "printed_basis", ident)
    cache = {}
    bounds = abstract_bounds(R, n)
    for b in bounds:
        if b.kind == "null":
            continue
        got = _actual(B, b, cache)
        if not b.holds_for(got):
            return RefutationResult("Refuted", f"{b.describe()} but dim is {got}", "bounds")
    notes = []
    for b in bounds:
        if b.kind != "null":
            continue
        if annihilator_dim(B) >= b.value:
            continue
        res = max_null_subspace_dim(B, b.value, deadline=deadline)
        if res.verdict == "No":
            return RefutationResult(
                "Refuted", f"{b.describe()} but no {b.value}-dim null subspace exists "
                           f"({res.charts} charts infeasible)", "null_subspace")
        if res.verdict == "Inconclusive":
            notes.append("null-subspace search ran out of budget")
    if not use_flag_search:
        return RefutationResult("Inconclusive", "; ".join(notes) or "bounds hold", "bounds")
    status, w, witness, count = _flag_search(B, R, deadline, jobs)
    if status == "infeasible":
        return RefutationResult("Refuted", f"all {count} Schubert cells infeasible", "flag_search")
    if status == "feasible":
        cell = "".join(str(x + 1) for x in w)
        if witness is None:
            return RefutationResult("Member", f"cell {cell} is consistent (no rational point found)",
                                    "flag_search")
        return RefutationResult("Member", f"flag found in cell {cell}", "flag_search", witness)
    return RefutationResult("Inconclusive", f"{count} Schubert cells exceeded the budget",
                            "flag_search")


# arguments ----------------------------------------------------------------------


@dataclass
class NonDegenerationArgument:
    source: str
    targets: list  # [(name, params dict | "sampled")]
    closed_set: ClosedSetSpec
    source_params: dict = field(default_factory=dict)
    budget_ms: int | None = None

    @classmethod
    def from_dict(cls, data):
        allowed = {"source", "targets", "closed_set", "budget_ms"}
        if not isinstance(data, dict):
            raise ArgumentFormatError("argument must be a JSON object")
        extra = set(data) - allowed
        if extra:
            raise ArgumentFormatError(f"unknown fields: {', '.join(sorted(extra))}")
        for key in ("source", "targets", "closed_set"):
            if key not in data:
                raise ArgumentFormatError(f"missing field {key!r}")
        src = data["source"]
        if isinstance(src, str):
            name, sp = src, {}
        elif isinstance(src, dict) and "name" in src:
            name = src["name"]
            raw = src.get("params", {})
            if isinstance(raw, list):
                sp = {}
            else:
                sp = {k: parse_scalar(v) for k, v in raw.items()}
        else:
            raise ArgumentFormatError("source must be a name or {name, params}")
        targets = []
        for t in data["targets"]:
            if isinstance(t, str):
                targets.append((t, "sampled"))
                continue
            if not isinstance(t, dict) or "name" not in t:
                raise ArgumentFormatError("target must be a name or {name, params}")
            p = t.get("params", "sampled")
            if p != "sampled":
                p = {k: parse_scalar(v) for k, v in p.items()}
            targets.append((t["name"], p))
        budget = data.get("budget_ms")
        if budget is not None and (not isinstance(budget, int) or budget < 0):
            raise ArgumentFormatError("budget_ms must be a non-negative integer")
        return cls(name, targets, ClosedSetSpec.from_dict(data["closed_set"]), sp, budget)

    def to_dict(self):
        tg = []
        for name, p in self.targets:
            tg.append({"name": name,
                       "params": p if p == "sampled" else {k: render(v) for k, v in p.items()}})
        out = {"source": {"name": self.source,
                          "params": {k: render(v) for k, v in self.source_params.items()}},
               "targets": tg, "closed_set": self.closed_set.to_dict()}
        if self.budget_ms is not None:
            out["budget_ms"] = self.budget_ms
        return out


def load_argument(path):
    with open(path, encoding="utf-8") as fh:
        try:
            data = json.load(fh)
        except json.JSONDecodeError as exc:
            raise ArgumentFormatError(f"invalid JSON: {exc}") from None
    return NonDegenerationArgument.from_dict(data)


@dataclass
class TargetVerdict:
    target: str
    params: dict
    result: RefutationResult | None
    skipped: str = ""

    def label(self):
        if not self.params:
            return self.target
        inner = ", ".join(f"{k}={render(v)}" for k, v in self.params.items())
        return f"{self.target}({inner})"


@dataclass
class ArgumentReport:
    source: str
    closed_set: ClosedSetSpec
    source_member: bool
    source_evidence: RefutationResult | None
    verdicts: list

    @property
    def status(self):
        if not self.source_member:
            return "SourceNotMember"
        results = [v.result for v in self.verdicts if v.result is not None]
        if any(r.verdict == "Member" for r in results):
            return "TargetMember"
        if any(r.verdict == "Inconclusive" for r in results):
            return "Inconclusive"
        return "Verified"

    def lines(self):
        out = [f"source {self.source} in R = {self.closed_set.describe()}: "
               f"{'yes' if self.source_member else 'NO'}"]
        if not self.source_member and self.source_evidence is not None:
            out.append(f"  source evidence: {self.source_evidence.verdict}: "
                       f"{self.source_evidence.reason}")
        for v in self.verdicts:
            if v.result is None:
                out.append(f"  {v.label()}: skipped ({v.skipped})")
            else:
                out.append(f"  {v.label()}: {v.result.verdict} [{v.result.method}] {v.result.reason}")
        out.append(f"status: {self.status}")
        return out

    def to_dict(self):
        return {
            "source": self.source,
            "closed_set": self.closed_set.to_dict(),
            "source_member": self.source_member,
            "status": self.status,
            "targets": [
                {"name": v.target, "params": {k: render(x) for k, x in v.params.items()},
                 **(v.result.to_dict() if v.result else {"verdict": "Skipped", "reason": v.skipped})}
                for v in self.verdicts
            ],
        }


def _sample_assignments(names, samples):
    """One point per sample value; further parameters take the following values cyclically."""
    pts = []
    m = len(samples)
    for s in range(m):
        pts.append({name: samples[(s + i) % m] for i, name in enumerate(names)})
    return pts


def verify_argument(arg, samples=None, budget_ms=None, jobs=1):
    """Source in R (printed basis, symbolic) and every target refuted at every sample.

    Samples whose invariant profile differs from the generic one lie on an
    exceptional locus and are skipped with a note.
    """
    from .catalog import catalog_get

    samples = tuple(samples) if samples else DEFAULT_SAMPLES
    budget_ms = budget_ms if budget_ms is not None else arg.budget_ms
    src = catalog_get(arg.source, arg.source_params or None)
    member = check_in_basis(src, arg.closed_set)
    evidence = None
    if not member:
        evidence = refute_membership(src, arg.closed_set, budget_ms=budget_ms,
                                     use_flag_search=False)
    verdicts = []
    for name, policy in arg.targets:
        generic = catalog_get(name)
        if policy == "sampled":
            points = _sample_assignments(generic.parameters, samples) if generic.parameters else [{}]
        else:
            points = [policy]
        gprofile = invariant_profile(generic, samples=0) if generic.parameters else None
        for pt in points:
            B = catalog_get(name, pt) if generic.parameters else generic
            if gprofile is not None and invariant_profile(B, samples=0) != gprofile:
                verdicts.append(TargetVerdict(name, pt, None, "non-generic parameter value"))
                continue
            deadline = time.monotonic() + budget_ms / 1000 if budget_ms is not None else None
            res = refute_membership(B, arg.closed_set, deadline=deadline, jobs=jobs)
            verdicts.append(TargetVerdict(name, pt, res))
    return ArgumentReport(arg.source, arg.closed_set, member, evidence, verdicts)


def default_jobs():
    return max(1, min(4, os.cpu_count() or 1))
