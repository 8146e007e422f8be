"""Embedded classification data: the 81 non-Jordan families, five Jordan
representatives, the zero algebra, and the exceptional isomorphism registry."""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from functools import lru_cache
from importlib import resources
from itertools import permutations

from ..algebra import AlgebraStructure, multiply
from ..scalars import RatFun, parse_scalar, render
from .. import paperdata

__all__ = [
    "CatalogEntry", "IsoRule", "UnknownAlgebra", "catalog_get", "catalog_list", "catalog_names",
    "iso_rules", "find_witness", "JORDAN_REPS", "export_catalog",
]

JORDAN_REPS = ("eps1", "J21", "J22", "J27", "J40")
FILTERS = ("all", "non_jordan", "jordan_reps", "components")


class UnknownAlgebra(KeyError):
    pass


@dataclass(frozen=True)
class CatalogEntry:
    name: str
    parameters: tuple
    algebra: AlgebraStructure
    jordan_member: bool


@lru_cache(maxsize=1)
def _raw():
    text = resources.files(__name__).joinpath("catalog.json").read_text(encoding="utf-8")
    return json.loads(text)


@lru_cache(maxsize=1)
def _entries():
    out = {}
    for data in _raw():
        alg = AlgebraStructure.from_dict(data)
        out[alg.name] = CatalogEntry(alg.name, alg.parameters, alg, alg.name in JORDAN_REPS)
    return out


def catalog_names():
    return list(_entries())


def export_catalog():
    """The embedded data file, verbatim."""
    return resources.files(__name__).joinpath("catalog.json").read_text(encoding="utf-8")


def _coerce(v):
    return parse_scalar(v) if isinstance(v, str) else v


def catalog_get(name, params=None):
    """Exact structure of a catalog algebra, optionally specialized.

    ``params=None`` keeps every parameter symbolic; otherwise all parameters
    must be given.
    """
    entries = _entries()
    if name not in entries:
        raise UnknownAlgebra(f"unknown algebra {name!r}")
    entry = entries[name]
    if params is None:
        return entry.algebra
    params = {k: _coerce(v) for k, v in params.items()}
    unknown = set(params) - set(entry.parameters)
    if unknown:
        raise ValueError(f"{name} has no parameter(s) {', '.join(sorted(unknown))}")
    missing = [p for p in entry.parameters if p not in params]
    if missing:
        raise ValueError(f"missing parameter(s) for {name}: {', '.join(missing)}")
    return entry.algebra.specialize(params)


def catalog_list(filter="all"):
    if filter not in FILTERS:
        raise ValueError(f"filter must be one of {', '.join(FILTERS)}")
    entries = _entries()
    if filter == "all":
        return list(entries.values())
    if filter == "non_jordan":
        return [e for n, e in entries.items() if n.startswith("C5_")]
    if filter == "jordan_reps":
        return [entries[n] for n in JORDAN_REPS]
    comps = paperdata.load("components")["components"]
    return [entries[c["name"]] for c in comps]


# exceptional isomorphisms ---------------------------------------------------


@dataclass
class IsoRule:
    """``family(source_params) ~= family(target_params)`` via ``witness``.

    Parameter expressions may introduce auxiliary parameters (e.g. a square
    root ``r`` with ``alpha = r^2``); ``sample_vars`` names the free ones.
    """

    family: str
    description: str
    source_params: dict
    target_params: dict
    witness: list
    sample_vars: tuple
    note: str = ""
    _checked: dict = field(default_factory=dict, repr=False)

    def _sub(self, exprs, point):
        return {k: _coerce(v) for k, v in exprs.items()} if exprs else {}

    def source(self):
        base = catalog_get(self.family)
        sp = self._sub(self.source_params, None)
        return base.specialize(sp) if sp else base

    def target(self):
        base = catalog_get(self.family)
        tp = self._sub(self.target_params, None)
        return base.specialize(tp) if tp else base

    def witness_matrix(self):
        return [[_coerce(x) for x in row] for row in self.witness]

    def verify_symbolic(self):
        from ..degeneration import verify_isomorphism

        if "symbolic" not in self._checked:
            self._checked["symbolic"] = verify_isomorphism(
                self.source(), self.target(), self.witness_matrix())
        return self._checked["symbolic"]

    def verify_at(self, point):
        """Verify after evaluating every parameter at ``point`` (name -> number)."""
        from ..degeneration import verify_isomorphism
        from ..scalars import evaluate

        point = {k: _coerce(v) for k, v in point.items()}
        a = self.source().evaluate(point)
        b = self.target().evaluate(point)
        m = [[evaluate(x, point) for x in row] for row in self.witness_matrix()]
        return verify_isomorphism(a, b, m)


_RULES = [
    IsoRule(
        "C5_13", "(alpha, beta) -> (alpha, -beta)",
        {}, {"beta": "-beta"},
        [["1", "0", "0", "0", "0"], ["0", "1", "0", "0", "0"], ["0", "0", "1", "0", "0"],
         ["0", "0", "0", "-1", "0"], ["0", "0", "0", "0", "1"]],
        ("alpha", "beta"),
    ),
    IsoRule(
        "C5_26", "(alpha, beta) -> (beta, alpha)",
        {}, {"alpha": "beta", "beta": "alpha"},
        [["0", "-1", "0", "0", "0"], ["-1", "0", "0", "0", "0"], ["0", "0", "1", "0", "0"],
         ["0", "0", "0", "-1", "-1"], ["0", "0", "0", "0", "1"]],
        ("alpha", "beta"),
        note="witness from permutation/diagonal/shear search at (alpha, beta) = (2, 3)",
    ),
    IsoRule(
        "C5_27", "alpha -> 1/alpha",
        {"alpha": "r^2"}, {"alpha": "1/r^2"},
        [["0", "r", "0", "0", "0"], ["r", "0", "0", "0", "0"], ["0", "0", "r^2", "0", "0"],
         ["0", "0", "0", "r^3", "0"], ["0", "0", "0", "0", "r^4"]],
        ("r",),
        note="the witness needs a square root r of alpha; diagonal/swap search at alpha = 4",
    ),
    IsoRule(
        "C5_69", "alpha -> w^2*alpha",
        {}, {"alpha": "w^2*alpha"},
        [["w", "0", "0", "0", "0"], ["0", "w^2", "0", "0", "0"], ["0", "0", "1", "0", "0"],
         ["0", "0", "0", "w^2", "0"], ["0", "0", "0", "0", "w"]],
        ("alpha",),
    ),
]


def iso_rules(verify=True):
    """The exceptional isomorphisms; with ``verify`` each witness is checked symbolically."""
    if verify:
        for rule in _RULES:
            if not rule.verify_symbolic():
                raise AssertionError(f"isomorphism witness for {rule.family} does not verify")
    return list(_RULES)


def _ansatz_equations(A, B, perm, shear):
    """Polynomial equations for base_change(A, D*P*S) == B."""
    from ..scalars import Poly

    n = A.dim
    d = [RatFun.var(f"d{i + 1}") for i in range(n)]
    s = RatFun.var("s0")
    rows = []
    for i in range(n):
        row = [0] * n
        row[perm[i]] = d[i]
        if shear is not None and perm[i] == shear[0]:
            row[shear[1]] = d[i] * s
        rows.append(row)
    eqs = []
    for i in range(n):
        for j in range(i, n):
            lhs = multiply(A, rows[i], rows[j])
            for k, c in B.product(i, j).items():
                lhs = [x - c * y for x, y in zip(lhs, rows[k])]
            for x in lhs:
                if x != 0:
                    eqs.append(x.num if isinstance(x, RatFun) else Poly.const(x))
    det = d[0]
    for x in d[1:]:
        det = det * x
    eqs.append((det * RatFun.var("z0") - 1).num)
    return eqs, rows


def find_witness(A, B, budget_ms=None, max_perms=None):
    """Search M = D * P * (I + s E_pq) with base_change(A, M) == B.

    Permutations are tried in order of increasing displacement, each with no
    shear first and then every single shear position.  Returns the witness
    matrix or None.
    """
    from ..groebner import Budget, find_point
    from ..scalars import evaluate

    n = A.dim
    perms = sorted(permutations(range(n)), key=lambda p: (sum(a != b for a, b in enumerate(p)), p))
    if max_perms is not None:
        perms = perms[:max_perms]
    shears = [None] + [(p, q) for p in range(n) for q in range(n) if p != q]
    for perm in perms:
        for shear in shears:
            eqs, rows = _ansatz_equations(A, B, perm, shear)
            budget = Budget.from_ms(budget_ms) if budget_ms else None
            point = find_point(eqs, budget=budget)
            if point is None:
                continue
            m = [[evaluate(x, point) if isinstance(x, RatFun) else x for x in row] for row in rows]
            from ..degeneration import verify_isomorphism

            if verify_isomorphism(A, B, m):
                return m
    return None
