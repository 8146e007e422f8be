"""Commutative algebras given by structure constants.

Basis indices are 0-based internally and 1-based in files and reports.
Structure constants are stored only for ``i <= j``; commutativity is
structural.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from itertools import combinations_with_replacement, permutations, product

from .linalg import Subspace, nullspace, rref
from .scalars import ExprError, RatFun, collapse, parse_scalar, render, substitute, variables
from .scalars import evaluate as evaluate_scalar

__all__ = [
    "AlgebraStructure", "AlgebraFormatError", "NonGenericError", "Holds", "CounterWitness",
    "IDENTITIES", "multiply", "left_mult_matrix", "subspace_product", "power_chain",
    "annihilator", "check_identity", "is_nilpotent", "basis_vector", "Subspace",
    "load_algebra", "jordan_defect", "almost_jordan_defect",
]

IDENTITIES = ("commutative", "associative", "cd", "jordan", "almost_jordan")


class AlgebraFormatError(ValueError):
    pass


class NonGenericError(ValueError):
    """A parameter-dependent rank could drop on a special locus; specialize first."""


class AlgebraStructure:
    """Commutative multiplication on ``dim`` basis vectors.

    ``constants`` maps ``(i, j)`` with ``i <= j`` to a sparse ``{k: scalar}``.
    """

    __slots__ = ("name", "dim", "parameters", "constants", "_table")

    def __init__(self, dim, constants=None, parameters=(), name=""):
        if dim < 1:
            raise ValueError("dimension must be positive")
        self.name = name
        self.dim = dim
        self.parameters = tuple(parameters)
        clean = {}
        for (i, j), vec in (constants or {}).items():
            if i > j:
                i, j = j, i
            if not (0 <= i < dim and 0 <= j < dim):
                raise ValueError(f"basis index out of range in product ({i + 1},{j + 1})")
            row = dict(clean.get((i, j), {}))
            for k, c in vec.items():
                if not 0 <= k < dim:
                    raise ValueError(f"basis index {k + 1} out of range")
                c = collapse(row.get(k, 0) + c)
                if c == 0:
                    row.pop(k, None)
                else:
                    row[k] = c
            if row:
                clean[(i, j)] = row
        self.constants = clean
        self._table = None

    # basic access ---------------------------------------------------------

    def product(self, i, j):
        if i > j:
            i, j = j, i
        return self.constants.get((i, j), {})

    def table(self):
        """Dense n x n table of basis products as coefficient lists."""
        if self._table is None:
            n = self.dim
            tab = [[None] * n for _ in range(n)]
            for i in range(n):
                for j in range(i, n):
                    vec = [0] * n
                    for k, c in self.product(i, j).items():
                        vec[k] = c
                    tab[i][j] = tab[j][i] = vec
            self._table = tab
        return self._table

    def coefficient(self, i, j, k):
        return self.product(i, j).get(k, 0)

    def tensor(self):
        """Full structure-constant tensor as {(i, j, k): scalar} for i <= j."""
        return {(i, j, k): c for (i, j), row in self.constants.items() for k, c in row.items()}

    def is_symbolic(self):
        return any(variables(c) for row in self.constants.values() for c in row.values())

    def free_variables(self):
        out = set()
        for row in self.constants.values():
            for c in row.values():
                out |= variables(c)
        return out

    def specialize(self, assignment, name=None):
        """Substitute parameter values (numbers or scalars) into the constants."""
        if not assignment:
            return self
        clash = set(assignment) & set().union(*(variables(v) for v in assignment.values()))
        if clash:
            # simultaneous substitution: rename the clashing targets first
            tmp = {k: RatFun.var(f"__{k}") for k in assignment}
            return self.specialize(tmp).specialize(
                {f"__{k}": v for k, v in assignment.items()}, name)
        consts = {}
        for key, row in self.constants.items():
            new = {}
            for k, c in row.items():
                for var, val in assignment.items():
                    if var in variables(c):
                        c = substitute(c, var, val)
                new[k] = c
            consts[key] = new
        out = AlgebraStructure(self.dim, consts, (), name if name is not None else self.name)
        free = out.free_variables()
        kept = [p for p in self.parameters if p not in assignment or p in free]
        extra = sorted(free - set(kept) - {"t", "s"} - {k for k in free if k.startswith("__")})
        out.parameters = tuple(kept) + tuple(extra)
        return out

    def evaluate(self, assignment, name=None):
        consts = {key: {k: evaluate_scalar(c, assignment) for k, c in row.items()}
                  for key, row in self.constants.items()}
        params = tuple(p for p in self.parameters if p not in assignment)
        return AlgebraStructure(self.dim, consts, params, name if name is not None else self.name)

    def same_constants(self, other):
        return self.dim == other.dim and self.constants == other.constants

    def __eq__(self, other):
        if not isinstance(other, AlgebraStructure):
            return NotImplemented
        return self.same_constants(other)

    def __hash__(self):
        return hash((self.dim, len(self.constants)))

    def __repr__(self):
        return f"AlgebraStructure({self.name or '?'}: {self.describe()})"

    def describe(self):
        parts = []
        for (i, j) in sorted(self.constants):
            row = self.constants[(i, j)]
            rhs = " + ".join(
                (f"e{k + 1}" if c == 1 else f"({render(c)})*e{k + 1}") for k, c in sorted(row.items())
            )
            parts.append(f"e{i + 1}e{j + 1}={rhs}")
        return ", ".join(parts) if parts else "abelian"

    # file format ----------------------------------------------------------

    def to_dict(self):
        prods = []
        for (i, j) in sorted(self.constants):
            terms = [{"k": k + 1, "coeff": render(c)} for k, c in sorted(self.constants[(i, j)].items())]
            prods.append({"i": i + 1, "j": j + 1, "terms": terms})
        return {"name": self.name, "dim": self.dim, "parameters": list(self.parameters),
                "products": prods}

    @classmethod
    def from_dict(cls, data):
        if not isinstance(data, dict):
            raise AlgebraFormatError("algebra must be a JSON object")
        allowed = {"name", "dim", "parameters", "products"}
        extra = set(data) - allowed
        if extra:
            raise AlgebraFormatError(f"unknown fields: {', '.join(sorted(extra))}")
        missing = {"dim", "products"} - set(data)
        if missing:
            raise AlgebraFormatError(f"missing fields: {', '.join(sorted(missing))}")
        dim = data["dim"]
        if not isinstance(dim, int) or dim < 1:
            raise AlgebraFormatError("dim must be a positive integer")
        params = data.get("parameters", [])
        if not isinstance(params, list) or not all(isinstance(p, str) for p in params):
            raise AlgebraFormatError("parameters must be a list of strings")
        consts = {}
        for entry in data["products"]:
            if not isinstance(entry, dict) or set(entry) - {"i", "j", "terms"}:
                raise AlgebraFormatError(f"bad product entry: {entry!r}")
            i, j = entry.get("i"), entry.get("j")
            if not isinstance(i, int) or not isinstance(j, int):
                raise AlgebraFormatError("product indices must be integers")
            if i > j:
                raise AlgebraFormatError(f"product ({i},{j}) must have i <= j")
            if not (1 <= i <= dim and 1 <= j <= dim):
                raise AlgebraFormatError(f"product ({i},{j}) out of range")
            if (i - 1, j - 1) in consts:
                raise AlgebraFormatError(f"duplicate product ({i},{j})")
            row = {}
            for term in entry.get("terms", []):
                if not isinstance(term, dict) or set(term) != {"k", "coeff"}:
                    raise AlgebraFormatError(f"bad term: {term!r}")
                k = term["k"]
                if not isinstance(k, int) or not 1 <= k <= dim:
                    raise AlgebraFormatError(f"term index {k!r} out of range")
                try:
                    c = parse_scalar(term["coeff"], allowed=set(params) | {"t", "s"})
                except ExprError as exc:
                    raise AlgebraFormatError(str(exc)) from None
                row[k - 1] = collapse(row.get(k - 1, 0) + c)
            consts[(i - 1, j - 1)] = row
        return cls(dim, consts, params, data.get("name", ""))

    def dumps(self):
        return json.dumps(self.to_dict(), indent=2, ensure_ascii=False)


def load_algebra(path):
    with open(path, encoding="utf-8") as fh:
        try:
            data = json.load(fh)
        except json.JSONDecodeError as exc:
            raise AlgebraFormatError(f"invalid JSON: {exc}") from None
    return AlgebraStructure.from_dict(data)


def basis_vector(n, i):
    v = [0] * n
    v[i] = 1
    return v


# products -----------------------------------------------------------------


def multiply(A, x, y):
    """Bilinear product of coordinate vectors."""
    n = A.dim
    if len(x) != n or len(y) != n:
        raise ValueError(f"vectors must have length {n}")
    tab = A.table()
    out = [0] * n
    for i, xi in enumerate(x):
        if xi == 0:
            continue
        row = tab[i]
        for j, yj in enumerate(y):
            if yj == 0:
                continue
            vec = row[j]
            s = None
            for k, c in enumerate(vec):
                if c != 0:
                    if s is None:
                        s = xi * yj
                    out[k] = out[k] + s * c
    return [collapse(v) for v in out]


def left_mult_matrix(A, a):
    """Matrix (columns = images of basis vectors) of x -> a*x."""
    n = A.dim
    cols = [multiply(A, a, basis_vector(n, j)) for j in range(n)]
    return [[cols[j][i] for j in range(n)] for i in range(n)]


def subspace_product(A, U, V):
    vecs = [multiply(A, u, v) for u in U.basis for v in V.basis]
    return Subspace(A.dim, vecs)


def power_chain(A):
    """[A^1, A^2, ...] with A^k = sum_{i+j=k} A^i A^j, until zero or stable."""
    n = A.dim
    chain = [Subspace.whole(n)]
    products = {}

    def prod(i, j):
        key = (min(i, j), max(i, j))
        if key not in products:
            products[key] = subspace_product(A, chain[key[0] - 1], chain[key[1] - 1])
        return products[key]

    while True:
        k = len(chain) + 1
        acc = Subspace.zero(n)
        for i in range(1, k // 2 + 1):
            acc = acc + prod(i, k - i)
        chain.append(acc)
        if acc.is_zero():
            return chain
        # constant on [m, k] with k >= 2m means constant forever
        m = k
        while m > 1 and chain[m - 2] == acc:
            m -= 1
        if k >= 2 * m and m < k:
            return chain


def is_nilpotent(A):
    """(True, index) with the smallest k such that A^k = 0, else (False, None)."""
    chain = power_chain(A)
    if chain[-1].is_zero():
        return True, len(chain)
    return False, None


def annihilator(A):
    """{x : x*A = 0}; raises NonGenericError if the rank is parameter-dependent."""
    n = A.dim
    rows = []
    for i in range(n):
        rows.extend(left_mult_matrix(A, basis_vector(n, i)))
    _, _, locus = rref(rows, n)
    if locus:
        raise NonGenericError(
            "annihilator rank depends on parameters; specialize them first"
        )
    return Subspace(n, nullspace(rows, n))


# identities ---------------------------------------------------------------


@dataclass(frozen=True)
class Holds:
    identity: str

    def __bool__(self):
        return True


@dataclass(frozen=True)
class CounterWitness:
    identity: str
    basis_tuple: tuple  # 1-based indices
    defect: tuple

    def __bool__(self):
        return False

    def describe(self):
        idx = ", ".join(f"e{i}" for i in self.basis_tuple)
        return f"{self.identity} fails at ({idx}); defect = ({', '.join(render(x) for x in self.defect)})"


def _sub(u, v):
    return [collapse(a - b) for a, b in zip(u, v)]


def _add(u, v):
    return [collapse(a + b) for a, b in zip(u, v)]


def _scale(c, u):
    return [collapse(c * a) for a in u]


def _apply(m, v):
    return [collapse(sum((a * b for a, b in zip(row, v) if a != 0 and b != 0), 0)) for row in m]


def _mat_commutator(a, b):
    n = len(a)
    out = [[0] * n for _ in range(n)]
    for i in range(n):
        for j in range(n):
            s = 0
            for k in range(n):
                if a[i][k] != 0 and b[k][j] != 0:
                    s = s + a[i][k] * b[k][j]
                if b[i][k] != 0 and a[k][j] != 0:
                    s = s - b[i][k] * a[k][j]
            out[i][j] = collapse(s)
    return out


def _jordan_lin(mul, xs, y):
    acc = [0] * len(y)
    for p in permutations(range(3)):
        x1, x2, x3 = xs[p[0]], xs[p[1]], xs[p[2]]
        x12 = mul(x1, x2)
        term = _sub(mul(mul(x12, y), x3), mul(x12, mul(y, x3)))
        acc = _add(acc, term)
    return acc


def _almost_jordan_lin(mul, xs, y):
    acc = [0] * len(y)
    for p in permutations(range(3)):
        x1, x2, x3 = xs[p[0]], xs[p[1]], xs[p[2]]
        x12 = mul(x1, x2)
        t1 = _scale(2, mul(mul(mul(y, x1), x2), x3))
        t2 = mul(y, mul(x12, x3))
        t3 = _scale(3, mul(mul(y, x12), x3))
        acc = _add(acc, _sub(_add(t1, t2), t3))
    return acc


def jordan_defect(A, x, y):
    """(x^2 y) x - x^2 (y x) for concrete vectors."""
    x2 = multiply(A, x, x)
    return _sub(multiply(A, multiply(A, x2, y), x), multiply(A, x2, multiply(A, y, x)))


def almost_jordan_defect(A, x, y):
    """2((yx)x)x + y x^3 - 3(y x^2)x for concrete vectors."""
    m = lambda u, v: multiply(A, u, v)  # noqa: E731
    x2 = m(x, x)
    x3 = m(x2, x)
    lhs = _add(_scale(2, m(m(m(y, x), x), x)), m(y, x3))
    return _sub(lhs, _scale(3, m(m(y, x2), x)))


def check_identity(A, identity):
    """Holds, or the lexicographically first failing basis tuple with its defect."""
    if identity not in IDENTITIES:
        raise ValueError(f"unknown identity {identity!r}")
    n = A.dim
    E = [basis_vector(n, i) for i in range(n)]
    tab = A.table()

    def mul(u, v):
        return multiply(A, u, v)

    def nonzero(v):
        return any(x != 0 for x in v)

    if identity == "commutative":
        for i, j in product(range(n), repeat=2):
            d = _sub(tab[i][j], tab[j][i])
            if nonzero(d):
                return CounterWitness(identity, (i + 1, j + 1), tuple(d))
        return Holds(identity)

    if identity == "associative":
        for i, j, k in product(range(n), repeat=3):
            d = _sub(mul(tab[i][j], E[k]), mul(E[i], tab[j][k]))
            if nonzero(d):
                return CounterWitness(identity, (i + 1, j + 1, k + 1), tuple(d))
        return Holds(identity)

    if identity == "cd":
        L = [left_mult_matrix(A, E[i]) for i in range(n)]
        for a in range(n):
            for b in range(a + 1, n):
                D = _mat_commutator(L[a], L[b])
                if not any(x != 0 for row in D for x in row):
                    continue
                for x in range(n):
                    Dx = _apply(D, E[x])
                    for y in range(x, n):
                        Dy = _apply(D, E[y])
                        d = _sub(_apply(D, tab[x][y]), _add(mul(Dx, E[y]), mul(E[x], Dy)))
                        if nonzero(d):
                            return CounterWitness(identity, (a + 1, b + 1, x + 1, y + 1), tuple(d))
        return Holds(identity)

    lin = _jordan_lin if identity == "jordan" else _almost_jordan_lin
    for xs in combinations_with_replacement(range(n), 3):
        vecs = [E[i] for i in xs]
        for y in range(n):
            d = lin(mul, vecs, E[y])
            if nonzero(d):
                return CounterWitness(identity, tuple(i + 1 for i in xs) + (y + 1,), tuple(d))
    return Holds(identity)
