"""Base changes, exact isomorphism checks and degeneration certificates.

A certificate names a source algebra (optionally with a parametric index
``f(t)`` substituted for its parameters), a target algebra, and a parametric
basis: row ``i`` holds the coordinates of ``E_i^t`` in the source basis.  The
certificate verifies when every structure constant of the source, written in
the parametric basis, tends to the target's constant as ``t -> 0``.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field

from .algebra import AlgebraFormatError, AlgebraStructure, multiply
from .linalg import determinant, inverse, vecmat
from .scalars import (
    NO_LIMIT, ExprError, RatFun, collapse, limit_at_zero, parse_scalar, render, substitute,
)

__all__ = [
    "SingularBasis", "CertificateFormatError", "DegenerationCertificate", "VerificationReport",
    "base_change", "verify_certificate", "verify_isomorphism", "load_certificate",
    "resolve_algebra", "IsomorphismClaim", "load_isomorphism",
]


class SingularBasis(ValueError):
    """The proposed basis matrix is identically singular."""


class CertificateFormatError(ValueError):
    pass


def base_change(A, M, name=None):
    """Structure constants of A in the basis whose i-th vector is row i of M."""
    n = A.dim
    if len(M) != n or any(len(r) != n for r in M):
        raise ValueError(f"basis matrix must be {n}x{n}")
    try:
        Minv = inverse(M)
    except ZeroDivisionError:
        raise SingularBasis("basis matrix is singular") from None
    consts = {}
    for p in range(n):
        for q in range(p, n):
            v = multiply(A, M[p], M[q])
            if all(x == 0 for x in v):
                continue
            coords = [collapse(x) for x in vecmat(v, Minv)]
            row = {k: c for k, c in enumerate(coords) if c != 0}
            if row:
                consts[(p, q)] = row
    return AlgebraStructure(n, consts, A.parameters, name if name is not None else A.name)


def verify_isomorphism(A, B, M):
    """True iff ``base_change(A, M)`` has exactly B's structure constants."""
    if determinant(M) == 0:
        raise SingularBasis("isomorphism witness is singular")
    return base_change(A, M).same_constants(B)


def resolve_algebra(ref, params=None):
    """Catalog name or inline algebra (dict / AlgebraStructure), then specialize."""
    from . import catalog

    if isinstance(ref, AlgebraStructure):
        alg = ref
    elif isinstance(ref, dict):
        alg = AlgebraStructure.from_dict(ref)
    elif isinstance(ref, str):
        alg = catalog.catalog_get(ref)
    else:
        raise CertificateFormatError(f"cannot resolve algebra {ref!r}")
    if params:
        unknown = set(params) - set(alg.parameters)
        if unknown:
            raise CertificateFormatError(
                f"{alg.name}: unknown parameters {', '.join(sorted(unknown))}")
        alg = alg.specialize(params)
    return alg


@dataclass
class DegenerationCertificate:
    source: object
    target: object
    basis: list
    source_params: dict = field(default_factory=dict)
    target_params: dict = field(default_factory=dict)
    ramification: int = 1

    @classmethod
    def from_dict(cls, data):
        allowed = {"source", "source_params", "target", "target_params", "ramification", "basis"}
        if not isinstance(data, dict):
            raise CertificateFormatError("certificate must be a JSON object")
        extra = set(data) - allowed
        if extra:
            raise CertificateFormatError(f"unknown fields: {', '.join(sorted(extra))}")
        for key in ("source", "target", "basis"):
            if key not in data:
                raise CertificateFormatError(f"missing field {key!r}")
        m = data.get("ramification", 1)
        if not isinstance(m, int) or m < 1:
            raise CertificateFormatError("ramification must be a positive integer")
        try:
            sp = {k: parse_scalar(v) for k, v in data.get("source_params", {}).items()}
            tp = {k: parse_scalar(v) for k, v in data.get("target_params", {}).items()}
            basis = [[parse_scalar(x) for x in row] for row in data["basis"]]
        except (ExprError, AttributeError, TypeError) as exc:
            raise CertificateFormatError(str(exc)) from None
        for v in tp.values():
            if isinstance(v, RatFun) and ({"t", "s"} & set(v.gens)):
                raise CertificateFormatError("target parameters must not depend on t")
        src, tgt = data["source"], data["target"]
        try:
            if isinstance(src, dict):
                src = AlgebraStructure.from_dict(src)
            if isinstance(tgt, dict):
                tgt = AlgebraStructure.from_dict(tgt)
        except AlgebraFormatError as exc:
            raise CertificateFormatError(str(exc)) from None
        return cls(src, tgt, basis, sp, tp, m)

    def to_dict(self):
        def ref(x):
            return x.to_dict() if isinstance(x, AlgebraStructure) else x

        return {
            "source": ref(self.source),
            "source_params": {k: render(v) for k, v in self.source_params.items()},
            "target": ref(self.target),
            "target_params": {k: render(v) for k, v in self.target_params.items()},
            "ramification": self.ramification,
            "basis": [[render(x) for x in row] for row in self.basis],
        }


def load_certificate(path):
    with open(path, encoding="utf-8") as fh:
        try:
            data = json.load(fh)
        except json.JSONDecodeError as exc:
            raise CertificateFormatError(f"invalid JSON: {exc}") from None
    return DegenerationCertificate.from_dict(data)


@dataclass
class VerificationReport:
    status: str  # Verified | LimitMissing | Mismatch | SingularBasis
    location: tuple | None = None  # 1-based (i, j, k)
    got: object = None
    want: object = None
    limits: dict = field(default_factory=dict)
    source: str = ""
    target: str = ""

    @property
    def verified(self):
        return self.status == "Verified"

    def to_dict(self):
        out = {"status": self.status, "source": self.source, "target": self.target}
        if self.location is not None:
            out["i"], out["j"], out["k"] = self.location
        if self.status == "Mismatch":
            out["got"] = render(self.got)
            out["want"] = render(self.want)
        return out

    def describe(self):
        head = f"{self.source} -> {self.target}: {self.status}"
        if self.status == "Mismatch":
            i, j, k = self.location
            head += f" at c[{i},{j}]^{k}: got {render(self.got)}, want {render(self.want)}"
        elif self.status == "LimitMissing":
            i, j, k = self.location
            head += f" at c[{i},{j}]^{k}: no limit as t -> 0"
        return head


def _ramify(x, m):
    if m == 1:
        return x
    return substitute(x, "t", RatFun.var("s") ** m)


def verify_certificate(cert):
    """Check the certificate exactly; see :class:`VerificationReport`."""
    m = cert.ramification
    src = resolve_algebra(cert.source)
    if cert.source_params:
        src = src.specialize({k: _ramify(v, m) for k, v in cert.source_params.items()})
    tgt = resolve_algebra(cert.target, cert.target_params)
    sname = getattr(src, "name", "") or "source"
    tname = getattr(tgt, "name", "") or "target"
    if m > 1:
        src = src.specialize({"t": RatFun.var("s") ** m}) if "t" in src.free_variables() else src
    var = "s" if m > 1 else "t"
    basis = [[_ramify(x, m) for x in row] for row in cert.basis]
    n = src.dim
    if tgt.dim != n or len(basis) != n or any(len(r) != n for r in basis):
        raise CertificateFormatError("dimension mismatch between source, target and basis")
    try:
        moved = base_change(src, basis)
    except SingularBasis:
        return VerificationReport("SingularBasis", source=sname, target=tname)
    limits = {}
    for i in range(n):
        for j in range(i, n):
            for k in range(n):
                c = moved.coefficient(i, j, k)
                lim = limit_at_zero(c, var)
                loc = (i + 1, j + 1, k + 1)
                if lim is NO_LIMIT:
                    return VerificationReport("LimitMissing", loc, limits=limits,
                                              source=sname, target=tname)
                want = tgt.coefficient(i, j, k)
                if collapse(lim - want) != 0:
                    return VerificationReport("Mismatch", loc, lim, want, limits,
                                              source=sname, target=tname)
                if lim != 0:
                    limits[loc] = lim
    return VerificationReport("Verified", limits=limits, source=sname, target=tname)


@dataclass
class IsomorphismClaim:
    """File form of an isomorphism check: source, target and witness matrix."""

    source: object
    target: object
    matrix: list
    source_params: dict = field(default_factory=dict)
    target_params: dict = field(default_factory=dict)

    @classmethod
    def from_dict(cls, data):
        allowed = {"source", "source_params", "target", "target_params", "matrix"}
        if not isinstance(data, dict) or set(data) - allowed:
            raise CertificateFormatError(
                f"unknown fields: {', '.join(sorted(set(data) - allowed))}"
                if isinstance(data, dict) else "isomorphism claim must be an object")
        try:
            sp = {k: parse_scalar(v) for k, v in data.get("source_params", {}).items()}
            tp = {k: parse_scalar(v) for k, v in data.get("target_params", {}).items()}
            mat = [[parse_scalar(x) for x in row] for row in data["matrix"]]
        except (ExprError, KeyError, TypeError, AttributeError) as exc:
            raise CertificateFormatError(str(exc)) from None
        return cls(data["source"], data["target"], mat, sp, tp)

    def check(self):
        a = resolve_algebra(self.source, self.source_params)
        b = resolve_algebra(self.target, self.target_params)
        return verify_isomorphism(a, b, self.matrix)


def load_isomorphism(path):
    with open(path, encoding="utf-8") as fh:
        try:
            data = json.load(fh)
        except json.JSONDecodeError as exc:
            raise CertificateFormatError(f"invalid JSON: {exc}") from None
    return IsomorphismClaim.from_dict(data)
