"""Command-line interface.

Exit codes: 0 success, 1 checked-false, 2 input error, 3 inconclusive.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from concurrent.futures import ProcessPoolExecutor

from . import paperdata
from .algebra import AlgebraFormatError, IDENTITIES, check_identity, is_nilpotent, load_algebra
from .catalog import FILTERS, UnknownAlgebra, catalog_get, catalog_list, export_catalog
from .degeneration import (
    CertificateFormatError, SingularBasis, load_certificate, load_isomorphism, verify_certificate,
)
from .invariants import effective_parameter_count, family_dimension, invariant_profile
from .nondegeneration import ArgumentFormatError, load_argument, verify_argument
from .scalars import ExprError, parse_scalar, render

EXIT_OK, EXIT_FALSE, EXIT_INPUT, EXIT_INCONCLUSIVE = 0, 1, 2, 3
CHECKS = IDENTITIES + ("nilpotent",)


class InputError(Exception):
    pass


def _emit(args, text_lines, record):
    if args.format == "record":
        print(json.dumps(record, indent=1, ensure_ascii=False))
    else:
        for line in text_lines:
            print(line)


def parse_params(text):
    """``k=v,k=v`` into {name: scalar}."""
    out = {}
    if not text:
        return out
    for part in text.split(","):
        if not part.strip():
            continue
        if "=" not in part:
            raise InputError(f"bad parameter assignment {part!r} (want name=value)")
        k, v = part.split("=", 1)
        try:
            out[k.strip()] = parse_scalar(v)
        except ExprError as exc:
            raise InputError(f"{k.strip()}: {exc}") from None
    return out


def _default_budget():
    raw = os.environ.get("ALGVAR_BUDGET_MS")
    if raw is None:
        return None
    try:
        return int(raw)
    except ValueError:
        raise InputError(f"ALGVAR_BUDGET_MS must be an integer, got {raw!r}") from None


def _budget(args):
    return args.budget_ms if args.budget_ms is not None else _default_budget()


def _message(exc):
    if isinstance(exc, KeyError) and exc.args:
        return str(exc.args[0])
    return str(exc)


def _resolve(target, params):
    looks_like_file = os.path.sep in target or target.endswith((".json", ".alg")) \
        or os.path.exists(target)
    try:
        if looks_like_file:
            A = load_algebra(target)
            return A.specialize(params) if params else A
        return catalog_get(target, params or None)
    except FileNotFoundError:
        raise InputError(f"no such file: {target}") from None
    except (UnknownAlgebra, AlgebraFormatError, ValueError) as exc:
        raise InputError(_message(exc)) from None


# subcommands -------------------------------------------------------------------


def cmd_catalog(args):
    if args.action == "export":
        sys.stdout.write(export_catalog())
        return EXIT_OK
    entries = catalog_list(args.filter)
    lines = []
    for e in entries:
        ps = f"({', '.join(e.parameters)})" if e.parameters else ""
        tag = "  [jordan]" if e.jordan_member else ""
        lines.append(f"{e.name}{ps}: {e.algebra.describe()}{tag}")
    record = [dict(e.algebra.to_dict(), jordan_member=e.jordan_member) for e in entries]
    _emit(args, lines, record)
    return EXIT_OK


def cmd_check(args):
    A = _resolve(args.target, parse_params(args.params))
    wanted = [x.strip() for x in args.identities.split(",") if x.strip()]
    bad = [x for x in wanted if x not in CHECKS]
    if bad:
        raise InputError(f"unknown identity {', '.join(bad)}; choose from {', '.join(CHECKS)}")
    lines, records, ok = [], [], True
    for name in wanted:
        if name == "nilpotent":
            nil, index = is_nilpotent(A)
            ok &= nil
            lines.append(f"nilpotent: Holds (index {index})" if nil else "nilpotent: Fails")
            records.append({"identity": name, "holds": nil, "index": index})
            continue
        res = check_identity(A, name)
        ok &= bool(res)
        if res:
            lines.append(f"{name}: Holds")
            records.append({"identity": name, "holds": True})
        else:
            lines.append(f"{name}: CounterWitness {res.describe()}")
            records.append({"identity": name, "holds": False, "basis_tuple": list(res.basis_tuple),
                            "defect": [render(x) for x in res.defect]})
    _emit(args, [f"{A.name or args.target}"] + ["  " + x for x in lines],
          {"target": A.name or args.target, "results": records})
    return EXIT_OK if ok else EXIT_FALSE


def cmd_invariants(args):
    A = _resolve(args.target, parse_params(args.params))
    prof = invariant_profile(A, samples=args.samples)
    lines = [
        f"{A.name or args.target}",
        f"  dims of A^k:      {', '.join(map(str, prof.power_dims))}",
        f"  dim Ann:          {prof.ann_dim}",
        f"  dim Der:          {prof.der_dim}",
        f"  orbit dim:        {prof.orbit_dim}",
        f"  nilpotency index: {prof.nilpotency_index}",
    ]
    if A.free_variables():
        lines.append(f"  (generic in {', '.join(sorted(A.free_variables()))})")
    _emit(args, lines, dict(prof.to_dict(), name=A.name))
    return EXIT_OK


def _verify_degeneration(args):
    try:
        cert = load_certificate(args.file)
        report = verify_certificate(cert)
    except (UnknownAlgebra, ValueError) as exc:
        if isinstance(exc, CertificateFormatError):
            raise InputError(str(exc)) from None
        raise InputError(_message(exc)) from None
    _emit(args, [report.describe()], report.to_dict())
    return EXIT_OK if report.verified else EXIT_FALSE


def _verify_isomorphism(args):
    try:
        claim = load_isomorphism(args.file)
        ok = claim.check()
    except SingularBasis as exc:
        raise InputError(str(exc)) from None
    except (UnknownAlgebra, ValueError) as exc:
        raise InputError(_message(exc)) from None
    src = claim.source if isinstance(claim.source, str) else "source"
    tgt = claim.target if isinstance(claim.target, str) else "target"
    _emit(args, [f"{src} ≅ {tgt}: {'Verified' if ok else 'Mismatch'}"],
          {"source": src, "target": tgt, "status": "Verified" if ok else "Mismatch"})
    return EXIT_OK if ok else EXIT_FALSE


def _parse_samples(text):
    if not text:
        return None
    try:
        return tuple(parse_scalar(x) for x in text.split(",") if x.strip())
    except ExprError as exc:
        raise InputError(f"--samples: {exc}") from None


def _verify_nondegeneration(args):
    try:
        arg = load_argument(args.file)
        report = verify_argument(arg, samples=_parse_samples(args.samples),
                                 budget_ms=_budget(args), jobs=args.jobs)
    except (UnknownAlgebra, ValueError) as exc:
        if isinstance(exc, ArgumentFormatError):
            raise InputError(str(exc)) from None
        raise InputError(_message(exc)) from None
    _emit(args, report.lines(), report.to_dict())
    return {"Verified": EXIT_OK, "Inconclusive": EXIT_INCONCLUSIVE}.get(report.status, EXIT_FALSE)


def cmd_verify(args):
    if not os.path.exists(args.file):
        raise InputError(f"no such file: {args.file}")
    return {"degeneration": _verify_degeneration, "isomorphism": _verify_isomorphism,
            "nondegeneration": _verify_nondegeneration}[args.kind](args)


def _component_row(item):
    name, params, samples = item
    fd = family_dimension(name, len(params), samples=samples)
    eff = effective_parameter_count(catalog_get(name))
    return fd, eff


def component_report(jobs=1, samples=0):
    """Rows and totals, recomputed from the catalog; expectations only from paperdata."""
    comps = paperdata.load("components")["components"]
    items = [(c["name"], c["parameters"], samples) for c in comps]
    if jobs and jobs > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            computed = list(pool.map(_component_row, items))
    else:
        computed = [_component_row(it) for it in items]
    rows = []
    for (name, params, _), (fd, eff) in zip(items, computed):
        rows.append({"name": name, "parameters": list(params), "param_count": len(params),
                     "der_dim": fd.der_dim, "orbit_dim": fd.orbit_dim, "gdim": fd.gdim,
                     "effective_parameters": eff})
    counts = [r["param_count"] for r in rows]
    totals = {
        "variety_dim": max(r["gdim"] for r in rows),
        "components": len(rows),
        "rigid": counts.count(0),
        "two_parameter_families": counts.count(2),
        "one_parameter_families": counts.count(1),
    }
    return {"rows": rows, "totals": totals}


def cmd_report(args):
    rep = component_report(jobs=args.jobs, samples=args.samples)
    expected = paperdata.load("gdim")["gdim"]
    claims = paperdata.load("components")["claims"]
    lines = [f"{'component':18s} {'params':>6s} {'dim Der':>7s} {'orbit':>5s} {'gdim':>4s}  expected"]
    mismatch = []
    for r in rep["rows"]:
        label = r["name"] + (f"({', '.join(r['parameters'])})" if r["parameters"] else "")
        exp = expected.get(r["name"])
        flag = "" if exp == r["gdim"] else "  MISMATCH"
        if flag:
            mismatch.append(r["name"])
        lines.append(f"{label:18s} {r['param_count']:6d} {r['der_dim']:7d} {r['orbit_dim']:5d} "
                     f"{r['gdim']:4d}  {exp}{flag}")
    t = rep["totals"]
    lines.append(
        f"totals: dim {t['variety_dim']}, components {t['components']}, rigid {t['rigid']}, "
        f"{t['two_parameter_families']} two-parameter family, "
        f"{t['one_parameter_families']} one-parameter families")
    for r in rep["rows"]:
        if r["effective_parameters"] != r["param_count"]:
            lines.append(
                f"note: the catalog form of {r['name']} has {r['effective_parameters']} effective "
                f"parameter(s); counted as a {r['param_count']}-parameter component as listed")
    for key, want in claims.items():
        if t.get(key) != want:
            mismatch.append(key)
            lines.append(f"MISMATCH {key}: computed {t.get(key)}, listed {want}")
    record = dict(rep, expected_gdim=expected, mismatches=mismatch)
    _emit(args, lines, record)
    return EXIT_FALSE if mismatch else EXIT_OK


# parser -----------------------------------------------------------------------------


def build_parser():
    def shared(suppress):
        # options may come before or after the subcommand; the subcommand copy
        # must not overwrite a value given earlier
        sp = argparse.ArgumentParser(add_help=False)
        d = (lambda v: argparse.SUPPRESS) if suppress else (lambda v: v)
        sp.add_argument("--format", choices=("text", "record"), default=d("text"))
        sp.add_argument("--jobs", type=int, default=d(1), help="parallel workers")
        sp.add_argument("--budget-ms", type=int, default=d(None),
                        help="time budget for searches (default: $ALGVAR_BUDGET_MS)")
        return sp

    common = shared(True)

    ap = argparse.ArgumentParser(prog="algvar", description="Exact checks for nilpotent "
                                 "commutative CD-algebras of dimension 5.", parents=[shared(False)])
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("catalog", parents=[common], help="list or export the catalog")
    p.add_argument("action", choices=("list", "export"))
    p.add_argument("--filter", choices=FILTERS, default="all")
    p.set_defaults(func=cmd_catalog)

    p = sub.add_parser("check", parents=[common], help="check identities")
    p.add_argument("target", help="catalog name or algebra file")
    p.add_argument("--identities", default="commutative,cd,nilpotent",
                   help=f"comma list from {', '.join(CHECKS)}")
    p.add_argument("--params", default="", help="k=v,... parameter values")
    p.set_defaults(func=cmd_check)

    p = sub.add_parser("invariants", parents=[common], help="basis-free invariants")
    p.add_argument("target")
    p.add_argument("--params", default="")
    p.add_argument("--samples", type=int, default=3,
                   help="random points for the non-generic rank check")
    p.set_defaults(func=cmd_invariants)

    p = sub.add_parser("verify", parents=[common], help="verify a certificate or argument file")
    p.add_argument("kind", choices=("degeneration", "nondegeneration", "isomorphism"))
    p.add_argument("file")
    p.add_argument("--samples", default=None,
                   help="comma list of parameter sample values (nondegeneration)")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("report", parents=[common], help="component report")
    p.add_argument("what", choices=("components",))
    p.add_argument("--samples", type=int, default=0)
    p.set_defaults(func=cmd_report)
    return ap


def main(argv=None):
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_INPUT if exc.code else EXIT_OK
    try:
        return args.func(args)
    except InputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


def run():
    sys.exit(main())


if __name__ == "__main__":
    run()
