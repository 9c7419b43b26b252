"""Command line interface.

Exit codes: 0 = pass, 1 = mathematical failure (report printed),
2 = input error.  Modular-data arguments accept either a catalog id
(e.g. su2_4) or a path to a data file.
"""

from __future__ import annotations

import argparse
import json
import os
import sys

from .catalog import catalog_ids, from_id
from .context_fixtures import context_from_id, context_ids
from .errors import MFCError, NotInvariant, ParseError, SearchBudgetExceeded
from .characters import verify_ortho1, verify_ortho2, verify_trace_formula, ChiTable, DoubleCharTable
from .invariants import ZMatrix, enumerate_invariants, is_modular_invariant
from .modular_data import ModularData, validate, verlinde_fusion
from .morita import MoritaContextData, exponents_check, verify_context
from .obstruction import check_obstruction, double_z, series_coefficients
from .serialize import decode_from_path, encode, encode_report, obstruction_payload

PASS, MATH_FAIL, INPUT_ERROR = 0, 1, 2


def _load_md(token: str) -> ModularData:
    if os.path.exists(token):
        value = decode_from_path(token)
        if not isinstance(value, ModularData):
            raise ParseError(f"{token} does not contain modular data")
        return value
    return from_id(token)


def _load_kind(path: str, cls, what: str):
    value = decode_from_path(path)
    if not isinstance(value, cls):
        raise ParseError(f"{path} does not contain a {what}")
    return value


def _emit(args, text_form: str, structured_obj) -> None:
    if args.format == "structured":
        print(json.dumps(structured_obj, sort_keys=True, indent=1))
    else:
        print(text_form)


def _scalar_str(s) -> str:
    return str(s.as_fraction()) if s.is_rational() else repr(s)


def cmd_validate(args) -> int:
    md = _load_md(args.data)
    report = validate(md)
    _emit(args, f"{md.name}:\n{report}",
          encode_report(f"validate:{md.name}", report.checks))
    return PASS if report.passed else MATH_FAIL


def cmd_catalog(args) -> int:
    if args.action == "list":
        ids = catalog_ids()
        _emit(args, "\n".join(ids), {"catalog": ids, "contexts": context_ids()})
        return PASS
    md = from_id(args.id)
    text = encode(md)
    if args.output:
        with open(args.output, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return PASS


def cmd_fusion(args) -> int:
    md = _load_md(args.data)
    ring = verlinde_fusion(md)
    lines = []
    triples = []
    for i in range(ring.rank):
        for j in range(ring.rank):
            for k in range(ring.rank):
                c = int(ring.tensor[i, j, k])
                if c:
                    lines.append(f"N[{md.labels[i]}, {md.labels[j]} -> {md.labels[k]}] = {c}")
                    triples.append({"i": i, "j": j, "k": k, "n": c})
    _emit(args, "\n".join(lines), {"name": md.name, "nonzero": triples})
    return PASS


def cmd_enumerate(args) -> int:
    md = _load_md(args.data)
    mode = "physical" if args.bound is None else args.bound
    found = enumerate_invariants(md, mode, workers=args.workers,
                                 node_budget=args.node_budget)
    text = "\n\n".join("\n".join(" ".join(str(v) for v in row)
                                 for row in z.entries.tolist())
                       for z in found)
    _emit(args, f"{len(found)} invariant(s)\n{text}",
          {"name": md.name, "count": len(found),
           "invariants": [z.entries.tolist() for z in found]})
    return PASS


def cmd_check(args) -> int:
    md = _load_md(args.data)
    z = _load_kind(args.zfile, ZMatrix, "Z-matrix")
    ok, witness = is_modular_invariant(md, z)
    _emit(args, "invariant" if ok else f"not an invariant: {witness}",
          {"invariant": ok, "witness": witness})
    return PASS if ok else MATH_FAIL


def cmd_obstruct(args) -> int:
    md = _load_md(args.data)
    zs = [_load_kind(p, ZMatrix, "Z-matrix") for p in args.zfiles]
    report = check_obstruction(md, zs, args.nmax)
    _emit(args, str(report), obstruction_payload(report))
    return PASS if report.verdict else MATH_FAIL


def cmd_series(args) -> int:
    md = _load_md(args.data)
    z = _load_kind(args.zfile, ZMatrix, "Z-matrix")
    coeffs = series_coefficients(md, z, args.nmax)
    _emit(args, "\n".join(f"lambda^{n}: {_scalar_str(c)}"
                          for n, c in enumerate(coeffs)),
          {"coefficients": [_scalar_str(c) for c in coeffs]})
    return PASS


def cmd_exponents(args) -> int:
    if os.path.exists(args.context):
        ctx = _load_kind(args.context, MoritaContextData, "context")
    else:
        ctx = context_from_id(args.context)
    ctx_report = verify_context(ctx)
    exp_report = exponents_check(ctx)
    ok = ctx_report.passed and exp_report.passed
    _emit(args, f"{ctx.name}\n{ctx_report}\n{exp_report}",
          encode_report(f"exponents:{ctx.name}",
                        tuple(ctx_report.checks) + tuple(exp_report.checks)))
    return PASS if ok else MATH_FAIL


def cmd_double_z(args) -> int:
    md = _load_md(args.data)
    z1 = _load_kind(args.z1, ZMatrix, "Z-matrix")
    z2 = _load_kind(args.z2, ZMatrix, "Z-matrix")
    try:
        result = double_z(md, z1, z2)
    except NotInvariant as exc:
        _emit(args, f"failure: {exc}", {"error": str(exc)})
        return MATH_FAIL
    rows = ["  ".join(_scalar_str(v) for v in row) for row in result.matrix]
    _emit(args, "\n".join(rows) + f"\nmu * trace = {result.mu_trace}",
          {"mu_trace": result.mu_trace,
           "matrix": [[_scalar_str(v) for v in row] for row in result.matrix],
           "commutes_s": result.commutes_s, "commutes_t": result.commutes_t})
    return PASS


def cmd_ortho(args) -> int:
    if os.path.exists(args.context):
        ctx = _load_kind(args.context, MoritaContextData, "context")
    else:
        ctx = context_from_id(args.context)
    table = decode_from_path(args.chifile)
    md = ctx.md
    if args.relation == "trace":
        if not isinstance(table, DoubleCharTable):
            raise ParseError("trace relation needs a double character table")
        report = verify_trace_formula(md, ctx, table)
        _emit(args, str(report),
              encode_report("trace_formula", report.checks, report.recorded))
        return PASS if report.passed else MATH_FAIL
    if not isinstance(table, ChiTable):
        raise ParseError("orthogonality relations need a chi table")
    checks = []
    if args.relation == "1":
        for yt in range(ctx.dual_rank):
            checks.extend(verify_ortho1(md, ctx, table, yt).checks)
    else:
        for y in range(ctx.dual_rank):
            for y2 in range(ctx.dual_rank):
                checks.extend(verify_ortho2(md, ctx, table, y, y2).checks)
    ok = all(c.passed for c in checks)
    failures = [c for c in checks if not c.passed]
    text = f"{len(checks)} checks, {len(failures)} failure(s)"
    if failures:
        text += "\n" + "\n".join(f"FAIL {c.name}: {c.detail}" for c in failures[:10])
    _emit(args, text, encode_report(f"ortho{args.relation}", checks))
    return PASS if ok else MATH_FAIL


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="mfclib",
        description="Exact modular invariant toolkit")
    parser.add_argument("--format", choices=("text", "structured"),
                        default="text")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("validate", help="axiom report for modular data")
    p.add_argument("data")
    p.set_defaults(func=cmd_validate)

    p = sub.add_parser("catalog", help="list or export catalog entries")
    p.add_argument("action", choices=("list", "export"))
    p.add_argument("id", nargs="?")
    p.add_argument("-o", "--output")
    p.set_defaults(func=cmd_catalog)

    p = sub.add_parser("fusion", help="Verlinde fusion coefficients")
    p.add_argument("data")
    p.set_defaults(func=cmd_fusion)

    p = sub.add_parser("enumerate", help="enumerate modular invariants")
    p.add_argument("data")
    group = p.add_mutually_exclusive_group()
    group.add_argument("--physical", action="store_true")
    group.add_argument("--bound", type=int, default=None)
    p.add_argument("--workers", type=int, default=1)
    p.add_argument("--node-budget", type=int, default=None)
    p.set_defaults(func=cmd_enumerate)

    p = sub.add_parser("check", help="test a matrix for modular invariance")
    p.add_argument("data")
    p.add_argument("zfile")
    p.set_defaults(func=cmd_check)

    p = sub.add_parser("obstruct", help="integral identity battery")
    p.add_argument("data")
    p.add_argument("zfiles", nargs="+")
    p.add_argument("-n", "--nmax", type=int, default=2)
    p.set_defaults(func=cmd_obstruct)

    p = sub.add_parser("series", help="generating function coefficients")
    p.add_argument("data")
    p.add_argument("zfile")
    p.add_argument("-n", "--nmax", type=int, default=3)
    p.set_defaults(func=cmd_series)

    p = sub.add_parser("exponents", help="context trace and spectrum checks")
    p.add_argument("context")
    p.set_defaults(func=cmd_exponents)

    p = sub.add_parser("double-z", help="genus-1 pair transformation")
    p.add_argument("data")
    p.add_argument("z1")
    p.add_argument("z2")
    p.set_defaults(func=cmd_double_z)

    p = sub.add_parser("ortho", help="character relation verifiers")
    p.add_argument("context")
    p.add_argument("chifile")
    p.add_argument("--relation", choices=("1", "2", "trace"), required=True)
    p.set_defaults(func=cmd_ortho)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.command == "catalog" and args.action == "export" and not args.id:
        print("catalog export needs an id", file=sys.stderr)
        return INPUT_ERROR
    try:
        return args.func(args)
    except SearchBudgetExceeded as exc:
        print(f"error: {exc}", file=sys.stderr)
        return MATH_FAIL
    except (MFCError, OSError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return INPUT_ERROR


if __name__ == "__main__":
    sys.exit(main())
