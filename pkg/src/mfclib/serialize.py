"""Human-readable data files with canonical, deterministic bytes.

Files are JSON with sorted keys and fixed indentation inside a small
versioned envelope.  Rationals are "p/q" strings; cyclotomic scalars carry
their conductor and coefficient list.  Decoding re-checks type invariants
and raises SchemaError / ParseError / IntegrityError accordingly.
"""

from __future__ import annotations

import json
from fractions import Fraction
from math import gcd

import numpy as np

from .characters import ChiTable, DoubleCharTable
from .cyclotomic import ExactScalar, euler_phi
from .cycmat import CycMat
from .errors import IntegrityError, ParseError, SchemaError
from .fusion_ring import FusionRing
from .invariants import ZMatrix
from .modular_data import ModularData
from .morita import MoritaContextData

__all__ = ["SCHEMA_VERSION", "encode", "decode", "encode_to_path",
           "decode_from_path", "encode_report"]

SCHEMA_VERSION = 1
_KINDS = ("modular_data", "z_matrix", "context", "chi_table", "report")


def _fraction_str(q: Fraction) -> str:
    q = Fraction(q)
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


def _parse_fraction(text) -> Fraction:
    if isinstance(text, int):
        return Fraction(text)
    if not isinstance(text, str):
        raise ParseError(f"expected a rational string, got {text!r}")
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError) as exc:
        raise ParseError(f"malformed rational {text!r}") from exc


def _scalar_obj(s: ExactScalar):
    if s.is_rational():
        return _fraction_str(s.as_fraction())
    return {"conductor": s.conductor,
            "coeffs": [_fraction_str(c) for c in s.coeffs]}


def _parse_scalar(obj) -> ExactScalar:
    if isinstance(obj, (str, int)):
        return ExactScalar.from_rational(_parse_fraction(obj))
    if not isinstance(obj, dict) or set(obj) != {"conductor", "coeffs"}:
        raise ParseError(f"malformed scalar {obj!r}")
    n = obj["conductor"]
    if not isinstance(n, int) or n < 1:
        raise ParseError(f"conductor must be a positive integer, got {n!r}")
    coeffs = [_parse_fraction(c) for c in obj["coeffs"]]
    if len(coeffs) != euler_phi(n):
        raise ParseError("coefficient list length does not match the conductor")
    den = 1
    nums = []
    for c in coeffs:
        den = den * c.denominator // gcd(den, c.denominator)
    for c in coeffs:
        nums.append(c.numerator * (den // c.denominator))
    return ExactScalar(n, nums, den)


def _int_grid(mat) -> list:
    return [[int(v) for v in row] for row in np.asarray(mat)]


def _parse_int_grid(obj, what: str, allow_negative: bool = False) -> np.ndarray:
    if not isinstance(obj, list) or not obj or not all(isinstance(r, list) for r in obj):
        raise ParseError(f"{what} must be a nonempty list of rows")
    width = len(obj[0])
    out = []
    for row in obj:
        if len(row) != width:
            raise ParseError(f"{what} is ragged")
        vals = []
        for v in row:
            if not isinstance(v, int):
                raise ParseError(f"{what} entries must be integers")
            if v < 0 and not allow_negative:
                raise IntegrityError(f"{what} has a negative entry")
            vals.append(v)
        out.append(vals)
    return np.array(out, dtype=np.int64)


# -- payload builders --------------------------------------------------------

def _md_payload(md: ModularData) -> dict:
    return {
        "name": md.name,
        "conductor": md.conductor,
        "labels": list(md.labels),
        "unit": md.unit_index,
        "t_exponents": list(md.t_exponents),
        "s_tilde": [[_scalar_obj(md.s(i, j)) for j in range(md.rank)]
                    for i in range(md.rank)],
    }


def _parse_md(payload) -> ModularData:
    try:
        name = payload["name"]
        conductor = payload["conductor"]
        labels = payload["labels"]
        unit = payload["unit"]
        t_exp = payload["t_exponents"]
        grid = payload["s_tilde"]
    except (KeyError, TypeError) as exc:
        raise ParseError(f"modular_data payload missing field: {exc}") from exc
    if not isinstance(conductor, int) or conductor < 1:
        raise ParseError(f"conductor must be a positive integer, got {conductor!r}")
    scalars = [[_parse_scalar(x) for x in row] for row in grid]
    if len(scalars) != len(labels) or any(len(r) != len(labels) for r in scalars):
        raise IntegrityError("S-matrix shape does not match labels")
    if not all(isinstance(e, int) for e in t_exp):
        raise ParseError("twist exponents must be integers")
    smat = CycMat.from_scalars(conductor, scalars)
    try:
        return ModularData(name, conductor, labels, unit, smat, t_exp)
    except ValueError as exc:
        raise IntegrityError(str(exc)) from exc


def _z_payload(z: ZMatrix) -> dict:
    return {"entries": _int_grid(z.entries)}


def _parse_z(payload) -> ZMatrix:
    if "entries" not in payload:
        raise ParseError("z_matrix payload needs 'entries'")
    mat = _parse_int_grid(payload["entries"], "z_matrix")
    if mat.shape[0] != mat.shape[1]:
        raise IntegrityError("Z-matrix must be square")
    return ZMatrix(mat)


def _ring_payload(ring: FusionRing) -> dict:
    return {"unit": ring.unit,
            "tensor": [_int_grid(ring.tensor[i]) for i in range(ring.rank)]}


def _parse_ring(payload) -> FusionRing:
    if not isinstance(payload, dict) or "tensor" not in payload:
        raise ParseError("fusion ring payload needs 'tensor'")
    slices = [_parse_int_grid(s, "fusion tensor") for s in payload["tensor"]]
    tensor = np.stack(slices)
    try:
        return FusionRing(tensor, unit=int(payload.get("unit", 0)))
    except ValueError as exc:
        raise IntegrityError(str(exc)) from exc


def _context_payload(ctx: MoritaContextData) -> dict:
    return {
        "name": ctx.name,
        "modular_data": _md_payload(ctx.md),
        "dual_rank": ctx.dual_rank,
        "module_rank": ctx.module_rank,
        "dual_unit": ctx.dual_unit,
        "branch_plus": None if ctx.branch_plus is None else _int_grid(ctx.branch_plus),
        "branch_minus": None if ctx.branch_minus is None else _int_grid(ctx.branch_minus),
        "nimreps": None if ctx.nimreps is None else [_int_grid(m) for m in ctx.nimreps],
        "dual_fusion": None if ctx.dual_fusion is None else _ring_payload(ctx.dual_fusion),
    }


def _parse_context(payload) -> MoritaContextData:
    try:
        md = _parse_md(payload["modular_data"])
        dual_rank = int(payload["dual_rank"])
        module_rank = int(payload["module_rank"])
    except (KeyError, TypeError) as exc:
        raise ParseError(f"context payload missing field: {exc}") from exc
    branch_plus = payload.get("branch_plus")
    branch_minus = payload.get("branch_minus")
    nimreps = payload.get("nimreps")
    dual_fusion = payload.get("dual_fusion")
    try:
        return MoritaContextData(
            md=md, dual_rank=dual_rank, module_rank=module_rank,
            branch_plus=None if branch_plus is None
            else _parse_int_grid(branch_plus, "branch_plus"),
            branch_minus=None if branch_minus is None
            else _parse_int_grid(branch_minus, "branch_minus"),
            nimreps=None if nimreps is None
            else tuple(_parse_int_grid(m, "nimrep") for m in nimreps),
            dual_fusion=None if dual_fusion is None else _parse_ring(dual_fusion),
            dual_unit=int(payload.get("dual_unit", 0)),
            name=payload.get("name", ""))
    except ValueError as exc:
        raise IntegrityError(str(exc)) from exc


def _chi_payload(table) -> dict:
    if isinstance(table, DoubleCharTable):
        return {
            "table_type": "double",
            "values": [[[_scalar_obj(v) for v in col] for col in row]
                       for row in table.values],
        }
    return {
        "table_type": "chi",
        "plus": [[_scalar_obj(v) for v in row] for row in table.plus],
        "minus": [[_scalar_obj(v) for v in row] for row in table.minus],
    }


def _parse_chi(payload):
    style = payload.get("table_type")
    if style == "chi":
        try:
            plus = tuple(tuple(_parse_scalar(v) for v in row)
                         for row in payload["plus"])
            minus = tuple(tuple(_parse_scalar(v) for v in row)
                          for row in payload["minus"])
        except (KeyError, TypeError) as exc:
            raise ParseError(f"chi_table payload missing field: {exc}") from exc
        return ChiTable(plus, minus)
    if style == "double":
        try:
            values = tuple(tuple(tuple(_parse_scalar(v) for v in col)
                                 for col in row)
                           for row in payload["values"])
        except (KeyError, TypeError) as exc:
            raise ParseError(f"chi_table payload missing field: {exc}") from exc
        return DoubleCharTable(values)
    raise ParseError(f"unknown table_type {style!r}")


def encode_report(title: str, checks, records=()) -> dict:
    """Structured form of a validation-style report."""
    return {
        "title": title,
        "checks": [{"name": c.name, "passed": bool(c.passed), "detail": c.detail}
                   for c in checks],
        "records": [{"name": n, "value": str(v)} for n, v in records],
    }


def obstruction_payload(report) -> dict:
    """Report payload for an identity battery result."""
    def fmt(scalar):
        if scalar.is_rational():
            return _fraction_str(scalar.as_fraction())
        return _scalar_obj(scalar)

    return {
        "title": "obstruction",
        "checks": [{"name": "verdict", "passed": bool(report.verdict),
                    "detail": ""}],
        "records": [{
            "variant": r.variant, "n": r.n, "tuple": list(r.tuple_indices),
            "lhs": fmt(r.lhs), "integer": bool(r.lhs_is_nonneg_integer),
            "asserted": bool(r.asserted), "rhs": r.rhs, "equal": r.equal,
        } for r in report.records],
    }


# -- envelope ---------------------------------------------------------------

def encode(value) -> str:
    """Canonical text for a supported value; deterministic bytes."""
    if isinstance(value, ModularData):
        kind, payload = "modular_data", _md_payload(value)
    elif isinstance(value, ZMatrix):
        kind, payload = "z_matrix", _z_payload(value)
    elif isinstance(value, MoritaContextData):
        kind, payload = "context", _context_payload(value)
    elif isinstance(value, (ChiTable, DoubleCharTable)):
        kind, payload = "chi_table", _chi_payload(value)
    elif isinstance(value, dict) and "checks" in value:
        kind, payload = "report", value
    else:
        raise TypeError(f"cannot encode {type(value).__name__}")
    doc = {"schema": SCHEMA_VERSION, "kind": kind, "payload": payload}
    return json.dumps(doc, sort_keys=True, indent=1) + "\n"


def decode(text: str):
    """Inverse of encode; validates schema, shape and invariants."""
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"not valid JSON: {exc}") from exc
    if not isinstance(doc, dict):
        raise ParseError("top level must be an object")
    if doc.get("schema") != SCHEMA_VERSION:
        raise SchemaError(f"unsupported schema version {doc.get('schema')!r}")
    kind = doc.get("kind")
    if kind not in _KINDS:
        raise SchemaError(f"unknown kind {kind!r}")
    payload = doc.get("payload")
    if not isinstance(payload, dict):
        raise ParseError("payload must be an object")
    if kind == "modular_data":
        return _parse_md(payload)
    if kind == "z_matrix":
        return _parse_z(payload)
    if kind == "context":
        return _parse_context(payload)
    if kind == "chi_table":
        return _parse_chi(payload)
    return payload


def encode_to_path(value, path: str) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(encode(value))


def decode_from_path(path: str):
    with open(path, "r", encoding="utf-8") as fh:
        return decode(fh.read())
