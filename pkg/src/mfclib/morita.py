"""Grothendieck-level Morita context data and its consistency checks.

A context carries the branching multiplicities of the two induction
functors, optionally nimrep matrices for the module category and the dual
fusion ring.  All tables are inputs, validated for internal consistency:
the derived Z-matrix, the trace counts, and exact power-sum spectral
identities for the nimreps.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .cyclotomic import invert, rational
from .errors import MissingBranching, MissingNimrep, NotInvariant
from .fusion_ring import FusionRing
from .invariants import ZMatrix, is_modular_invariant
from .modular_data import CheckResult, ModularData, ValidationReport, verlinde_fusion

__all__ = ["MoritaContextData", "z_from_branching", "verify_context",
           "exponents_check"]


@dataclass
class MoritaContextData:
    md: ModularData
    dual_rank: int
    module_rank: int
    branch_plus: np.ndarray | None = None
    branch_minus: np.ndarray | None = None
    nimreps: tuple | None = None
    dual_fusion: FusionRing | None = None
    dual_unit: int = 0
    name: str = ""

    def __post_init__(self):
        r = self.md.rank
        for attr in ("branch_plus", "branch_minus"):
            b = getattr(self, attr)
            if b is None:
                continue
            b = np.asarray(b, dtype=np.int64)
            if b.shape != (r, self.dual_rank):
                raise ValueError(f"{attr} must be rank x dual_rank")
            if np.any(b < 0):
                raise ValueError(f"{attr} has a negative multiplicity")
            unit_row = np.zeros(self.dual_rank, dtype=np.int64)
            unit_row[self.dual_unit] = 1
            if not np.array_equal(b[self.md.unit_index], unit_row):
                raise ValueError(f"{attr} unit row is not the dual unit indicator")
            setattr(self, attr, b)
        if self.nimreps is not None:
            mats = tuple(np.asarray(m, dtype=np.int64) for m in self.nimreps)
            if len(mats) != r:
                raise ValueError("need one nimrep matrix per simple object")
            for m in mats:
                if m.shape != (self.module_rank, self.module_rank):
                    raise ValueError("nimrep matrices must be module_rank square")
                if np.any(m < 0):
                    raise ValueError("nimrep entries must be nonnegative")
            self.nimreps = mats

    def __eq__(self, other):
        if not isinstance(other, MoritaContextData):
            return NotImplemented

        def same(a, b):
            if a is None or b is None:
                return a is b
            return np.array_equal(a, b)

        nim_eq = (self.nimreps is None and other.nimreps is None) or (
            self.nimreps is not None and other.nimreps is not None
            and len(self.nimreps) == len(other.nimreps)
            and all(np.array_equal(a, b)
                    for a, b in zip(self.nimreps, other.nimreps)))
        return (self.md == other.md
                and self.dual_rank == other.dual_rank
                and self.module_rank == other.module_rank
                and self.dual_unit == other.dual_unit
                and self.name == other.name
                and same(self.branch_plus, other.branch_plus)
                and same(self.branch_minus, other.branch_minus)
                and nim_eq
                and self.dual_fusion == other.dual_fusion)


def z_from_branching(ctx: MoritaContextData) -> ZMatrix:
    """Z = B+ B-^t; raises NotInvariant if the result fails commutation."""
    if ctx.branch_plus is None or ctx.branch_minus is None:
        raise MissingBranching("context has no branching matrices")
    z = ctx.branch_plus @ ctx.branch_minus.T
    ok, witness = is_modular_invariant(ctx.md, z)
    if not ok:
        raise NotInvariant(f"branching data is inconsistent: {witness}")
    u = ctx.md.unit_index
    if z[u, u] != 1:
        raise NotInvariant("derived Z-matrix has unit entry != 1")
    return ZMatrix(z)


def verify_context(ctx: MoritaContextData) -> ValidationReport:
    """Trace counts against the declared ranks; 0/1 entries when the dual
    fusion ring is commutative.  Diagnostic, never raises on failure."""
    checks = []
    try:
        z = z_from_branching(ctx).entries
        checks.append(CheckResult("derived_invariant", True))
    except (MissingBranching, NotInvariant) as exc:
        checks.append(CheckResult("derived_invariant", False, str(exc)))
        return ValidationReport(tuple(checks))
    tr = int(np.trace(z))
    checks.append(CheckResult(
        "trace_module_count", tr == ctx.module_rank,
        f"Tr Z = {tr}, declared module rank {ctx.module_rank}"))
    tzz = int(np.sum(z * z))
    checks.append(CheckResult(
        "trace_dual_count", tzz == ctx.dual_rank,
        f"Tr ZZ^t = {tzz}, declared dual rank {ctx.dual_rank}"))
    if ctx.dual_fusion is not None:
        t = ctx.dual_fusion.tensor
        commutative = np.array_equal(t, t.transpose(1, 0, 2))
        if commutative:
            ok = bool(np.all(z <= 1))
            bad = np.argwhere(z > 1)
            detail = "" if ok else \
                f"commutative dual but z{tuple(int(v) for v in bad[0])} > 1"
            checks.append(CheckResult("commutative_dual_entries", ok, detail))
    return ValidationReport(tuple(checks))


def exponents_check(ctx: MoritaContextData) -> ValidationReport:
    """Exact power-sum spectral identities for the nimrep family.

    For every generator index i and p = 0..module_rank, compares the trace
    of the p-th nimrep power with the diagonal-Z-weighted power sums of the
    fusion characters, entirely inside the cyclotomic field.
    """
    if ctx.nimreps is None:
        raise MissingNimrep("context carries no nimrep matrices")
    md = ctx.md
    r = md.rank
    m = ctx.module_rank
    checks = []

    unit_ok = np.array_equal(ctx.nimreps[md.unit_index],
                             np.eye(m, dtype=np.int64))
    checks.append(CheckResult("nimrep_unit", unit_ok,
                              "nimrep at the unit is not the identity"))

    ring = verlinde_fusion(md)
    hom_ok = True
    detail = ""
    for i in range(r):
        for j in range(r):
            prod = ctx.nimreps[i] @ ctx.nimreps[j]
            want = np.zeros((m, m), dtype=np.int64)
            for k in range(r):
                c = ring.tensor[i, j, k]
                if c:
                    want = want + c * ctx.nimreps[k]
            if not np.array_equal(prod, want):
                hom_ok, detail = False, f"ring homomorphism fails at ({i}, {j})"
                break
        if not hom_ok:
            break
    checks.append(CheckResult("nimrep_ring_homomorphism", hom_ok, detail))

    z = z_from_branching(ctx).entries
    diag = [int(z[j, j]) for j in range(r)]
    checks.append(CheckResult(
        "diagonal_sum", sum(diag) == m,
        f"sum of z_jj = {sum(diag)}, module rank {m}"))

    dims = md.dims()
    gamma = [[md.s(j, i) * invert(dims[j]) for i in range(r)] for j in range(r)]
    ok = True
    detail = ""
    for i in range(r):
        power = np.eye(m, dtype=object)
        gpow = [rational(1) for _ in range(r)]
        for p in range(m + 1):
            lhs = rational(int(np.trace(power)))
            rhs = rational(0)
            for j in range(r):
                if diag[j]:
                    rhs = rhs + gpow[j] * diag[j]
            if lhs != rhs:
                ok, detail = False, f"power sum fails at generator {i}, power {p}"
                break
            power = power @ ctx.nimreps[i]
            gpow = [gpow[j] * gamma[j][i] for j in range(r)]
        if not ok:
            break
    checks.append(CheckResult("power_sum_spectrum", ok, detail))
    return ValidationReport(tuple(checks))
