"""Integral identities for tuples of modular invariants.

The full-variant sum over n invariants equals a vacuum hom dimension in the
center; the diagonal variant must be a nonnegative integer for n >= 2; the
two chiral variants are computed and recorded, since their hom-space
interpretation is not pinned down at multiplicity level (the naive pairing
disagrees with the sums on small examples).  Also: generating-function
coefficients, trace identities and the genus-1 double-Z transformation.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations_with_replacement

import numpy as np

from .cyclotomic import ExactScalar, invert, rational
from .cycmat import CycMat
from .errors import NotInvariant, RankMismatch
from .fusion_ring import center_tensor, full_center
from .modular_data import ModularData, verlinde_fusion

__all__ = ["VARIANTS", "VariantRecord", "ObstructionReport", "lhs_multi",
           "rhs_vacuum", "check_obstruction", "series_coefficients",
           "TraceIdentities", "trace_identities", "DoubleZResult", "double_z"]

VARIANTS = ("full", "diagonal", "chiral_plus", "chiral_minus")


def _entry_arrays(md: ModularData, zs):
    out = []
    for z in zs:
        m = np.asarray(getattr(z, "entries", z), dtype=np.int64)
        if m.shape != (md.rank, md.rank):
            raise RankMismatch("Z-matrix rank does not match the modular data")
        out.append(m)
    if not out:
        raise ValueError("need at least one Z-matrix")
    return out


def lhs_multi(md: ModularData, zs, variant: str = "full") -> ExactScalar:
    """Exact value of the selected identity's left-hand side."""
    if variant not in VARIANTS:
        raise ValueError(f"unknown variant {variant!r}")
    mats = _entry_arrays(md, zs)
    n = len(mats)
    r = md.rank
    dims = md.dims()
    mu = md.global_dim()
    mu_pow = mu ** (n - 2)
    u = [d ** (2 - n) for d in dims]

    prod = mats[0].astype(object).copy()
    for m in mats[1:]:
        prod = prod * m

    total = rational(0)
    if variant == "full":
        for j in range(r):
            row = prod[j]
            inner = rational(0)
            nonzero = np.nonzero(row)[0]
            if nonzero.size == 0:
                continue
            for k in nonzero:
                inner = inner + u[k] * int(row[k])
            total = total + u[j] * inner
    elif variant == "diagonal":
        for j in range(r):
            c = int(prod[j, j])
            if c:
                total = total + (u[j] * u[j]) * c
    else:
        unit = md.unit_index
        vec = prod[:, unit] if variant == "chiral_plus" else prod[unit, :]
        for j in range(r):
            c = int(vec[j])
            if c:
                total = total + u[j] * c
    return total * mu_pow


def rhs_vacuum(md: ModularData, zs) -> int:
    """Vacuum multiplicity of the tensor product of the full centers."""
    mats = _entry_arrays(md, zs)
    ring = verlinde_fusion(md)
    obj = full_center(mats[0])
    for m in mats[1:]:
        obj = center_tensor(ring, obj, full_center(m))
    return int(obj.mult[md.unit_index, md.unit_index])


@dataclass(frozen=True)
class VariantRecord:
    variant: str
    n: int
    tuple_indices: tuple
    lhs: ExactScalar
    lhs_is_nonneg_integer: bool
    asserted: bool
    rhs: int | None = None
    equal: bool | None = None


@dataclass(frozen=True)
class ObstructionReport:
    records: tuple

    @property
    def verdict(self) -> bool:
        for rec in self.records:
            if not rec.asserted:
                continue
            if rec.rhs is not None and not rec.equal:
                return False
            if rec.rhs is None and not rec.lhs_is_nonneg_integer:
                return False
        return True

    def failures(self) -> list[VariantRecord]:
        out = []
        for rec in self.records:
            if not rec.asserted:
                continue
            if (rec.rhs is not None and not rec.equal) or \
               (rec.rhs is None and not rec.lhs_is_nonneg_integer):
                out.append(rec)
        return out

    def __str__(self):
        lines = []
        for rec in self.records:
            val = (str(rec.lhs.as_fraction()) if rec.lhs.is_rational()
                   else repr(rec.lhs))
            status = ""
            if rec.rhs is not None:
                status = f" rhs={rec.rhs} {'==' if rec.equal else '!='}"
            tag = "assert" if rec.asserted else "record"
            lines.append(f"[{tag}] n={rec.n} {rec.variant} tuple={rec.tuple_indices}"
                         f" lhs={val}{status}")
        lines.append(f"verdict: {'pass' if self.verdict else 'fail'}")
        return "\n".join(lines)


def check_obstruction(md: ModularData, zs, n_max: int) -> ObstructionReport:
    """Run the identity battery over multisets of the supplied invariants.

    Full-variant equality with the vacuum dimension is asserted; diagonal
    integrality is asserted for n >= 2; chiral values are recorded only.
    """
    mats = _entry_arrays(md, zs)
    if n_max < 1:
        raise ValueError("n_max must be at least 1")
    records = []
    for n in range(1, n_max + 1):
        for combo in combinations_with_replacement(range(len(mats)), n):
            tup = [mats[i] for i in combo]
            lhs = lhs_multi(md, tup, "full")
            rhs = rhs_vacuum(md, tup)
            records.append(VariantRecord(
                "full", n, combo, lhs, lhs.is_nonneg_integer(),
                asserted=True, rhs=rhs,
                equal=(lhs == rational(rhs))))
            for variant in ("diagonal", "chiral_plus", "chiral_minus"):
                val = lhs_multi(md, tup, variant)
                asserted = (variant == "diagonal" and n >= 2)
                records.append(VariantRecord(
                    variant, n, combo, val, val.is_nonneg_integer(),
                    asserted=asserted))
    return ObstructionReport(tuple(records))


def series_coefficients(md: ModularData, z, n_max: int) -> list[ExactScalar]:
    """lambda-expansion coefficients of the full-variant generating function.

    Evaluated termwise from the closed rational form; cross-checked against
    the multi-invariant sums and the vacuum dimensions.
    """
    if n_max < 0:
        raise ValueError("n_max must be nonnegative")
    mats = _entry_arrays(md, [z])
    mat = mats[0]
    r = md.rank
    dims = md.dims()
    mu = md.global_dim()
    inv_mu2 = invert(mu * mu)
    coeffs = []
    # per-(j,k): value_n = d_j^3 d_k^3 (mu z)^n / (mu^2 (d_j d_k)^(n+1))
    terms = []
    for j in range(r):
        for k in range(r):
            dd = dims[j] * dims[k]
            base = invert(dd) * mu * int(mat[j, k]) if mat[j, k] else None
            start = dd * dd * inv_mu2
            terms.append([start, base])
    for n in range(n_max + 1):
        total = rational(0)
        for t in terms:
            if t[0] is not None:
                total = total + t[0]
                t[0] = t[0] * t[1] if t[1] is not None else None
        coeffs.append(total)
    for n in range(1, n_max + 1):
        tup = [mat] * n
        if coeffs[n] != lhs_multi(md, tup, "full"):
            raise AssertionError(f"series coefficient {n} disagrees with the sum")
        if coeffs[n] != rational(rhs_vacuum(md, tup)):
            raise AssertionError(f"series coefficient {n} disagrees with the vacuum dim")
    return coeffs


@dataclass(frozen=True)
class TraceIdentities:
    tr_z: int
    tr_zzt: int


def trace_identities(md: ModularData, z) -> TraceIdentities:
    mat = _entry_arrays(md, [z])[0]
    return TraceIdentities(int(np.trace(mat)), int(np.sum(mat * mat)))


@dataclass(frozen=True)
class DoubleZResult:
    matrix: tuple          # grid of ExactScalar, mu^-1 * Zd Ze^t
    commutes_s: bool
    commutes_t: bool
    mu_trace: int


def double_z(md: ModularData, z_d, z_e) -> DoubleZResult:
    """Genus-1 pair transformation mu^-1 Zd Ze^t with its exact checks."""
    mats = _entry_arrays(md, [z_d, z_e])
    prod = mats[0] @ mats[1].T
    pc = CycMat.from_int_matrix(md.conductor, prod)
    commutes_s = (pc @ md.smat).equals(md.smat @ pc)
    e = md.t_exponents
    commutes_t = all(prod[j, k] == 0 or e[j] == e[k]
                     for j in range(md.rank) for k in range(md.rank))
    if not (commutes_s and commutes_t):
        raise NotInvariant("double-Z product fails modular commutation; "
                           "inputs are not both invariants")
    mu_trace = int(np.trace(prod))
    if mu_trace < 0:
        raise AssertionError("negative trace from nonnegative inputs")
    inv_mu = invert(md.global_dim())
    grid = tuple(tuple(pc.entry(i, j) * inv_mu for j in range(md.rank))
                 for i in range(md.rank))
    return DoubleZResult(grid, commutes_s, commutes_t, mu_trace)
