"""Modular data: the (s-tilde, T) pair, its axioms and Verlinde fusion.

The S-matrix is stored unnormalized, with entry 1 at (unit, unit), so every
quantity stays inside a single cyclotomic field.  Twists are stored as
exponents of zeta_N.  All checks are exact.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .cyclotomic import ExactScalar, conjugate, invert, rational, root_of_unity, sign_of_real
from .cycmat import CycMat
from .errors import InvalidData, NonIntegralFusion
from .fusion_ring import FusionRing

__all__ = ["ModularData", "DerivedQuantities", "ValidationReport", "CheckResult",
           "validate", "derived", "verlinde_fusion"]


@dataclass(frozen=True)
class CheckResult:
    name: str
    passed: bool
    detail: str = ""


@dataclass(frozen=True)
class ValidationReport:
    checks: tuple

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    def failures(self) -> list[CheckResult]:
        return [c for c in self.checks if not c.passed]

    def __str__(self):
        lines = []
        for c in self.checks:
            mark = "ok  " if c.passed else "FAIL"
            detail = f"  ({c.detail})" if c.detail and not c.passed else ""
            lines.append(f"[{mark}] {c.name}{detail}")
        lines.append(f"overall: {'pass' if self.passed else 'fail'}")
        return "\n".join(lines)


@dataclass(frozen=True)
class DerivedQuantities:
    dims: tuple
    global_dim: ExactScalar
    conj_perm: tuple
    gauss_plus: ExactScalar
    gauss_minus: ExactScalar
    mueger_transparent: tuple


class ModularData:
    """Unnormalized modular data over Q(zeta_N)."""

    def __init__(self, name: str, conductor: int, labels, unit_index: int,
                 smat: CycMat, t_exponents):
        rank = len(labels)
        if smat.rows != rank or smat.cols != rank:
            raise ValueError("S-matrix shape does not match labels")
        if smat.conductor != conductor:
            raise ValueError("S-matrix conductor mismatch")
        if len(t_exponents) != rank:
            raise ValueError("twist exponent count does not match rank")
        if not 0 <= unit_index < rank:
            raise ValueError("unit index out of range")
        self.name = name
        self.conductor = conductor
        self.labels = tuple(str(x) for x in labels)
        self.unit_index = int(unit_index)
        self.smat = smat
        self.t_exponents = tuple(int(e) % conductor for e in t_exponents)
        self._cache = {}

    @property
    def rank(self) -> int:
        return len(self.labels)

    def s(self, i: int, j: int) -> ExactScalar:
        return self.smat.entry(i, j)

    @property
    def s_tilde(self):
        return self.smat.scalar_grid()

    def theta(self, j: int) -> ExactScalar:
        return root_of_unity(self.conductor, self.t_exponents[j])

    def dims(self) -> tuple:
        if "dims" not in self._cache:
            u = self.unit_index
            self._cache["dims"] = tuple(self.s(u, j) for j in range(self.rank))
        return self._cache["dims"]

    def global_dim(self) -> ExactScalar:
        if "mu" not in self._cache:
            total = rational(0)
            for d in self.dims():
                total = total + d * d
            self._cache["mu"] = total
        return self._cache["mu"]

    def __repr__(self):
        return f"ModularData({self.name!r}, rank={self.rank}, conductor={self.conductor})"

    def __eq__(self, other):
        return (isinstance(other, ModularData)
                and self.name == other.name
                and self.conductor == other.conductor
                and self.labels == other.labels
                and self.unit_index == other.unit_index
                and self.t_exponents == other.t_exponents
                and self.smat.equals(other.smat))


def _charge_conjugation(md: ModularData, s_squared: CycMat):
    """Permutation P with s^2 == mu * P, or None."""
    mu = md.global_dim()
    r = md.rank
    scaled = s_squared.scale(invert(mu)) if not mu.is_zero() else None
    if scaled is None or not scaled.is_integer_matrix():
        return None
    mat = scaled.to_int_matrix()
    perm = [-1] * r
    for i in range(r):
        hits = np.nonzero(mat[i])[0]
        if hits.size != 1 or mat[i, hits[0]] != 1:
            return None
        perm[i] = int(hits[0])
    if sorted(perm) != list(range(r)):
        return None
    return tuple(perm)


def _verlinde_tensor(md: ModularData) -> np.ndarray:
    """Verlinde coefficients (1/mu) sum_a s_ia s_ja conj(s_ka)/d_a."""
    r = md.rank
    dims = md.dims()
    if any(d.is_zero() for d in dims):
        raise NonIntegralFusion("zero quantum dimension")
    inv_d = [invert(d) for d in dims]
    mu = md.global_dim()
    if mu.is_zero():
        raise NonIntegralFusion("zero global dimension")
    inv_mu = invert(mu)
    u = md.smat.conj().scale_columns(inv_d)  # u[k, a] = conj(s)_{ka} / d_a
    ut = u.transpose()
    tensor = np.zeros((r, r, r), dtype=np.int64)
    for i in range(r):
        row = [md.s(i, a) for a in range(r)]
        a_mat = md.smat.scale_columns(row)   # a[j, a] = s_ja s_ia
        n_i = (a_mat @ ut).scale(inv_mu)
        if not n_i.is_integer_matrix():
            raise NonIntegralFusion(f"non-integral fusion coefficient in row {i}")
        mat = n_i.to_int_matrix()
        if np.any(mat < 0):
            raise NonIntegralFusion(f"negative fusion coefficient in row {i}")
        tensor[i] = mat
    return tensor


def validate(md: ModularData) -> ValidationReport:
    """Diagnostic axiom report; never raises on mathematical failure."""
    if "validation" in md._cache:
        return md._cache["validation"]
    checks = []
    s = md.smat
    u = md.unit_index

    checks.append(CheckResult(
        "unit_normalization", md.s(u, u) == rational(1),
        "s(unit, unit) differs from 1"))

    checks.append(CheckResult(
        "symmetry", s.equals(s.transpose()), "S-matrix is not symmetric"))

    dims_ok = True
    detail = ""
    for j, d in enumerate(md.dims()):
        if conjugate(d) != d:
            dims_ok, detail = False, f"dimension {j} not real"
            break
        if sign_of_real(d) <= 0:
            dims_ok, detail = False, f"dimension {j} not positive"
            break
    checks.append(CheckResult("positive_dims", dims_ok, detail))

    mu = md.global_dim()
    mu_ok = not mu.is_zero()
    checks.append(CheckResult("global_dim_nonzero", mu_ok, "mu = 0"))

    if mu_ok:
        prod = s @ s.conj()
        checks.append(CheckResult(
            "unitarity", prod.equals_scalar_identity(mu),
            "s * conj(s) differs from mu * I"))

        s2 = s @ s
        perm = _charge_conjugation(md, s2)
        conj_ok = perm is not None and perm[u] == u and \
            all(perm[perm[i]] == i for i in range(md.rank))
        checks.append(CheckResult(
            "charge_conjugation", conj_ok,
            "s^2 is not mu times an involutive unit-fixing permutation"))

        theta = [md.theta(j) for j in range(md.rank)]
        p_plus = rational(0)
        p_minus = rational(0)
        for d, t in zip(md.dims(), theta):
            d2 = d * d
            p_plus = p_plus + d2 * t
            p_minus = p_minus + d2 * invert(t)
        gauss_ok = (p_plus * p_minus == mu)
        st = s.scale_columns_by_roots(md.t_exponents)
        lhs = st @ st @ st
        rhs = s2.scale(p_plus)
        gauss_rel_ok = lhs.equals(rhs)
        checks.append(CheckResult("gauss_product", gauss_ok, "p+ p- differs from mu"))
        checks.append(CheckResult(
            "gauss_relation", gauss_rel_ok, "(s t)^3 differs from p+ s^2"))

        try:
            md._cache.setdefault("verlinde", _verlinde_tensor(md))
            checks.append(CheckResult("verlinde_integrality", True))
        except NonIntegralFusion as exc:
            checks.append(CheckResult("verlinde_integrality", False, str(exc)))
    report = ValidationReport(tuple(checks))
    md._cache["validation"] = report
    return report


def derived(md: ModularData) -> DerivedQuantities:
    """Dimensions, global dimension, conjugation, Gauss sums, Mueger flags."""
    if "derived" in md._cache:
        return md._cache["derived"]
    report = validate(md)
    if not report.passed:
        raise InvalidData("modular data fails validation: "
                          + "; ".join(c.name for c in report.failures()))
    dims = md.dims()
    mu = md.global_dim()
    perm = _charge_conjugation(md, md.smat @ md.smat)
    theta = [md.theta(j) for j in range(md.rank)]
    p_plus = rational(0)
    p_minus = rational(0)
    for d, t in zip(dims, theta):
        d2 = d * d
        p_plus = p_plus + d2 * t
        p_minus = p_minus + d2 * invert(t)
    eta = []
    for j in range(md.rank):
        row_ok = all(md.s(j, k) == dims[j] * dims[k] for k in range(md.rank))
        eta.append(row_ok)
    out = DerivedQuantities(dims, mu, perm, p_plus, p_minus, tuple(eta))
    md._cache["derived"] = out
    return out


def verlinde_fusion(md: ModularData) -> FusionRing:
    """Fusion ring from the Verlinde coefficients; exact integrality enforced."""
    if "verlinde" not in md._cache:
        md._cache["verlinde"] = _verlinde_tensor(md)
    tensor = md._cache["verlinde"]
    return FusionRing(tensor, unit=md.unit_index)
