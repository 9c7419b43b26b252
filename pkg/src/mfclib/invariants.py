"""Commutant of the modular pair and exhaustive invariant enumeration.

Twist commutation forces support on equal-twist index pairs; the surviving
S-commutation equations are solved exactly over Q.  Enumeration then walks
integer values of the free entries (entries of the matrix itself, not basis
coordinates) under exact per-entry bounds, so the search is exhaustive and
every emitted matrix is certified by the defining equations.
"""

from __future__ import annotations

import os
import threading
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from math import lcm

import mpmath
import numpy as np

from .cyclotomic import ExactScalar, floor_ratio, rational
from .cycmat import CycMat
from .errors import RankMismatch, SearchBudgetExceeded
from .modular_data import ModularData
from .rational import ReducedSystem, reduce_integer_system

__all__ = ["ZMatrix", "CommutantBasis", "commutant_basis",
           "is_modular_invariant", "enumerate_invariants", "physical_weight"]

_DEFAULT_NODE_BUDGET = 20_000_000


@dataclass(frozen=True)
class ZMatrix:
    """Nonnegative integer matrix commuting with the modular pair."""

    entries: np.ndarray

    def __post_init__(self):
        m = np.asarray(self.entries, dtype=np.int64)
        if m.ndim != 2 or m.shape[0] != m.shape[1]:
            raise ValueError("Z-matrix must be square")
        object.__setattr__(self, "entries", m)

    @property
    def rank(self) -> int:
        return self.entries.shape[0]

    def normalized(self, unit: int = 0) -> bool:
        return int(self.entries[unit, unit]) == 1

    def key(self) -> tuple:
        return tuple(int(v) for v in self.entries.reshape(-1))

    def __eq__(self, other):
        return isinstance(other, ZMatrix) and np.array_equal(self.entries, other.entries)

    def __repr__(self):
        return f"ZMatrix({self.entries.tolist()!r})"


@dataclass(frozen=True)
class CommutantBasis:
    basis: tuple          # integer matrices, primitive, canonically ordered
    dimension: int
    positions: tuple      # equal-twist index pairs carrying the unknowns


def _twist_positions(md: ModularData):
    r = md.rank
    e = md.t_exponents
    return [(j, k) for j in range(r) for k in range(r) if e[j] == e[k]]


def _order_positions(md: ModularData, positions):
    """Positions sorted by ascending d_j d_k (ties by index).

    Large-dimension pairs land late, so they become the free variables of
    the reduced system; their entry bounds are the smallest.
    """
    dims = [float(d) for d in md.dims()]
    return sorted(positions, key=lambda jk: (dims[jk[0]] * dims[jk[1]], jk))


def _commutation_rows(md: ModularData, positions):
    """Integer coordinate rows of [M, s] = 0 restricted to the positions."""
    idx = {pos: c for c, pos in enumerate(positions)}
    r = md.rank
    num = md.smat.num
    phi = num.shape[0]
    by_row = {}
    by_col = {}
    for (j, k), c in idx.items():
        by_row.setdefault(j, []).append((k, c))
        by_col.setdefault(k, []).append((j, c))
    rows = []
    n_cols = len(positions)
    for i in range(r):
        for k in range(r):
            coeff = np.zeros((phi, n_cols), dtype=np.int64)
            for j, c in by_row.get(i, ()):       # M_ij * s_jk
                coeff[:, c] += num[:, j, k]
            for j, c in by_col.get(k, ()):       # - s_ij * M_jk
                coeff[:, c] -= num[:, i, j]
            for m in range(phi):
                row = coeff[m]
                if np.any(row):
                    rows.append([int(v) for v in row])
    return rows


def _reduced_system(md: ModularData) -> tuple[ReducedSystem, list]:
    key = "commutant_system"
    if key in md._cache:
        return md._cache[key]
    positions = _order_positions(md, _twist_positions(md))
    rows = _commutation_rows(md, positions)
    if rows:
        system = reduce_integer_system(rows)
    else:
        n = len(positions)
        system = ReducedSystem(n, [], list(range(n)), [],
                               [[1 if i == j else 0 for i in range(n)]
                                for j in range(n)])
    md._cache[key] = (system, positions)
    return system, positions


def commutant_basis(md: ModularData) -> CommutantBasis:
    """Primitive integer basis of {M : M s = s M, M tau = tau M}."""
    system, positions = _reduced_system(md)
    r = md.rank
    mats = []
    for vec in system.kernel:
        m = np.zeros((r, r), dtype=np.int64)
        for c, (j, k) in enumerate(positions):
            m[j, k] = vec[c]
        mats.append(m)
    mats.sort(key=lambda m: tuple(int(v) for v in m.reshape(-1)))
    return CommutantBasis(tuple(mats), len(mats), tuple(positions))


def is_modular_invariant(md: ModularData, z) -> tuple[bool, str | None]:
    """Exact membership test with a witness for the first violation."""
    m = np.asarray(getattr(z, "entries", z), dtype=np.int64)
    if m.shape != (md.rank, md.rank):
        raise RankMismatch("matrix rank does not match the modular data")
    if np.any(m < 0):
        bad = np.argwhere(m < 0)[0]
        return False, f"negative entry at ({bad[0]}, {bad[1]})"
    e = md.t_exponents
    for j in range(md.rank):
        for k in range(md.rank):
            if m[j, k] and e[j] != e[k]:
                return False, f"T-commutation fails at ({j}, {k})"
    zc = CycMat.from_int_matrix(md.conductor, m)
    left = zc @ md.smat
    right = md.smat @ zc
    if not left.equals(right):
        where = left.first_difference(right)
        return False, f"S-commutation fails at {where}"
    return True, None


def physical_weight(md: ModularData, z) -> ExactScalar:
    """sum_jk z_jk d_j d_k, exactly."""
    m = np.asarray(getattr(z, "entries", z), dtype=np.int64)
    dims = md.dims()
    total = rational(0)
    for j in range(md.rank):
        for k in range(md.rank):
            if m[j, k]:
                total = total + dims[j] * dims[k] * int(m[j, k])
    return total


def _dyadic(raw) -> Fraction:
    sign, man, exp, _ = raw
    v = Fraction(int(man)) * Fraction(2) ** int(exp)
    return -v if sign else v


def _certified_bounds(value: ExactScalar, prec: int = 80) -> tuple[Fraction, Fraction]:
    """Certified rational enclosure of a real cyclotomic value."""
    n = value.conductor
    num = value.numerator_vector()
    with mpmath.workprec(prec):
        two_pi = mpmath.iv.pi * 2
        total = mpmath.iv.mpf(0)
        for i, c in enumerate(num):
            if c:
                total += mpmath.iv.cos(two_pi * i / n) * c
        raw_lo, raw_hi = total._mpi_
        lo = _dyadic(raw_lo) / value.denominator
        hi = _dyadic(raw_hi) / value.denominator
    return lo, hi


class _SearchState:
    """Mutable per-branch propagation state for the entry DFS."""

    __slots__ = ("acc", "lo", "hi", "budget_acc", "assignment")

    def __init__(self, acc, lo, hi, budget_acc, assignment):
        self.acc = acc
        self.lo = lo
        self.hi = hi
        self.budget_acc = budget_acc
        self.assignment = assignment

    def clone(self) -> "_SearchState":
        return _SearchState(list(self.acc), list(self.lo), list(self.hi),
                            self.budget_acc, list(self.assignment))


class _Enumerator:
    def __init__(self, md: ModularData, bound_mode, node_budget: int):
        self.md = md
        self.system, self.positions = _reduced_system(md)
        self.unit_pos = (md.unit_index, md.unit_index)
        self.r = md.rank
        dims = md.dims()
        mu = md.global_dim()
        self.physical = bound_mode == "physical"
        if self.physical:
            self.bounds = [floor_ratio(mu, dims[j] * dims[k])
                           for (j, k) in self.positions]
        else:
            b = int(bound_mode)
            if b < 1:
                raise ValueError("bounded mode needs B >= 1")
            self.bounds = [b] * len(self.positions)
        # exact integerized pivot expressions
        self.free = self.system.free_cols
        self.pivots = self.system.pivot_cols
        self.lam = []
        self.coef = []
        for row in self.system.coeffs:
            lam = 1
            for x in row:
                lam = lcm(lam, x.denominator)
            self.lam.append(lam)
            self.coef.append([int(x * lam) for x in row])
        self.free_bounds = [self.bounds[c] for c in self.free]
        # DFS order over free slots: ascending bound, fail-fast
        self.order = sorted(range(len(self.free)),
                            key=lambda t: (self.free_bounds[t], t))
        if self.physical:
            weights = []
            for c in self.free:
                j, k = self.positions[c]
                lo, _ = _certified_bounds(dims[j] * dims[k])
                weights.append(lo)
            self.budget_w = weights
            _, mu_hi = _certified_bounds(mu)
            self.budget_cap = mu_hi
        else:
            self.budget_w = [Fraction(0)] * len(self.free)
            self.budget_cap = Fraction(0)
        self.node_budget = node_budget
        self.nodes = 0
        self.node_lock = threading.Lock()
        self.results = []
        self.result_lock = threading.Lock()

    def initial_state(self) -> _SearchState:
        n_p = len(self.pivots)
        acc = [0] * n_p
        lo = [0] * n_p
        hi = [0] * n_p
        for p in range(n_p):
            row = self.coef[p]
            for t, c in enumerate(row):
                if c > 0:
                    hi[p] += c * self.free_bounds[t]
                elif c < 0:
                    lo[p] += c * self.free_bounds[t]
        return _SearchState(acc, lo, hi, Fraction(0), [0] * len(self.free))

    def _feasible(self, state: _SearchState) -> bool:
        for p in range(len(self.pivots)):
            val_lo = state.acc[p] + state.lo[p]
            val_hi = state.acc[p] + state.hi[p]
            if val_hi < 0:
                return False
            if val_lo > self.lam[p] * self.bounds[self.pivots[p]]:
                return False
        if self.physical and state.budget_acc > self.budget_cap:
            return False
        return True

    def _count_node(self):
        with self.node_lock:
            self.nodes += 1
            if self.nodes > self.node_budget:
                raise SearchBudgetExceeded(
                    f"search exceeded node budget {self.node_budget}")

    def _emit(self, state: _SearchState):
        vec = [0] * self.system.n_cols
        for t, c in enumerate(self.free):
            vec[c] = state.assignment[t]
        for p, col in enumerate(self.pivots):
            total = sum(c * state.assignment[t]
                        for t, c in enumerate(self.coef[p]) if c)
            if total % self.lam[p]:
                return
            val = total // self.lam[p]
            if val < 0 or val > self.bounds[col]:
                return
            vec[col] = val
        m = np.zeros((self.r, self.r), dtype=np.int64)
        for c, (j, k) in enumerate(self.positions):
            m[j, k] = vec[c]
        if m[self.md.unit_index, self.md.unit_index] != 1:
            return
        with self.result_lock:
            self.results.append(ZMatrix(m))

    def _dfs(self, state: _SearchState, depth: int):
        if depth == len(self.order):
            self._emit(state)
            return
        t = self.order[depth]
        col = self.free[t]
        is_unit = self.positions[col] == self.unit_pos
        values = (1,) if is_unit else range(self.free_bounds[t] + 1)
        for v in values:
            self._count_node()
            self._apply(state, t, v)
            if self._feasible(state):
                self._dfs(state, depth + 1)
            self._undo(state, t, v)

    def _apply(self, state: _SearchState, t: int, v: int):
        state.assignment[t] = v
        b = self.free_bounds[t]
        for p in range(len(self.pivots)):
            c = self.coef[p][t]
            if c:
                state.acc[p] += c * v
                if c > 0:
                    state.hi[p] -= c * b
                else:
                    state.lo[p] -= c * b
        if self.physical:
            state.budget_acc += self.budget_w[t] * v

    def _undo(self, state: _SearchState, t: int, v: int):
        state.assignment[t] = 0
        b = self.free_bounds[t]
        for p in range(len(self.pivots)):
            c = self.coef[p][t]
            if c:
                state.acc[p] -= c * v
                if c > 0:
                    state.hi[p] += c * b
                else:
                    state.lo[p] += c * b
        if self.physical:
            state.budget_acc -= self.budget_w[t] * v

    def run(self, workers: int = 1):
        state = self.initial_state()
        if not self.order:
            self._emit(state)
        elif workers <= 1:
            self._dfs(state, 0)
        else:
            t = self.order[0]
            col = self.free[t]
            is_unit = self.positions[col] == self.unit_pos
            values = (1,) if is_unit else range(self.free_bounds[t] + 1)
            branches = []
            for v in values:
                self._count_node()
                branch = state.clone()
                self._apply(branch, t, v)
                if self._feasible(branch):
                    branches.append(branch)
            with ThreadPoolExecutor(max_workers=workers) as pool:
                list(pool.map(lambda b: self._dfs(b, 1), branches))
        out = sorted(self.results, key=ZMatrix.key)
        deduped = []
        for z in out:
            if not deduped or deduped[-1].key() != z.key():
                deduped.append(z)
        return deduped


def enumerate_invariants(md: ModularData, mode="physical", *,
                         node_budget: int | None = None,
                         workers: int = 1) -> list[ZMatrix]:
    """Complete list of nonnegative-integer commutant matrices with unit
    entry 1 (physical mode additionally enforces the quadratic weight mu),
    deduplicated and sorted on flattened entries.
    """
    if node_budget is None:
        node_budget = int(os.environ.get("MFCLIB_NODE_BUDGET",
                                         _DEFAULT_NODE_BUDGET))
    enum = _Enumerator(md, mode, node_budget)
    found = enum.run(workers=workers)
    mu = md.global_dim()
    for z in found:
        ok, witness = is_modular_invariant(md, z)
        if not ok:
            raise AssertionError(f"enumeration produced a non-invariant: {witness}")
        if enum.physical and physical_weight(md, z) != mu:
            raise AssertionError("physical weight certification failed")
    return found
