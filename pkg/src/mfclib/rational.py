"""Exact rational linear algebra: matrices, RREF and nullspaces.

The public entry points are :class:`RationalMatrix` and
:func:`rational_nullspace`.  Internally large integer systems are reduced
with a randomized modular pivot search whose output is certified exactly,
so results never depend on the random prime.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from math import gcd

import numpy as np

__all__ = ["RationalMatrix", "rational_nullspace", "ReducedSystem", "reduce_integer_system"]

_PRIMES = [2147483629, 2147483587, 2147483563, 2147483549, 2147483497,
           2147483477, 2147483423, 2147483399, 2147483353, 2147483323]


class RationalMatrix:
    """Dense matrix of Fractions with exact dimensions."""

    __slots__ = ("rows", "cols", "entries")

    def __init__(self, entries):
        entries = [[Fraction(x) for x in row] for row in entries]
        if not entries:
            raise ValueError("matrix needs at least one row")
        width = len(entries[0])
        if width == 0 or any(len(row) != width for row in entries):
            raise ValueError("ragged or empty matrix")
        self.rows = len(entries)
        self.cols = width
        self.entries = entries

    def __getitem__(self, idx):
        i, j = idx
        return self.entries[i][j]

    def __eq__(self, other):
        return (isinstance(other, RationalMatrix)
                and self.entries == other.entries)

    def __repr__(self):
        return f"RationalMatrix({self.entries!r})"

    def mul_vector(self, vec):
        return [sum(row[j] * vec[j] for j in range(self.cols))
                for row in self.entries]

    def integer_rows(self) -> list[list[int]]:
        """Rows scaled to primitive integer vectors."""
        out = []
        for row in self.entries:
            den = 1
            for x in row:
                den = den * x.denominator // gcd(den, x.denominator)
            ints = [int(x * den) for x in row]
            g = 0
            for v in ints:
                g = gcd(g, v)
            if g > 1:
                ints = [v // g for v in ints]
            out.append(ints)
        return out


def _primitive(vec: list[Fraction]) -> list[int]:
    den = 1
    for x in vec:
        den = den * x.denominator // gcd(den, x.denominator)
    ints = [int(x * den) for x in vec]
    g = 0
    for v in ints:
        g = gcd(g, v)
    if g > 1:
        ints = [v // g for v in ints]
    for v in ints:
        if v:
            if v < 0:
                ints = [-u for u in ints]
            break
    return ints


def _exact_rref(rows: list[list[Fraction]]):
    """In-place RREF over Q; returns pivot column list."""
    if not rows:
        return []
    n = len(rows[0])
    pivots = []
    r = 0
    for c in range(n):
        pivot_row = None
        for i in range(r, len(rows)):
            if rows[i][c] != 0:
                pivot_row = i
                break
        if pivot_row is None:
            continue
        rows[r], rows[pivot_row] = rows[pivot_row], rows[r]
        pv = rows[r][c]
        if pv != 1:
            rows[r] = [x / pv for x in rows[r]]
        for i in range(len(rows)):
            if i != r and rows[i][c] != 0:
                f = rows[i][c]
                rows[i] = [x - f * y for x, y in zip(rows[i], rows[r])]
        pivots.append(c)
        r += 1
        if r == len(rows):
            break
    return pivots


def _modular_pivot_rows(mat: np.ndarray, p: int):
    """Row indices of a maximal independent set and pivot cols, mod p."""
    a = np.mod(mat.astype(object), p).astype(np.int64)
    n_rows, n_cols = a.shape
    row_idx = list(range(n_rows))
    pivots = []
    pivot_rows = []
    r = 0
    for c in range(n_cols):
        if r >= n_rows:
            break
        col = a[r:, c]
        nz = np.nonzero(col)[0]
        if nz.size == 0:
            continue
        i = r + int(nz[0])
        if i != r:
            a[[r, i]] = a[[i, r]]
            row_idx[r], row_idx[i] = row_idx[i], row_idx[r]
        inv = pow(int(a[r, c]), p - 2, p)
        a[r] = (a[r] * inv) % p
        rest = np.nonzero(a[r + 1:, c])[0]
        if rest.size:
            sel = rest + r + 1
            a[sel] = (a[sel] - a[sel, c][:, None] * a[r][None, :]) % p
        pivots.append(c)
        pivot_rows.append(row_idx[r])
        r += 1
    return pivot_rows, pivots


@dataclass
class ReducedSystem:
    """RREF of a homogeneous integer system E x = 0.

    pivot_cols[i] is expressed as sum of coeffs[i][j] * x[free_cols[j]]
    with rational coefficients; kernel holds the primitive integer basis,
    one vector per free column, canonically ordered.
    """

    n_cols: int
    pivot_cols: list[int]
    free_cols: list[int]
    coeffs: list[list[Fraction]]
    kernel: list[list[int]]


def _system_from_rref(rref_rows, pivots, n_cols) -> ReducedSystem:
    free_cols = [c for c in range(n_cols) if c not in set(pivots)]
    coeffs = []
    for i, _ in enumerate(pivots):
        coeffs.append([-rref_rows[i][f] for f in free_cols])
    kernel = []
    for j, f in enumerate(free_cols):
        vec = [Fraction(0)] * n_cols
        vec[f] = Fraction(1)
        for i, pcol in enumerate(pivots):
            vec[pcol] = coeffs[i][j]
        kernel.append(_primitive(vec))
    return ReducedSystem(n_cols, list(pivots), free_cols, coeffs, kernel)


def reduce_integer_system(rows: list[list[int]]) -> ReducedSystem:
    """Exact RREF data for integer equation rows (deduplicated internally)."""
    if not rows:
        raise ValueError("empty system")
    n_cols = len(rows[0])
    seen = {}
    for row in rows:
        g = 0
        for v in row:
            g = gcd(g, v)
        if g == 0:
            continue
        if g > 1:
            row = [v // g for v in row]
        for v in row:
            if v:
                if v < 0:
                    row = [-u for u in row]
                break
        seen[tuple(row)] = None
    uniq = [list(t) for t in seen]
    if not uniq:
        return _system_from_rref([], [], n_cols)

    mat = np.array(uniq, dtype=object)
    primes = list(_PRIMES)
    random.Random(0xC0FFEE).shuffle(primes)
    last_error = None
    for p in primes:
        pivot_rows, _ = _modular_pivot_rows(mat, p)
        frac_rows = [[Fraction(v) for v in uniq[i]] for i in pivot_rows]
        pivots = _exact_rref(frac_rows)
        system = _system_from_rref(frac_rows, pivots, n_cols)
        ok = True
        for vec in system.kernel:
            v = np.array(vec, dtype=object)
            if np.any(mat @ v != 0):
                ok = False
                break
        if ok:
            return system
        last_error = f"modular rank deficiency at p={p}"
    # certified fallback: full exact elimination
    frac_rows = [[Fraction(v) for v in row] for row in uniq]
    pivots = _exact_rref(frac_rows)
    frac_rows = [row for row in frac_rows if any(x != 0 for x in row)]
    system = _system_from_rref(frac_rows, pivots, n_cols)
    for vec in system.kernel:
        v = np.array(vec, dtype=object)
        if np.any(mat @ v != 0):
            raise AssertionError(f"nullspace certification failed: {last_error}")
    return system


def rational_nullspace(m: RationalMatrix) -> list[RationalMatrix]:
    """Primitive integer basis of the right kernel, canonically ordered."""
    system = reduce_integer_system(m.integer_rows())
    return [RationalMatrix([[v] for v in vec]) for vec in system.kernel]
