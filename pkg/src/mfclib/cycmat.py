"""Matrices over a cyclotomic field, stored slicewise for bulk arithmetic.

A matrix over Q(zeta_N) is kept as an integer numpy array of shape
(phi(N), rows, cols) — one slice per power-basis coordinate — plus a single
positive denominator.  Products run as integer matrix products per
coordinate pair followed by reduction mod Phi_N, with an automatic fallback
from int64 to Python-int arrays whenever a certified magnitude bound does
not rule out overflow.  Everything stays exact.
"""

from __future__ import annotations

from math import gcd

import numpy as np

from .cyclotomic import ExactScalar, _tables
from .errors import RankMismatch

_INT64_LIMIT = 1 << 62


def _gcd_reduce(arr, den: int) -> tuple[np.ndarray, int]:
    g = den
    if arr.dtype == np.int64:
        ag = int(np.gcd.reduce(np.abs(arr), axis=None))
        g = gcd(g, ag)
    else:
        for v in arr.flat:
            if v:
                g = gcd(g, abs(int(v)))
            if g == 1:
                break
    if g > 1:
        arr = arr // g
        den //= g
    return arr, den


def _maxabs(arr) -> int:
    if arr.size == 0:
        return 0
    if arr.dtype == np.int64:
        return int(np.abs(arr).max())
    return max((abs(int(v)) for v in arr.flat), default=0)


class CycMat:
    """Exact matrix over Q(zeta_N)."""

    __slots__ = ("conductor", "rows", "cols", "num", "den")

    def __init__(self, conductor: int, num: np.ndarray, den: int = 1,
                 normalized: bool = False):
        phi, _, _, _ = _tables(conductor)
        assert num.ndim == 3 and num.shape[0] == phi
        self.conductor = conductor
        self.rows = num.shape[1]
        self.cols = num.shape[2]
        if den < 0:
            num, den = -num, -den
        if not normalized:
            num, den = _gcd_reduce(num, den)
        self.num = num
        self.den = den

    # -- constructors ------------------------------------------------------

    @staticmethod
    def zeros(conductor: int, rows: int, cols: int) -> "CycMat":
        phi, _, _, _ = _tables(conductor)
        return CycMat(conductor, np.zeros((phi, rows, cols), dtype=np.int64), 1,
                      normalized=True)

    @staticmethod
    def from_int_matrix(conductor: int, mat) -> "CycMat":
        arr = np.asarray(mat, dtype=np.int64)
        phi, _, _, _ = _tables(conductor)
        num = np.zeros((phi, arr.shape[0], arr.shape[1]), dtype=np.int64)
        num[0] = arr
        return CycMat(conductor, num, 1)

    @staticmethod
    def from_root_sums(conductor: int, entries) -> "CycMat":
        """Entries given as iterables of (exponent, integer coefficient)."""
        phi, powers, _, _ = _tables(conductor)
        rows = len(entries)
        cols = len(entries[0])
        num = np.zeros((phi, rows, cols), dtype=np.int64)
        for i, row in enumerate(entries):
            for j, combo in enumerate(row):
                for e, c in combo:
                    vec = powers[e % conductor]
                    for m in range(phi):
                        if vec[m]:
                            num[m, i, j] += c * vec[m]
        return CycMat(conductor, num, 1)

    @staticmethod
    def from_scalars(conductor: int, grid) -> "CycMat":
        phi, _, _, _ = _tables(conductor)
        rows = len(grid)
        cols = len(grid[0])
        den = 1
        lifted = []
        for row in grid:
            out = []
            for s in row:
                s = s if isinstance(s, ExactScalar) else ExactScalar.from_rational(s)
                s = s.lift(conductor) if s.conductor != conductor else s
                out.append(s)
                den = den * s.denominator // gcd(den, s.denominator)
            lifted.append(out)
        num = np.zeros((phi, rows, cols), dtype=object)
        for i, row in enumerate(lifted):
            for j, s in enumerate(row):
                scale = den // s.denominator
                for m, c in enumerate(s.numerator_vector()):
                    if c:
                        num[m, i, j] = num[m, i, j] + c * scale
        return CycMat(conductor, num, den)

    @staticmethod
    def scalar_diagonal(conductor: int, scalar: ExactScalar, size: int) -> "CycMat":
        s = scalar.lift(conductor) if scalar.conductor != conductor else scalar
        phi, _, _, _ = _tables(conductor)
        num = np.zeros((phi, size, size), dtype=np.int64 if
                       max(abs(c) for c in s.numerator_vector()) < _INT64_LIMIT
                       else object)
        eye = np.eye(size, dtype=num.dtype)
        for m, c in enumerate(s.numerator_vector()):
            if c:
                num[m] = eye * c
        return CycMat(conductor, num, s.denominator)

    # -- views ---------------------------------------------------------------

    def entry(self, i: int, j: int) -> ExactScalar:
        return ExactScalar(self.conductor,
                           [int(self.num[m, i, j]) for m in range(self.num.shape[0])],
                           self.den)

    def scalar_grid(self) -> list[list[ExactScalar]]:
        return [[self.entry(i, j) for j in range(self.cols)]
                for i in range(self.rows)]

    def is_zero(self) -> bool:
        return not np.any(self.num != 0)

    def is_integer_matrix(self) -> bool:
        if self.den != 1:
            return False
        return not np.any(self.num[1:] != 0)

    def to_int_matrix(self) -> np.ndarray:
        if not self.is_integer_matrix():
            raise ValueError("matrix has non-rational-integer entries")
        return np.array([[int(v) for v in row] for row in self.num[0]],
                        dtype=np.int64)

    # -- structural ops ---------------------------------------------------

    def transpose(self) -> "CycMat":
        return CycMat(self.conductor, np.swapaxes(self.num, 1, 2), self.den,
                      normalized=True)

    def conj(self) -> "CycMat":
        phi, _, conj_rows, _ = _tables(self.conductor)
        cmat = np.array(conj_rows, dtype=np.int64)  # (i, j): x^i -> sum_j row[j] x^j
        bound = _maxabs(self.num) * int(np.abs(cmat).sum(axis=0).max()) if self.num.size else 0
        if self.num.dtype == np.int64 and bound < _INT64_LIMIT:
            out = np.einsum("ij,irc->jrc", cmat, self.num)
        else:
            out = np.einsum("ij,irc->jrc", cmat.astype(object),
                            self.num.astype(object))
        return CycMat(self.conductor, out, self.den)

    # -- arithmetic ----------------------------------------------------------

    def _pair(self, other: "CycMat"):
        if self.conductor != other.conductor:
            raise ValueError("conductor mismatch in bulk arithmetic")
        return _tables(self.conductor)

    def __add__(self, other: "CycMat") -> "CycMat":
        self._pair(other)
        da, db = self.den, other.den
        g = gcd(da, db)
        la, lb = db // g, da // g
        a = self.num.astype(object) if self.num.dtype == object or other.num.dtype == object else self.num
        bound = max(_maxabs(self.num) * la, _maxabs(other.num) * lb)
        if a.dtype == np.int64 and bound >= _INT64_LIMIT // 2:
            a = self.num.astype(object)
        b = other.num if a.dtype == other.num.dtype else other.num.astype(a.dtype)
        out = a * la + b * lb
        return CycMat(self.conductor, out, da // g * db)

    def __sub__(self, other: "CycMat") -> "CycMat":
        return self + (-other)

    def __neg__(self) -> "CycMat":
        return CycMat(self.conductor, -self.num, self.den, normalized=True)

    def __matmul__(self, other: "CycMat") -> "CycMat":
        phi, powers, _, red_bound = self._pair(other)
        if self.cols != other.rows:
            raise RankMismatch("matrix dimensions do not match")
        ma, mb = _maxabs(self.num), _maxabs(other.num)
        bound = phi * self.cols * ma * mb * red_bound
        use_i64 = (self.num.dtype == np.int64 and other.num.dtype == np.int64
                   and bound < _INT64_LIMIT)
        a = self.num if use_i64 else self.num.astype(object)
        b = other.num if use_i64 else other.num.astype(object)
        dtype = np.int64 if use_i64 else object
        raw = np.zeros((2 * phi - 1, self.rows, other.cols), dtype=dtype)
        nz_a = [m for m in range(phi) if np.any(a[m])]
        nz_b = [m for m in range(phi) if np.any(b[m])]
        for m1 in nz_a:
            am = a[m1]
            for m2 in nz_b:
                raw[m1 + m2] += am @ b[m2]
        out = raw[:phi].copy()
        for e in range(phi, 2 * phi - 1):
            block = raw[e]
            if not np.any(block):
                continue
            vec = powers[e]
            for i in range(phi):
                if vec[i]:
                    out[i] += vec[i] * block
        return CycMat(self.conductor, out, self.den * other.den)

    def scale(self, scalar: ExactScalar) -> "CycMat":
        s = scalar.lift(self.conductor) if scalar.conductor != self.conductor else scalar
        phi, powers, _, red_bound = _tables(self.conductor)
        svec = s.numerator_vector()
        ms = max((abs(c) for c in svec), default=0)
        bound = phi * ms * _maxabs(self.num) * red_bound
        use_i64 = self.num.dtype == np.int64 and bound < _INT64_LIMIT
        a = self.num if use_i64 else self.num.astype(object)
        dtype = np.int64 if use_i64 else object
        raw = np.zeros((2 * phi - 1, self.rows, self.cols), dtype=dtype)
        for m1, c in enumerate(svec):
            if c:
                raw[m1:m1 + phi] += c * a
        out = raw[:phi].copy()
        for e in range(phi, 2 * phi - 1):
            block = raw[e]
            if not np.any(block):
                continue
            vec = powers[e]
            for i in range(phi):
                if vec[i]:
                    out[i] += vec[i] * block
        return CycMat(self.conductor, out, self.den * s.denominator)

    def scale_columns_by_roots(self, exponents) -> "CycMat":
        """Multiply column j by zeta^exponents[j]."""
        phi, powers, _, red_bound = _tables(self.conductor)
        w = np.zeros((phi, self.cols), dtype=np.int64)
        for j, e in enumerate(exponents):
            for m, c in enumerate(powers[e % self.conductor]):
                w[m, j] = c
        bound = phi * int(np.abs(w).max(initial=0)) * _maxabs(self.num) * red_bound
        use_i64 = self.num.dtype == np.int64 and bound < _INT64_LIMIT
        a = self.num if use_i64 else self.num.astype(object)
        wv = w if use_i64 else w.astype(object)
        dtype = np.int64 if use_i64 else object
        raw = np.zeros((2 * phi - 1, self.rows, self.cols), dtype=dtype)
        for m1 in range(phi):
            if np.any(wv[m1]):
                raw[m1:m1 + phi] += wv[m1][None, None, :] * a
        out = raw[:phi].copy()
        for e in range(phi, 2 * phi - 1):
            block = raw[e]
            if not np.any(block):
                continue
            vec = powers[e]
            for i in range(phi):
                if vec[i]:
                    out[i] += vec[i] * block
        return CycMat(self.conductor, out, self.den)

    def scale_columns(self, scalars) -> "CycMat":
        """Multiply column j by the exact scalar scalars[j]."""
        phi, powers, _, red_bound = _tables(self.conductor)
        den = 1
        lifted = []
        for s in scalars:
            s = s.lift(self.conductor) if s.conductor != self.conductor else s
            lifted.append(s)
            den = den * s.denominator // gcd(den, s.denominator)
        w = np.zeros((phi, self.cols), dtype=object)
        for j, s in enumerate(lifted):
            scale = den // s.denominator
            for m, c in enumerate(s.numerator_vector()):
                w[m, j] = c * scale
        mw = max((abs(int(v)) for v in w.flat if v), default=0)
        bound = phi * mw * _maxabs(self.num) * red_bound
        use_i64 = self.num.dtype == np.int64 and bound < _INT64_LIMIT
        if use_i64:
            w = w.astype(np.int64)
        a = self.num if use_i64 else self.num.astype(object)
        dtype = np.int64 if use_i64 else object
        raw = np.zeros((2 * phi - 1, self.rows, self.cols), dtype=dtype)
        for m1 in range(phi):
            if np.any(w[m1] != 0):
                raw[m1:m1 + phi] += w[m1][None, None, :] * a
        out = raw[:phi].copy()
        for e in range(phi, 2 * phi - 1):
            block = raw[e]
            if not np.any(block):
                continue
            vec = powers[e]
            for i in range(phi):
                if vec[i]:
                    out[i] += vec[i] * block
        return CycMat(self.conductor, out, self.den * den)

    def scale_rows(self, scalars) -> "CycMat":
        return self.transpose().scale_columns(scalars).transpose()

    # -- comparisons ------------------------------------------------------

    def equals(self, other: "CycMat") -> bool:
        self._pair(other)
        if (self.rows, self.cols) != (other.rows, other.cols):
            return False
        if self.den == other.den:
            return not np.any(self.num != other.num)
        a = self.num.astype(object) * other.den
        b = other.num.astype(object) * self.den
        return not np.any(a != b)

    def equals_scalar_identity(self, scalar: ExactScalar) -> bool:
        if self.rows != self.cols:
            return False
        return self.equals(CycMat.scalar_diagonal(self.conductor, scalar, self.rows))

    def first_difference(self, other: "CycMat"):
        """(row, col) of the first differing entry, or None."""
        a = self.num.astype(object) * other.den
        b = other.num.astype(object) * self.den
        diff = np.any(a != b, axis=0)
        idx = np.argwhere(diff)
        if idx.size == 0:
            return None
        return int(idx[0][0]), int(idx[0][1])
