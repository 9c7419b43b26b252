"""Fusion rings and multiplicity-level objects of C x C^op.

A :class:`CenterObject` records how often each X_j (x) X_k^op occurs in an
object of the center; tensor products are evaluated at the level of these
multiplicity matrices, with the op-side fusion taken in reversed order.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .errors import IndexOutOfRange, RankMismatch

__all__ = ["FusionRing", "CenterObject", "vacuum_multiplicity",
           "center_tensor", "center_hom_dim", "full_center", "unit_center_object"]


@dataclass(frozen=True)
class FusionRing:
    """Nonnegative integer structure constants with unit and duality."""

    tensor: np.ndarray  # (r, r, r); tensor[i, j, k] = N_{ij}^k
    unit: int = 0
    dual: tuple = None

    def __post_init__(self):
        t = np.asarray(self.tensor, dtype=np.int64)
        object.__setattr__(self, "tensor", t)
        if t.ndim != 3 or len(set(t.shape)) != 1:
            raise ValueError("fusion tensor must be cubic")
        if self.dual is None:
            dual = self._infer_dual()
            object.__setattr__(self, "dual", dual)
        else:
            object.__setattr__(self, "dual", tuple(int(x) for x in self.dual))

    def _infer_dual(self):
        r = self.tensor.shape[0]
        dual = []
        for i in range(r):
            hits = np.nonzero(self.tensor[i, :, self.unit])[0]
            if hits.size != 1 or self.tensor[i, hits[0], self.unit] != 1:
                raise ValueError("fusion tensor has no well-defined duality")
            dual.append(int(hits[0]))
        return tuple(dual)

    @property
    def rank(self) -> int:
        return self.tensor.shape[0]

    def __eq__(self, other):
        return (isinstance(other, FusionRing)
                and self.unit == other.unit
                and self.dual == other.dual
                and np.array_equal(self.tensor, other.tensor))

    def matrix(self, i: int) -> np.ndarray:
        """Left fusion matrix (N_i)_{jk} = N_{ij}^k."""
        return self.tensor[i]

    def axiom_failures(self) -> list[str]:
        t = self.tensor
        r = self.rank
        bad = []
        if np.any(t < 0):
            bad.append("negative structure constant")
        if not np.array_equal(t[self.unit], np.eye(r, dtype=np.int64)):
            bad.append("unit row is not the identity")
        for i in range(r):
            col = t[i, :, self.unit]
            want = np.zeros(r, dtype=np.int64)
            want[self.dual[i]] = 1
            if not np.array_equal(col, want):
                bad.append(f"duality fails at object {i}")
                break
        lhs = np.einsum("ijm,mkl->ijkl", t, t)
        rhs = np.einsum("jkm,iml->ijkl", t, t)
        if not np.array_equal(lhs, rhs):
            bad.append("associativity fails")
        # N_{ij}^k == N_{dual(i) k}^j
        want = t[list(self.dual)].transpose(0, 2, 1)
        if not np.array_equal(t, want):
            bad.append("Frobenius reciprocity fails")
        return bad

    def product_vector(self, vec: np.ndarray, j: int) -> np.ndarray:
        """Distribution of (sum_a vec_a X_a) (x) X_j."""
        return vec @ self.tensor[:, j, :]

    def word_vector(self, chain) -> np.ndarray:
        r = self.rank
        vec = np.zeros(r, dtype=np.int64)
        vec[self.unit] = 1
        for j in chain:
            if not 0 <= j < r:
                raise IndexOutOfRange(f"object index {j} out of range")
            vec = self.product_vector(vec, j)
        return vec


@dataclass(frozen=True)
class CenterObject:
    """Multiplicities m[j, k] of X_j (x) X_k^op."""

    mult: np.ndarray = field()

    def __post_init__(self):
        m = np.asarray(self.mult, dtype=np.int64)
        if m.ndim != 2 or m.shape[0] != m.shape[1]:
            raise ValueError("multiplicity matrix must be square")
        if np.any(m < 0):
            raise ValueError("negative multiplicity")
        object.__setattr__(self, "mult", m)

    @property
    def rank(self) -> int:
        return self.mult.shape[0]

    def __add__(self, other: "CenterObject") -> "CenterObject":
        if self.rank != other.rank:
            raise RankMismatch("center objects of different rank")
        return CenterObject(self.mult + other.mult)


def unit_center_object(rank: int, unit: int = 0) -> CenterObject:
    m = np.zeros((rank, rank), dtype=np.int64)
    m[unit, unit] = 1
    return CenterObject(m)


def vacuum_multiplicity(ring: FusionRing, chain) -> int:
    """dim hom(1, X_{j1} (x) ... (x) X_{jn}); 1 for the empty chain."""
    return int(ring.word_vector(chain)[ring.unit])


def center_tensor(ring: FusionRing, a: CenterObject, b: CenterObject) -> CenterObject:
    if not (ring.rank == a.rank == b.rank):
        raise RankMismatch("rank mismatch in center tensor")
    t = ring.tensor
    out = np.einsum("jk,pq,jpc,qkd->cd", a.mult, b.mult, t, t)
    return CenterObject(out)


def center_hom_dim(a: CenterObject, b: CenterObject) -> int:
    if a.rank != b.rank:
        raise RankMismatch("rank mismatch in hom pairing")
    return int(np.sum(a.mult * b.mult))


def full_center(z) -> CenterObject:
    """Center object attached to a Z-matrix, multiplicity m[j,k] = z[j,k]."""
    entries = getattr(z, "entries", z)
    return CenterObject(np.asarray(entries, dtype=np.int64))
