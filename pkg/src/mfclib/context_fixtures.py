"""Shipped Morita context fixtures: trivial contexts, D4 and E6.

Branching tables come from the chiral decomposition forced by Frobenius
reciprocity against the extension object of each invariant; nimreps are the
Chebyshev family generated by the Dynkin graph adjacency.  Everything here
is re-validated by the consistency checks in :mod:`mfclib.morita`.
"""

from __future__ import annotations

import numpy as np

from .catalog import su2
from .errors import DegenerateData
from .modular_data import ModularData, verlinde_fusion
from .morita import MoritaContextData

__all__ = ["trivial_context", "dynkin_nimreps", "d4_context", "e6_context",
           "context_ids", "context_from_id"]


def trivial_context(md: ModularData) -> MoritaContextData:
    """The context of the category acting on itself: B = I, nimreps = fusion."""
    r = md.rank
    ring = verlinde_fusion(md)
    nimreps = tuple(ring.tensor[:, i, :].copy() for i in range(r))
    eye = np.eye(r, dtype=np.int64)
    return MoritaContextData(
        md=md, dual_rank=r, module_rank=r,
        branch_plus=eye, branch_minus=eye.copy(),
        nimreps=nimreps, dual_fusion=ring,
        dual_unit=md.unit_index, name=f"trivial:{md.name}")


def dynkin_nimreps(adjacency: np.ndarray, level: int) -> tuple:
    """Chebyshev family n_0 = I, n_1 = G, n_{a+1} = G n_a - n_{a-1}.

    Well-defined nonnegative family exactly when the graph's Coxeter number
    is level + 2; raises DegenerateData otherwise.
    """
    g = np.asarray(adjacency, dtype=np.int64)
    m = g.shape[0]
    mats = [np.eye(m, dtype=np.int64), g.copy()]
    for _ in range(2, level + 1):
        nxt = g @ mats[-1] - mats[-2]
        if np.any(nxt < 0):
            raise DegenerateData("graph does not support a level-%d nimrep" % level)
        mats.append(nxt)
    closing = g @ mats[-1] - mats[-2]
    if np.any(closing != 0):
        raise DegenerateData("graph Coxeter number does not match the level")
    return tuple(mats[: level + 1])


def _rows_to_matrix(rows, width):
    out = np.zeros((len(rows), width), dtype=np.int64)
    for i, cols in enumerate(rows):
        for c in cols:
            out[i, c] += 1
    return out


def d4_context() -> MoritaContextData:
    """su2 level 4 with the 4-node fork graph; dual system of 8 simples."""
    md = su2(4)
    b_plus = _rows_to_matrix([[0], [1], [2, 3], [1], [0]], 8)
    b_minus = _rows_to_matrix([[0], [4], [2, 3], [4], [0]], 8)
    adjacency = np.zeros((4, 4), dtype=np.int64)
    for leaf in (1, 2, 3):
        adjacency[0, leaf] = adjacency[leaf, 0] = 1
    return MoritaContextData(
        md=md, dual_rank=8, module_rank=4,
        branch_plus=b_plus, branch_minus=b_minus,
        nimreps=dynkin_nimreps(adjacency, 4), name="su2_4:D4")


def e6_context() -> MoritaContextData:
    """su2 level 10 with the E6 graph; dual system of 12 simples."""
    md = su2(10)
    b_plus = _rows_to_matrix(
        [[0], [1], [2], [3, 4], [2, 5], [1, 4], [0, 2], [1, 3], [2], [4], [5]],
        12)
    b_minus = _rows_to_matrix(
        [[0], [6], [7], [3, 8], [7, 5], [6, 8], [0, 7], [6, 3], [7], [8], [5]],
        12)
    adjacency = np.zeros((6, 6), dtype=np.int64)
    for a, b in [(0, 1), (1, 2), (2, 3), (3, 4), (2, 5)]:
        adjacency[a, b] = adjacency[b, a] = 1
    return MoritaContextData(
        md=md, dual_rank=12, module_rank=6,
        branch_plus=b_plus, branch_minus=b_minus,
        nimreps=dynkin_nimreps(adjacency, 10), name="su2_10:E6")


def context_ids() -> list[str]:
    return ["su2_4:D4", "su2_10:E6"] + [f"trivial:su2_{k}" for k in range(1, 11)] \
        + ["trivial:ising", "trivial:fibonacci"]


def context_from_id(name: str) -> MoritaContextData:
    if name == "su2_4:D4":
        return d4_context()
    if name == "su2_10:E6":
        return e6_context()
    if name.startswith("trivial:"):
        from .catalog import from_id
        return trivial_context(from_id(name.split(":", 1)[1]))
    raise ValueError(f"unknown context id {name!r}")
