"""Commutant computation and exhaustive invariant enumeration (A-D-E)."""

import numpy as np
import pytest

from mfclib.catalog import double_cyclic, fibonacci, ising, pointed_cyclic, su2
from mfclib.cycmat import CycMat
from mfclib.cyclotomic import rational
from mfclib.errors import RankMismatch, SearchBudgetExceeded
from mfclib.invariants import (commutant_basis, enumerate_invariants,
                               is_modular_invariant, physical_weight)
from mfclib.modular_data import derived


def conj_matrix(md):
    perm = derived(md).conj_perm
    c = np.zeros((md.rank, md.rank), dtype=np.int64)
    for i, j in enumerate(perm):
        c[i, j] = 1
    return c


def commutes_exactly(md, mat):
    zc = CycMat.from_int_matrix(md.conductor, np.asarray(mat, dtype=np.int64))
    return (zc @ md.smat).equals(md.smat @ zc)


def test_commutant_dimensions():
    assert commutant_basis(su2(1)).dimension == 1
    assert commutant_basis(su2(4)).dimension == 2
    assert commutant_basis(su2(16)).dimension >= 3


def test_commutant_basis_members_commute():
    for md in (su2(4), su2(10), ising()):
        cb = commutant_basis(md)
        e = md.t_exponents
        for mat in cb.basis:
            assert commutes_exactly(md, mat)
            for j in range(md.rank):
                for k in range(md.rank):
                    if mat[j, k]:
                        assert e[j] == e[k]


def test_is_modular_invariant_examples():
    md = ising()
    ok, witness = is_modular_invariant(md, np.eye(3, dtype=np.int64))
    assert ok and witness is None
    ok, _ = is_modular_invariant(md, conj_matrix(md))
    assert ok
    # charge conjugation on a category where C != I
    md2 = double_cyclic(3)
    ok, _ = is_modular_invariant(md2, conj_matrix(md2))
    assert ok
    e12 = np.zeros((3, 3), dtype=np.int64)
    e12[0, 1] = 1
    ok, witness = is_modular_invariant(md, e12)
    assert not ok and witness is not None
    # independent commutator oracle in exact scalars
    lhs = md.s(0, 0) * rational(0)
    for a in range(3):
        lhs = lhs + e12[0, a] * md.s(a, 1)
    rhs = rational(0)
    for a in range(3):
        rhs = rhs + md.s(0, a) * e12[a, 1]
    assert lhs != rhs
    with pytest.raises(RankMismatch):
        is_modular_invariant(md, np.eye(4, dtype=np.int64))


def test_enumeration_su2_4():
    md = su2(4)
    found = enumerate_invariants(md)
    assert len(found) == 2
    assert np.array_equal(found[0].entries, np.eye(5, dtype=np.int64))
    d4 = found[1].entries
    expected = np.zeros((5, 5), dtype=np.int64)
    expected[0, 0] = expected[0, 4] = expected[4, 0] = expected[4, 4] = 1
    expected[2, 2] = 2
    assert np.array_equal(d4, expected)
    # cross-check: 4 * 1 + 2 * 4 = 12 = mu
    assert physical_weight(md, found[1]) == rational(12)


def test_enumeration_su2_10_with_e6_support():
    found = enumerate_invariants(su2(10))
    assert len(found) == 3
    traces = sorted(int(np.trace(z.entries)) for z in found)
    assert traces == [6, 7, 11]
    e6 = next(z for z in found if np.trace(z.entries) == 6)
    support = {(int(a), int(b)) for a, b in np.argwhere(e6.entries)}
    blocks = [(0, 6), (3, 7), (4, 10)]
    expected = {(a, b) for block in blocks for a in block for b in block}
    assert support == expected
    assert all(int(e6.entries[a, b]) == 1 for a, b in support)


def test_enumeration_ising_and_fibonacci():
    assert len(enumerate_invariants(ising())) == 1
    assert len(enumerate_invariants(fibonacci())) == 1


def test_identity_and_conjugation_always_present():
    for md in (ising(), su2(4), su2(6), double_cyclic(2), pointed_cyclic(5, 2)):
        found = enumerate_invariants(md)
        keys = {z.key() for z in found}
        eye = np.eye(md.rank, dtype=np.int64)
        assert tuple(eye.reshape(-1)) in keys
        assert tuple(conj_matrix(md).reshape(-1)) in keys


def test_enumeration_postconditions_and_order():
    found = enumerate_invariants(su2(8))
    keys = [z.key() for z in found]
    assert keys == sorted(keys)
    mu = su2(8).global_dim()
    for z in found:
        ok, _ = is_modular_invariant(su2(8), z)
        assert ok
        assert z.normalized()
        assert physical_weight(su2(8), z) == mu


def test_worker_count_determinism():
    md = su2(10)
    base = [z.key() for z in enumerate_invariants(md, workers=1)]
    for workers in (2, 3):
        out = [z.key() for z in enumerate_invariants(md, workers=workers)]
        assert out == base


def test_node_budget_enforced():
    with pytest.raises(SearchBudgetExceeded):
        enumerate_invariants(su2(16), node_budget=5)


def test_bounded_search_against_exhaustive_oracle():
    """Brute force over all twist-block-supported integer matrices."""
    import itertools
    for md, bound in ((ising(), 2), (su2(4), 2)):
        e = md.t_exponents
        positions = [(j, k) for j in range(md.rank) for k in range(md.rank)
                     if e[j] == e[k]]
        found = {z.key() for z in enumerate_invariants(md, mode=bound)}
        brute = set()
        for values in itertools.product(range(bound + 1), repeat=len(positions)):
            mat = np.zeros((md.rank, md.rank), dtype=np.int64)
            for (j, k), v in zip(positions, values):
                mat[j, k] = v
            if mat[md.unit_index, md.unit_index] != 1:
                continue
            ok, _ = is_modular_invariant(md, mat)
            if ok:
                brute.add(tuple(int(x) for x in mat.reshape(-1)))
        assert found == brute, md.name


def test_full_level_sweep_matches_classification():
    # A for every level, A+D for even levels >= 4, E at 10, 16, 28
    expected = {k: 1 for k in range(1, 29)}
    expected.update({k: 2 for k in range(4, 29, 2)})
    expected.update({10: 3, 16: 3, 28: 3})
    for k in range(1, 29):
        assert len(enumerate_invariants(su2(k))) == expected[k], f"level {k}"


def test_bounded_mode():
    md = su2(4)
    found = enumerate_invariants(md, mode=3)
    physical = enumerate_invariants(md)
    keys = {z.key() for z in found}
    for z in physical:
        assert z.key() in keys
    for z in found:
        ok, _ = is_modular_invariant(md, z)
        assert ok
        assert z.normalized()
        assert int(z.entries.max()) <= 3
