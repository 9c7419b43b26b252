"""Multi-invariant identities: sums, vacuum dims, series, traces, double Z."""

import itertools

import numpy as np
import pytest

from mfclib.catalog import fibonacci, ising, pointed_cyclic, su2
from mfclib.cyclotomic import invert, rational
from mfclib.errors import NotInvariant, RankMismatch
from mfclib.invariants import enumerate_invariants
from mfclib.fusion_ring import vacuum_multiplicity
from mfclib.modular_data import derived, verlinde_fusion
from mfclib.obstruction import (check_obstruction, double_z, lhs_multi,
                                rhs_vacuum, series_coefficients,
                                trace_identities)


def conj_matrix(md):
    perm = derived(md).conj_perm
    c = np.zeros((md.rank, md.rank), dtype=np.int64)
    for i, j in enumerate(perm):
        c[i, j] = 1
    return c


def vacuum_oracle(md, mats):
    """Independent fusion-chain count of the vacuum dimension.

    dim hom(1, (x)_s I(z_s)) expanded over simple summands: a sum over one
    (j_s, k_s) pair per factor of (left chain vacuum) * (reversed right
    chain vacuum) weighted by multiplicities.
    """
    ring = verlinde_fusion(md)
    total = 0
    supports = [list(zip(*np.nonzero(m))) for m in mats]
    for picks in itertools.product(*supports):
        weight = 1
        for m, (j, k) in zip(mats, picks):
            weight *= int(m[j, k])
        left = [int(j) for j, _ in picks]
        right = [int(k) for _, k in picks][::-1]   # op-side fusion reverses
        total += weight * vacuum_multiplicity(ring, left) \
            * vacuum_multiplicity(ring, right)
    return total


def test_full_n1_is_one_for_physical():
    for md in (ising(), fibonacci(), su2(4)):
        for z in enumerate_invariants(md):
            assert lhs_multi(md, [z]) == rational(1)
            assert rhs_vacuum(md, [z]) == 1


def test_full_small_values_on_ising():
    md = ising()
    eye = np.eye(3, dtype=np.int64)
    assert lhs_multi(md, [eye, eye]) == rational(3)
    val = lhs_multi(md, [eye] * 3)
    # mu * sum 1/d_j^2 = 4 (1 + 1/2 + 1) = 10
    mu = md.global_dim()
    dims = derived(md).dims
    expected = rational(0)
    for d in dims:
        expected = expected + invert(d * d)
    assert val == mu * expected == rational(10)
    assert rhs_vacuum(md, [eye] * 3) == 10


def test_rhs_vacuum_against_independent_oracle():
    md = ising()
    eye = np.eye(3, dtype=np.int64)
    assert vacuum_oracle(md, [eye, eye]) == rhs_vacuum(md, [eye, eye]) == 3
    assert vacuum_oracle(md, [eye] * 3) == rhs_vacuum(md, [eye] * 3) == 10
    ring = verlinde_fusion(md)
    s = 0
    for a in range(3):
        for b in range(3):
            for c in range(3):
                s += int(ring.tensor[b, c, a]) ** 2
    assert s == 10   # sum over (N_bc^a)^2 equals the triple-identity value
    md4 = su2(4)
    invs = [z.entries for z in enumerate_invariants(md4)]
    for pair in itertools.product(invs, repeat=2):
        assert vacuum_oracle(md4, list(pair)) == rhs_vacuum(md4, list(pair))


def test_full_n2_equals_trace_form():
    for md in (ising(), su2(4), su2(10)):
        invs = enumerate_invariants(md)
        for z1 in invs:
            for z2 in invs:
                tr = int(np.sum(z1.entries * z2.entries))
                assert lhs_multi(md, [z1, z2]) == rational(tr)


def test_diagonal_n2_is_diagonal_pairing():
    md = su2(4)
    invs = enumerate_invariants(md)
    for z1 in invs:
        for z2 in invs:
            want = int(np.sum(np.diag(z1.entries) * np.diag(z2.entries)))
            assert lhs_multi(md, [z1, z2], "diagonal") == rational(want)


def test_check_obstruction_reports():
    md = ising()
    eye = np.eye(3, dtype=np.int64)
    report = check_obstruction(md, [eye], 3)
    assert report.verdict
    full_recs = [r for r in report.records if r.variant == "full"]
    assert [r.rhs for r in full_recs] == [1, 3, 10]
    assert all(r.equal for r in full_recs)
    chiral = [r for r in report.records if r.variant.startswith("chiral")]
    assert all(not r.asserted for r in chiral)
    diag = [r for r in report.records if r.variant == "diagonal" and r.n >= 2]
    assert all(r.asserted and r.lhs_is_nonneg_integer for r in diag)


def test_check_obstruction_e6_pair():
    md = su2(10)
    e6 = next(z for z in enumerate_invariants(md) if np.trace(z.entries) == 6)
    report = check_obstruction(md, [e6], 2)
    assert report.verdict
    rec = next(r for r in report.records if r.variant == "full" and r.n == 2)
    assert rec.rhs == 12 and rec.equal


def test_item1_triples_at_rank_eleven():
    # ranks up to 12 support n = 3 tuples
    md = su2(10)
    invs = enumerate_invariants(md)
    for combo in itertools.combinations_with_replacement(invs, 3):
        lhs = lhs_multi(md, list(combo), "full")
        assert lhs.is_nonneg_integer()
        assert lhs == rational(rhs_vacuum(md, list(combo)))


def test_series_examples_and_consistency():
    md = ising()
    eye = np.eye(3, dtype=np.int64)
    coeffs = series_coefficients(md, eye, 4)
    assert coeffs[0] == rational(1)
    assert coeffs[1] == rational(1)
    assert coeffs[2] == rational(3)
    assert coeffs[3] == rational(10)
    for md in (ising(), fibonacci()):
        for z in (np.eye(md.rank, dtype=np.int64), conj_matrix(md)):
            coeffs = series_coefficients(md, z, 4)
            assert coeffs[0] == rational(1)
            for n in range(1, 5):
                assert coeffs[n] == lhs_multi(md, [z] * n)
                assert coeffs[n] == rational(rhs_vacuum(md, [z] * n))


def test_trace_identities():
    md = su2(4)
    invs = enumerate_invariants(md)
    eye_t = trace_identities(md, invs[0])
    assert (eye_t.tr_z, eye_t.tr_zzt) == (5, 5)
    d4_t = trace_identities(md, invs[1])
    assert (d4_t.tr_z, d4_t.tr_zzt) == (4, 8)
    md10 = su2(10)
    e6 = next(z for z in enumerate_invariants(md10) if np.trace(z.entries) == 6)
    t = trace_identities(md10, e6)
    assert (t.tr_z, t.tr_zzt) == (6, 12)


def test_double_z_examples():
    md = ising()
    eye = np.eye(3, dtype=np.int64)
    res = double_z(md, eye, eye)
    assert res.mu_trace == 3
    quarter = invert(rational(4))
    for i in range(3):
        for j in range(3):
            want = quarter if i == j else rational(0)
            assert res.matrix[i][j] == want
    md10 = su2(10)
    e6 = next(z for z in enumerate_invariants(md10) if np.trace(z.entries) == 6)
    res = double_z(md10, e6.entries, e6.entries)
    assert res.mu_trace == 12
    assert res.commutes_s and res.commutes_t
    # (I, C) on a category with nontrivial conjugation
    mdp = pointed_cyclic(5, 2)
    c = conj_matrix(mdp)
    res = double_z(mdp, np.eye(5, dtype=np.int64), c)
    assert res.commutes_s and res.commutes_t
    inv_mu = invert(mdp.global_dim())
    for i in range(5):
        for j in range(5):
            want = inv_mu if c[i, j] else rational(0)
            assert res.matrix[i][j] == want


def test_double_z_all_pairs_commute():
    for md in (su2(4), su2(10)):
        invs = enumerate_invariants(md)
        for z1 in invs:
            for z2 in invs:
                res = double_z(md, z1, z2)
                assert res.commutes_s and res.commutes_t
                assert res.mu_trace >= 0


def test_double_z_rejects_non_invariant():
    md = ising()
    bad = np.zeros((3, 3), dtype=np.int64)
    bad[0, 1] = 1
    with pytest.raises(NotInvariant):
        double_z(md, bad, bad)
    with pytest.raises(RankMismatch):
        double_z(md, np.eye(4, dtype=np.int64), np.eye(4, dtype=np.int64))


def test_rank_mismatch_on_sums():
    md = ising()
    with pytest.raises(RankMismatch):
        lhs_multi(md, [np.eye(4, dtype=np.int64)])
    with pytest.raises(RankMismatch):
        rhs_vacuum(md, [np.eye(2, dtype=np.int64)])


def test_non_commutant_matrix_fails_battery():
    # a normalized matrix outside the commutant breaks the vacuum equality
    md = ising()
    z = np.eye(3, dtype=np.int64)
    z[0, 2] = 1
    report = check_obstruction(md, [z], 1)
    assert not report.verdict
    rec = report.failures()[0]
    assert rec.variant == "full" and not rec.equal
