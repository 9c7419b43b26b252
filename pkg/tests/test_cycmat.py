"""Bulk cyclotomic matrices against scalar-by-scalar references."""

import random

import numpy as np

from mfclib.cycmat import CycMat
from mfclib.cyclotomic import ExactScalar, conjugate, euler_phi, rational, root_of_unity


def random_cycmat(rng, n, rows, cols, span=4, den=3):
    phi = euler_phi(n)
    num = np.zeros((phi, rows, cols), dtype=np.int64)
    for m in range(phi):
        for i in range(rows):
            for j in range(cols):
                num[m, i, j] = rng.randint(-span, span)
    return CycMat(n, num, rng.randint(1, den))


def scalar_matmul(a, b):
    ga, gb = a.scalar_grid(), b.scalar_grid()
    out = []
    for i in range(a.rows):
        row = []
        for j in range(b.cols):
            total = rational(0)
            for k in range(a.cols):
                total = total + ga[i][k] * gb[k][j]
            row.append(total)
        out.append(row)
    return out


def test_matmul_matches_scalar_reference():
    rng = random.Random(5)
    for n in (4, 5, 12, 16):
        a = random_cycmat(rng, n, 3, 4)
        b = random_cycmat(rng, n, 4, 2)
        prod = a @ b
        ref = scalar_matmul(a, b)
        for i in range(3):
            for j in range(2):
                assert prod.entry(i, j) == ref[i][j]


def test_object_fallback_is_exact():
    rng = random.Random(6)
    n = 8
    a = random_cycmat(rng, n, 2, 2)
    big = a.scale(rational(2 ** 70 + 1))       # forces object dtype
    assert big.num.dtype == object
    small = big.scale(rational(1) / (2 ** 70 + 1))
    assert small.equals(a)
    prod_big = big @ a
    prod_small = (a @ a).scale(rational(2 ** 70 + 1))
    assert prod_big.equals(prod_small)


def test_conj_transpose_scale_roundtrip():
    rng = random.Random(7)
    a = random_cycmat(rng, 12, 3, 3)
    assert a.conj().conj().equals(a)
    assert a.transpose().transpose().equals(a)
    grid = a.conj().scalar_grid()
    ref = a.scalar_grid()
    for i in range(3):
        for j in range(3):
            assert grid[i][j] == conjugate(ref[i][j])
    z = root_of_unity(12, 5)
    scaled = a.scale(z)
    for i in range(3):
        for j in range(3):
            assert scaled.entry(i, j) == ref[i][j] * z


def test_column_and_row_scaling():
    rng = random.Random(8)
    a = random_cycmat(rng, 8, 2, 3)
    ref = a.scalar_grid()
    cols = [root_of_unity(8, 3), rational(2), rational(1) / 2]
    scaled = a.scale_columns(cols)
    for i in range(2):
        for j in range(3):
            assert scaled.entry(i, j) == ref[i][j] * cols[j]
    byroot = a.scale_columns_by_roots([1, 2, 3])
    for i in range(2):
        for j in range(3):
            assert byroot.entry(i, j) == ref[i][j] * root_of_unity(8, j + 1)
    rows = [rational(3), root_of_unity(8, 7)]
    rscaled = a.scale_rows(rows)
    for i in range(2):
        for j in range(3):
            assert rscaled.entry(i, j) == ref[i][j] * rows[i]


def test_add_sub_identity_compare():
    rng = random.Random(9)
    a = random_cycmat(rng, 5, 3, 3)
    b = random_cycmat(rng, 5, 3, 3)
    s = a + b
    for i in range(3):
        for j in range(3):
            assert s.entry(i, j) == a.entry(i, j) + b.entry(i, j)
    assert (s - b).equals(a)
    two = CycMat.from_int_matrix(5, 2 * np.eye(3, dtype=np.int64))
    assert two.equals_scalar_identity(rational(2))
    assert not two.equals_scalar_identity(rational(3))
    diff = two.first_difference(CycMat.from_int_matrix(5, np.eye(3, dtype=np.int64)))
    assert diff == (0, 0)


def test_from_scalars_mixed_conductors():
    grid = [[rational(1), root_of_unity(4)],
            [root_of_unity(3), rational(1) / 6]]
    mat = CycMat.from_scalars(12, grid)
    assert mat.entry(0, 1) == root_of_unity(4)
    assert mat.entry(1, 0) == root_of_unity(3)
    assert mat.entry(1, 1) == rational(1) / 6
