from __future__ import annotations

from fractions import Fraction

import pytest
from hypothesis import given, settings

from ggsr.exactring import Q, Scalar, monomial
from ggsr.ggsbuild import build_Rs
from ggsr.rootdata import casimir, matrix_unit
from ggsr.tensorops import (
    DimensionError,
    SparseMatrix,
    embed,
    flip21,
    identity,
    kron,
    leg_index,
    leg_pair,
    madd,
    matmul,
    mscale,
    msub,
    permutation,
)

from conftest import dense, dense_mul, from_dense, sparse_matrices


def test_rejects_bad_indices_and_drops_zeros():
    with pytest.raises(IndexError):
        SparseMatrix(2, {(3, 1): 1})
    m = SparseMatrix(2, {(1, 1): 0, (2, 2): Scalar()})
    assert m.nnz() == 0 and m.is_zero()


def test_dimension_mismatch():
    with pytest.raises(DimensionError):
        madd(identity(2), identity(3))
    with pytest.raises(DimensionError):
        matmul(identity(2), identity(3))
    with pytest.raises(DimensionError):
        embed(identity(3), "12", 2)
    with pytest.raises(DimensionError):
        flip21(identity(3))


def test_identity_and_permutation_square():
    a = SparseMatrix(4, {(1, 2): Q, (3, 4): 2})
    assert matmul(identity(4), a) == a
    p = permutation(2)
    assert matmul(p, p) == identity(4)
    assert p == SparseMatrix(4, {(1, 1): 1, (2, 3): 1, (3, 2): 1, (4, 4): 1})


def test_kron_examples():
    assert kron(matrix_unit(1, 1, 2), matrix_unit(2, 2, 2)) == SparseMatrix(4, {(2, 2): 1})
    assert kron(identity(3), identity(3)) == identity(9)
    assert kron(matrix_unit(2, 1, 2), matrix_unit(1, 2, 2)) == SparseMatrix(4, {(3, 2): 1})


def test_leg_index_round_trip():
    for n in (2, 3, 5):
        for i in range(1, n + 1):
            for k in range(1, n + 1):
                assert leg_pair(leg_index(i, k, n), n) == (i, k)


def test_embed_examples():
    n = 2
    assert embed(identity(4), "13", n) == identity(8)
    x = kron(matrix_unit(1, 1, n), matrix_unit(2, 2, n))
    expected = kron(kron(matrix_unit(1, 1, n), identity(n)), matrix_unit(2, 2, n))
    assert embed(x, "13", n) == expected
    assert embed(x, "12", n) == kron(x, identity(n))
    assert embed(x, "23", n) == kron(identity(n), x)
    with pytest.raises(ValueError):
        embed(x, "21", n)


def test_embed_13_against_definition():
    n = 2
    a = SparseMatrix(4, {(1, 4): Q, (3, 2): 2, (2, 2): -1})
    e = embed(a, "13", n)
    for i in range(1, 3):
        for k in range(1, 3):
            for m in range(1, 3):
                for j in range(1, 3):
                    for l in range(1, 3):
                        for p in range(1, 3):
                            row = ((i - 1) * n + (k - 1)) * n + m
                            col = ((j - 1) * n + (l - 1)) * n + p
                            want = a[(leg_index(i, m, n), leg_index(j, p, n))] if k == l else Scalar()
                            assert e[(row, col)] == want


def test_flip21_examples():
    n = 3
    x, y = matrix_unit(1, 2, n), matrix_unit(3, 1, n)
    assert flip21(kron(x, y)) == kron(y, x)
    assert flip21(casimir(n)) == casimir(n)


def test_rs_qybe_and_hecke_on_sl2():
    n = 2
    R = build_Rs(n)
    r12, r13, r23 = (embed(R, legs, n) for legs in ("12", "13", "23"))
    assert matmul(matmul(r12, r13), r23) == matmul(matmul(r23, r13), r12)
    pr = matmul(permutation(n), R)
    lhs = matmul(msub(pr, mscale(identity(4), Q)), madd(pr, mscale(identity(4), monomial(1, -1))))
    assert lhs.is_zero()


def test_json_round_trip_sorted():
    m = SparseMatrix(4, {(3, 1): Q, (1, 2): Fraction(1, 2)})
    js = m.to_json()
    assert [(e["row"], e["col"]) for e in js["entries"]] == [(1, 2), (3, 1)]
    assert SparseMatrix.from_json(js) == m


@settings(max_examples=200)
@given(sparse_matrices(), sparse_matrices(), sparse_matrices())
def test_matmul_associative_and_matches_dense(a, b, c):
    assert matmul(matmul(a, b), c) == matmul(a, matmul(b, c))
    assert matmul(a, b) == from_dense(dense_mul(dense(a), dense(b)))


@settings(max_examples=100)
@given(sparse_matrices(dim=2), sparse_matrices(dim=2), sparse_matrices(dim=2), sparse_matrices(dim=2))
def test_kron_mixed_product(a, b, c, d):
    assert matmul(kron(a, b), kron(c, d)) == kron(matmul(a, c), matmul(b, d))


@settings(max_examples=60)
@given(sparse_matrices(dim=4), sparse_matrices(dim=4))
def test_embed_is_algebra_morphism(a, b):
    for legs in ("12", "13", "23"):
        assert embed(matmul(a, b), legs, 2) == matmul(embed(a, legs, 2), embed(b, legs, 2))


@settings(max_examples=200)
@given(sparse_matrices(dim=4), sparse_matrices(dim=4))
def test_flip21_linear_involutive_and_conjugation(a, b):
    assert flip21(flip21(a)) == a
    assert flip21(madd(a, b)) == madd(flip21(a), flip21(b))
    p = permutation(2)
    assert flip21(a) == matmul(matmul(p, a), p)


@settings(max_examples=100)
@given(sparse_matrices(dim=2), sparse_matrices(dim=2))
def test_permutation_swaps_kron(a, b):
    p = permutation(2)
    assert matmul(matmul(p, kron(a, b)), p) == kron(b, a)


@settings(max_examples=50)
@given(sparse_matrices(dim=9, max_entries=30), sparse_matrices(dim=9, max_entries=30))
def test_matmul_independent_of_worker_count(a, b):
    assert matmul(a, b, workers=1) == matmul(a, b, workers=3)
