from __future__ import annotations

import random

import numpy as np
import pytest
from hypothesis import given, strategies as st

from conftest import gauss
from waring_eig.exactnum import (
    I,
    ONE,
    ZERO,
    ExactMatrix,
    GaussRat,
    det_exact,
    inverse_exact,
    kernel_basis,
    parse_scalar,
    rank_exact,
    rank_numeric,
    snap,
    solve_exact,
)


def mat(rows):
    return ExactMatrix.from_rows(rows)


def test_gaussrat_basic_arithmetic():
    z = GaussRat(1, 2)
    assert z * z.conj() == GaussRat(5)
    assert z.norm() == 5
    assert (z / z) == ONE
    assert I * I == GaussRat(-1)
    assert str(GaussRat(3, 0) / 6) == "1/2"


def test_gaussrat_zero_inverse_raises():
    with pytest.raises(ZeroDivisionError):
        ZERO.inverse()


def test_parse_scalar_gaussian_literal():
    assert parse_scalar("2+i") == GaussRat(2, 1)
    assert parse_scalar("3/2") == GaussRat(3) / 2


def test_snap_recovers_small_rationals():
    assert snap(0.5 + 0.25j) == GaussRat(1, 0) / 2 + GaussRat(0, 1) / 4


@given(gauss(), gauss(), gauss())
def test_field_axioms(a, b, c):
    assert (a + b) + c == a + (b + c)
    assert a * (b + c) == a * b + a * c
    assert a * b == b * a
    if a:
        assert a * a.inverse() == ONE


@given(gauss())
def test_conjugation_involution_and_norm(z):
    assert z.conj().conj() == z
    assert (z.norm() == 0) == (z == ZERO)


@given(gauss())
def test_json_round_trip(z):
    assert GaussRat.from_json(z.to_json()) == z


# kernel_basis / rank_exact oracles


def test_kernel_identity_empty():
    assert kernel_basis(ExactMatrix.identity(3)) == []


def test_kernel_zero_matrix_full():
    assert len(kernel_basis(ExactMatrix.zeros(2, 3))) == 3


def test_kernel_hand_reduced():
    (v,) = kernel_basis(mat([[1, 1, 0], [0, 1, 1]]))
    assert [x / v[0] for x in v] == [ONE, -ONE, ONE]


def test_rank_examples():
    assert rank_exact(ExactMatrix.identity(4)) == 4
    assert rank_exact(ExactMatrix.zeros(3, 2)) == 0
    assert rank_exact(mat([[1, I], [I, -1]])) == 1


def test_det_inverse_solve():
    M = mat([[2, 1], [1, 1]])
    assert det_exact(M) == ONE
    assert inverse_exact(M) @ M == ExactMatrix.identity(2)
    assert solve_exact(M, [3, 2]) == [ONE, ONE]


def test_rank_numeric_examples():
    assert rank_numeric(np.eye(4), 1e-9) == 4
    rng = np.random.default_rng(0)
    u = rng.normal(size=5) + 1j * rng.normal(size=5)
    v = rng.normal(size=4) + 1j * rng.normal(size=4)
    assert rank_numeric(np.outer(u, v), 1e-9) == 1
    q1, _ = np.linalg.qr(rng.normal(size=(3, 3)) + 1j * rng.normal(size=(3, 3)))
    q2, _ = np.linalg.qr(rng.normal(size=(3, 3)) + 1j * rng.normal(size=(3, 3)))
    M = q1 @ np.diag([1.0, 1e-3, 1e-12]) @ q2
    assert rank_numeric(M, 1e-6) == 2


def test_rank_numeric_rejects_nonfinite():
    with pytest.raises(ValueError):
        rank_numeric(np.array([[np.nan, 1.0]]), 1e-9)


small_matrices = st.integers(1, 4).flatmap(
    lambda r: st.integers(1, 4).flatmap(
        lambda c: st.lists(st.lists(gauss(3), min_size=c, max_size=c), min_size=r, max_size=r)))


@given(small_matrices)
def test_rank_nullity(rows):
    M = mat(rows)
    ker = kernel_basis(M)
    assert rank_exact(M) + len(ker) == M.cols
    for v in ker:
        assert all(not x for x in (M @ mat([[x] for x in v])).entries)


def _unimodular(n: int, rng: random.Random) -> ExactMatrix:
    U = ExactMatrix.identity(n)
    for _ in range(3 * n):
        i, j = rng.sample(range(n), 2) if n > 1 else (0, 0)
        if i == j:
            continue
        E = [[int(a == b) for b in range(n)] for a in range(n)]
        E[i][j] = rng.randint(-3, 3)
        U = U @ mat(E)
    return U


@given(small_matrices, st.integers(0, 10**6))
def test_rank_invariant_under_permutation_and_unimodular(rows, seed):
    rng = random.Random(seed)
    M = mat(rows)
    r = rank_exact(M)
    perm_rows = rows[:]
    rng.shuffle(perm_rows)
    cols = list(range(M.cols))
    rng.shuffle(cols)
    P = mat([[row[j] for j in cols] for row in perm_rows])
    assert rank_exact(P) == r
    assert rank_exact(_unimodular(M.rows, rng) @ M @ _unimodular(M.cols, rng)) == r
