from itertools import permutations

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from oracles import all_subspaces, det_mod, rank_mod
from schubert_codes.counting import binom, gauss_binom, int_det
from schubert_codes.errors import AmbientMismatch, BudgetExceeded, InvalidInput
from schubert_codes.gf import field_from_order
from schubert_codes.linalg import (
    Subspace,
    coordinate_subspace,
    det,
    enumerate_subspaces,
    intersect,
    kernel_basis,
    meet_coordinate_dim,
    random_subspace,
    rank,
    read_matrix,
    rref,
    subspace_sum,
    write_matrix,
)

matrices = st.sampled_from([2, 3, 5]).flatmap(
    lambda p: st.tuples(
        st.just(p),
        st.integers(1, 4).flatmap(
            lambda r: st.integers(1, 5).flatmap(
                lambda c: st.lists(st.lists(st.integers(0, p - 1), min_size=c, max_size=c), min_size=r, max_size=r)
            )
        ),
    )
)


def test_gauss_binom_values():
    assert gauss_binom(4, 2, 2) == 35
    assert gauss_binom(5, 2, 3) == 1210
    assert gauss_binom(3, 4, 2) == 0
    assert gauss_binom(3, 0, 7) == 1


@pytest.mark.parametrize("q,n", [(2, 4), (3, 3), (2, 5)])
def test_gauss_binom_counts_subspaces(q, n):
    for k in range(n + 1):
        assert gauss_binom(n, k, q) == len(all_subspaces(n, k, q))


def test_binom_and_int_det():
    assert binom(5, 2) == 10 and binom(-1, 0) == 0 and binom(3, 4) == 0
    assert int_det([[2, 1], [1, 1]]) == 1
    assert int_det([[0, 1], [1, 0]]) == -1
    assert int_det([[1, 2], [2, 4]]) == 0


@given(matrices)
def test_rank_and_rref_against_oracle(data):
    p, rows = data
    F = field_from_order(p)
    M = np.array(rows)
    R, r, pivots = rref(F, M)
    assert r == rank_mod(rows, p)
    assert rank(F, R) == r
    # rref is idempotent and has unit pivots with zeros elsewhere in pivot columns
    R2, _, _ = rref(F, R)
    assert np.array_equal(R, R2)
    for i, c in enumerate(pivots):
        assert R[i, c] == 1 and np.count_nonzero(R[:, c]) == 1


@given(st.sampled_from([2, 3, 5]), st.integers(1, 4), st.data())
def test_det_against_oracle(p, n, data):
    F = field_from_order(p)
    rows = data.draw(st.lists(st.lists(st.integers(0, p - 1), min_size=n, max_size=n), min_size=n, max_size=n))
    assert det(F, np.array(rows)) == det_mod(rows, p)


def test_det_leibniz_gf4():
    F = field_from_order(4)
    rng = np.random.default_rng(0)
    M = rng.integers(0, 4, size=(3, 3))
    total = 0
    for perm in permutations(range(3)):
        term = 1
        for i in range(3):
            term = F.mul(term, int(M[i, perm[i]]))
        total = F.add(total, term)  # characteristic 2: signs are irrelevant
    assert det(F, M) == total


def test_subspace_canonical_equality():
    F = field_from_order(3)
    A = Subspace.span(F, [[1, 1, 0], [0, 1, 1]])
    B = Subspace.span(F, [[1, 2, 1], [0, 2, 2]])
    assert A == B and hash(A) == hash(B)
    assert A.dim == 2 and len(A) == 9 and len(set(A.vectors())) == 9
    assert all(A.contains(np.array(v)) for v in A.vectors())


@given(st.sampled_from([2, 3]), st.integers(0, 4), st.integers(0, 4), st.integers(0, 2**32 - 1))
def test_intersection_dimension_formula(p, ka, kb, seed):
    F = field_from_order(p)
    rng = np.random.default_rng(seed)
    A = random_subspace(F, 4, ka, rng)
    B = random_subspace(F, 4, kb, rng)
    I = intersect(A, B)
    assert A.dim + B.dim == subspace_sum(A, B).dim + I.dim
    assert I.issubspace(A) and I.issubspace(B)
    for k in range(5):
        C = coordinate_subspace(F, 4, k)
        assert meet_coordinate_dim(A, k) == intersect(A, C).dim


def test_kernel_basis():
    F = field_from_order(2)
    M = np.array([[1, 1, 0], [0, 1, 1]])
    K = kernel_basis(F, M)
    assert K == Subspace.span(F, [[1, 1, 1]])


@pytest.mark.parametrize("q,m", [(2, 4), (3, 3), (4, 3)])
def test_enumerate_subspaces_complete(q, m):
    F = field_from_order(q)
    for k in range(m + 1):
        subs = list(enumerate_subspaces(F, m, k))
        assert len(subs) == len(set(subs)) == gauss_binom(m, k, q)
        assert all(S.dim == k for S in subs)


def test_enumerate_subspaces_budget():
    with pytest.raises(BudgetExceeded):
        enumerate_subspaces(field_from_order(2), 6, 3, budget=100)


def test_matrix_text_round_trip():
    F = field_from_order(9)
    M = np.arange(12).reshape(3, 4) % 9
    text = write_matrix(F, M, header=["example"])
    assert text.startswith("# example\n3 4 9\n")
    F2, M2 = read_matrix(text)
    assert F2 == F and np.array_equal(M, M2)
    with pytest.raises(InvalidInput):
        read_matrix("2 2 2\n0 1\n")
    with pytest.raises(InvalidInput):
        read_matrix("1 2 2\n0 5\n")


def test_ambient_mismatch():
    F = field_from_order(2)
    with pytest.raises(AmbientMismatch):
        intersect(coordinate_subspace(F, 3, 1), coordinate_subspace(F, 4, 1))
