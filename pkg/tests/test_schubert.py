from math import comb

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from oracles import count_meeting, meet_dim, schubert_points
from schubert_codes.counting import gauss_binom
from schubert_codes.errors import BudgetExceeded, DimensionMismatch, InvalidInput, NotStrictlyIncreasing, OutOfRange
from schubert_codes.exterior import Multivector, basis_multivector
from schubert_codes.gf import field_from_order
from schubert_codes.linalg import Subspace, enumerate_subspaces, random_subspace
from schubert_codes.schubert import (
    DimSeq,
    all_dimseqs,
    cells,
    count_subspaces_bruteforce,
    count_subspaces_formula,
    dimseq_make,
    enumerate_lambda,
    enumerate_points,
    in_lambda,
    is_member,
    is_schubert_decomposable,
    k_alpha,
    lambda_count_formula,
    m_alpha_formula,
    n_alpha,
)


def test_dimseq_validation():
    with pytest.raises(NotStrictlyIncreasing):
        DimSeq(2, 4, (3, 3))
    with pytest.raises(OutOfRange):
        DimSeq(2, 4, (2, 5))
    with pytest.raises(OutOfRange):
        DimSeq(4, 4, (1, 2, 3, 4))
    with pytest.raises(InvalidInput):
        DimSeq(2, 4, (2,))


def test_jump_spots_example():
    ds = DimSeq(7, 10, (1, 2, 4, 5, 6, 8, 10))
    assert ds.u == 3 and ds.jumps == (2, 5, 6)
    assert ds.p == (0, 2, 5, 6, 7)


def test_shape_predicates():
    assert dimseq_make(None, 4, (3, 4)).is_grassmann
    assert dimseq_make(None, 5, (1, 3, 5)).completely_non_consecutive
    assert dimseq_make(None, 5, (2, 3)).completely_consecutive
    assert dimseq_make(None, 4, (2, 4)).truncated() == DimSeq(1, 4, (2,))


def test_parameters_known_instances():
    ds = dimseq_make(None, 4, (2, 4))
    assert (n_alpha(ds, 2), k_alpha(ds), ds.delta) == (19, 5, 3)
    assert n_alpha(ds, 3) == 49
    g = dimseq_make(None, 4, (3, 4))
    assert (n_alpha(g, 2), k_alpha(g), g.delta) == (35, 6, 4)
    ds3 = dimseq_make(None, 5, (2, 3, 5))
    assert (n_alpha(ds3, 2), k_alpha(ds3), ds3.delta) == (43, 7, 4)


@pytest.mark.parametrize("m", [3, 4, 5])
def test_grassmann_parameters(m):
    for ell in range(1, m):
        ds = DimSeq(ell, m, tuple(range(m - ell + 1, m + 1)))
        assert n_alpha(ds, 2) == gauss_binom(m, ell, 2)
        assert k_alpha(ds) == comb(m, ell)


def test_cells_order():
    assert list(cells(dimseq_make(None, 4, (2, 4)))) == [(1, 2), (1, 3), (1, 4), (2, 3), (2, 4)]


@pytest.mark.parametrize("q", [2, 3])
@pytest.mark.parametrize("m", [3, 4])
def test_points_match_brute_force_filter(q, m):
    F = field_from_order(q)
    for ds in all_dimseqs(m):
        pts = enumerate_points(ds, F)
        oracle = schubert_points(ds.ell, ds.m, ds.alpha, q)
        assert len(pts) == len(oracle) == n_alpha(ds, q)
        assert {p.subspace.rows for p in pts} == set(oracle)


def test_point_canonical_shape():
    F = field_from_order(3)
    ds = dimseq_make(None, 5, (2, 3, 5))
    for pt in enumerate_points(ds, F):
        for i, b in enumerate(pt.beta):
            row = pt.matrix[i]
            assert row[b - 1] == 1 and not row[b:].any()
            assert all(row[bj - 1] == 0 for bj in pt.beta[:i])


def test_first_points_of_19():
    F = field_from_order(2)
    pts = enumerate_points(dimseq_make(None, 4, (2, 4)), F)
    assert pts[0].matrix.tolist() == [[1, 0, 0, 0], [0, 1, 0, 0]]
    assert len(pts) == 19


def test_points_budget():
    with pytest.raises(BudgetExceeded):
        enumerate_points(dimseq_make(None, 5, (4, 5)), field_from_order(2), budget=10)


@given(st.sampled_from([2, 3]), st.integers(3, 5), st.integers(0, 2**32 - 1))
def test_jump_spot_membership_equals_full_membership(q, m, seed):
    F = field_from_order(q)
    rng = np.random.default_rng(seed)
    dss = list(all_dimseqs(m))
    ds = dss[int(rng.integers(len(dss)))]
    L = random_subspace(F, m, ds.ell, rng)
    full = all(meet_dim([list(r) for r in L.rows], ds.a(i), q) >= i for i in range(1, ds.ell + 1))
    assert is_member(L, ds, jumps_only=True) == is_member(L, ds, jumps_only=False) == full


def test_is_member_errors():
    F = field_from_order(2)
    with pytest.raises(DimensionMismatch):
        is_member(Subspace.span(F, [[1, 0, 0, 0]]), dimseq_make(None, 4, (2, 4)))


def test_membership_examples():
    F = field_from_order(2)
    ds = dimseq_make(None, 4, (2, 4))
    assert not is_member(Subspace.span(F, [[0, 0, 1, 0], [0, 0, 0, 1]]), ds)
    assert is_member(Subspace.span(F, [[1, 0, 0, 0], [0, 1, 1, 0]]), ds)


def test_schubert_decomposable_examples():
    F = field_from_order(2)
    ds = dimseq_make(None, 4, (2, 4))

    def e(*S):
        return Multivector.basis(F, 4, S)

    assert is_schubert_decomposable(e(1, 3), ds)
    assert is_schubert_decomposable(e(1, 3) + e(1, 2), ds)  # e1 ∧ (e2 + e3)
    assert not is_schubert_decomposable(e(1, 2), ds)
    assert not is_schubert_decomposable(e(1, 2) + e(3, 4), ds)
    grass = dimseq_make(None, 4, (3, 4))
    assert is_schubert_decomposable(e(1, 2), grass)


def test_m_alpha_formula_values():
    assert m_alpha_formula(dimseq_make(None, 4, (2, 4)), 2) == 18
    assert m_alpha_formula(dimseq_make(None, 4, (2, 4)), 3) == 96
    assert m_alpha_formula(dimseq_make(None, 5, (1, 3, 5)), 2) == 72
    for q in (2, 3, 4):
        assert m_alpha_formula(dimseq_make(None, 4, (3, 4)), q) == (q - 1) * gauss_binom(4, 2, q)


def test_subspace_count_examples():
    assert count_subspaces_formula(4, 2, 0, 2, 2) == 16
    assert count_subspaces_formula(3, 1, 0, 1, 2) == 6
    with pytest.raises(InvalidInput):
        count_subspaces_formula(3, 4, 0, 1, 2)


@pytest.mark.parametrize("q", [2, 3])
def test_subspace_count_against_independent_oracle(q):
    F = field_from_order(q)
    for b in range(4):
        for a in range(b + 1):
            for r in range(a + 1):
                for u in range(r, b + 1):
                    expected = count_meeting(b, a, r, u, q)
                    assert count_subspaces_formula(b, a, r, u, q) == expected
                    assert count_subspaces_bruteforce(F, b, a, r, u) == expected


@pytest.mark.parametrize("q", [2, 3])
@pytest.mark.parametrize("m", [3, 4, 5])
def test_lambda_size_matches_chained_formula(q, m):
    F = field_from_order(q)
    for ds in all_dimseqs(m):
        lam = enumerate_lambda(ds, F)
        assert len(lam) == lambda_count_formula(ds, q)


def test_lambda_examples():
    F = field_from_order(2)
    assert len(enumerate_lambda(dimseq_make(None, 4, (2, 4)), F)) == 18
    assert len(enumerate_lambda(dimseq_make(None, 5, (1, 3, 5)), F)) == 72


def test_lambda_is_schubert_decomposable_with_nonvanishing_top_condition():
    F = field_from_order(2)
    for m in (3, 4):
        for ds in all_dimseqs(m):
            for W in enumerate_subspaces(F, m, m - ds.ell):
                f = basis_multivector(W)
                if in_lambda(W, ds):
                    assert is_schubert_decomposable(f, ds)
