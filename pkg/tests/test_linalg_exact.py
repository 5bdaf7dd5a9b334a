from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from coexpand.complexes import boundary_matrix, coboundary_matrix
from coexpand.errors import FormatError
from coexpand.library import NAMED, cycle_graph, triangle
from coexpand.linalg_exact import (Matrix, canonical_sign, det, image_basis, integer_solution,
                                   kernel_basis, line_through, minor_det, primitive, rank, rref,
                                   smith_normal_form, solve_rational)

import oracles


def int_matrices(max_rows=4, max_cols=4, lo=-3, hi=3):
    return st.integers(1, max_rows).flatmap(lambda r: st.integers(1, max_cols).flatmap(
        lambda c: st.lists(st.lists(st.integers(lo, hi), min_size=c, max_size=c),
                           min_size=r, max_size=r).map(Matrix.from_rows)))


def square_matrices(max_n=4):
    return st.integers(1, max_n).flatmap(lambda n: st.lists(
        st.lists(st.integers(-4, 4), min_size=n, max_size=n), min_size=n, max_size=n))


# ---------------------------------------------------------------- Matrix basics

def test_matrix_shape_and_products():
    A = Matrix.from_rows([[1, 2], [3, 4], [5, 6]])
    assert A.shape == (3, 2)
    assert A.T.shape == (2, 3)
    assert A[2, 1] == 6
    assert A.apply((1, -1)) == (-1, -1, -1)
    assert (A.T @ A).tolist() == [[35, 44], [44, 56]]
    assert A.col(0) == (1, 3, 5)


def test_matrix_rejects_ragged_rows():
    with pytest.raises(FormatError):
        Matrix.from_rows([[1, 2], [3]])


def test_empty_shapes():
    Z = Matrix.zeros(0, 3)
    assert Z.shape == (0, 3) and rank(Z) == 0
    assert len(kernel_basis(Z)) == 3


def test_primitive_and_canonical_sign():
    assert primitive((Fraction(1, 2), Fraction(-3, 4))) == (2, -3)
    assert canonical_sign((0, -1, 2)) == (0, 1, -2)


# ---------------------------------------------------------------- SNF

def test_snf_identity():
    S = smith_normal_form(Matrix.identity(3)).S
    assert S == Matrix.identity(3)


def test_snf_diag_2_3():
    assert smith_normal_form(Matrix.from_rows([[2, 0], [0, 3]])).diagonal == [1, 6]


def test_snf_triangle_boundary():
    res = smith_normal_form(boundary_matrix(cycle_graph(3), 1))
    assert res.diagonal == [1, 1, 0]


@given(int_matrices())
def test_snf_factorization(M):
    res = smith_normal_form(M)
    assert res.U @ M @ res.V == res.S
    assert abs(det(res.U)) == 1 and abs(det(res.V)) == 1
    d = res.diagonal
    for i in range(len(d)):
        for j in range(len(d)):
            if i != j and (i < res.S.rows and j < res.S.cols):
                assert res.S[i, j] == 0
    nz = [x for x in d if x]
    assert all(x > 0 for x in nz)
    assert all(b % a == 0 for a, b in zip(nz, nz[1:]))
    assert d[:len(nz)] == nz  # nonzero factors come first


@given(int_matrices(3, 4))
def test_snf_matches_determinantal_divisors(M):
    assert smith_normal_form(M).invariant_factors == oracles.invariant_factors(M.tolist())


@given(int_matrices(), st.data())
def test_integer_solution(M, data):
    x = data.draw(st.lists(st.integers(-3, 3), min_size=M.cols, max_size=M.cols))
    v = M.apply(x)
    sol = integer_solution(M, v)
    assert sol is not None and M.apply(sol) == v
    assert all(isinstance(t, int) for t in sol)


def test_integer_solution_parity_obstruction():
    assert integer_solution(Matrix.from_rows([[2]]), (1,)) is None


# ---------------------------------------------------------------- kernel / image / rank

def test_kernel_examples():
    assert kernel_basis(Matrix.identity(2)) == []
    (k,) = kernel_basis(Matrix.from_rows([[1, 2]]))
    assert primitive(k) in ((-2, 1), (2, -1))
    assert len(kernel_basis(boundary_matrix(NAMED["delta3"](), 2))) == 1


def test_image_examples():
    assert image_basis(Matrix.zeros(2, 3)) == []
    assert image_basis(Matrix.from_rows([[1, 2]])) == [(1,)]
    assert len(image_basis(coboundary_matrix(triangle(), 0))) == 2


@given(int_matrices())
def test_rank_nullity_and_kernel(M):
    K = kernel_basis(M)
    assert rank(M) == oracles.rank_q(M.tolist())
    assert rank(M) + len(K) == M.cols
    for k in K:
        assert not any(M.apply(k))


@given(int_matrices())
def test_rref_is_reduced(M):
    R, pivots = rref(M)
    for i, p in enumerate(pivots):
        assert R[i][p] == 1
        assert all(R[r][p] == 0 for r in range(len(R)) if r != i)
    assert len(pivots) == rank(M)


@given(int_matrices(), st.data())
def test_solve_rational(M, data):
    x = data.draw(st.lists(st.integers(-3, 3), min_size=M.cols, max_size=M.cols))
    v = M.apply(x)
    y = solve_rational(M, v)
    assert y is not None and M.apply(y) == v


# ---------------------------------------------------------------- determinants

def test_minor_examples():
    assert minor_det(Matrix.identity(3), [0], [0]) == 1
    assert minor_det(Matrix.from_rows([[1, 2]]), [0], [1]) == 2
    assert det(Matrix.from_rows([[1, 1], [-1, 1]])) == 2


def test_minor_index_errors():
    A = Matrix.identity(2)
    with pytest.raises(IndexError):
        minor_det(A, [0, 1], [0])
    with pytest.raises(IndexError):
        minor_det(A, [2], [0])


@given(square_matrices())
def test_det_matches_cofactor(rows):
    assert det(Matrix.from_rows(rows)) == oracles.cofactor_det(rows)


@given(st.integers(1, 4).flatmap(lambda r: st.lists(
    st.lists(st.integers(-3, 3), min_size=r, max_size=r), min_size=r - 1, max_size=r - 1)
    .map(lambda rows: Matrix.from_rows(rows, cols=r))))
def test_line_through_is_orthogonal(M):
    w = line_through(M)
    if w is None:
        assert rank(M) != M.cols - 1
    else:
        assert any(w) and not any(M.apply(w))


def test_line_through_shape():
    with pytest.raises(FormatError):
        line_through(Matrix.identity(2))
