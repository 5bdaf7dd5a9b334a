import random
from fractions import Fraction

import pytest
from hypothesis import assume, given, strategies as st

from coexpand.complexes import boundary_matrix, coboundary_matrix
from coexpand.errors import (DomainError, Infeasible, NegativeInput, NoIntegerSolution,
                             NotCertified, NotExact, NotTU, SizeGuard, ZeroMap, ZeroVector)
from coexpand.expansion import (L1Problem, check_certificate, combine_constants, exact_round,
                                image_circuits, is_exact, l1_min_int, l1_min_real, tu_round,
                                waist_constant, xi_int_at, xi_int_global, xi_int_probe,
                                xi_real_at, xi_real_global)
from coexpand.library import NAMED, cycle_graph, triangle
from coexpand.linalg_exact import Matrix, l1_norm, rank

import oracles

A12 = Matrix.from_rows([[1, 2]])


@st.composite
def problems(draw, max_rows=3, max_cols=4):
    r, c = draw(st.integers(1, max_rows)), draw(st.integers(1, max_cols))
    rows = [draw(st.lists(st.integers(-3, 3), min_size=c, max_size=c)) for _ in range(r)]
    A = Matrix.from_rows(rows)
    x = draw(st.lists(st.integers(-2, 2), min_size=c, max_size=c))
    v = A.apply(x)
    assume(any(v))
    return A, v


def signed_permutation(rng, A):
    rows, cols = list(range(A.rows)), list(range(A.cols))
    rng.shuffle(rows)
    rng.shuffle(cols)
    P = A.permute(rows, cols).scale_rows([rng.choice((-1, 1)) for _ in rows])
    return P.scale_columns([rng.choice((-1, 1)) for _ in cols]), rows


# ---------------------------------------------------------------- minimizers

def test_l1_real_example():
    res = l1_min_real(L1Problem(A12, (1,)))
    assert res.value == Fraction(1, 2) and res.minimizer == (0, Fraction(1, 2))
    assert check_certificate(A12, (1,), res.minimizer, res.certificate["dual"])


def test_l1_int_example():
    res = l1_min_int(L1Problem(A12, (1,)))
    assert res.value == 1 and res.minimizer == (1, 0)


def test_identity_minimizers():
    I = Matrix.identity(3)
    assert l1_min_real(L1Problem(I, (2, -1, 0))).value == 3
    assert l1_min_int(L1Problem(I, (2, -1, 0))).value == 3


def test_triangle_coboundary_indicator():
    d0 = coboundary_matrix(triangle(), 0)
    v = d0.apply((1, 0, 0))
    assert l1_min_real(L1Problem(d0, v)).value == 1


def test_minimizer_errors():
    with pytest.raises(NoIntegerSolution):
        l1_min_int(L1Problem(Matrix.from_rows([[2]]), (1,)))
    with pytest.raises(Infeasible):
        l1_min_real(L1Problem(Matrix.from_rows([[1], [1]]), (1, 2)))
    with pytest.raises(Infeasible):
        l1_min_int(L1Problem(Matrix.from_rows([[1], [1]]), (1, 2)))


@given(problems())
def test_real_minimum_matches_basic_solutions(p):
    A, v = p
    res = l1_min_real(L1Problem(A, v))
    assert res.value == oracles.l1_min_basic(A, v)
    assert A.apply(res.minimizer) == v
    assert check_certificate(A, v, res.minimizer, res.certificate["dual"])


@given(problems(max_rows=2, max_cols=3))
def test_integer_minimum_matches_lattice(p):
    A, v = p
    res = l1_min_int(L1Problem(A, v))
    assert res.value == oracles.l1_min_lattice(A, v)
    assert A.apply(res.minimizer) == v and all(isinstance(x, int) for x in res.minimizer)


def test_certificate_rejects_bad_dual():
    assert not check_certificate(A12, (1,), (1, 0), (1,))  # |A^T y| = 2 > 1


# ---------------------------------------------------------------- pointwise constants

def test_identity_pointwise():
    I = Matrix.identity(2)
    assert xi_real_at(I, (3, -1)) == 1 == xi_int_at(I, (3, -1))


def test_zero_vector():
    with pytest.raises(ZeroVector):
        xi_real_at(A12, (0,))
    with pytest.raises(ZeroVector):
        xi_int_at(A12, (0,))


@given(problems())
def test_real_at_most_integer(p):
    A, v = p
    r, z = xi_real_at(A, v), xi_int_at(A, v)
    assert r <= z
    if rank(A) == A.cols:
        assert r == z


@given(problems(), st.fractions(min_value=-5, max_value=5, max_denominator=4))
def test_scale_invariance(p, beta):
    A, v = p
    assume(beta != 0)
    assert xi_real_at(A, tuple(beta * x for x in v)) == xi_real_at(A, v)


# ---------------------------------------------------------------- global constants

def test_global_examples():
    res = xi_real_global(A12)
    assert res.value == Fraction(1, 2) and res.witness == (1,)
    assert xi_real_global(Matrix.identity(4)).value == 1
    d0 = coboundary_matrix(cycle_graph(3), 0)
    assert xi_real_global(d0).value == oracles.xi_real_oracle(d0)


def test_zero_map():
    with pytest.raises(ZeroMap):
        xi_real_global(Matrix.zeros(2, 2))
    with pytest.raises(ZeroMap):
        xi_int_probe(Matrix.zeros(2, 2), 1)


@given(problems(max_rows=4, max_cols=4))
def test_global_matches_oracle_and_dominates(p):
    A, v = p
    res = xi_real_global(A)
    assert res.value == oracles.xi_real_oracle(A)
    assert xi_real_at(A, v) <= res.value
    assert xi_real_at(A, res.witness) == res.value


def test_circuits_are_minimal_support():
    A = boundary_matrix(NAMED["delta3"](), 2)
    circuits = image_circuits(A)
    want = {tuple(x) for x in oracles.image_vertices(A)}
    norm = lambda w: tuple(Fraction(x) / next(y for y in w if y) for x in w)
    assert {norm(c) for c in circuits} == {norm(w) for w in want}


def test_basis_invariance():
    rng = random.Random(3)
    for A in (A12, boundary_matrix(NAMED["delta3"](), 2), coboundary_matrix(cycle_graph(4), 0)):
        base = xi_real_global(A).value
        for _ in range(3):
            P, _ = signed_permutation(rng, A)
            assert xi_real_global(P).value == base


def test_global_guard(monkeypatch):
    monkeypatch.setenv("COEXPAND_SIZE_GUARD", "enum=2")
    with pytest.raises(SizeGuard):
        xi_real_global(boundary_matrix(NAMED["delta3"](), 2))


def test_probe_examples():
    assert xi_int_probe(A12, 3).value == 1
    assert xi_int_probe(Matrix.identity(2), 2).value == 1
    d0 = coboundary_matrix(NAMED["delta3"](), 0)
    assert xi_int_probe(d0, 2).value == xi_real_global(d0).value
    with pytest.raises(DomainError):
        xi_int_probe(A12, 0)


def test_probe_guard():
    with pytest.raises(SizeGuard):
        xi_int_probe(Matrix.identity(6), 3, guard=100)


def test_integer_global_certification():
    d0 = coboundary_matrix(NAMED["delta3"](), 0)
    assert xi_int_global(d0).value == xi_real_global(d0).value
    d1 = coboundary_matrix(NAMED["rp2"](), 1)  # not TU, but exact after TU d^0
    res = xi_int_global(d1, coboundary_matrix(NAMED["rp2"](), 0))
    assert res.value == xi_real_global(d1).value
    with pytest.raises(NotCertified):
        xi_int_global(A12)
    with pytest.raises(NotCertified):
        xi_int_global(A12, Matrix.from_rows([[-2], [1]]))


# ---------------------------------------------------------------- rounding

def test_tu_round_identity():
    I = Matrix.identity(3)
    assert tu_round(I, (1, -2, 0), (1, -2, 0)) == (1, -2, 0)


@given(st.integers(3, 6), st.data())
def test_tu_round_cycle(n, data):
    d0 = coboundary_matrix(cycle_graph(n), 0)
    f = data.draw(st.lists(st.integers(-2, 2), min_size=n, max_size=n))
    v = d0.apply(f)
    assume(any(v))
    lp = l1_min_real(L1Problem(d0, v))
    u1 = tu_round(d0, v, lp.minimizer)
    assert d0.apply(u1) == v
    assert l1_norm(u1) == lp.value == l1_min_int(L1Problem(d0, v)).value
    assert all(x == 0 or (x > 0) == (y > 0) for x, y in zip(u1, lp.minimizer))


def test_tu_round_boundary_of_sphere():
    A = boundary_matrix(NAMED["delta3"](), 2)  # TU: a closed orientable surface
    rng = random.Random(1)
    for _ in range(10):
        v = A.apply([rng.randint(-2, 2) for _ in range(A.cols)])
        if not any(v):
            continue
        lp = l1_min_real(L1Problem(A, v))
        u1 = tu_round(A, v, lp.minimizer)
        assert l1_norm(u1) == lp.value == l1_min_int(L1Problem(A, v)).value


def test_exact_round_sphere():
    X = NAMED["delta3"]()
    A, B = coboundary_matrix(X, 0), coboundary_matrix(X, 1)
    assert is_exact(A, B)
    rng = random.Random(2)
    for _ in range(10):
        g = [rng.randint(-2, 2) for _ in range(B.cols)]
        w = B.apply(g)
        if not any(w):
            continue
        v0 = l1_min_real(L1Problem(B, w)).minimizer
        v2 = exact_round(A, B, w, v0, g)
        assert B.apply(v2) == w and l1_norm(v2) == l1_norm(v0)
        assert l1_norm(v2) == l1_min_int(L1Problem(B, w)).value


def test_exact_round_trivial_and_errors():
    X = NAMED["delta3"]()
    A, B = coboundary_matrix(X, 0), coboundary_matrix(X, 1)
    zero = (0,) * B.cols
    assert exact_round(A, B, (0,) * B.rows, zero, zero) == zero
    with pytest.raises(NotTU):
        exact_round(Matrix.from_rows([[-2], [1]]), A12, (1,), (0, Fraction(1, 2)), (1, 0))
    T = NAMED["torus"]()
    with pytest.raises(NotExact):  # H^1 of the torus is nonzero
        tA, tB = coboundary_matrix(T, 0), coboundary_matrix(T, 1)
        exact_round(tA, tB, (0,) * tB.rows, (0,) * tB.cols, (0,) * tB.cols)


# ---------------------------------------------------------------- constant formulas

def test_waist_constant():
    assert waist_constant(0) == 1
    assert waist_constant(1) == Fraction(1, 16)
    assert waist_constant(Fraction(1, 2)) == Fraction(2, 11)
    with pytest.raises(NegativeInput):
        waist_constant(-1)


def test_combine_constants():
    assert combine_constants(1, 1, 1, 2) == 2
    assert combine_constants(0, 7, 3, 5) == 9
    assert combine_constants(Fraction(1, 2), 1, 2, 3) == 5
    assert combine_constants(1, 2, 1, 1) == 5  # (1*2^2 + 1)*1
    with pytest.raises(DomainError):
        combine_constants(1, Fraction(1, 2), 1, 2)
    with pytest.raises(DomainError):
        combine_constants(1, 1, 0, 2)


@given(st.fractions(min_value=0, max_value=10, max_denominator=7))
def test_waist_is_decreasing_and_positive(C):
    w = waist_constant(C)
    assert 0 < w <= 1
    assert waist_constant(C + 1) < w
