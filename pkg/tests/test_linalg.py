from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from reflectum.hopf import Algebra
from reflectum.linalg import (
    LegMismatch,
    Matrix,
    MultiLegElement,
    NoSolution,
    determinant,
    diff_witness,
    embed_legs,
    format_scalar,
    invert_matrix,
    nullspace,
    parse_scalar,
    rank,
    solve_linear,
    solve_sparse,
)

small = st.integers(-3, 3)


def square(n):
    return st.lists(st.lists(small, min_size=n, max_size=n), min_size=n, max_size=n)


def test_scalar_round_trip():
    assert parse_scalar("3/6") == Fraction(1, 2)
    assert parse_scalar("4/2") == 2 and isinstance(parse_scalar("4/2"), int)
    assert format_scalar(Fraction(-2, 4)) == "-1/2"
    for bad in ("0.5", "1e3", ""):
        with pytest.raises(ValueError):
            parse_scalar(bad)
    with pytest.raises(TypeError):
        parse_scalar(0.5)
    with pytest.raises(TypeError):
        parse_scalar(True)


def test_matrix_basics():
    A = Matrix.from_rows([[1, 2], [3, 4]])
    assert A[0, 1] == 2 and A.to_rows() == [[1, 2], [3, 4]]
    assert (A @ Matrix.identity(2)) == A
    assert A.transpose().to_rows() == [[1, 3], [2, 4]]
    assert A.trace() == 5
    assert determinant(A) == -2
    assert Matrix.from_json(A.to_json()) == A


def test_kron_left_factor_is_slow_index():
    A = Matrix.from_rows([[0, 1], [1, 0]])
    B = Matrix.identity(3)
    K = A.kron(B)
    assert K[0 * 3 + 2, 1 * 3 + 2] == 1
    assert K.shape == (6, 6)


def test_singular_and_inconsistent_systems():
    S = Matrix.from_rows([[1, 2], [2, 4]])
    with pytest.raises(Exception):
        invert_matrix(S)
    with pytest.raises(NoSolution):
        solve_sparse([{0: 1}, {0: 1}], [{0: 1}, {0: 2}], 1, 1)
    assert rank([{0: 1, 1: 2}, {0: 2, 1: 4}], 2) == 1
    ns = nullspace([{0: 1, 1: 2}], 2)
    assert len(ns) == 1 and ns[0].get(0, 0) + 2 * ns[0].get(1, 0) == 0


def test_diff_witness_truncates():
    w = diff_witness({i: 1 for i in range(30)}, {})
    assert "more" in w and len(w) == 13


@settings(max_examples=40, deadline=None)
@given(square(3))
def test_inverse_property(rows):
    A = Matrix.from_rows(rows)
    if determinant(A) == 0:
        with pytest.raises(Exception):
            invert_matrix(A)
        return
    Ai = invert_matrix(A)
    assert (A @ Ai).is_identity() and (Ai @ A).is_identity()


@settings(max_examples=40, deadline=None)
@given(square(3), square(3), square(3))
def test_matmul_associative_and_distributive(a, b, c):
    A, B, C = map(Matrix.from_rows, (a, b, c))
    assert (A @ B) @ C == A @ (B @ C)
    assert A @ (B + C) == A @ B + A @ C


@settings(max_examples=30, deadline=None)
@given(square(3), st.lists(small, min_size=3, max_size=3))
def test_solve_linear_consistent(rows, x):
    A = Matrix.from_rows(rows)
    xv = Matrix.from_rows([[v] for v in x])
    b = A @ xv
    sol = solve_linear(A, b)
    assert A @ sol == b


def _poly(n=3):
    """k[x]/(x^n)."""
    table = [[({i + j: 1} if i + j < n else {}) for j in range(n)] for i in range(n)]
    return Algebra(n, table, {0: 1}, name=f"k[x]/x^{n}")


@settings(max_examples=30, deadline=None)
@given(st.dictionaries(st.tuples(st.integers(0, 2), st.integers(0, 2)), small, max_size=5),
       st.dictionaries(st.tuples(st.integers(0, 2), st.integers(0, 2)), small, max_size=5),
       st.dictionaries(st.tuples(st.integers(0, 2), st.integers(0, 2)), small, max_size=5))
def test_leg_multiply_associative(a, b, c):
    A = _poly()
    legs = (A, A)
    x, y, z = (MultiLegElement(legs, d) for d in (a, b, c))
    assert (x * y) * z == x * (y * z)
    one = MultiLegElement.unit(legs)
    assert one * x == x == x * one


def test_embed_and_swap():
    A = _poly()
    x = MultiLegElement((A, A), {(1, 2): 3})
    e = embed_legs(x, (2, 0), (A, A, A))
    assert e.coeffs == {(2, 0, 1): 3}
    assert x.swap((1, 0)).coeffs == {(2, 1): 3}
    B = _poly(2)
    with pytest.raises(LegMismatch):
        embed_legs(x, (0, 1), (A, B))
