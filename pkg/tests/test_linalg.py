from fractions import Fraction

import pytest
import sympy
from hypothesis import given, settings
from hypothesis import strategies as st
from scipy.optimize import linprog

from advicelab.errors import DimensionMismatch, NotStochastic
from advicelab.linalg import (
    basis_extract, check_stochastic, combine, format_rational, identity, mat_mul,
    parse_rational, rank, solve_zero_sum, vec_mat,
)

small = st.fractions(min_value=-3, max_value=3, max_denominator=4)


def test_rational_text_roundtrip():
    assert parse_rational("3/6") == Fraction(1, 2)
    assert parse_rational("-2") == -2
    assert format_rational(Fraction(4, 2)) == "2"
    assert format_rational(Fraction(-1, 3)) == "-1/3"
    for bad in ("0.5", "1e3", 0.5):
        with pytest.raises(ValueError):
            parse_rational(bad)


def test_stochastic_products():
    a = ((Fraction(1, 2), Fraction(1, 2)), (0, 1))
    b = ((0, 1), (1, 0))
    p = mat_mul(check_stochastic(tuple(tuple(map(Fraction, r)) for r in a)), b)
    assert p == ((Fraction(1, 2), Fraction(1, 2)), (1, 0))
    assert vec_mat((1, 0), p) == (Fraction(1, 2), Fraction(1, 2))
    assert mat_mul(identity(2), p) == p
    with pytest.raises(NotStochastic):
        check_stochastic(((Fraction(1, 2), 0),))
    with pytest.raises(DimensionMismatch):
        mat_mul(identity(2), identity(3))


@given(st.integers(1, 5).flatmap(
    lambda d: st.lists(st.lists(small, min_size=d, max_size=d), min_size=1, max_size=7)))
def test_basis_reconstruction_is_exact(vectors):
    basis, coeffs = basis_extract(vectors)
    base = [vectors[i] for i in basis]
    for v, c in zip(vectors, coeffs):
        if base:
            assert combine(c, base) == tuple(Fraction(x) for x in v)
        else:
            assert not any(v)
    # independent oracle: sympy's exact rank
    assert len(basis) == sympy.Matrix(vectors).rank()
    assert rank(base) == len(base)


def test_basis_greedy_order():
    vs = [(1, 0, 0), (2, 0, 0), (0, 1, 0), (1, 1, 0)]
    basis, coeffs = basis_extract(vs)
    assert basis == [0, 2]
    assert coeffs[1] == (2, 0)
    assert coeffs[3] == (1, 1)


def test_zero_sum_known_games():
    s = solve_zero_sum([[1, 0], [0, 1]])
    assert s.value == Fraction(1, 2)
    assert s.row_strategy == (Fraction(1, 2), Fraction(1, 2))
    assert solve_zero_sum([[1, 1], [1, 1]]).value == 1
    rps = [[0, -1, 1], [1, 0, -1], [-1, 1, 0]]
    s = solve_zero_sum(rps)
    assert s.value == 0
    assert s.row_strategy == (Fraction(1, 3),) * 3
    # saddle point
    assert solve_zero_sum([[3, 1], [4, 2]]).value == 2


def _scipy_value(p):
    m, n = len(p), len(p[0])
    # max v s.t. sum_i x_i p[i][j] >= v, sum x = 1
    c = [0.0] * m + [-1.0]
    a_ub = [[-float(p[i][j]) for i in range(m)] + [1.0] for j in range(n)]
    res = linprog(c, A_ub=a_ub, b_ub=[0.0] * n, A_eq=[[1.0] * m + [0.0]], b_eq=[1.0],
                  bounds=[(0, None)] * m + [(None, None)])
    return -res.fun


@settings(max_examples=60, deadline=None)
@given(st.integers(1, 5).flatmap(lambda m: st.integers(1, 5).flatmap(
    lambda n: st.lists(st.lists(small, min_size=n, max_size=n), min_size=m, max_size=m))))
def test_zero_sum_guarantees_and_float_oracle(p):
    s = solve_zero_sum(p)
    assert sum(s.row_strategy) == 1 and sum(s.col_strategy) == 1
    assert min(s.row_strategy) >= 0 and min(s.col_strategy) >= 0
    assert s.row_guarantee(p) == s.value == s.col_guarantee(p)
    assert abs(float(s.value) - _scipy_value(p)) < 1e-7
