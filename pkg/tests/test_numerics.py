import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from sspace.config import DEFAULT, DiffConfig
from sspace.errors import RankDeficient
from sspace.numerics import differential, matrix_exp, numerical_rank, solve_least_squares


def test_differential_matches_hand_jacobian():
    # f(x, y) = (x^2, y); at (3, 5) the Jacobian is [[6, 0], [0, 1]]
    def f(v):
        return np.array([v[0] ** 2, v[1]])

    jac = differential(f, np.array([3.0, 5.0]))
    assert np.allclose(jac, np.array([[6.0, 0.0], [0.0, 1.0]]), atol=1e-6)


@settings(max_examples=25, deadline=None)
@given(
    st.lists(st.floats(-2.0, 2.0), min_size=3, max_size=3),
    st.lists(st.floats(-1.0, 1.0), min_size=3, max_size=3),
)
def test_differential_linear_maps_are_exactish(base_point, row):
    a = np.array([row, [0.5, -1.0, 0.25], [1.0, 1.0, 1.0]])

    def f(v):
        return a @ v

    jac = differential(f, np.array(base_point))
    assert np.allclose(jac, a, atol=1e-7)


def test_solve_least_squares_exact_system():
    a = np.array([[2.0, 0.0], [0.0, 4.0], [1.0, 1.0]])
    x = np.array([[1.0], [-2.0]])
    res = solve_least_squares(a, a @ x)
    assert np.allclose(res.solution, x, atol=1e-12)
    assert res.residual < 1e-12
    assert res.rank == 2


def test_solve_least_squares_rejects_rank_deficient():
    a = np.array([[1.0, 2.0], [2.0, 4.0]])
    with pytest.raises(RankDeficient):
        solve_least_squares(a, np.array([1.0, 0.0]))


def test_numerical_rank():
    assert numerical_rank(np.diag([3.0, 1e-3, 0.0])) == 2
    assert numerical_rank(np.zeros((3, 3))) == 0
    assert numerical_rank(np.eye(4)) == 4


def test_matrix_exp_of_skew_is_orthogonal():
    x = np.array([[0.0, -0.7], [0.7, 0.0]])
    e = matrix_exp(x)
    assert np.allclose(e.T @ e, np.eye(2), atol=1e-12)
    assert np.allclose(e, [[np.cos(0.7), -np.sin(0.7)], [np.sin(0.7), np.cos(0.7)]], atol=1e-12)


def test_config_validation():
    with pytest.raises(ValueError):
        DiffConfig(step=0.5)
    with pytest.raises(ValueError):
        DiffConfig(tol=1e-18)
    assert DEFAULT.tol == 1e-7
