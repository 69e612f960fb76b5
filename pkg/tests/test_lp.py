from fractions import Fraction as F

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from scipy.optimize import linprog

from diricci.errors import InfeasibleProblem, UnboundedProblem
from diricci.lp import maximize, minimize


def test_textbook_maximum():
    # max 3x + 5y, x <= 4, 2y <= 12, 3x + 2y <= 18  ->  36 at (2, 6)
    res = maximize([3, 5], A_ub=[[1, 0], [0, 2], [3, 2]], b_ub=[4, 12, 18])
    assert res.value == 36
    assert res.x == (2, 6)
    assert all(isinstance(v, F) for v in res.x + (res.value,))


def test_equality_and_negative_rhs():
    # min x + y, x + 2y = 3, -x <= -1  ->  x = 3, y = 0 or x = 1, y = 1: value 2 at (1, 1)
    res = minimize([1, 1], A_ub=[[-1, 0]], b_ub=[-1], A_eq=[[1, 2]], b_eq=[3])
    assert res.value == 2 and res.x == (1, 1)


def test_fractional_optimum():
    res = minimize([-1, -1], A_ub=[[3, 1], [1, 3]], b_ub=[2, 2])
    assert res.value == -1 and res.x == (F(1, 2), F(1, 2))


def test_redundant_equalities():
    res = minimize([1, 2, 0], A_eq=[[1, 1, 1], [2, 2, 2]], b_eq=[1, 2])
    assert res.value == 0


def test_degenerate_cycling_example():
    # Beale's example cycles under the textbook largest-coefficient rule
    c = [F(-3, 4), 150, F(-1, 50), 6]
    A = [[F(1, 4), -60, F(-1, 25), 9], [F(1, 2), -90, F(-1, 50), 3], [0, 0, 1, 0]]
    res = minimize(c, A_ub=A, b_ub=[0, 0, 1])
    assert res.value == F(-1, 20)


def test_infeasible_and_unbounded():
    with pytest.raises(InfeasibleProblem):
        minimize([1], A_ub=[[1]], b_ub=[-1])
    with pytest.raises(UnboundedProblem):
        minimize([-1, 0], A_ub=[[0, 1]], b_ub=[1])


def test_shape_errors():
    with pytest.raises(ValueError):
        minimize([1, 1], A_ub=[[1]], b_ub=[1])
    with pytest.raises(ValueError):
        minimize([1], A_ub=[[1]], b_ub=[])


coef = st.integers(-4, 4)


@settings(max_examples=60, deadline=None)
@given(
    st.integers(1, 4).flatmap(
        lambda n: st.tuples(
            st.lists(coef, min_size=n, max_size=n),
            st.lists(st.lists(coef, min_size=n, max_size=n), min_size=1, max_size=4),
            st.lists(st.integers(-2, 6), min_size=4, max_size=4),
        )
    )
)
def test_matches_floating_point_solver(problem):
    c, A, b = problem
    b = b[: len(A)]
    # box the variables so the problem is bounded
    n = len(c)
    A = A + [[1 if k == j else 0 for k in range(n)] for j in range(n)]
    b = b + [5] * n
    ref = linprog(c, A_ub=A, b_ub=b, bounds=[(0, None)] * n, method="highs")
    if ref.status == 2:
        with pytest.raises(InfeasibleProblem):
            minimize(c, A_ub=A, b_ub=b)
        return
    assert ref.status == 0
    res = minimize(c, A_ub=A, b_ub=b)
    assert abs(float(res.value) - ref.fun) < 1e-9
    assert sum(ci * xi for ci, xi in zip(c, res.x)) == res.value
    for row, bound in zip(A, b):
        assert sum(a * x for a, x in zip(row, res.x)) <= bound
