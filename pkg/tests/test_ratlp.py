import random
from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from lp_oracle import oracle_feasible
from regsep.ratlp import (
    Certificate,
    DimensionMismatch,
    NegativeEntry,
    Solution,
    feasible,
    scale_to_integers,
    simplex_feasible,
    verify_certificate,
    verify_solution,
)

PI3_A = [[1], [-1], [-1], [-1]]
PI3_B = [0, 0, 0, -1]


def random_system(rng, max_rows=5, max_cols=3):
    m = rng.randint(1, max_rows)
    n = rng.randint(1, max_cols)
    A = [[rng.randint(-3, 3) for _ in range(n)] for _ in range(m)]
    b = [rng.choice([0, -1]) for _ in range(m)]
    return A, b, n


def test_feasible_infeasible_example():
    out = feasible(PI3_A, PI3_B)
    assert isinstance(out, Certificate)
    assert verify_certificate(PI3_A, PI3_B, out.y)


def test_feasible_solution_example():
    assert feasible([[-1]], [-1]) == Solution((1,))


def test_feasible_no_rows():
    assert feasible([], [], ncols=3) == Solution((0, 0, 0))


def test_feasible_shape_errors():
    with pytest.raises(DimensionMismatch):
        feasible([[1, 2]], [0, 0])
    with pytest.raises(DimensionMismatch):
        feasible([[1, 2], [1]], [0, 0])


@pytest.mark.parametrize(
    "x, expected",
    [((Fraction(1, 2), Fraction(1, 3)), (3, 2)), ((0, 0), (0, 0)), ((5,), (5,))],
)
def test_scale_to_integers_examples(x, expected):
    assert scale_to_integers(x) == expected


def test_scale_to_integers_negative():
    with pytest.raises(NegativeEntry):
        scale_to_integers((Fraction(-1, 2),))


def test_verify_certificate_examples():
    assert verify_certificate(PI3_A, PI3_B, (1, 0, 0, 1))
    assert not verify_certificate(PI3_A, PI3_B, (0, 0, 0, 0))
    assert not verify_certificate(PI3_A, PI3_B, (1, 0, -1, 1))
    with pytest.raises(DimensionMismatch):
        verify_certificate(PI3_A, PI3_B, (1, 0))


def test_feasible_is_deterministic():
    rng = random.Random(5)
    for _ in range(20):
        A, b, n = random_system(rng)
        assert feasible(A, b, n) == feasible(A, b, n)


def test_exactly_one_branch_against_oracle():
    rng = random.Random(2024)
    for _ in range(200):
        A, b, n = random_system(rng)
        out = feasible(A, b, n)
        if isinstance(out, Solution):
            assert verify_solution(A, b, out.x)
        else:
            assert verify_certificate(A, b, out.y, n)
        assert isinstance(out, Solution) == oracle_feasible(A, b, n)


matrices = st.integers(1, 3).flatmap(
    lambda n: st.tuples(
        st.lists(st.lists(st.integers(-3, 3), min_size=n, max_size=n), min_size=1, max_size=5),
        st.just(n),
    )
)


@given(matrices, st.data())
def test_outcome_verifies_and_matches_oracle(mat, data):
    A, n = mat
    b = data.draw(st.lists(st.sampled_from([0, -1]), min_size=len(A), max_size=len(A)))
    out = feasible(A, b, n)
    if isinstance(out, Solution):
        assert verify_solution(A, b, out.x)
        assert oracle_feasible(A, b, n)
    else:
        assert verify_certificate(A, b, out.y, n)
        assert not oracle_feasible(A, b, n)


@given(matrices, st.data(), st.integers(1, 5))
def test_homogeneous_scaling(mat, data, c):
    A, n = mat
    b = data.draw(st.lists(st.sampled_from([0, -1]), min_size=len(A), max_size=len(A)))
    out = feasible(A, b, n)
    if isinstance(out, Solution):
        cx = [c * v for v in out.x]
        for row, bi in zip(A, b):
            if bi == 0:
                assert sum(a * v for a, v in zip(row, cx)) <= 0


@given(matrices, st.data())
def test_simplex_agrees_with_elimination(mat, data):
    A, n = mat
    b = data.draw(st.lists(st.sampled_from([0, -1, 1]), min_size=len(A), max_size=len(A)))
    x = simplex_feasible(A, b, ncols=n)
    assert (x is not None) == isinstance(feasible(A, b, n), Solution)
    if x is not None:
        assert verify_solution(A, b, x)


def test_simplex_equalities():
    # x + y = 2, x - y <= 0, x >= 1
    x = simplex_feasible([[1, -1], [-1, 0]], [0, -1], [[1, 1]], [2])
    assert x is not None
    assert x[0] + x[1] == 2 and x[0] <= x[1] and x[0] >= 1
    assert simplex_feasible([[1, 0]], [-1], [[1, 1]], [2]) is None
