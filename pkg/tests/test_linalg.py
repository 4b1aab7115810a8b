from fractions import Fraction

import sympy
from hypothesis import given
from hypothesis import strategies as st

from simplecurves.linalg import complete_basis, in_span, nullspace, rank, rref, solve

entries = st.fractions(min_value=-4, max_value=4, max_denominator=3)
matrices = st.integers(1, 5).flatmap(
    lambda c: st.lists(st.lists(entries, min_size=c, max_size=c), min_size=1, max_size=5)
)


@given(matrices)
def test_rank_matches_sympy(m):
    assert rank(m) == sympy.Matrix(m).rank()


@given(matrices)
def test_rank_nullity(m):
    ncols = len(m[0])
    ns = nullspace(m, ncols)
    assert rank(m) + len(ns) == ncols
    for v in ns:
        assert all(sum(a * b for a, b in zip(row, v)) == 0 for row in m)


@given(matrices)
def test_rref_pivots(m):
    red, piv = rref(m)
    assert len(piv) == rank(m)
    for i, p in enumerate(piv):
        assert red[i][p] == 1
        assert all(red[j][p] == 0 for j in range(len(red)) if j != i)


@given(matrices, st.lists(entries, min_size=5, max_size=5))
def test_solve_consistent_systems(m, x):
    x = x[: len(m[0])]
    b = [sum(a * y for a, y in zip(row, x)) for row in m]
    sol = solve(m, b)
    assert sol is not None
    assert [sum(a * y for a, y in zip(row, sol)) for row in m] == b


def test_solve_inconsistent():
    assert solve([[1, 1], [1, 1]], [0, 1]) is None


def test_span_and_completion():
    rows = [[1, 0, 0], [0, 1, 1]]
    assert in_span([2, 3, 3], rows) and not in_span([0, 0, 1], rows)
    full = complete_basis(rows, 3)
    assert rank(full) == 3 and [list(map(Fraction, r)) for r in full[:2]] == [list(map(Fraction, r)) for r in rows]
