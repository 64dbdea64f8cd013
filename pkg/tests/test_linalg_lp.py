from fractions import Fraction

import numpy as np
from hypothesis import given, strategies as st

from degen.linalg import SpanBasis, nullspace, rank, rref, solve
from degen.lp import INFEASIBLE, OPTIMAL, UNBOUNDED, maximize

small = st.integers(-3, 3)
matrices = st.integers(1, 5).flatmap(
    lambda c: st.lists(st.lists(small, min_size=c, max_size=c), min_size=1, max_size=5)
)


@given(matrices)
def test_rank_matches_numpy(m):
    assert rank(m) == np.linalg.matrix_rank(np.array(m, dtype=float))


@given(matrices)
def test_nullspace_is_kernel(m):
    ncols = len(m[0])
    ker = nullspace(m, ncols)
    assert len(ker) == ncols - rank(m)
    for v in ker:
        assert all(sum(Fraction(a) * x for a, x in zip(row, v)) == 0 for row in m)


def test_rref_and_solve():
    red, piv = rref([[2, 4], [1, 3]])
    assert piv == [0, 1] and red == [[1, 0], [0, 1]]
    assert solve([[2, 1], [1, 3]], [3, 5]) == [Fraction(4, 5), Fraction(7, 5)]
    assert solve([[1, 1], [2, 2]], [1, 3]) is None


@given(st.lists(st.dictionaries(st.sampled_from("abcde"), small, max_size=5), max_size=8))
def test_span_basis_dimension(vecs):
    sb = SpanBasis()
    for v in vecs:
        sb.add(v)
    dense = [[v.get(k, 0) for k in "abcde"] for v in vecs] or [[0] * 5]
    assert len(sb) == rank(dense)
    assert all(sb.contains(v) for v in vecs)


def test_lp_basic():
    r = maximize([1, 1], [[1, 2], [3, 1]], [4, 6])
    assert r.status == OPTIMAL and r.value == Fraction(14, 5)
    assert maximize([1], [[-1]], [-1], [[1]], [0]).status == INFEASIBLE
    assert maximize([1, 0], [[0, 1]], [1]).status == UNBOUNDED


@given(st.lists(st.lists(st.integers(0, 4), min_size=2, max_size=2), min_size=1, max_size=4), st.lists(st.integers(1, 6), min_size=4, max_size=4))
def test_lp_optimum_is_feasible_and_beats_vertices(a, b):
    b = b[: len(a)] + [6]
    a = a + [[1, 1]]
    r = maximize([1, 2], a, b)
    assert r.status == OPTIMAL
    x = r.x
    assert all(v >= 0 for v in x)
    assert all(sum(p * q for p, q in zip(row, x)) <= rhs for row, rhs in zip(a, b))
    # integer grid points never beat the optimum
    for i in range(7):
        for j in range(7):
            if all(row[0] * i + row[1] * j <= rhs for row, rhs in zip(a, b)):
                assert i + 2 * j <= r.value
