import math
from fractions import Fraction

import pytest
import sympy
from hypothesis import given, settings
from hypothesis import strategies as st

from curveheights.heights import height_vector
from curveheights.reals import hi, lo, mid
from curveheights.siegel import (
    integer_kernel,
    orthogonal_complement,
    plucker_vector,
    small_kernel_vector,
    subspace_height,
)


def close(x, value, tol=1e-12):
    return lo(x) - tol <= value <= hi(x) + tol


def test_subspace_height_examples():
    assert close(subspace_height([[1, 0], [0, 1]]).h_s, 0)
    assert close(subspace_height([[1, 2]]).h_s, 0.5 * math.log(5))
    sh = subspace_height([[1, 0, 1], [0, 1, 1]])
    assert sh.plucker == (1, 1, -1)
    assert close(sh.h_s, 0.5 * math.log(3))


def test_dependent_basis():
    with pytest.raises(ValueError, match="dependent basis"):
        subspace_height([[1, 2], [2, 4]])


def test_complement_examples():
    assert orthogonal_complement([[1, 2]]) == [[2, -1]]
    assert orthogonal_complement([[1, 0], [0, 1]]) == []
    assert close(subspace_height([], 2).h_s, 0)
    assert orthogonal_complement([[1, 0, 1], [0, 1, 1]]) == [[1, 1, -1]]


def test_small_kernel_vector_examples():
    x, rep = small_kernel_vector([[1, 1, 1]])
    assert sum(x) == 0 and max(map(abs, x)) == 1
    assert close(rep.h_p, 0) and close(rep.bound, 0.75 * math.log(3)) and rep.holds
    x, rep = small_kernel_vector([[1, -1]])
    assert x == [1, 1] and close(rep.bound, math.log(2)) and rep.holds
    x, rep = small_kernel_vector([[1, 2, 3], [3, 2, 1]])
    assert x == [1, -2, 1]
    assert close(rep.h_p, math.log(2))
    assert close(rep.bound, 2 * math.log(3) + 1.5 * math.log(3)) and rep.holds


def test_small_kernel_vector_errors():
    with pytest.raises(ValueError, match="fewer forms"):
        small_kernel_vector([[1, 0], [0, 1]])
    with pytest.raises(ValueError, match="zero linear form"):
        small_kernel_vector([[0, 0, 0]])


def _rank(rows):
    return sympy.Matrix(rows).rank()


vectors6 = st.lists(st.integers(-5, 5), min_size=6, max_size=6)


@settings(max_examples=60, deadline=None)
@given(st.lists(vectors6, min_size=1, max_size=4))
def test_complement_height_and_hadamard(rows):
    if _rank(rows) != len(rows):
        return
    W = subspace_height(rows)
    perp = orthogonal_complement(rows)
    assert len(perp) == 6 - len(rows)
    assert all(sum(a * b for a, b in zip(u, v)) == 0 for u in rows for v in perp)
    Wp = subspace_height(perp, 6)
    assert abs(mid(W.h_s) - mid(Wp.h_s)) < 1e-12
    assert lo(W.h_s) <= sum(hi(height_vector(v, "euclidean")) for v in rows) + 1e-12


@settings(max_examples=40, deadline=None)
@given(st.lists(vectors6, min_size=2, max_size=3), st.lists(st.integers(-3, 3), min_size=9, max_size=9))
def test_plucker_basis_invariance(rows, mix):
    k = len(rows)
    if _rank(rows) != k:
        return
    T = [mix[i * 3 : i * 3 + k] for i in range(k)]
    if sympy.Matrix(T).det() == 0:
        return
    other = [[sum(T[i][j] * rows[j][c] for j in range(k)) for c in range(6)] for i in range(k)]
    assert plucker_vector(rows) == plucker_vector(other)


def test_integer_kernel_is_saturated():
    # kernel of (2, 4) over Z is spanned by (2, -1), not (4, -2)
    assert [abs(x) for x in integer_kernel([[2, 4]])[0]] == [2, 1]


@settings(max_examples=60, deadline=None)
@given(st.integers(1, 3), st.integers(0, 3), st.data())
def test_kernel_vector_meets_bound(m, extra, data):
    n = m + 1 + extra
    rows = [data.draw(st.lists(st.fractions(min_value=-9, max_value=9, max_denominator=5), min_size=n, max_size=n)) for _ in range(m)]
    if any(not any(r) for r in rows):
        return
    x, rep = small_kernel_vector(rows)
    assert any(x)
    assert all(sum(Fraction(a) * b for a, b in zip(r, x)) == 0 for r in rows)
    assert rep.holds
