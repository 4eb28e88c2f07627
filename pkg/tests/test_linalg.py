import random
from fractions import Fraction

import pytest
import sympy
from hypothesis import given, settings
from hypothesis import strategies as st

from tempered.linalg import ComplexError, RatMatrix, cohomology_dims, homology_dims, rank, stack


def test_rank_examples():
    assert rank(RatMatrix(3, 4)) == 0
    assert rank(RatMatrix.identity(3)) == 3
    assert rank(RatMatrix.from_dense([[1, 2], [2, 4]])) == 1


small = st.integers(-3, 3)


@st.composite
def matrices(draw):
    r = draw(st.integers(0, 6))
    c = draw(st.integers(0, 6))
    data = [[Fraction(draw(small), draw(st.integers(1, 3))) for _ in range(c)] for _ in range(r)]
    return RatMatrix(r, c, {(i, j): v for i, row in enumerate(data) for j, v in enumerate(row)})


@settings(max_examples=150, deadline=None)
@given(matrices())
def test_rank_matches_sympy_and_transpose(m):
    oracle = sympy.Matrix(m.rows, m.cols, lambda i, j: sympy.Rational(str(m.entries.get((i, j), 0))))
    assert rank(m) == (oracle.rank() if m.rows and m.cols else 0)
    assert rank(m) == rank(m.transpose())


def test_rank_subadditive_under_stacking():
    rng = random.Random(3)
    for _ in range(50):
        a = RatMatrix.from_dense([[rng.randint(-2, 2) for _ in range(5)] for _ in range(3)])
        b = RatMatrix.from_dense([[rng.randint(-2, 2) for _ in range(5)] for _ in range(2)])
        assert max(rank(a), rank(b)) <= rank(stack([a, b])) <= rank(a) + rank(b)


def test_homology_examples():
    assert homology_dims([RatMatrix(0, 1)]) == [1]
    assert homology_dims([RatMatrix(0, 1), RatMatrix.identity(1)]) == [0, 0]
    # triangle boundary: vertices 0,1,2, edges 01, 02, 12 with d(ab) = b - a
    d1 = RatMatrix.from_dense([[-1, -1, 0], [1, 0, -1], [0, 1, 1]])
    assert homology_dims([RatMatrix(0, 3), d1]) == [1, 1]


def test_homology_rejects_broken_complex():
    with pytest.raises(ComplexError):
        homology_dims([RatMatrix(0, 1), RatMatrix(2, 1)])
    d1 = RatMatrix.from_dense([[1, 0], [0, 1]])
    d2 = RatMatrix.from_dense([[1], [1]])
    with pytest.raises(ComplexError):
        homology_dims([RatMatrix(0, 2), d1, d2])


def test_cohomology_dims():
    # 0 -> Q --0--> Q^2 -> 0
    assert cohomology_dims([RatMatrix(2, 1), RatMatrix(0, 2), RatMatrix(0, 0)]) == [1, 2, 0]
    assert cohomology_dims([RatMatrix.identity(1), RatMatrix(0, 1)]) == [0, 0]
