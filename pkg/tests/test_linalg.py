from fractions import Fraction

import sympy
from hypothesis import given, settings
from hypothesis import strategies as st

from n2kit import linalg

small = st.integers(-4, 4).map(Fraction) | st.fractions(min_value=-3, max_value=3, max_denominator=5)


@st.composite
def matrices(draw):
    rows = draw(st.integers(0, 6))
    cols = draw(st.integers(1, 6))
    return [[draw(small) for _ in range(cols)] for _ in range(rows)], cols


@settings(max_examples=300, deadline=None)
@given(matrices())
def test_rank_matches_sympy(mc):
    A, n = mc
    expected = sympy.Matrix(A).rank() if A else 0
    assert linalg.rank(A, n) == expected


@settings(max_examples=300, deadline=None)
@given(matrices())
def test_nullspace_is_a_kernel_basis(mc):
    A, n = mc
    basis = linalg.nullspace(A, n)
    r = linalg.rank(A, n) if A else 0
    assert len(basis) == n - r
    for v in basis:
        for row in A:
            assert sum(x * y for x, y in zip(row, v)) == 0
    if basis:
        assert linalg.rank(basis, n) == len(basis)


@settings(max_examples=200, deadline=None)
@given(matrices())
def test_rref_is_canonical_and_reduces(mc):
    A, n = mc
    red, piv = linalg.rref(A, n)
    for i, (row, p) in enumerate(zip(red, piv)):
        assert row[p] == 1
        assert all(red[k][p] == 0 for k in range(len(red)) if k != i)
    for row in A:
        assert not any(linalg.reduce_against(row, red, piv))


def test_pivot_prefers_small_entries():
    ech, piv = linalg.bareiss_echelon([[6, 1], [2, 1]], 2)
    assert piv == [0, 1]
    assert ech[0] == [2, 1]


def test_known_nullspace():
    A = [[1, 2, 3], [2, 4, 6]]
    assert linalg.nullspace(A, 3) == [
        [Fraction(-2), Fraction(1), Fraction(0)],
        [Fraction(-3), Fraction(0), Fraction(1)],
    ]
    assert linalg.nullspace([], 2) == [[1, 0], [0, 1]]
