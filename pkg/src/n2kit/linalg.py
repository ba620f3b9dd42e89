"""Exact linear algebra over the rationals.

Row reduction is fraction-free (Bareiss): rows are cleared of denominators,
eliminated over the integers with exact divisions by the previous pivot, and
only the final echelon form is normalised back to rationals.  Pivot choice is
deterministic: leftmost column first, then the row whose entry has the
smallest absolute value (ties broken by row order).
"""

from __future__ import annotations

from fractions import Fraction
from math import lcm
from typing import List, Sequence, Tuple

Matrix = List[List[Fraction]]


def _integer_rows(rows: Sequence[Sequence]) -> List[List[int]]:
    out = []
    for row in rows:
        den = 1
        for x in row:
            if x:
                den = lcm(den, Fraction(x).denominator)
        out.append([int(Fraction(x) * den) for x in row])
    return out


def bareiss_echelon(rows: Sequence[Sequence], ncols: int) -> Tuple[List[List[int]], List[int]]:
    """Integer row-echelon form of ``rows`` and its pivot columns.

    Zero rows are dropped from the result.
    """
    m = _integer_rows(rows)
    for r in m:
        if len(r) != ncols:
            raise ValueError("ragged matrix")
    pivots: List[int] = []
    prev = 1
    k = 0
    for col in range(ncols):
        if k == len(m):
            break
        best = None
        for i in range(k, len(m)):
            v = m[i][col]
            if v and (best is None or abs(v) < abs(m[best][col])):
                best = i
        if best is None:
            continue
        m[k], m[best] = m[best], m[k]
        piv_row = m[k]
        p = piv_row[col]
        for i in range(k + 1, len(m)):
            row = m[i]
            a = row[col]
            new = [0] * ncols
            for j in range(col, ncols):
                num = p * row[j] - a * piv_row[j]
                q, rem = divmod(num, prev)
                if rem:
                    raise ArithmeticError("Bareiss division was not exact")
                new[j] = q
            m[i] = new
        prev = p
        pivots.append(col)
        k += 1
    return m[:k], pivots


def rref(rows: Sequence[Sequence], ncols: int) -> Tuple[Matrix, List[int]]:
    """Reduced row-echelon basis of the row space, with pivot columns."""
    ech, pivots = bareiss_echelon(rows, ncols)
    out: Matrix = []
    for row, col in zip(ech, pivots):
        p = row[col]
        out.append([Fraction(x, p) for x in row])
    # back substitution: clear entries above each pivot
    for idx in range(len(out) - 1, -1, -1):
        col = pivots[idx]
        prow = out[idx]
        for above in range(idx):
            f = out[above][col]
            if f:
                r = out[above]
                out[above] = [x - f * y for x, y in zip(r, prow)]
    return out, pivots


def rank(rows: Sequence[Sequence], ncols: int) -> int:
    return len(bareiss_echelon(rows, ncols)[1])


def nullspace(rows: Sequence[Sequence], ncols: int) -> Matrix:
    """Basis of ``{x : A x = 0}``, one vector per free column.

    Each basis vector has a 1 at its free column and 0 at every other free
    column, which makes the basis canonical for a given matrix.
    """
    red, pivots = rref(rows, ncols) if rows else ([], [])
    pivot_set = set(pivots)
    basis: Matrix = []
    for free in range(ncols):
        if free in pivot_set:
            continue
        vec = [Fraction(0)] * ncols
        vec[free] = Fraction(1)
        for row, col in zip(red, pivots):
            vec[col] = -row[free]
        basis.append(vec)
    return basis


def reduce_against(vec: Sequence[Fraction], red: Matrix, pivots: Sequence[int]) -> List[Fraction]:
    """Canonical coset representative of ``vec`` modulo the row space of ``red``.

    ``red`` must be in reduced row-echelon form; the result has zeros in every
    pivot column.
    """
    out = list(vec)
    for row, col in zip(red, pivots):
        f = out[col]
        if f:
            out = [x - f * y for x, y in zip(out, row)]
    return out
