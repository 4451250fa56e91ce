"""Exact integer counting formulas (Python ints, no overflow)."""

from __future__ import annotations

from fractions import Fraction
from math import comb


def gauss_binom(n: int, k: int, q: int) -> int:
    """Gaussian binomial coefficient: number of k-subspaces of GF(q)^n."""
    if k < 0 or k > n:
        return 0
    num = den = 1
    for i in range(k):
        num *= q ** (n - i) - 1
        den *= q ** (i + 1) - 1
    return num // den


def binom(n: int, k: int) -> int:
    """Binomial coefficient, zero outside 0 <= k <= n (including n < 0)."""
    if k < 0 or n < 0 or k > n:
        return 0
    return comb(n, k)


def int_det(rows: list[list[int]]) -> int:
    """Exact determinant of an integer matrix."""
    A = [[Fraction(x) for x in row] for row in rows]
    n = len(A)
    result = Fraction(1)
    for c in range(n):
        piv = next((i for i in range(c, n) if A[i][c] != 0), None)
        if piv is None:
            return 0
        if piv != c:
            A[c], A[piv] = A[piv], A[c]
            result = -result
        result *= A[c][c]
        for i in range(c + 1, n):
            if A[i][c]:
                f = A[i][c] / A[c][c]
                A[i] = [a - f * b for a, b in zip(A[i], A[c])]
    assert result.denominator == 1
    return int(result)
