"""Small exact integer linear algebra: determinants, rank, kernels.

Used for Alexander determinant evaluation (fraction-free Bareiss at
integer points), abelianization rank checks, and periodic-domain kernel
computations.  All arithmetic is exact; matrices are lists of lists of
Python ints or Fractions.
"""
from __future__ import annotations

from fractions import Fraction


def bareiss_det(matrix: list[list[int]]) -> int:
    """Fraction-free determinant of an integer matrix (0x0 gives 1)."""
    n = len(matrix)
    if n == 0:
        return 1
    m = [row[:] for row in matrix]
    sign = 1
    prev = 1
    for k in range(n - 1):
        if m[k][k] == 0:
            for i in range(k + 1, n):
                if m[i][k] != 0:
                    m[k], m[i] = m[i], m[k]
                    sign = -sign
                    break
            else:
                return 0
        pivot = m[k][k]
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                m[i][j] = (m[i][j] * pivot - m[i][k] * m[k][j]) // prev
            m[i][k] = 0
        prev = pivot
    return sign * m[n - 1][n - 1]


def rational_rref(matrix: list[list[Fraction]]) -> tuple[list[list[Fraction]], list[int]]:
    """Reduced row echelon form over Q; returns (rref, pivot columns)."""
    m = [[Fraction(x) for x in row] for row in matrix]
    rows = len(m)
    cols = len(m[0]) if rows else 0
    pivots = []
    r = 0
    for c in range(cols):
        pivot_row = None
        for i in range(r, rows):
            if m[i][c] != 0:
                pivot_row = i
                break
        if pivot_row is None:
            continue
        m[r], m[pivot_row] = m[pivot_row], m[r]
        pv = m[r][c]
        m[r] = [x / pv for x in m[r]]
        for i in range(rows):
            if i != r and m[i][c] != 0:
                f = m[i][c]
                m[i] = [a - f * b for a, b in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
        if r == rows:
            break
    return m, pivots


def integer_rank(matrix: list[list[int]]) -> int:
    if not matrix:
        return 0
    _, pivots = rational_rref([[Fraction(x) for x in row] for row in matrix])
    return len(pivots)


def integer_kernel_basis(matrix: list[list[int]]) -> list[list[int]]:
    """Integer spanning set of the rational kernel, denominators cleared.

    Sufficient for the unimodular constraint systems used here (marking
    annihilation, abelianized relations), where the cleared vectors form
    an honest lattice basis.
    """
    if not matrix or not matrix[0]:
        return []
    cols = len(matrix[0])
    rref, pivots = rational_rref([[Fraction(x) for x in row] for row in matrix])
    free = [c for c in range(cols) if c not in pivots]
    basis = []
    for fc in free:
        vec = [Fraction(0)] * cols
        vec[fc] = Fraction(1)
        for r, pc in enumerate(pivots):
            vec[pc] = -rref[r][fc]
        lcm = 1
        for x in vec:
            lcm = lcm * x.denominator // _gcd(lcm, x.denominator)
        basis.append([int(x * lcm) for x in vec])
    return basis


def _gcd(a: int, b: int) -> int:
    while b:
        a, b = b, a % b
    return abs(a)


def smith_rank_and_invariants(matrix: list[list[int]]) -> tuple[int, list[int]]:
    """Rank and nonzero invariant factors of an integer matrix.

    Plain Smith reduction by repeated gcd pivoting; fine for the small
    relation matrices produced by diagram presentations.
    """
    if not matrix or not matrix[0]:
        return 0, []
    m = [row[:] for row in matrix]
    rows, cols = len(m), len(m[0])
    invariants = []
    top = 0
    while top < min(rows, cols):
        pr = pc = None
        best = None
        for i in range(top, rows):
            for j in range(top, cols):
                if m[i][j] != 0 and (best is None or abs(m[i][j]) < best):
                    best, pr, pc = abs(m[i][j]), i, j
        if pr is None:
            break
        m[top], m[pr] = m[pr], m[top]
        for row in m:
            row[top], row[pc] = row[pc], row[top]
        again = True
        while again:
            again = False
            for i in range(top + 1, rows):
                if m[i][top] % m[top][top] != 0:
                    q = m[i][top] // m[top][top]
                    m[i] = [a - q * b for a, b in zip(m[i], m[top])]
                    m[top], m[i] = m[i], m[top]
                    again = True
            for i in range(top + 1, rows):
                if m[i][top] != 0:
                    q = m[i][top] // m[top][top]
                    m[i] = [a - q * b for a, b in zip(m[i], m[top])]
            for j in range(top + 1, cols):
                if m[top][j] % m[top][top] != 0:
                    q = m[top][j] // m[top][top]
                    for row in m:
                        row[j] -= q * row[top]
                    for row in m:
                        row[top], row[j] = row[j], row[top]
                    again = True
            for j in range(top + 1, cols):
                if m[top][j] != 0:
                    q = m[top][j] // m[top][top]
                    for row in m:
                        row[j] -= q * row[top]
        invariants.append(abs(m[top][top]))
        top += 1
    return len(invariants), invariants


def interpolate_univariate(xs: list[int], ys: list[Fraction]) -> list[Fraction]:
    """Coefficients (low to high) of the polynomial through (xs, ys)."""
    n = len(xs)
    # Newton divided differences
    coef = [Fraction(y) for y in ys]
    for j in range(1, n):
        for i in range(n - 1, j - 1, -1):
            coef[i] = (coef[i] - coef[i - 1]) / (xs[i] - xs[i - j])
    # expand Newton form into monomial coefficients
    poly = [Fraction(0)] * n
    for k in range(n - 1, -1, -1):
        # poly = poly * (x - xs[k]) + coef[k]
        new = [Fraction(0)] * n
        for i in range(n - 1):
            new[i + 1] += poly[i]
            new[i] -= poly[i] * xs[k]
        new[0] += coef[k]
        poly = new
    return poly
