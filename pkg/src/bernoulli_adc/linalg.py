"""Small dense linear algebra over the rationals.

Plain Gauss-Jordan elimination on lists of Fractions.  Systems handled here
have at most a few dozen unknowns, so nothing clever is needed; what matters
is that every answer is exact.
"""
from __future__ import annotations

from fractions import Fraction
from math import gcd
from typing import Sequence

Matrix = list[list[Fraction]]


class SingularSystemError(ArithmeticError):
    pass


def rref(rows: Sequence[Sequence[Fraction]]) -> tuple[Matrix, list[int]]:
    """Reduced row echelon form and the list of pivot columns."""
    m = [[Fraction(v) for v in row] for row in rows]
    if not m:
        return m, []
    n_rows, n_cols = len(m), len(m[0])
    pivots: list[int] = []
    r = 0
    for c in range(n_cols):
        if r == n_rows:
            break
        pivot = next((i for i in range(r, n_rows) if m[i][c] != 0), None)
        if pivot is None:
            continue
        m[r], m[pivot] = m[pivot], m[r]
        inv = 1 / m[r][c]
        m[r] = [v * inv for v in m[r]]
        for i in range(n_rows):
            if i != r and m[i][c] != 0:
                f = m[i][c]
                m[i] = [a - f * b for a, b in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
    return m, pivots


def nullspace(rows: Sequence[Sequence[Fraction]], n_cols: int | None = None) -> Matrix:
    """Basis of the kernel, one vector per free column."""
    if n_cols is None:
        n_cols = len(rows[0])
    if not rows:
        return [[Fraction(int(i == j)) for j in range(n_cols)] for i in range(n_cols)]
    m, pivots = rref(rows)
    free = [c for c in range(n_cols) if c not in pivots]
    basis = []
    for f in free:
        v = [Fraction(0)] * n_cols
        v[f] = Fraction(1)
        for r, pc in enumerate(pivots):
            v[pc] = -m[r][f]
        basis.append(v)
    return basis


def solve(a: Sequence[Sequence[Fraction]], b: Sequence[Fraction]) -> list[Fraction]:
    """Unique solution of the square system ``a x = b``."""
    n = len(a)
    aug = [list(row) + [b[i]] for i, row in enumerate(a)]
    m, pivots = rref(aug)
    if pivots != list(range(n)):
        raise SingularSystemError("system does not have a unique solution")
    return [m[i][n] for i in range(n)]


def particular_solution(
    a: Sequence[Sequence[Fraction]], b: Sequence[Fraction]
) -> list[Fraction] | None:
    """Some solution of ``a x = b`` (free variables set to zero), or None."""
    n_cols = len(a[0])
    aug = [list(row) + [b[i]] for i, row in enumerate(a)]
    m, pivots = rref(aug)
    if n_cols in pivots:
        return None
    x = [Fraction(0)] * n_cols
    for r, pc in enumerate(pivots):
        x[pc] = m[r][n_cols]
    return x


def primitive_integer(v: Sequence[Fraction]) -> list[Fraction]:
    """Scale to coprime integers with a positive leading nonzero entry."""
    den = 1
    for x in v:
        den = den * x.denominator // gcd(den, x.denominator)
    ints = [int(x * den) for x in v]
    g = 0
    for x in ints:
        g = gcd(g, x)
    if g == 0:
        return [Fraction(0)] * len(v)
    lead = next(x for x in ints if x != 0)
    if lead < 0:
        g = -g
    return [Fraction(x // g) for x in ints]
