"""Small exact linear algebra: rational elimination and integer kernels."""

from __future__ import annotations

from fractions import Fraction
from math import lcm
from typing import Sequence


def xgcd(a: int, b: int) -> tuple[int, int, int]:
    """Return ``(g, s, t)`` with ``s*a + t*b == g == gcd(a, b) >= 0``."""
    s0, s1, t0, t1 = 1, 0, 0, 1
    while b:
        q, r = divmod(a, b)
        a, b = b, r
        s0, s1 = s1, s0 - q * s1
        t0, t1 = t1, t0 - q * t1
    if a < 0:
        a, s0, t0 = -a, -s0, -t0
    return a, s0, t0


def integer_rows(rows: Sequence[Sequence[Fraction]]) -> list[list[int]]:
    """Scale each rational row to a primitive integer row; drop zero rows."""
    out = []
    for row in rows:
        L = lcm(*(Fraction(c).denominator for c in row)) if row else 1
        ints = [int(Fraction(c) * L) for c in row]
        if any(ints):
            out.append(ints)
    return out


def integer_kernel(rows: Sequence[Sequence[int]], ncols: int) -> list[list[int]]:
    """Basis of ``{y in Z^ncols : rows @ y == 0}``.

    Unimodular column operations bring ``rows`` to column echelon form; the
    same operations applied to the identity give the kernel in the trailing
    columns.
    """
    A = [list(r) for r in rows]
    U = [[int(i == j) for j in range(ncols)] for i in range(ncols)]  # U[i][j]: row i, column j

    def combine(cols_mat, p, j, s, t, u, v):
        for row in cols_mat:
            a, b = row[p], row[j]
            row[p], row[j] = s * a + t * b, u * a + v * b

    piv = 0
    for i in range(len(A)):
        if piv >= ncols:
            break
        for j in range(piv + 1, ncols):
            b = A[i][j]
            if b == 0:
                continue
            a = A[i][piv]
            g, s, t = xgcd(a, b)
            u, v = -b // g, a // g
            combine(A, piv, j, s, t, u, v)
            combine(U, piv, j, s, t, u, v)
        if A[i][piv] != 0:
            piv += 1
    return [[U[r][c] for r in range(ncols)] for c in range(piv, ncols)]


def rational_solve_pivot(rows: list[list[Fraction]], col: int):
    """Eliminate column ``col`` using one pivot row.

    Returns ``(pivot_row or None, reduced_rows)`` where the reduced rows no
    longer involve ``col`` (the column is kept, zeroed).
    """
    rows = [[Fraction(c) for c in r] for r in rows]
    pidx = next((i for i, r in enumerate(rows) if r[col] != 0), None)
    if pidx is None:
        return None, rows
    prow = rows[pidx]
    out = []
    for i, r in enumerate(rows):
        if i == pidx:
            continue
        f = r[col] / prow[col]
        out.append([a - f * b for a, b in zip(r, prow)])
    return prow, out


def minimal_positive_coordinate(basis: list[list[int]], idx: int):
    """Lattice vector with the smallest positive ``idx`` coordinate, or None."""
    g = 0
    combo = None
    for vec in basis:
        c = vec[idx]
        if c == 0:
            continue
        if combo is None:
            g, combo = abs(c), [x if c > 0 else -x for x in vec]
            continue
        d, s, t = xgcd(g, c)
        if d == g:
            continue
        combo = [s * x + t * y for x, y in zip(combo, vec)]
        g = d
    if combo is None:
        return None
    assert combo[idx] == g
    return combo
