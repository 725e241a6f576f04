"""Exact integer and rational linear algebra.

Everything here works on plain Python ``int`` and ``fractions.Fraction``;
matrices are lists of rows.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd
from typing import Optional, Sequence

Matrix = list[list[int]]


def identity(n: int) -> Matrix:
    return [[int(i == j) for j in range(n)] for i in range(n)]


def transpose(m: Sequence[Sequence[int]]) -> Matrix:
    return [list(col) for col in zip(*m)]


def matmul(a: Sequence[Sequence], b: Sequence[Sequence]) -> list[list]:
    bt = list(zip(*b))
    return [[sum(x * y for x, y in zip(row, col)) for col in bt] for row in a]


def matvec(a: Sequence[Sequence], v: Sequence) -> list:
    return [sum(x * y for x, y in zip(row, v)) for row in a]


def xgcd(a: int, b: int) -> tuple[int, int, int]:
    """Return ``(g, x, y)`` with ``x*a + y*b == g == gcd(a, b) >= 0``."""
    x0, y0, x1, y1 = 1, 0, 0, 1
    while b:
        q, r = divmod(a, b)
        a, b = b, r
        x0, x1 = x1, x0 - q * x1
        y0, y1 = y1, y0 - q * y1
    if a < 0:
        a, x0, y0 = -a, -x0, -y0
    return a, x0, y0


def vector_gcd(v: Sequence[int]) -> int:
    g = 0
    for x in v:
        g = gcd(g, x)
    return g


def det(m: Sequence[Sequence[int]]) -> int:
    """Determinant of a square integer matrix (fraction-free Bareiss)."""
    n = len(m)
    if n == 0:
        return 1
    a = [list(row) for row in m]
    sign = 1
    prev = 1
    for k in range(n - 1):
        if a[k][k] == 0:
            for i in range(k + 1, n):
                if a[i][k] != 0:
                    a[k], a[i] = a[i], a[k]
                    sign = -sign
                    break
            else:
                return 0
        akk = a[k][k]
        for i in range(k + 1, n):
            aik = a[i][k]
            row_i, row_k = a[i], a[k]
            for j in range(k + 1, n):
                row_i[j] = (row_i[j] * akk - aik * row_k[j]) // prev
        prev = akk
    return sign * a[n - 1][n - 1]


def inverse(m: Sequence[Sequence]) -> Optional[list[list[Fraction]]]:
    """Exact inverse over the rationals, or ``None`` when singular."""
    n = len(m)
    a = [[Fraction(x) for x in row] + [Fraction(int(i == j)) for j in range(n)]
         for i, row in enumerate(m)]
    for col in range(n):
        piv = next((r for r in range(col, n) if a[r][col] != 0), None)
        if piv is None:
            return None
        a[col], a[piv] = a[piv], a[col]
        p = a[col][col]
        a[col] = [x / p for x in a[col]]
        for r in range(n):
            if r != col and a[r][col] != 0:
                f = a[r][col]
                a[r] = [x - f * y for x, y in zip(a[r], a[col])]
    return [row[n:] for row in a]


def solve(m: Sequence[Sequence], b: Sequence) -> Optional[list[Fraction]]:
    """Solve ``m x = b`` for square nonsingular ``m``; ``None`` if singular."""
    inv = inverse(m)
    if inv is None:
        return None
    return [sum(x * Fraction(y) for x, y in zip(row, b)) for row in inv]


def adjugate(m: Sequence[Sequence[int]]) -> tuple[Matrix, int]:
    """Return ``(adj, d)`` with ``adj @ m == d * I`` and ``d = det(m) != 0``.

    Raises ``ValueError`` on a singular matrix.
    """
    d = det(m)
    if d == 0:
        raise ValueError("singular matrix has no adjugate")
    inv = inverse(m)
    adj = []
    for row in inv:
        out = []
        for x in row:
            y = x * d
            if y.denominator != 1:
                raise ArithmeticError("adjugate entry is not integral")
            out.append(y.numerator)
        adj.append(out)
    return adj, d


def smith_normal_form(m: Sequence[Sequence[int]]) -> tuple[Matrix, Matrix, Matrix]:
    """Smith normal form ``U @ m @ V == D``.

    ``U`` and ``V`` are unimodular, ``D`` is diagonal with nonnegative
    entries ``d1 | d2 | ...``.
    """
    a = [list(row) for row in m]
    rows = len(a)
    cols = len(a[0]) if rows else 0
    u = identity(rows)
    v = identity(cols)

    def swap_rows(i, j):
        a[i], a[j] = a[j], a[i]
        u[i], u[j] = u[j], u[i]

    def swap_cols(i, j):
        for row in a:
            row[i], row[j] = row[j], row[i]
        for row in v:
            row[i], row[j] = row[j], row[i]

    def add_row(dst, src, q):  # row dst += q * row src
        a[dst] = [x + q * y for x, y in zip(a[dst], a[src])]
        u[dst] = [x + q * y for x, y in zip(u[dst], u[src])]

    def add_col(dst, src, q):  # col dst += q * col src
        for row in a:
            row[dst] += q * row[src]
        for row in v:
            row[dst] += q * row[src]

    for t in range(min(rows, cols)):
        nonzero = [(abs(a[i][j]), i, j) for i in range(t, rows)
                   for j in range(t, cols) if a[i][j]]
        if not nonzero:
            break
        _, i, j = min(nonzero)
        swap_rows(t, i)
        swap_cols(t, j)
        while True:
            p = a[t][t]
            for i in range(t + 1, rows):
                if a[i][t]:
                    add_row(i, t, -(a[i][t] // p))
            for j in range(t + 1, cols):
                if a[t][j]:
                    add_col(j, t, -(a[t][j] // p))
            rest = [(abs(a[i][t]), i, None) for i in range(t + 1, rows) if a[i][t]]
            rest += [(abs(a[t][j]), None, j) for j in range(t + 1, cols) if a[t][j]]
            if rest:
                _, i, j = min(rest, key=lambda e: e[0])
                if i is not None:
                    swap_rows(t, i)
                else:
                    swap_cols(t, j)
                continue
            bad = next(((i, j) for i in range(t + 1, rows) for j in range(t + 1, cols)
                        if a[i][j] % p), None)
            if bad is None:
                break
            add_row(t, bad[0], 1)
        if a[t][t] < 0:
            a[t] = [-x for x in a[t]]
            u[t] = [-x for x in u[t]]
    return u, a, v


def hermite_normal_form(m: Sequence[Sequence[int]]) -> Matrix:
    """Row-style Hermite normal form with zero rows removed.

    Upper echelon, positive pivots, entries above each pivot reduced into
    ``[0, pivot)``. Two matrices have the same row lattice iff their HNFs
    agree.
    """
    a = [list(row) for row in m]
    rows = len(a)
    cols = len(a[0]) if rows else 0
    r = 0
    for j in range(cols):
        if r == rows:
            break
        for i in range(r + 1, rows):
            if a[i][j]:
                x, y = a[r][j], a[i][j]
                g, s, t = xgcd(x, y)
                xr, yr = x // g, y // g
                new_r = [s * p + t * q for p, q in zip(a[r], a[i])]
                new_i = [-yr * p + xr * q for p, q in zip(a[r], a[i])]
                a[r], a[i] = new_r, new_i
        if a[r][j] == 0:
            continue
        if a[r][j] < 0:
            a[r] = [-x for x in a[r]]
        for i in range(r):
            q = a[i][j] // a[r][j]
            if q:
                a[i] = [x - q * y for x, y in zip(a[i], a[r])]
        r += 1
    return [row for row in a if any(row)]


def nonnegative_solution(a: Sequence[Sequence], b: Sequence) -> Optional[list[Fraction]]:
    """Find ``x >= 0`` with ``a @ x == b`` exactly, or return ``None``.

    Phase-one simplex over the rationals with Bland's rule, so it
    terminates and never rounds.
    """
    m = len(a)
    k = len(a[0]) if m else 0
    if m == 0:
        return [Fraction(0)] * k
    n = k + m
    tab = []
    for i in range(m):
        row = [Fraction(x) for x in a[i]]
        rhs = Fraction(b[i])
        if rhs < 0:
            row = [-x for x in row]
            rhs = -rhs
        tab.append(row + [Fraction(int(t == i)) for t in range(m)] + [rhs])
    basis = [k + i for i in range(m)]
    # reduced costs for "minimise the sum of artificials"; last entry is -objective
    obj = [-sum(row[j] for row in tab) for j in range(k)] + [Fraction(0)] * m
    obj.append(-sum(row[-1] for row in tab))

    while True:
        enter = next((j for j in range(n) if obj[j] < 0), None)
        if enter is None:
            break
        best = None
        for i, row in enumerate(tab):
            if row[enter] > 0:
                ratio = row[-1] / row[enter]
                if best is None or ratio < best[0] or (
                        ratio == best[0] and basis[i] < basis[best[1]]):
                    best = (ratio, i)
        i = best[1]
        piv = tab[i][enter]
        tab[i] = [x / piv for x in tab[i]]
        for r in range(m):
            if r != i and tab[r][enter] != 0:
                f = tab[r][enter]
                tab[r] = [x - f * y for x, y in zip(tab[r], tab[i])]
        f = obj[enter]
        obj = [x - f * y for x, y in zip(obj, tab[i])]
        basis[i] = enter

    if obj[-1] != 0:
        return None
    x = [Fraction(0)] * k
    for i, j in enumerate(basis):
        if j < k:
            x[j] = tab[i][-1]
    assert all(sum(Fraction(c) * y for c, y in zip(row, x)) == bb for row, bb in zip(a, b))
    return x
