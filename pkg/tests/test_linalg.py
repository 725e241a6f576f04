from fractions import Fraction
from itertools import permutations

import pytest
import sympy
from hypothesis import given, settings, strategies as st
from scipy.optimize import linprog
from sympy.matrices.normalforms import hermite_normal_form as sympy_hnf, invariant_factors

from toricprim.linalg import (adjugate, det, hermite_normal_form, inverse, matmul,
                              nonnegative_solution, smith_normal_form, xgcd)

small = st.integers(-6, 6)


def matrices(min_rows=1, max_rows=5, min_cols=1, max_cols=5):
    return st.integers(min_rows, max_rows).flatmap(
        lambda r: st.integers(min_cols, max_cols).flatmap(
            lambda c: st.lists(st.lists(small, min_size=c, max_size=c), min_size=r, max_size=r)))


def square(max_n=5):
    return st.integers(1, max_n).flatmap(
        lambda n: st.lists(st.lists(small, min_size=n, max_size=n), min_size=n, max_size=n))


def leibniz(m):
    n = len(m)
    total = 0
    for p in permutations(range(n)):
        inv = sum(1 for i in range(n) for j in range(i + 1, n) if p[i] > p[j])
        term = -1 if inv % 2 else 1
        for i in range(n):
            term *= m[i][p[i]]
        total += term
    return total


def test_det_examples():
    assert det([[2, 1], [1, 1]]) == 1
    assert det([[1, 0, 0], [0, 1, 0], [-1, -1, 1]]) == 1
    assert det([[1, 2], [2, 4]]) == 0


@given(square())
def test_det_matches_leibniz(m):
    assert det(m) == leibniz(m)


@given(st.integers(-10**6, 10**6), st.integers(-10**6, 10**6))
def test_xgcd(a, b):
    g, x, y = xgcd(a, b)
    assert g >= 0 and a * x + b * y == g
    assert g == sympy.igcd(a, b)


@given(square(4))
def test_adjugate_and_inverse(m):
    d = det(m)
    if d == 0:
        assert inverse(m) is None
        with pytest.raises(ValueError):
            adjugate(m)
        return
    adj, dd = adjugate(m)
    assert dd == d
    n = len(m)
    assert matmul(m, adj) == [[d * (i == j) for j in range(n)] for i in range(n)]
    assert matmul(m, inverse(m)) == [[Fraction(int(i == j)) for j in range(n)] for i in range(n)]


def test_smith_examples():
    _, d, _ = smith_normal_form([[2, 4], [6, 8]])
    assert [d[0][0], d[1][1]] == [2, 4]
    u, d, v = smith_normal_form([[2, 0], [0, 3]])
    assert d == [[1, 0], [0, 6]]
    assert matmul(matmul(u, [[2, 0], [0, 3]]), v) == d
    assert smith_normal_form([[1, 0], [0, 1]])[1] == [[1, 0], [0, 1]]
    assert smith_normal_form([[0, 0, 0], [0, 0, 0]])[1] == [[0, 0, 0], [0, 0, 0]]


@given(matrices())
@settings(max_examples=150)
def test_smith_normal_form(m):
    u, d, v = smith_normal_form(m)
    assert matmul(matmul(u, m), v) == d
    assert abs(det(u)) == 1 and abs(det(v)) == 1
    rows, cols = len(m), len(m[0])
    diag = [d[i][i] for i in range(min(rows, cols))]
    assert all(d[i][j] == 0 for i in range(rows) for j in range(cols) if i != j)
    assert all(x >= 0 for x in diag)
    nonzero = [x for x in diag if x]
    assert diag[:len(nonzero)] == nonzero
    assert all(b % a == 0 for a, b in zip(nonzero, nonzero[1:]))
    # independent oracle
    expected = [abs(int(x)) for x in invariant_factors(sympy.Matrix(m)) if x != 0]
    assert nonzero == expected


@given(matrices())
@settings(max_examples=150)
def test_hermite_normal_form(m):
    h = hermite_normal_form(m)
    rank = sympy.Matrix(m).rank()
    assert len(h) == rank
    pivots = []
    for row in h:
        j = next(k for k, x in enumerate(row) if x)
        assert row[j] > 0
        pivots.append(j)
    assert pivots == sorted(set(pivots))
    for r, j in enumerate(pivots):
        assert all(0 <= h[s][j] < h[r][j] for s in range(r))
    if rank:
        # same row lattice: each side solves integrally in terms of the other
        # sympy's column-style HNF of the transpose spans the same lattice
        ref = sympy_hnf(sympy.Matrix(m).T).T
        assert ref.rows == len(h)
        assert _same_lattice(ref, sympy.Matrix(h))


def _same_lattice(a, b):
    """Row lattices of a and b coincide (both have full row rank)."""
    def contained(x, y):
        for row in x.tolist():
            sol = y.T.gauss_jordan_solve(sympy.Matrix(row))[0]
            if sol.free_symbols or any(not v.is_integer for v in sol):
                return False
        return True
    return contained(a, b) and contained(b, a)


@given(st.lists(st.lists(small, min_size=4, max_size=4), min_size=1, max_size=6),
       st.lists(small, min_size=4, max_size=4))
@settings(max_examples=200)
def test_nonnegative_solution_matches_linprog(gens, target):
    # a has the generators as columns
    a = [list(col) for col in zip(*gens)]
    ours = nonnegative_solution(a, target)
    ref = linprog([0] * len(gens), A_eq=a, b_eq=target, bounds=[(0, None)] * len(gens),
                  method="highs")
    assert (ours is not None) == (ref.status == 0)
    if ours is not None:
        assert all(x >= 0 for x in ours)
        assert [sum(r[j] * ours[j] for j in range(len(gens))) for r in a] == target


def test_nonnegative_solution_examples():
    assert nonnegative_solution([[1, 0], [0, 1]], [2, 3]) == [2, 3]
    assert nonnegative_solution([[1, 0], [0, 1]], [-1, 3]) is None
    assert nonnegative_solution([[1, -1]], [0]) is not None
