from itertools import combinations, product
from math import gcd

import pytest
from hypothesis import given, strategies as st

from biqinv import intmat

small = st.integers(-6, 6)


def matrices(max_rows=4, max_cols=4):
    return st.integers(1, max_rows).flatmap(
        lambda m: st.integers(1, max_cols).flatmap(
            lambda n: st.lists(st.lists(small, min_size=n, max_size=n), min_size=m, max_size=m)))


def square_matrices(max_n=4):
    return st.integers(1, max_n).flatmap(
        lambda n: st.lists(st.lists(small, min_size=n, max_size=n), min_size=n, max_size=n))


def minors_gcd(A, t):
    """gcd of all t x t minors, the classical oracle for d_1 * ... * d_t."""
    m, n = len(A), len(A[0])
    g = 0
    for rows in combinations(range(m), t):
        for cols in combinations(range(n), t):
            g = gcd(g, intmat.det([[A[i][j] for j in cols] for i in rows]))
    return g


def laplace_det(M):
    if len(M) == 1:
        return M[0][0]
    return sum((-1) ** j * M[0][j] * laplace_det([r[:j] + r[j + 1:] for r in M[1:]])
               for j in range(len(M)))


@given(st.integers(-10**6, 10**6), st.integers(-10**6, 10**6))
def test_xgcd_bezout(a, b):
    g, s, t = intmat.xgcd(a, b)
    assert g == gcd(a, b) and s * a + t * b == g


@given(square_matrices())
def test_det_matches_laplace(M):
    assert intmat.det(M) == laplace_det(M)


@given(matrices())
def test_smith_normal_form(A):
    U, D, V = intmat.smith_normal_form(A)
    assert intmat.matmul(intmat.matmul(U, A), V) == D
    assert abs(intmat.det(U)) == 1 and abs(intmat.det(V)) == 1
    diag = [D[i][i] for i in range(min(len(D), len(D[0])))]
    assert all(D[i][j] == 0 for i in range(len(D)) for j in range(len(D[0])) if i != j)
    assert all(d >= 0 for d in diag)
    nz = [d for d in diag if d]
    assert all(b % a == 0 for a, b in zip(nz, nz[1:]))
    prod = 1
    for t, d in enumerate(nz, 1):
        prod *= d
        assert prod == minors_gcd(A, t)


def test_smith_is_deterministic():
    A = [[2, 4, 4], [-6, 6, 12], [10, -4, -16]]
    assert intmat.smith_normal_form(A) == intmat.smith_normal_form(A)
    assert intmat.invariant_factors(A) == [2, 6, 12]


@given(matrices())
def test_integer_kernel_is_saturated_basis(A):
    n = len(A[0])
    K = intmat.integer_kernel(A, n)
    assert len(K) == n - intmat.rank(A)
    for v in K:
        assert intmat.matvec(A, v) == [0] * len(A)
    assert intmat.is_saturated(K, n)
    # every small kernel vector is an integer combination of K
    if K:
        for x in product(range(-2, 3), repeat=n):
            if intmat.matvec(A, list(x)) == [0] * len(A):
                sol = intmat.hermite_rows(K + [list(x)])
                assert len(sol) == len(K)


@given(matrices())
def test_hermite_rows_shape(A):
    H = intmat.hermite_rows(A)
    assert len(H) == intmat.rank(A)
    pivots = [next(j for j, c in enumerate(r) if c) for r in H]
    assert pivots == sorted(set(pivots))
    for r, p in zip(H, pivots):
        assert r[p] > 0
    for i, p in enumerate(pivots):
        for r in H[:i]:
            assert 0 <= r[p] < H[i][p]


def principal_minors_nonneg(G):
    n = len(G)
    return all(intmat.det([[G[i][j] for j in S] for i in S]) >= 0
               for t in range(1, n + 1) for S in combinations(range(n), t))


@given(square_matrices())
def test_is_psd_matches_principal_minors(M):
    G = [[M[i][j] + M[j][i] for j in range(len(M))] for i in range(len(M))]
    assert intmat.is_psd(G) == principal_minors_nonneg(G)


@given(square_matrices(3))
def test_gram_products_are_psd(M):
    G = intmat.matmul(intmat.transpose(M), M)
    assert intmat.is_psd(G)


def test_inverse_unimodular():
    M = [[2, 3], [1, 2]]
    inv = intmat.inverse_unimodular(M)
    assert intmat.matmul(M, inv) == intmat.identity(2)
    with pytest.raises(ValueError):
        intmat.inverse_unimodular([[2, 0], [0, 1]])


def test_rank_uses_exact_arithmetic():
    assert intmat.rank([[10**20, 1], [10**20 + 1, 1]]) == 2
