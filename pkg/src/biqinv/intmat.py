"""Exact integer matrix routines.

Matrices are plain lists of lists of Python ints (row-major).  Everything here
is deterministic: pivots are chosen by (absolute value, row, column), so the
same input always yields the same transforms.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd
from typing import List, Optional, Sequence, Tuple

Matrix = List[List[int]]


def xgcd(a: int, b: int) -> Tuple[int, int, int]:
    """Return (g, s, t) with s*a + t*b == g == gcd(a, b) >= 0."""
    old_r, r = a, b
    old_s, s = 1, 0
    old_t, t = 0, 1
    while r != 0:
        q = old_r // r
        old_r, r = r, old_r - q * r
        old_s, s = s, old_s - q * s
        old_t, t = t, old_t - q * t
    if old_r < 0:
        old_r, old_s, old_t = -old_r, -old_s, -old_t
    return old_r, old_s, old_t


def vector_gcd(v: Sequence[int]) -> int:
    g = 0
    for x in v:
        g = gcd(g, x)
    return g


def identity(n: int) -> Matrix:
    return [[int(i == j) for j in range(n)] for i in range(n)]


def zeros(m: int, n: int) -> Matrix:
    return [[0] * n for _ in range(m)]


def transpose(A: Sequence[Sequence[int]], ncols: Optional[int] = None) -> Matrix:
    if not A:
        return [[] for _ in range(ncols or 0)]
    return [list(col) for col in zip(*A)]


def matmul(A: Sequence[Sequence[int]], B: Sequence[Sequence[int]]) -> Matrix:
    if not A:
        return []
    inner = len(B)
    ncols = len(B[0]) if B else 0
    assert all(len(row) == inner for row in A), "inner dimensions differ"
    return [
        [sum(row[l] * B[l][j] for l in range(inner)) for j in range(ncols)]
        for row in A
    ]


def matvec(A: Sequence[Sequence[int]], x: Sequence[int]) -> List[int]:
    return [sum(a * b for a, b in zip(row, x)) for row in A]


def vecmat(x: Sequence[int], A: Sequence[Sequence[int]]) -> List[int]:
    ncols = len(A[0]) if A else 0
    out = [0] * ncols
    for xi, row in zip(x, A):
        if xi:
            for j, a in enumerate(row):
                out[j] += xi * a
    return out


def det(M: Sequence[Sequence[int]]) -> int:
    """Bareiss fraction-free determinant."""
    n = len(M)
    if n == 0:
        return 1
    A = [list(row) for row in M]
    assert all(len(row) == n for row in A), "matrix is not square"
    sign = 1
    prev = 1
    for k in range(n - 1):
        if A[k][k] == 0:
            for i in range(k + 1, n):
                if A[i][k] != 0:
                    A[k], A[i] = A[i], A[k]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                A[i][j] = (A[i][j] * A[k][k] - A[i][k] * A[k][j]) // prev
        prev = A[k][k]
    return sign * A[n - 1][n - 1]


def rank(M: Sequence[Sequence[int]]) -> int:
    A = [[Fraction(x) for x in row] for row in M]
    if not A:
        return 0
    m, n = len(A), len(A[0])
    r = 0
    for c in range(n):
        pivot = next((i for i in range(r, m) if A[i][c] != 0), None)
        if pivot is None:
            continue
        A[r], A[pivot] = A[pivot], A[r]
        for i in range(r + 1, m):
            if A[i][c] != 0:
                f = A[i][c] / A[r][c]
                for j in range(c, n):
                    A[i][j] -= f * A[r][j]
        r += 1
        if r == m:
            break
    return r


def inverse_unimodular(M: Sequence[Sequence[int]]) -> Matrix:
    """Exact inverse of an integer matrix with determinant +-1."""
    n = len(M)
    A = [[Fraction(x) for x in row] + [Fraction(int(i == j)) for j in range(n)]
         for i, row in enumerate(M)]
    for c in range(n):
        pivot = next((i for i in range(c, n) if A[i][c] != 0), None)
        if pivot is None:
            raise ValueError("matrix is singular")
        A[c], A[pivot] = A[pivot], A[c]
        p = A[c][c]
        A[c] = [x / p for x in A[c]]
        for i in range(n):
            if i != c and A[i][c] != 0:
                f = A[i][c]
                A[i] = [x - f * y for x, y in zip(A[i], A[c])]
    inv = []
    for row in A:
        out = []
        for x in row[n:]:
            if x.denominator != 1:
                raise ValueError("matrix is not unimodular")
            out.append(x.numerator)
        inv.append(out)
    return inv


def smith_normal_form(A: Sequence[Sequence[int]], ncols: Optional[int] = None
                      ) -> Tuple[Matrix, Matrix, Matrix]:
    """Return (U, D, V) with U @ A @ V == D in Smith normal form.

    U and V are unimodular; the diagonal of D is non-negative and each entry
    divides the next.  ``ncols`` is needed only when A has no rows.
    """
    m = len(A)
    n = len(A[0]) if m else (ncols or 0)
    D = [list(row) for row in A]
    U = identity(m)
    V = identity(n)

    def swap_rows(i, j):
        D[i], D[j] = D[j], D[i]
        U[i], U[j] = U[j], U[i]

    def swap_cols(i, j):
        for row in D:
            row[i], row[j] = row[j], row[i]
        for row in V:
            row[i], row[j] = row[j], row[i]

    def add_row(src, dst, c):
        D[dst] = [a + c * b for a, b in zip(D[dst], D[src])]
        U[dst] = [a + c * b for a, b in zip(U[dst], U[src])]

    def add_col(src, dst, c):
        for row in D:
            row[dst] += c * row[src]
        for row in V:
            row[dst] += c * row[src]

    for t in range(min(m, n)):
        while True:
            best = None
            for i in range(t, m):
                for j in range(t, n):
                    a = D[i][j]
                    if a != 0 and (best is None or abs(a) < best[0]):
                        best = (abs(a), i, j)
            if best is None:
                return U, D, V
            _, i, j = best
            if i != t:
                swap_rows(i, t)
            if j != t:
                swap_cols(j, t)
            p = D[t][t]
            clean = True
            for i in range(t + 1, m):
                if D[i][t]:
                    add_row(t, i, -(D[i][t] // p))
                    clean = clean and D[i][t] == 0
            for j in range(t + 1, n):
                if D[t][j]:
                    add_col(t, j, -(D[t][j] // p))
                    clean = clean and D[t][j] == 0
            if not clean:
                continue
            bad = next((i for i in range(t + 1, m)
                        if any(D[i][j] % p for j in range(t + 1, n))), None)
            if bad is not None:
                add_row(bad, t, 1)
                continue
            break
        if D[t][t] < 0:
            D[t] = [-x for x in D[t]]
            U[t] = [-x for x in U[t]]
    return U, D, V


def invariant_factors(A: Sequence[Sequence[int]], ncols: Optional[int] = None
                      ) -> List[int]:
    """Nonzero diagonal entries of the Smith normal form."""
    _, D, _ = smith_normal_form(A, ncols)
    out = []
    for t in range(min(len(D), len(D[0]) if D else 0)):
        if D[t][t] == 0:
            break
        out.append(D[t][t])
    return out


def hermite_rows(A: Sequence[Sequence[int]]) -> Matrix:
    """Row-style Hermite normal form; zero rows are dropped.

    Pivots are positive and the entries above each pivot lie in [0, pivot).
    The result depends only on the row lattice of A.
    """
    H = [list(row) for row in A if any(row)]
    if not H:
        return []
    m, n = len(H), len(H[0])
    r = 0
    for c in range(n):
        if r == m:
            break
        while True:
            rows = [i for i in range(r, m) if H[i][c] != 0]
            if not rows:
                break
            i0 = min(rows, key=lambda i: (abs(H[i][c]), i))
            H[r], H[i0] = H[i0], H[r]
            done = True
            for i in range(r + 1, m):
                if H[i][c]:
                    q = H[i][c] // H[r][c]
                    H[i] = [a - q * b for a, b in zip(H[i], H[r])]
                    done = done and H[i][c] == 0
            if done:
                break
        if H[r][c] == 0:
            continue
        if H[r][c] < 0:
            H[r] = [-x for x in H[r]]
        p = H[r][c]
        for i in range(r):
            q = H[i][c] // p
            if q:
                H[i] = [a - q * b for a, b in zip(H[i], H[r])]
        r += 1
    return [row for row in H if any(row)]


def integer_kernel(M: Sequence[Sequence[int]], ncols: Optional[int] = None
                   ) -> Matrix:
    """Saturated basis (as rows, Hermite-reduced) of {x in Z^n : M x = 0}."""
    n = len(M[0]) if M else (ncols or 0)
    U, D, V = smith_normal_form(M, n)
    r = sum(1 for t in range(min(len(D), n)) if D[t][t] != 0)
    basis = [[V[i][t] for i in range(n)] for t in range(r, n)]
    return hermite_rows(basis)


def is_saturated(rows: Sequence[Sequence[int]], ncols: Optional[int] = None) -> bool:
    """True iff the rows are independent and span a primitive sublattice."""
    if not rows:
        return True
    factors = invariant_factors(rows, ncols)
    return len(factors) == len(rows) and all(f == 1 for f in factors)


def is_psd(G: Sequence[Sequence[int]]) -> bool:
    """Exact positive-semidefiniteness test by symmetric elimination.

    A zero pivot is accepted only when the rest of its row is zero.
    """
    n = len(G)
    A = [[Fraction(x) for x in row] for row in G]
    for i in range(n):
        if any(A[i][j] != A[j][i] for j in range(n)):
            return False
    for i in range(n):
        d = A[i][i]
        if d < 0:
            return False
        if d == 0:
            if any(A[i][j] != 0 for j in range(i + 1, n)):
                return False
            continue
        for j in range(i + 1, n):
            f = A[j][i] / d
            if f:
                for l in range(i + 1, n):
                    A[j][l] -= f * A[i][l]
    return True
