"""Torus actions on products of 3-spheres and the example families built from them.

A T^k action on (S^3)^k with two weights per factor is written as
(w) * (a_i, b_i) = (w^{P_i} a_i, w^{Q_i} b_i), where w^v = prod_j w_j^{v_j}.
For an admissible matrix A the weights are P_i = e_i and Q_i = row i of A.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product
from typing import List, Optional, Sequence, Tuple

from . import intmat
from .bundles import BettiProfile
from .ring import CohomologyRing, relation_from_terms

Matrix = List[List[int]]


def _square(A) -> Matrix:
    A = [[int(x) for x in row] for row in A]
    if any(len(row) != len(A) for row in A):
        raise ValueError("weight matrix must be square")
    return A


def is_admissible(A) -> bool:
    A = _square(A)
    k = len(A)
    if k < 2:
        raise ValueError("admissible matrices have k >= 2")
    for i in range(k):
        for j in range(k):
            if i == j or (i, j) == (1, 0):
                want = 1
            elif (i, j) == (0, 1):
                want = 2
            elif i < j:
                want = 0
            else:
                continue
            if A[i][j] != want:
                return False
    return True


@dataclass(frozen=True)
class TorusActionSpec:
    a_weights: Tuple[Tuple[int, ...], ...]
    b_weights: Tuple[Tuple[int, ...], ...]

    def __post_init__(self):
        a = tuple(tuple(int(x) for x in v) for v in self.a_weights)
        b = tuple(tuple(int(x) for x in v) for v in self.b_weights)
        k = len(a)
        if len(b) != k or any(len(v) != k for v in a + b):
            raise ValueError("need k sphere factors with weight vectors of length k")
        object.__setattr__(self, "a_weights", a)
        object.__setattr__(self, "b_weights", b)

    @property
    def k(self) -> int:
        return len(self.a_weights)

    @classmethod
    def from_matrix(cls, A) -> "TorusActionSpec":
        A = _square(A)
        k = len(A)
        return cls(tuple(tuple(int(i == j) for j in range(k)) for i in range(k)),
                   tuple(tuple(row) for row in A))

    @classmethod
    def from_json(cls, data: dict) -> "TorusActionSpec":
        if "A" in data:
            return cls.from_matrix(data["A"])
        return cls(data["P"], data["Q"])

    def to_json(self) -> dict:
        return {"P": [list(v) for v in self.a_weights], "Q": [list(v) for v in self.b_weights]}


@dataclass(frozen=True)
class Free:
    determinants: Tuple[int, ...]
    status = "Free"


@dataclass(frozen=True)
class NonFree:
    selection: Tuple[str, ...]  # "P" or "Q" per sphere factor
    determinant: int
    status = "NonFree"

    @property
    def positive_dimensional(self) -> bool:
        return self.determinant == 0

    @property
    def isotropy_order(self) -> Optional[int]:
        return None if self.determinant == 0 else abs(self.determinant)

    @property
    def isotropy(self) -> str:
        if self.determinant == 0:
            return "positive-dimensional"
        return f"finite of order {abs(self.determinant)}"


def selection_matrix(spec: TorusActionSpec, selection: Sequence[str]) -> Matrix:
    return [list(spec.a_weights[i] if s == "P" else spec.b_weights[i])
            for i, s in enumerate(selection)]


def freeness_check(spec: TorusActionSpec):
    """Free iff every selection of one weight per factor is unimodular.

    At a point where factor i sits at a pole, only one of its coordinates is
    nonzero and the isotropy there is the kernel of the character map whose
    rows are the selected weights: finite of order |det| or, if det = 0,
    positive-dimensional.  Other points have smaller isotropy.  Selections
    are scanned in lexicographic order with P before Q.
    """
    dets = []
    for selection in product("PQ", repeat=spec.k):
        d = intmat.det(selection_matrix(spec, selection))
        if abs(d) != 1:
            return NonFree(tuple(selection), d)
        dets.append(d)
    return Free(tuple(dets))


def ra_cohomology(A, name: Optional[str] = None) -> CohomologyRing:
    """Z[u_1..u_k]/<sum_j A_ij u_i u_j : i = 1..k> for admissible A."""
    A = _square(A)
    if not is_admissible(A):
        raise ValueError("matrix is not admissible")
    k = len(A)
    rels = []
    for i in range(k):
        terms = {}
        for j in range(k):
            if A[i][j]:
                key = (min(i, j), max(i, j))
                terms[key] = terms.get(key, 0) + A[i][j]
        rels.append(relation_from_terms(k, terms))
    return CohomologyRing(k, tuple(rels), name or f"R(A), k={k}")


def _is_odd_prime(p: int) -> bool:
    if p < 3 or p % 2 == 0:
        return False
    d = 3
    while d * d <= p:
        if p % d == 0:
            return False
        d += 2
    return True


def rp_matrix(p: int, k: int) -> Matrix:
    """First column (1,1,p,..,p), second column (2,1,0,..,0), identity beyond."""
    if not _is_odd_prime(p):
        raise ValueError(f"p must be an odd prime, got {p}")
    if k < 3:
        raise ValueError("R(p) needs k >= 3")
    A = intmat.identity(k)
    A[0][1] = 2
    A[1][0] = 1
    for i in range(2, k):
        A[i][0] = p
    return A


def rp_ring(p: int, k: int) -> CohomologyRing:
    return ra_cohomology(rp_matrix(p, k), name=f"R({p}), k={k}")


def q_first_pontryagin(s: int, t: int) -> int:
    """Signed coefficient 6 - s^2 - (s-t)^2 of p1(Q(s,t)) on a generator of H^4."""
    return 6 - s * s - (s - t) ** 2


def q_table(lo: int, hi: int) -> List[Tuple[int, int, int]]:
    return [(s, t, q_first_pontryagin(s, t))
            for s in range(lo, hi + 1) for t in range(lo, hi + 1)]


def complete_to_unimodular(b: Sequence[int]) -> Matrix:
    """Integer matrix with first row b and determinant +-1 (b primitive).

    Column operations built from extended gcds reduce b to e_1; the inverse of
    the accumulated transform has b as its first row.
    """
    b = [int(x) for x in b]
    k = len(b)
    if k == 0 or not any(b):
        raise ValueError("vector must be nonzero")
    if intmat.vector_gcd(b) != 1:
        raise ValueError("vector must be primitive")
    cur = list(b)
    inv = intmat.identity(k)
    for j in range(1, k):
        a, c = cur[0], cur[j]
        if c == 0:
            continue
        g, s, t = intmat.xgcd(a, c)
        # [a, c] @ [[s, -c/g], [t, a/g]] = [g, 0]; its inverse acts on rows of inv
        r0 = [(a // g) * x + (c // g) * y for x, y in zip(inv[0], inv[j])]
        rj = [-t * x + s * y for x, y in zip(inv[0], inv[j])]
        inv[0], inv[j] = r0, rj
        cur[0], cur[j] = g, 0
    if cur[0] == -1:
        inv[0] = [-x for x in inv[0]]
    assert inv[0] == b
    return inv


@dataclass(frozen=True)
class LineBundlePresentation:
    """Data realising x in H^2 as the Euler class of a circle bundle.

    ``circle`` is the weight vector of S^1_x (first column of B^-1) and
    ``complement`` the k x (k-1) weights of the complementary T^{k-1}_x
    (remaining columns); ``character`` = d * (first row of B) recovers x.
    """
    d: int
    B: Tuple[Tuple[int, ...], ...]
    circle: Tuple[int, ...]
    complement: Tuple[Tuple[int, ...], ...]

    @property
    def character(self) -> Tuple[int, ...]:
        return tuple(self.d * x for x in self.B[0])


def line_bundle_presentation(x: Sequence[int]) -> LineBundlePresentation:
    x = [int(v) for v in x]
    k = len(x)
    if not any(x):
        B = intmat.identity(k)
        d = 0
    else:
        d = intmat.vector_gcd(x)
        B = complete_to_unimodular([v // d for v in x])
    Binv = intmat.inverse_unimodular(B)
    return LineBundlePresentation(
        d, tuple(tuple(r) for r in B),
        tuple(row[0] for row in Binv),
        tuple(tuple(row[1:]) for row in Binv))


@dataclass(frozen=True)
class ProductRing:
    ring: CohomologyRing
    base_dimension: int
    sphere_dimension: int

    @property
    def dimension(self) -> int:
        return self.base_dimension + self.sphere_dimension


def product_with_odd_sphere(ring: CohomologyRing, sphere_dim: int,
                            base_dimension: Optional[int] = None) -> ProductRing:
    """M x S^n for odd n >= 3: degrees <= 4 are unchanged by Kunneth.

    ``base_dimension`` defaults to 2k, the dimension of (S^3)^k // T^k.
    """
    if sphere_dim < 3 or sphere_dim % 2 == 0:
        raise ValueError("sphere dimension must be odd and at least 3")
    base = 2 * ring.k if base_dimension is None else base_dimension
    name = f"{ring.name or 'M'} x S^{sphere_dim}"
    return ProductRing(CohomologyRing(ring.k, ring.relations, name, ring.generator_names),
                       base, sphere_dim)


@dataclass(frozen=True)
class CatalogEntry:
    name: str
    dimension: int
    profile: BettiProfile


def catalog_low_dim() -> List[CatalogEntry]:
    """Simply connected biquotients of dimension 2, 3 and 5 (rational Betti data)."""
    data = [
        ("S^2", 2, {0: 1, 2: 1}),
        ("S^3", 3, {0: 1, 3: 1}),
        ("S^5", 5, {0: 1, 5: 1}),
        ("S^2xS^3", 5, {0: 1, 2: 1, 3: 1, 5: 1}),
        ("SU(3)/SO(3)", 5, {0: 1, 5: 1}),
        ("S^3~xS^2", 5, {0: 1, 2: 1, 3: 1, 5: 1}),
    ]
    return [CatalogEntry(name, dim, BettiProfile(dim, betti, True, True))
            for name, dim, betti in data]
