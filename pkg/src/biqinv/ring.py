"""Graded rings Z[u_1..u_k]/I truncated at degree 4.

Degree-2 classes are integer vectors over the generators.  Degree-4
expressions live in the free symmetric square with basis u_i u_j (i <= j),
ordered (1,1), (1,2), ..., (1,k), (2,2), ...; the degree-4 group is the
quotient of that lattice by the relations, normalised with Smith normal form.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property, lru_cache
from typing import Dict, List, Optional, Sequence, Tuple

from . import intmat


class DimensionError(ValueError):
    """A vector or matrix has the wrong length for the ring it is used with."""


@lru_cache(maxsize=None)
def pairs(k: int) -> Tuple[Tuple[int, int], ...]:
    return tuple((i, j) for i in range(k) for j in range(i, k))


@lru_cache(maxsize=None)
def pair_positions(k: int) -> Dict[Tuple[int, int], int]:
    return {p: n for n, p in enumerate(pairs(k))}


def sym_dim(k: int) -> int:
    return k * (k + 1) // 2


@dataclass(frozen=True)
class DegreeTwoClass:
    coords: Tuple[int, ...]

    def __init__(self, coords):
        object.__setattr__(self, "coords", tuple(int(c) for c in coords))

    def __len__(self):
        return len(self.coords)

    def __iter__(self):
        return iter(self.coords)

    def __getitem__(self, i):
        return self.coords[i]

    def __add__(self, other):
        _check_len(self.coords, len(other))
        return DegreeTwoClass(a + b for a, b in zip(self.coords, other))

    def __sub__(self, other):
        _check_len(self.coords, len(other))
        return DegreeTwoClass(a - b for a, b in zip(self.coords, other))

    def __neg__(self):
        return DegreeTwoClass(-a for a in self.coords)

    def __mul__(self, c: int):
        return DegreeTwoClass(c * a for a in self.coords)

    __rmul__ = __mul__

    def is_zero(self) -> bool:
        return not any(self.coords)

    def is_primitive(self) -> bool:
        return intmat.vector_gcd(self.coords) == 1

    @classmethod
    def zero(cls, k: int) -> "DegreeTwoClass":
        return cls([0] * k)

    @classmethod
    def unit(cls, k: int, i: int) -> "DegreeTwoClass":
        return cls([int(j == i) for j in range(k)])


@dataclass(frozen=True)
class DegreeFourClass:
    free: Tuple[int, ...]
    torsion: Tuple[int, ...] = ()
    orders: Tuple[int, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "free", tuple(self.free))
        object.__setattr__(self, "orders", tuple(self.orders))
        object.__setattr__(self, "torsion",
                           tuple(t % d for t, d in zip(self.torsion, self.orders)))

    def _like(self, free, torsion):
        return DegreeFourClass(tuple(free), tuple(torsion), self.orders)

    def __add__(self, other):
        if self.orders != other.orders or len(self.free) != len(other.free):
            raise DimensionError("classes live in different groups")
        return self._like((a + b for a, b in zip(self.free, other.free)),
                          (a + b for a, b in zip(self.torsion, other.torsion)))

    def __neg__(self):
        return self._like((-a for a in self.free), (-a for a in self.torsion))

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, c: int):
        return self._like((c * a for a in self.free), (c * a for a in self.torsion))

    __rmul__ = __mul__

    def is_zero(self) -> bool:
        return not any(self.free) and not any(self.torsion)


@dataclass(frozen=True)
class DegreeFourGroup:
    """H^4 as Z^free_rank + sum Z/d, with projections from raw coordinates.

    ``free_projection`` is N x free_rank and ``torsion_projection`` is
    N x len(torsion_orders); a raw row vector w maps to w @ P.  When the free
    part has a basis of monomials u_i u_j, ``free_basis`` lists those pairs and
    the free coordinates are the coefficients in that basis.
    """
    k: int
    free_rank: int
    torsion_orders: Tuple[int, ...]
    free_projection: Tuple[Tuple[int, ...], ...]
    torsion_projection: Tuple[Tuple[int, ...], ...]
    free_basis: Optional[Tuple[Tuple[int, int], ...]]
    invariant_factors: Tuple[int, ...]

    def project(self, raw: Sequence[int]) -> DegreeFourClass:
        if len(raw) != sym_dim(self.k):
            raise DimensionError(
                f"expected a vector of length {sym_dim(self.k)}, got {len(raw)}")
        free = intmat.vecmat(raw, self.free_projection) if self.free_rank else []
        tors = intmat.vecmat(raw, self.torsion_projection) if self.torsion_orders else []
        return DegreeFourClass(tuple(free), tuple(tors), self.torsion_orders)

    def zero(self) -> DegreeFourClass:
        return DegreeFourClass((0,) * self.free_rank, (0,) * len(self.torsion_orders),
                               self.torsion_orders)

    def monomial(self, i: int, j: int) -> DegreeFourClass:
        """Class of u_i u_j (0-based indices)."""
        raw = [0] * sym_dim(self.k)
        raw[pair_positions(self.k)[(min(i, j), max(i, j))]] = 1
        return self.project(raw)

    def free_class(self, coords: Sequence[int]) -> DegreeFourClass:
        if len(coords) != self.free_rank:
            raise DimensionError("free coordinate vector has the wrong length")
        return DegreeFourClass(tuple(coords), (0,) * len(self.torsion_orders),
                               self.torsion_orders)


@dataclass(frozen=True)
class CohomologyRing:
    k: int
    relations: Tuple[Tuple[int, ...], ...] = ()
    name: Optional[str] = None
    generator_names: Optional[Tuple[str, ...]] = field(default=None, compare=False)

    def __post_init__(self):
        if self.k < 1:
            raise DimensionError("a ring needs at least one generator")
        rels = tuple(tuple(int(c) for c in r) for r in self.relations)
        n = sym_dim(self.k)
        for r in rels:
            if len(r) != n:
                raise DimensionError(
                    f"relation has length {len(r)}, expected k(k+1)/2 = {n}")
        object.__setattr__(self, "relations", rels)
        if self.generator_names is not None:
            names = tuple(self.generator_names)
            if len(names) != self.k:
                raise DimensionError("need one generator name per generator")
            object.__setattr__(self, "generator_names", names)

    @cached_property
    def group(self) -> DegreeFourGroup:
        return _degree_four_group(self.k, self.relations)

    @property
    def names(self) -> Tuple[str, ...]:
        return self.generator_names or tuple(f"u{i + 1}" for i in range(self.k))

    def monomial_label(self, i: int, j: int) -> str:
        a, b = self.names[i], self.names[j]
        return f"{a}^2" if i == j else f"{a}*{b}"

    def raw_product(self, x: Sequence[int], y: Sequence[int]) -> List[int]:
        _check_len(x, self.k)
        _check_len(y, self.k)
        out = []
        for i, j in pairs(self.k):
            out.append(x[i] * y[i] if i == j else x[i] * y[j] + x[j] * y[i])
        return out

    def multiply(self, x, y) -> DegreeFourClass:
        return self.group.project(self.raw_product(x, y))

    def square(self, x) -> DegreeFourClass:
        return self.multiply(x, x)

    def sum_of_squares(self, xs) -> DegreeFourClass:
        total = self.group.zero()
        for x in xs:
            total = total + self.square(x)
        return total

    def relation_text(self, r: Sequence[int]) -> str:
        terms = []
        for c, (i, j) in zip(r, pairs(self.k)):
            if c:
                mono = self.monomial_label(i, j)
                terms.append(mono if c == 1 else f"-{mono}" if c == -1 else f"{c}*{mono}")
        return " + ".join(terms).replace("+ -", "- ") or "0"


def _check_len(v, k):
    if len(v) != k:
        raise DimensionError(f"expected a vector of length {k}, got {len(v)}")


def _degree_four_group(k: int, relations) -> DegreeFourGroup:
    n = sym_dim(k)
    U, D, V = intmat.smith_normal_form([list(r) for r in relations], n)
    diag = [D[t][t] for t in range(min(len(D), n))]
    nonzero = [d for d in diag if d]
    free_cols = list(range(len(nonzero), n))
    tors_cols = [t for t, d in enumerate(nonzero) if d > 1]
    free = [[V[i][t] for t in free_cols] for i in range(n)]
    tors = [[V[i][t] for t in tors_cols] for i in range(n)]
    free, basis = _canonical_free_coordinates(k, free, len(free_cols))
    return DegreeFourGroup(
        k=k,
        free_rank=len(free_cols),
        torsion_orders=tuple(nonzero[t] for t in tors_cols),
        free_projection=tuple(tuple(row) for row in free),
        torsion_projection=tuple(tuple(row) for row in tors),
        free_basis=basis,
        invariant_factors=tuple(nonzero),
    )


def _canonical_free_coordinates(k, P, r):
    """Re-coordinatise the free quotient independently of the SNF transforms.

    Monomials are taken greedily in pair order while their images stay a
    saturated independent set; if that yields a basis the coordinates become
    coefficients in it, otherwise the Hermite form of the projection is used.
    """
    if r == 0:
        return P, ()
    chosen = []
    for n in range(len(P)):
        trial = [P[m] for m in chosen] + [P[n]]
        if intmat.rank(trial) == len(trial) and intmat.is_saturated(trial, r):
            chosen.append(n)
            if len(chosen) == r:
                break
    if len(chosen) == r:
        inv = intmat.inverse_unimodular([P[m] for m in chosen])
        all_pairs = pairs(k)
        return intmat.matmul(P, inv), tuple(all_pairs[m] for m in chosen)
    H = intmat.hermite_rows(intmat.transpose(P))
    return intmat.transpose(H), None


def build_ring(k: int, relations, name: Optional[str] = None,
               generator_names=None) -> Tuple[CohomologyRing, DegreeFourGroup]:
    ring = CohomologyRing(k, tuple(tuple(r) for r in relations), name,
                          tuple(generator_names) if generator_names else None)
    return ring, ring.group


def multiply(x, y, ring: CohomologyRing) -> DegreeFourClass:
    return ring.multiply(x, y)


def square(x, ring: CohomologyRing) -> DegreeFourClass:
    return ring.square(x)


def sum_of_squares(xs, ring: CohomologyRing) -> DegreeFourClass:
    return ring.sum_of_squares(xs)


def relation_from_terms(k: int, terms: Dict[Tuple[int, int], int]) -> Tuple[int, ...]:
    """Relation vector from {(i, j): coeff} with 0-based indices, any order."""
    pos = pair_positions(k)
    out = [0] * sym_dim(k)
    for (i, j), c in terms.items():
        if not (0 <= i < k and 0 <= j < k):
            raise DimensionError(f"generator index out of range in pair {(i, j)}")
        out[pos[(min(i, j), max(i, j))]] += c
    return tuple(out)


def _image_raw(M, ring_b: CohomologyRing, i: int, j: int) -> List[int]:
    return ring_b.raw_product(M[i], M[j])


def maps_relations(M, ring_a: CohomologyRing, ring_b: CohomologyRing) -> bool:
    """True iff u_i -> row i of M sends every relation of ring_a to 0 in ring_b."""
    images = {(i, j): _image_raw(M, ring_b, i, j) for i, j in pairs(ring_a.k)}
    n = sym_dim(ring_b.k)
    for rel in ring_a.relations:
        raw = [0] * n
        for c, p in zip(rel, pairs(ring_a.k)):
            if c:
                img = images[p]
                for t in range(n):
                    raw[t] += c * img[t]
        if not ring_b.group.project(raw).is_zero():
            return False
    return True


def verify_graded_iso(M, ring_a: CohomologyRing, ring_b: CohomologyRing) -> bool:
    """Check that u_i -> sum_j M[i][j] u'_j induces a graded ring isomorphism.

    Row i of M is the image of generator i of ring_a, written in the
    generators of ring_b.  The map must be unimodular on H^2 and carry the
    relation lattice of each ring onto the other's, so that it is bijective on
    the degree-4 parts.
    """
    k = ring_a.k
    if ring_b.k != k:
        raise DimensionError("rings have different numbers of generators")
    M = [list(row) for row in M]
    if len(M) != k or any(len(row) != k for row in M):
        raise DimensionError(f"expected a {k}x{k} matrix")
    if abs(intmat.det(M)) != 1:
        return False
    if not maps_relations(M, ring_a, ring_b):
        return False
    return maps_relations(intmat.inverse_unimodular(M), ring_b, ring_a)

