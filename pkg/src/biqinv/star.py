"""Deciding Property (*) with checkable evidence.

A ring has Property (*) when a sum of squares of degree-2 classes vanishes
only if every class is zero.  ``check_star`` looks for either

* a certificate: a chain of linear functionals on the free part of H^4 whose
  quadratic forms x -> phi(x^2) are positive semidefinite, each one cutting
  the candidate lattice down to its radical until nothing is left, or
* a witness: nonzero classes whose squares sum to zero (torsion included).

When neither turns up within the budget the verdict is ``Unknown``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations, combinations_with_replacement, product
from typing import Dict, Iterator, List, Optional, Sequence, Tuple, Union

from . import intmat
from .ring import CohomologyRing, DegreeTwoClass, DimensionError, pairs


@dataclass(frozen=True)
class SearchBudget:
    height_bound: int = 20
    tuple_length_bound: Optional[int] = None  # None means free_rank + 1
    functional_coefficient_set: Tuple[int, ...] = (-1, 0, 1)
    max_functional_candidates: int = 10_000
    max_vectors: int = 2_000_000
    max_tuple_candidates: int = 2_000_000

    def __post_init__(self):
        for name in ("height_bound", "max_functional_candidates", "max_vectors",
                     "max_tuple_candidates"):
            if getattr(self, name) < 1:
                raise ValueError(f"{name} must be positive")
        if self.tuple_length_bound is not None and self.tuple_length_bound < 1:
            raise ValueError("tuple_length_bound must be positive")
        object.__setattr__(self, "functional_coefficient_set",
                           tuple(sorted(set(self.functional_coefficient_set))))

    def tuple_length(self, ring: CohomologyRing) -> int:
        if self.tuple_length_bound is not None:
            return self.tuple_length_bound
        return ring.group.free_rank + 1


@dataclass(frozen=True)
class StarStage:
    functional: Tuple[int, ...]
    gram: Tuple[Tuple[int, ...], ...]
    kernel_basis: Tuple[Tuple[int, ...], ...]  # m x m', columns span the radical

    @property
    def dimension(self) -> int:
        return len(self.gram)

    @property
    def kernel_dimension(self) -> int:
        return len(self.kernel_basis[0]) if self.kernel_basis else 0


@dataclass(frozen=True)
class StarCertificate:
    stages: Tuple[StarStage, ...]


@dataclass(frozen=True)
class StarWitness:
    tuple: Tuple[DegreeTwoClass, ...]


@dataclass(frozen=True)
class Holds:
    certificate: StarCertificate
    status = "Holds"


@dataclass(frozen=True)
class Fails:
    witness: StarWitness
    status = "Fails"


@dataclass(frozen=True)
class Unknown:
    report: Dict = field(default_factory=dict)
    status = "Unknown"


StarVerdict = Union[Holds, Fails, Unknown]


def gram_of_functional(ring: CohomologyRing, functional: Sequence[int]) -> List[List[int]]:
    """Symmetric G with x^T G x = functional(free part of x^2).

    The cross terms of x^2 carry a factor 2, so G is always integral.
    """
    group = ring.group
    if len(functional) != group.free_rank:
        raise DimensionError(
            f"functional has length {len(functional)}, free rank is {group.free_rank}")
    w = intmat.matvec(group.free_projection, functional) if group.free_rank else \
        [0] * len(pairs(ring.k))
    G = intmat.zeros(ring.k, ring.k)
    for c, (i, j) in zip(w, pairs(ring.k)):
        G[i][j] = G[j][i] = c
    return G


def _restrict(G, B):
    """B^T G B for B given as a k x m matrix."""
    return intmat.matmul(intmat.transpose(B, len(B[0]) if B else 0), intmat.matmul(G, B))


def _functionals(r: int, budget: SearchBudget) -> Iterator[Tuple[int, ...]]:
    """Coordinate functionals +-e_c, then sparse combinations.

    Combinations come by support size, then support positions in
    lexicographic order, then coefficient patterns in lexicographic order.
    """
    for c in range(r):
        for s in (1, -1):
            v = [0] * r
            v[c] = s
            yield tuple(v)
    values = [a for a in budget.functional_coefficient_set if a != 0]
    for size in range(2, r + 1):
        for support in combinations(range(r), size):
            for coeffs in product(values, repeat=size):
                v = [0] * r
                for c, a in zip(support, coeffs):
                    v[c] = a
                yield tuple(v)


def _find_stage(ring, B, budget, grams, stats):
    """Aggregate every PSD, nonzero candidate of the first productive tier."""
    r = ring.group.free_rank
    m = len(B[0])
    total_phi = [0] * r
    total_gram = intmat.zeros(m, m)
    found = False
    seen = 0
    for idx, phi in enumerate(_functionals(r, budget)):
        if idx == 2 * r and found:
            break  # coordinate functionals made progress; stop at this tier
        if seen >= budget.max_functional_candidates:
            stats["functional_budget_exhausted"] = True
            break
        seen += 1
        G = _restrict(_gram_lin(grams, phi, ring.k), B)
        if not any(any(row) for row in G) or not intmat.is_psd(G):
            continue
        found = True
        total_phi = [a + b for a, b in zip(total_phi, phi)]
        total_gram = [[a + b for a, b in zip(ra, rb)] for ra, rb in zip(total_gram, G)]
    stats["functional_candidates"] = stats.get("functional_candidates", 0) + seen
    if not found:
        return None
    kernel_rows = intmat.integer_kernel(total_gram, m)
    kernel = intmat.transpose(kernel_rows, m) if kernel_rows else [[] for _ in range(m)]
    return StarStage(tuple(total_phi), _freeze(total_gram), _freeze(kernel))


def _gram_lin(grams, phi, k):
    G = intmat.zeros(k, k)
    for c, a in enumerate(phi):
        if a:
            Gc = grams[c]
            for i in range(k):
                for j in range(k):
                    G[i][j] += a * Gc[i][j]
    return G


def _freeze(M):
    return tuple(tuple(row) for row in M)


def find_certificate(ring: CohomologyRing, budget: SearchBudget = SearchBudget(),
                     stats: Optional[dict] = None) -> Optional[StarCertificate]:
    stats = {} if stats is None else stats
    r = ring.group.free_rank
    grams = [gram_of_functional(ring, [int(c == d) for d in range(r)]) for c in range(r)]
    B = intmat.identity(ring.k)
    stages = []
    while B and B[0]:
        stage = _find_stage(ring, B, budget, grams, stats)
        if stage is None:
            return None
        stages.append(stage)
        if stage.kernel_dimension == 0:
            break
        B = intmat.matmul(B, [list(row) for row in stage.kernel_basis])
    return StarCertificate(tuple(stages))


def vectors_by_height(k: int, height: int) -> Iterator[Tuple[int, ...]]:
    """Nonzero vectors up to sign, by height, support size, support, values.

    Only the representative whose first nonzero entry is positive is produced.
    """
    for h in range(1, height + 1):
        for size in range(1, k + 1):
            for support in combinations(range(k), size):
                for mags in product(range(1, h + 1), repeat=size):
                    if max(mags) != h:
                        continue
                    for signs in product((1, -1), repeat=size - 1):
                        v = [0] * k
                        v[support[0]] = mags[0]
                        for c, a, s in zip(support[1:], mags[1:], signs):
                            v[c] = s * a
                        yield tuple(v)


def _class_key(cls):
    return cls.free + cls.torsion


def find_witness(ring: CohomologyRing, budget: SearchBudget = SearchBudget(),
                 stats: Optional[dict] = None) -> Optional[StarWitness]:
    stats = {} if stats is None else stats
    group = ring.group
    pool: Dict[tuple, int] = {}
    reps: List[Tuple[int, ...]] = []
    values: List[tuple] = []
    count = 0
    stats["height_reached"] = 0
    for v in vectors_by_height(ring.k, budget.height_bound):
        if count >= budget.max_vectors:
            stats["vector_budget_exhausted"] = True
            break
        count += 1
        sq = ring.square(v)
        if sq.is_zero():
            stats["vectors_checked"] = count
            return StarWitness((DegreeTwoClass(v),))
        key = _class_key(sq)
        if key not in pool:
            pool[key] = len(reps)
            reps.append(v)
            values.append(key)
        stats["height_reached"] = max(stats["height_reached"], max(map(abs, v)))
    stats["vectors_checked"] = count
    stats["distinct_square_values"] = len(values)

    orders = group.torsion_orders
    nfree = group.free_rank

    def add(a, b):
        out = [x + y for x, y in zip(a[:nfree], b[:nfree])]
        out += [(x + y) % d for x, y, d in zip(a[nfree:], b[nfree:], orders)]
        return out

    def negate(a):
        return tuple([-x for x in a[:nfree]] + [(-x) % d for x, d in zip(a[nfree:], orders)])

    tuples = 0
    for length in range(2, budget.tuple_length(ring) + 1):
        for left in combinations_with_replacement(range(len(values)), length - 1):
            if tuples >= budget.max_tuple_candidates:
                stats["tuple_budget_exhausted"] = True
                stats["tuples_checked"] = tuples
                return None
            tuples += 1
            total = list(values[left[0]])
            for i in left[1:]:
                total = add(total, values[i])
            j = pool.get(negate(total))
            if j is not None and j >= left[-1]:
                stats["tuples_checked"] = tuples
                return StarWitness(tuple(DegreeTwoClass(reps[i]) for i in left + (j,)))
    stats["tuples_checked"] = tuples
    return None


def check_star(ring: CohomologyRing, budget: SearchBudget = SearchBudget()) -> StarVerdict:
    """Run the certificate search, then the witness searches.

    The two outcomes exclude each other, so running the cheap certificate
    search first changes only the running time, never the verdict.
    """
    stats: dict = {}
    cert = find_certificate(ring, budget, stats)
    if cert is not None:
        return Holds(cert)
    witness = find_witness(ring, budget, stats)
    if witness is not None:
        return Fails(witness)
    report = {
        "height_bound": budget.height_bound,
        "tuple_length_bound": budget.tuple_length(ring),
        "functional_coefficient_set": list(budget.functional_coefficient_set),
        "max_functional_candidates": budget.max_functional_candidates,
        "max_vectors": budget.max_vectors,
        "max_tuple_candidates": budget.max_tuple_candidates,
    }
    report.update(stats)
    return Unknown(report)


def verify_certificate(ring: CohomologyRing, cert: StarCertificate) -> bool:
    """Replay a certificate without any search.

    Each stage's Gram matrix is recomputed from its functional on the current
    sublattice, checked PSD, and its kernel basis must be a saturated basis of
    the radical; the chain has to end at the zero lattice.
    """
    group = ring.group
    if not cert.stages:
        return False
    B = intmat.identity(ring.k)
    m = ring.k
    for n, stage in enumerate(cert.stages):
        if m == 0:
            return False
        if len(stage.functional) != group.free_rank:
            raise DimensionError("functional length does not match the free rank")
        # stage shapes must chain: a mismatch is a broken certificate
        if len(stage.gram) != m or any(len(row) != m for row in stage.gram):
            return False
        if len(stage.kernel_basis) != m:
            return False
        G = _restrict(gram_of_functional(ring, stage.functional), B)
        if _freeze(G) != tuple(tuple(row) for row in stage.gram):
            return False
        if not intmat.is_psd(G):
            return False
        K = [list(row) for row in stage.kernel_basis]
        m_next = len(K[0]) if K else 0
        if any(len(row) != m_next for row in K):
            return False
        if m_next != m - intmat.rank(G):
            return False
        if m_next:
            if any(any(row) for row in intmat.matmul(G, K)):
                return False
            if not intmat.is_saturated(intmat.transpose(K), m):
                return False
            B = intmat.matmul(B, K)
        m = m_next
    return m == 0


def verify_witness(ring: CohomologyRing, witness: StarWitness) -> bool:
    if not witness.tuple:
        return False
    for x in witness.tuple:
        if len(x) != ring.k:
            return False
        if not any(x):
            return False
    return ring.sum_of_squares(witness.tuple).is_zero()


def certificate_to_json(cert: StarCertificate) -> dict:
    return {"stages": [
        {"functional": list(s.functional),
         "gram": [list(r) for r in s.gram],
         "kernel_basis": [list(r) for r in s.kernel_basis]}
        for s in cert.stages]}


def certificate_from_json(data: dict) -> StarCertificate:
    stages = []
    for s in data["stages"]:
        stages.append(StarStage(
            tuple(int(x) for x in s["functional"]),
            tuple(tuple(int(x) for x in r) for r in s["gram"]),
            tuple(tuple(int(x) for x in r) for r in s["kernel_basis"])))
    return StarCertificate(tuple(stages))


def witness_to_json(w: StarWitness) -> dict:
    return {"tuple": [list(x.coords) for x in w.tuple]}


def witness_from_json(data: dict) -> StarWitness:
    return StarWitness(tuple(DegreeTwoClass(int(c) for c in x) for x in data["tuple"]))


def verdict_to_json(verdict: StarVerdict) -> dict:
    if isinstance(verdict, Holds):
        return {"verdict": "Holds", "certificate": certificate_to_json(verdict.certificate)}
    if isinstance(verdict, Fails):
        return {"verdict": "Fails", "witness": witness_to_json(verdict.witness)}
    return {"verdict": "Unknown", "budget": dict(verdict.report)}


def verdict_from_json(data: dict) -> StarVerdict:
    kind = data["verdict"]
    if kind == "Holds":
        return Holds(certificate_from_json(data["certificate"]))
    if kind == "Fails":
        return Fails(witness_from_json(data["witness"]))
    if kind == "Unknown":
        return Unknown(dict(data.get("budget", {})))
    raise ValueError(f"unknown verdict {kind!r}")
