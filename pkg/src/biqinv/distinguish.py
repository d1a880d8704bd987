"""Bounded evidence that the rings H*(R(p)) differ for distinct primes.

Three checks are combined: primitive pairs x, y with x^2 = y^2 and xy = 0
all lie in the span U12 of u1, u2; no graded isomorphism exists among
integer matrices with small entries; and the mod-p obstruction on the image
of u3 holds on a bounded box.  Everything is exact and bounded; a
``Distinct`` verdict is evidence at the stated bounds, not a proof.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import product
from typing import Dict, Iterator, List, Optional, Tuple

from . import intmat
from .families import _is_odd_prime, rp_ring
from .ring import CohomologyRing, DegreeTwoClass, pairs, sym_dim, verify_graded_iso
from .star import vectors_by_height

Matrix = List[List[int]]


@dataclass(frozen=True)
class PrimitivePair:
    x: DegreeTwoClass
    y: DegreeTwoClass

    def matches(self, a, b) -> bool:
        """Equality up to the signs of x and y and swapping them."""
        def norm(v):
            v = tuple(v)
            first = next((c for c in v if c), 0)
            return v if first >= 0 else tuple(-c for c in v)
        return sorted([norm(self.x), norm(self.y)]) == sorted([norm(a), norm(b)])

    def support(self) -> set:
        return {i for v in (self.x, self.y) for i, c in enumerate(v) if c}


def primitive_square_pairs(ring: CohomologyRing, height: int) -> List[PrimitivePair]:
    """All primitive x, y with entries in [-height, height], x^2 = y^2, xy = 0.

    Each pair appears once: both entries have a positive first nonzero
    coordinate and x comes no later than y in the enumeration order.
    """
    if height < 1:
        raise ValueError("height must be at least 1")
    vectors = [v for v in vectors_by_height(ring.k, height)
               if intmat.vector_gcd(v) == 1]
    buckets: Dict[tuple, List[int]] = {}
    for n, v in enumerate(vectors):
        sq = ring.square(v)
        buckets.setdefault(sq.free + sq.torsion, []).append(n)
    found = []
    for members in buckets.values():
        for a_pos, a in enumerate(members):
            for b in members[a_pos:]:
                if ring.multiply(vectors[a], vectors[b]).is_zero():
                    found.append((a, b))
    found.sort()
    return [PrimitivePair(DegreeTwoClass(vectors[a]), DegreeTwoClass(vectors[b]))
            for a, b in found]


def u12_claim_check(ring: CohomologyRing, height: int) -> bool:
    """True iff every primitive square pair up to height lies in span(u1, u2)."""
    return all(pair.support() <= {0, 1}
               for pair in primitive_square_pairs(ring, height))


def _relations_by_last_generator(ring: CohomologyRing):
    groups: Dict[int, list] = {}
    for rel in ring.relations:
        support = [(i, j) for c, (i, j) in zip(rel, pairs(ring.k)) if c]
        if support:
            groups.setdefault(max(j for _, j in support), []).append(rel)
    return groups


def _relation_image_vanishes(rel, rows, ring_a, ring_b) -> bool:
    n = sym_dim(ring_b.k)
    raw = [0] * n
    for c, (i, j) in zip(rel, pairs(ring_a.k)):
        if c:
            img = ring_b.raw_product(rows[i], rows[j])
            for t in range(n):
                raw[t] += c * img[t]
    return ring_b.group.project(raw).is_zero()


def iso_candidates(ring_a: CohomologyRing, ring_b: CohomologyRing,
                   entry_bound: int) -> Iterator[Matrix]:
    """Matrices in lexicographic order (flattened, entries ascending) whose rows
    are primitive, whose first row starts positive, and which send each
    relation of ring_a to zero in ring_b.
    """
    k = ring_a.k
    values = range(-entry_bound, entry_bound + 1)
    rows = [list(v) for v in product(values, repeat=k) if intmat.vector_gcd(v) == 1]
    first_rows = [r for r in rows if next(c for c in r if c) > 0]
    checks = _relations_by_last_generator(ring_a)

    def extend(chosen):
        t = len(chosen)
        if t == k:
            yield [list(r) for r in chosen]
            return
        for r in (first_rows if t == 0 else rows):
            chosen.append(r)
            if all(_relation_image_vanishes(rel, chosen, ring_a, ring_b)
                   for rel in checks.get(t, ())):
                yield from extend(chosen)
            chosen.pop()

    yield from extend([])


def bounded_iso_search(ring_a: CohomologyRing, ring_b: CohomologyRing,
                       entry_bound: int) -> Optional[Matrix]:
    """First graded isomorphism with entries in [-bound, bound], or None.

    The identity is tried first; after that matrices come in lexicographic
    order of their flattened entries, up to an overall sign (M and -M induce
    the same map on H^4).
    """
    if ring_a.k != ring_b.k:
        raise ValueError("rings have different numbers of generators")
    if entry_bound < 1:
        return None
    ident = intmat.identity(ring_a.k)
    if verify_graded_iso(ident, ring_a, ring_b):
        return ident
    for M in iso_candidates(ring_a, ring_b, entry_bound):
        if abs(intmat.det(M)) == 1 and verify_graded_iso(M, ring_a, ring_b):
            return M
    return None


def obstruction_solutions(p: int, p_prime: int, bound: int
                          ) -> Iterator[Tuple[int, int, int, int, int]]:
    """Integer solutions (a1, a2, g1, g2, gi), all |.| <= bound and gi != 0, of

        -g1^2 - (g1 - g2)^2 = -p (a1 g2 + a2 g1 - 2 a1 g1 - a2 g2)
        -p' gi + 2 g1 = -p a1
        2 g2 = -p a2

    which constrain an isomorphism H*(R(p)) -> H*(R(p')) sending u1 to
    a1 u1' + a2 u2' and u3 to g1 u1' + g2 u2' + gi ui'.  The last two
    equations are solved for g1 and g2, so the scan is over (a1, a2, gi).
    """
    for a2 in range(-bound, bound + 1):
        if (p * a2) % 2:
            continue
        g2 = -p * a2 // 2
        if abs(g2) > bound:
            continue
        for a1 in range(-bound, bound + 1):
            for gi in range(-bound, bound + 1):
                if gi == 0:
                    continue
                num = p_prime * gi - p * a1
                if num % 2:
                    continue
                g1 = num // 2
                if abs(g1) > bound:
                    continue
                lhs = -g1 * g1 - (g1 - g2) ** 2
                rhs = -p * (a1 * g2 + a2 * g1 - 2 * a1 * g1 - a2 * g2)
                if lhs == rhs:
                    yield a1, a2, g1, g2, gi


def _check_primes(p, p_prime):
    if not (_is_odd_prime(p) and _is_odd_prime(p_prime)):
        raise ValueError("p and p' must be odd primes")
    if p == p_prime:
        raise ValueError("p and p' must differ")


def rp_obstruction_check(p: int, p_prime: int, bound: int) -> bool:
    """True iff p divides gcd(g1, g2, gi) for every bounded solution."""
    _check_primes(p, p_prime)
    return all(intmat.vector_gcd((g1, g2, gi)) % p == 0
               for _, _, g1, g2, gi in obstruction_solutions(p, p_prime, bound))


@dataclass(frozen=True)
class DistinguishBounds:
    pair_height: int = 10
    iso_entry_bound: int = 3
    obstruction_box: int = 30


@dataclass(frozen=True)
class Distinct:
    no_iso_bound: int
    obstruction_checked: bool
    pair_claim_height: int
    status = "Distinct"
    note = ("no isomorphism up to the stated bounds; consistent with "
            "H*(R(p)) and H*(R(p')) being non-isomorphic")

    def __post_init__(self):
        if not self.obstruction_checked:
            raise ValueError("Distinct requires the obstruction check")


@dataclass(frozen=True)
class Undecided:
    bounds: DistinguishBounds
    reasons: Tuple[str, ...] = field(default=())
    status = "Unknown"


def distinguish(p: int, p_prime: int, k: int,
                bounds: DistinguishBounds = DistinguishBounds()):
    _check_primes(p, p_prime)
    if k < 3:
        raise ValueError("k must be at least 3")
    reasons = []
    if min(bounds.pair_height, bounds.iso_entry_bound, bounds.obstruction_box) < 1:
        return Undecided(bounds, ("empty search budget",))
    ring_p, ring_q = rp_ring(p, k), rp_ring(p_prime, k)
    for ring in (ring_p, ring_q):
        if not u12_claim_check(ring, bounds.pair_height):
            reasons.append(f"primitive square pair outside U12 in {ring.name}")
    iso = bounded_iso_search(ring_p, ring_q, bounds.iso_entry_bound)
    if iso is not None:
        reasons.append(f"isomorphism found: {iso}")
    obstruction = (rp_obstruction_check(p, p_prime, bounds.obstruction_box)
                   and rp_obstruction_check(p_prime, p, bounds.obstruction_box))
    if not obstruction:
        reasons.append("obstruction check failed")
    if reasons:
        return Undecided(bounds, tuple(reasons))
    return Distinct(bounds.iso_entry_bound, True, bounds.pair_height)


def distinguish_to_json(verdict) -> dict:
    if isinstance(verdict, Distinct):
        return {"verdict": "Distinct",
                "evidence": {"no_iso_bound": verdict.no_iso_bound,
                             "obstruction_checked": verdict.obstruction_checked,
                             "pair_claim_height": verdict.pair_claim_height},
                "note": verdict.note}
    b = verdict.bounds
    return {"verdict": "Unknown",
            "bounds": {"pair_height": b.pair_height, "iso_entry_bound": b.iso_entry_bound,
                       "obstruction_box": b.obstruction_box},
            "reasons": list(verdict.reasons)}
