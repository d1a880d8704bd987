"""Characteristic classes of sums of line bundles and inverse criteria."""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from typing import Dict, Tuple, Union

from .ring import CohomologyRing, DegreeFourClass, DegreeTwoClass, DimensionError
from .star import Holds, StarVerdict


@dataclass(frozen=True)
class LineBundleSum:
    """A sum of line bundles L(c) given by first Chern classes.

    ``real`` marks the realification of the complex sum; ``extra_trivial_rank``
    counts trivial summands (complex or real, matching ``real``).
    """
    c1s: Tuple[DegreeTwoClass, ...]
    real: bool = False
    extra_trivial_rank: int = 0

    def __post_init__(self):
        object.__setattr__(self, "c1s", tuple(DegreeTwoClass(c) for c in self.c1s))
        if self.extra_trivial_rank < 0:
            raise ValueError("extra_trivial_rank must be non-negative")

    @property
    def rank(self) -> int:
        return (2 if self.real else 1) * len(self.c1s) + self.extra_trivial_rank

    def is_trivial(self) -> bool:
        # line bundles are classified by c1
        return all(c.is_zero() for c in self.c1s)

    def __add__(self, other: "LineBundleSum") -> "LineBundleSum":
        if self.real != other.real:
            raise ValueError("cannot add a real and a complex bundle")
        return LineBundleSum(self.c1s + other.c1s, self.real,
                             self.extra_trivial_rank + other.extra_trivial_rank)

    def check(self, ring: CohomologyRing):
        for c in self.c1s:
            if len(c) != ring.k:
                raise DimensionError(
                    f"line bundle class has length {len(c)}, ring has k={ring.k}")

    @classmethod
    def from_json(cls, data: dict) -> "LineBundleSum":
        return cls(tuple(DegreeTwoClass(int(x) for x in line) for line in data.get("lines", [])),
                   bool(data.get("real", False)), int(data.get("extra_trivial", 0)))

    def to_json(self) -> dict:
        return {"lines": [list(c.coords) for c in self.c1s], "real": self.real,
                "extra_trivial": self.extra_trivial_rank}


@dataclass(frozen=True)
class ChernSummary:
    rank: int
    c1: DegreeTwoClass
    c2: DegreeFourClass
    stable_obstruction: DegreeFourClass


def chern_summary(E: LineBundleSum, ring: CohomologyRing) -> ChernSummary:
    """c1, c2 by the Whitney sum formula and the class c1^2 - 2 c2."""
    if E.real:
        raise ValueError("chern_summary needs a complex bundle; "
                         "use pontryagin_of_realification for real ones")
    E.check(ring)
    c1 = DegreeTwoClass.zero(ring.k)
    for c in E.c1s:
        c1 = c1 + c
    c2 = ring.group.zero()
    for i in range(len(E.c1s)):
        for j in range(i + 1, len(E.c1s)):
            c2 = c2 + ring.multiply(E.c1s[i], E.c1s[j])
    obstruction = ring.square(c1) - 2 * c2
    assert obstruction == ring.sum_of_squares(E.c1s), "Whitney identity violated"
    return ChernSummary(E.rank, c1, c2, obstruction)


def pontryagin_of_realification(E: LineBundleSum, ring: CohomologyRing) -> DegreeFourClass:
    """p1 of the realification: the sum of the squares of the c1's."""
    E.check(ring)
    return ring.sum_of_squares(E.c1s)


class InverseDecision(enum.Enum):
    HAS_BIQUOTIENT_INVERSE = "HasBiquotientInverse"
    NO_BIQUOTIENT_INVERSE = "NoBiquotientInverse"
    UNKNOWN = "Unknown"


def inverse_decision(ring: CohomologyRing, verdict: StarVerdict,
                     E: LineBundleSum) -> InverseDecision:
    """Over G//T^k with Property (*), only trivial bundles have inverses."""
    E.check(ring)
    if not isinstance(verdict, Holds):
        return InverseDecision.UNKNOWN
    if E.is_trivial():
        return InverseDecision.HAS_BIQUOTIENT_INVERSE
    return InverseDecision.NO_BIQUOTIENT_INVERSE


@dataclass(frozen=True)
class BettiProfile:
    dimension: int
    rational_betti: Dict[int, int]
    simply_connected: bool = True
    total_space_simply_connected: bool = True

    def __post_init__(self):
        betti = {int(d): int(b) for d, b in self.rational_betti.items()}
        if betti.get(0) != 1:
            raise ValueError("b_0 must be 1")
        if any(b < 0 for b in betti.values()):
            raise ValueError("Betti numbers are non-negative")
        if any(d < 0 or d > self.dimension for d in betti):
            raise ValueError("Betti number outside degrees 0..dimension")
        object.__setattr__(self, "rational_betti", betti)

    def betti(self, degree: int) -> int:
        return self.rational_betti.get(degree, 0)

    def to_json(self) -> dict:
        return {"dimension": self.dimension,
                "rational_betti": {str(d): b for d, b in sorted(self.rational_betti.items())},
                "simply_connected": self.simply_connected,
                "total_space_simply_connected": self.total_space_simply_connected}


class Condition(enum.Enum):
    H4I_VANISHES = "H4i_vanishes"
    H2I_VANISHES = "H2i_vanishes"
    H2_IS_LINE = "H2_is_line"
    NONE = "none"


@dataclass(frozen=True)
class InverseReport:
    real_inverse_guaranteed: bool
    complex_inverse_guaranteed: bool
    condition_used: Condition

    def to_json(self) -> dict:
        return {"real_inverse_guaranteed": self.real_inverse_guaranteed,
                "complex_inverse_guaranteed": self.complex_inverse_guaranteed,
                "condition_used": self.condition_used.value}


def sufficient_conditions(profile: BettiProfile) -> InverseReport:
    """Rational-cohomology criteria guaranteeing inverses among biquotient bundles.

    ``condition_used`` names the strongest condition met: the complex one if
    complex inverses are guaranteed, else the real one.
    """
    top = profile.dimension
    real = all(profile.betti(d) == 0 for d in range(4, top + 1, 4))
    even = {d: profile.betti(d) for d in range(2, top + 1, 2)}
    if all(b == 0 for b in even.values()):
        return InverseReport(real, True, Condition.H2I_VANISHES)
    line = (profile.betti(2) == 1
            and all(b == 0 for d, b in even.items() if d != 2)
            and profile.simply_connected and profile.total_space_simply_connected)
    if line:
        return InverseReport(real, True, Condition.H2_IS_LINE)
    return InverseReport(real, False, Condition.H4I_VANISHES if real else Condition.NONE)


@dataclass(frozen=True)
class FormalInverse:
    """The bundle (n-1)E + k, an inverse of E once nE + k is trivial."""
    label: str
    base_rank: int
    copies: int
    trivial_rank: int
    assumption: str = field(default="", compare=False)

    @property
    def rank(self) -> int:
        return self.copies * self.base_rank + self.trivial_rank

    @property
    def total_rank(self) -> int:
        """Rank of E + F."""
        return self.base_rank + self.rank

    def __str__(self):
        parts = []
        if self.copies:
            parts.append(self.label if self.copies == 1 else f"{self.copies}{self.label}")
        if self.trivial_rank:
            parts.append(str(self.trivial_rank))
        return " ⊕ ".join(parts) or "0"


def inverse_from_finite_order(E: Union[LineBundleSum, int], n: int, k: int,
                              label: str = "E") -> FormalInverse:
    """Build F = (n-1)E + k given the caller's claim that nE + k is trivial.

    The claim is recorded, not proved.
    """
    if n < 1:
        raise ValueError("n must be a positive integer")
    if k < 0:
        raise ValueError("k must be non-negative")
    rank = E.rank if isinstance(E, LineBundleSum) else int(E)
    return FormalInverse(label, rank, n - 1, k,
                         assumption=f"{n}{label} ⊕ {k} is trivial (asserted)")


def kill_c1_partner(E: LineBundleSum, ring: CohomologyRing) -> DegreeTwoClass:
    """c1 of the line bundle L with c1(E + L) = 0."""
    E.check(ring)
    total = DegreeTwoClass.zero(ring.k)
    for c in E.c1s:
        total = total + c
    return -total


def degree_four_to_json(x: DegreeFourClass) -> dict:
    out: Dict[str, object] = {"free": list(x.free)}
    if x.orders:
        out["torsion"] = list(x.torsion)
        out["orders"] = list(x.orders)
    return out

