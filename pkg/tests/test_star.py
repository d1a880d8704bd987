from itertools import product

import pytest
from hypothesis import given, strategies as st

from biqinv import formats
from biqinv.families import ra_cohomology, rp_ring
from biqinv.ring import CohomologyRing, DegreeTwoClass
from biqinv.star import (Fails, Holds, SearchBudget, StarCertificate, StarStage,
                         StarWitness, Unknown, check_star, gram_of_functional,
                         verdict_from_json, verdict_to_json, verify_certificate,
                         verify_witness, vectors_by_height)


def zero_sum_of_squares(ring, length, box):
    """Brute force: a nonzero tuple of at most `length` classes in [-box, box]
    whose squares sum to zero, or None."""
    vecs = [v for v in product(range(-box, box + 1), repeat=ring.k) if any(v)]
    squares = {v: ring.square(v) for v in vecs}
    for v in vecs:
        if squares[v].is_zero():
            return (v,)
    if length >= 2:
        seen = {}
        for v in vecs:
            seen.setdefault(squares[v], v)
        for v in vecs:
            w = seen.get(-squares[v])
            if w is not None:
                return (v, w)
    return None


def test_cp2cp2_one_stage_identity():
    v = check_star(formats.cp2cp2())
    assert isinstance(v, Holds)
    (stage,) = v.certificate.stages
    assert stage.gram == ((1, 0), (0, 1)) and stage.kernel_dimension == 0


def test_eschenburg_one_stage_identity():
    v = check_star(formats.eschenburg())
    assert isinstance(v, Holds)
    assert [s.gram for s in v.certificate.stages] == [((1, 0), (0, 1))]


@pytest.mark.parametrize("p", [3, 5, 7])
@pytest.mark.parametrize("k", [3, 4, 5])
def test_rp_two_stage_shape(p, k):
    v = check_star(rp_ring(p, k))
    assert isinstance(v, Holds)
    stages = v.certificate.stages
    assert len(stages) == 2
    last = stages[1].gram
    assert len(last) == k - 2
    assert all(last[i][j] == (p if i == j else 0) for i in range(k - 2) for j in range(k - 2))
    assert verify_certificate(rp_ring(p, k), v.certificate)


def test_s2xs2_fails_with_u():
    v = check_star(formats.s2xs2())
    assert isinstance(v, Fails)
    assert v.witness.tuple == (DegreeTwoClass((1, 0)),)
    assert verify_witness(formats.s2xs2(), v.witness)


def test_two_element_witness():
    # Z[u,v]/<u^2 + v^2>: each square is nonzero but u^2 + v^2 = 0
    R = CohomologyRing(2, ((1, 0, 1),))
    v = check_star(R)
    assert isinstance(v, Fails) and len(v.witness.tuple) == 2
    assert verify_witness(R, v.witness)
    assert all(not R.square(x).is_zero() for x in v.witness.tuple)


def test_free_polynomial_ring_holds():
    assert isinstance(check_star(CohomologyRing(3)), Holds)


def test_torsion_square_fails():
    # Z[u]/<2u^2>: 2u squares to 4u^2 = 0
    R = CohomologyRing(1, ((2,),))
    v = check_star(R)
    assert isinstance(v, Fails) and verify_witness(R, v.witness)


def test_tiny_budget_gives_unknown():
    R = ra_cohomology([[1, 2], [1, 1]])
    v = check_star(R, SearchBudget(max_functional_candidates=1))
    assert isinstance(v, Unknown)
    assert v.report["max_functional_candidates"] == 1
    assert v.report["height_bound"] == 20


def test_tampered_certificates_rejected():
    R = formats.cp2cp2()
    good = check_star(R).certificate
    assert verify_certificate(R, good)
    s = good.stages[0]
    assert not verify_certificate(R, StarCertificate(()))
    assert not verify_certificate(R, StarCertificate((StarStage((2,), s.gram, s.kernel_basis),)))
    assert not verify_certificate(R, StarCertificate((StarStage((-1,), ((-1, 0), (0, -1)),
                                                                 s.kernel_basis),)))
    # an incomplete chain for R(3): only the first stage
    R3 = rp_ring(3, 3)
    cert = check_star(R3).certificate
    assert not verify_certificate(R3, StarCertificate(cert.stages[:1]))
    assert not verify_certificate(R3, StarCertificate(cert.stages[::-1]))


def test_witness_verification_rejects_bad_tuples():
    R = formats.cp2cp2()
    assert not verify_witness(R, StarWitness((DegreeTwoClass((1, 0)),)))
    assert not verify_witness(R, StarWitness(()))
    assert not verify_witness(R, StarWitness((DegreeTwoClass((0, 0)),)))


def test_gram_is_quadratic_form():
    R = formats.eschenburg()
    for phi in [(1, 0), (0, 1), (2, -3)]:
        G = gram_of_functional(R, phi)
        for x in product(range(-3, 4), repeat=2):
            q = sum(G[i][j] * x[i] * x[j] for i in range(2) for j in range(2))
            assert q == sum(a * b for a, b in zip(phi, R.square(x).free))


def test_vectors_by_height_enumeration():
    vs = list(vectors_by_height(2, 2))
    assert len(vs) == len(set(vs))
    assert all(next(c for c in v if c) > 0 for v in vs)
    # one representative per +-pair of nonzero vectors in the box
    assert len(vs) == (5 ** 2 - 1) // 2
    heights = [max(map(abs, v)) for v in vs]
    assert heights == sorted(heights)


@pytest.mark.parametrize("R", [formats.cp2cp2(), formats.s2xs2(), rp_ring(3, 3),
                               CohomologyRing(1, ((2,),))], ids=lambda r: r.name or "ring")
def test_verdict_json_round_trip(R):
    v = check_star(R)
    assert verdict_from_json(verdict_to_json(v)) == v


@st.composite
def small_rings(draw):
    k = draw(st.integers(1, 2))
    n = k * (k + 1) // 2
    rels = draw(st.lists(st.lists(st.integers(-2, 2), min_size=n, max_size=n), max_size=2))
    return CohomologyRing(k, tuple(tuple(r) for r in rels))


@given(small_rings())
def test_verdicts_agree_with_brute_force(R):
    budget = SearchBudget(height_bound=4, max_functional_candidates=500)
    v = check_star(R, budget)
    if isinstance(v, Holds):
        assert verify_certificate(R, v.certificate)
        assert zero_sum_of_squares(R, 2, 3) is None
    elif isinstance(v, Fails):
        assert verify_witness(R, v.witness)
