import random
from itertools import product

import pytest
from hypothesis import given, strategies as st

from biqinv import intmat
from biqinv.families import (Free, NonFree, TorusActionSpec, complete_to_unimodular,
                             freeness_check, is_admissible, line_bundle_presentation,
                             product_with_odd_sphere, q_first_pontryagin, q_table,
                             ra_cohomology, rp_matrix, rp_ring, selection_matrix)


def random_admissible(rng, k):
    A = intmat.identity(k)
    A[0][1], A[1][0] = 2, 1
    for i in range(2, k):
        for j in range(i):
            A[i][j] = rng.randint(-9, 9)
    return A


def kernel_order_on_torus(M, N):
    """Number of points x in (Z/N)^k with M x = 0 mod N, i.e. N-torsion isotropy."""
    k = len(M)
    return sum(1 for x in product(range(N), repeat=k)
               if all(sum(r[j] * x[j] for j in range(k)) % N == 0 for r in M))


def test_admissibility():
    assert is_admissible([[1, 2], [1, 1]])
    assert is_admissible(rp_matrix(3, 4))
    assert not is_admissible([[1, 2], [0, 1]])
    assert not is_admissible([[1, 2, 1], [1, 1, 0], [0, 0, 1]])
    with pytest.raises(ValueError):
        is_admissible([[1]])


def test_random_admissible_actions_are_free():
    rng = random.Random(7)
    for _ in range(100):
        A = random_admissible(rng, rng.randint(2, 6))
        assert isinstance(freeness_check(TorusActionSpec.from_matrix(A)), Free)


def test_degenerate_action():
    spec = TorusActionSpec(((1, 0), (0, 1)), ((1, 1), (1, 1)))
    r = freeness_check(spec)
    assert isinstance(r, NonFree) and r.positive_dimensional
    assert r.selection == ("Q", "Q") and r.isotropy_order is None


@pytest.mark.parametrize("seed", range(25))
def test_isotropy_order_matches_brute_force(seed):
    rng = random.Random(seed)
    k = rng.randint(1, 3)
    spec = TorusActionSpec(tuple(tuple(rng.randint(-2, 2) for _ in range(k)) for _ in range(k)),
                           tuple(tuple(rng.randint(-2, 2) for _ in range(k)) for _ in range(k)))
    r = freeness_check(spec)
    if isinstance(r, Free):
        for sel in product("PQ", repeat=k):
            M = selection_matrix(spec, sel)
            assert kernel_order_on_torus(M, 6) == 1
        return
    M = selection_matrix(spec, r.selection)
    if r.positive_dimensional:
        # a circle in the kernel shows up at every level N
        assert kernel_order_on_torus(M, 5) > 1 and kernel_order_on_torus(M, 7) > 1
    else:
        d = r.isotropy_order
        assert kernel_order_on_torus(M, d) == d


def test_rp_ring_relations():
    R = rp_ring(5, 3)
    assert R.relations[2] == (0, 0, 5, 0, 0, 1)
    with pytest.raises(ValueError):
        rp_matrix(9, 3)
    with pytest.raises(ValueError):
        rp_matrix(3, 2)
    with pytest.raises(ValueError):
        ra_cohomology([[1, 0], [1, 1]])


def test_q_values():
    assert q_first_pontryagin(0, 0) == 6
    assert q_first_pontryagin(1, 1) == 5
    assert q_first_pontryagin(1, 0) == 4
    table = q_table(-10, 10)
    assert len(table) == 21 * 21
    assert all(v == 6 - s * s - (s - t) ** 2 for s, t, v in table)


@given(st.lists(st.integers(-50, 50), min_size=1, max_size=6))
def test_complete_to_unimodular(v):
    if not any(v):
        with pytest.raises(ValueError):
            complete_to_unimodular(v)
        return
    g = intmat.vector_gcd(v)
    b = [x // g for x in v]
    M = complete_to_unimodular(b)
    assert M[0] == b and abs(intmat.det(M)) == 1
    if g > 1:
        with pytest.raises(ValueError):
            complete_to_unimodular(v)


def test_complete_small_case():
    assert complete_to_unimodular([2, 3]) == [[2, 3], [-1, -1]]


@given(st.lists(st.integers(-30, 30), min_size=1, max_size=5))
def test_line_bundle_presentation(x):
    pres = line_bundle_presentation(x)
    assert list(pres.character) == list(x)
    B = [list(r) for r in pres.B]
    Binv = [[c] + list(rest) for c, rest in zip(pres.circle, pres.complement)]
    assert intmat.matmul(B, Binv) == intmat.identity(len(x))


def test_product_with_sphere_keeps_low_degrees():
    R = rp_ring(3, 3)
    P = product_with_odd_sphere(R, 5)
    assert P.ring.relations == R.relations and P.dimension == 6 + 5
    with pytest.raises(ValueError):
        product_with_odd_sphere(R, 4)


def test_spec_json_round_trip():
    spec = TorusActionSpec.from_matrix([[1, 2], [1, 1]])
    assert TorusActionSpec.from_json(spec.to_json()) == spec
    with pytest.raises(ValueError):
        TorusActionSpec(((1, 0),), ((1,),))
