import pytest
from hypothesis import given, strategies as st

from biqinv import formats
from biqinv.bundles import (BettiProfile, Condition, FormalInverse, InverseDecision,
                            LineBundleSum, chern_summary, inverse_decision,
                            inverse_from_finite_order, kill_c1_partner,
                            pontryagin_of_realification, sufficient_conditions)
from biqinv.families import catalog_low_dim, rp_ring
from biqinv.ring import DegreeTwoClass, DimensionError
from biqinv.star import Fails, Unknown, check_star

RINGS = [formats.cp2cp2(), formats.eschenburg(), formats.s2xs2(), rp_ring(3, 3)]


@st.composite
def ring_and_bundle(draw):
    R = draw(st.sampled_from(RINGS))
    lines = draw(st.lists(st.lists(st.integers(-7, 7), min_size=R.k, max_size=R.k),
                          max_size=5))
    return R, LineBundleSum(tuple(DegreeTwoClass(c) for c in lines))


@given(ring_and_bundle())
def test_whitney_identity(case):
    R, E = case
    cs = chern_summary(E, R)
    expected = R.group.zero()
    for c in E.c1s:
        expected = expected + R.square(c)
    assert cs.stable_obstruction == expected
    # c2 from the elementary symmetric polynomial, term by term
    c2 = R.group.zero()
    for i, a in enumerate(E.c1s):
        for b in E.c1s[i + 1:]:
            c2 = c2 + R.multiply(a, b)
    assert cs.c2 == c2
    assert pontryagin_of_realification(E, R) == expected


def test_ranks_and_trivial_bundles():
    E = LineBundleSum(((1, 0), (0, 0)), extra_trivial_rank=2)
    assert E.rank == 4 and not E.is_trivial()
    rE = LineBundleSum(((1, 0),), real=True)
    assert rE.rank == 2
    with pytest.raises(ValueError):
        chern_summary(rE, formats.cp2cp2())
    with pytest.raises(ValueError):
        E + rE
    assert LineBundleSum(((0, 0),)).is_trivial()


def test_length_mismatch():
    with pytest.raises(DimensionError):
        chern_summary(LineBundleSum(((1, 0, 0),)), formats.cp2cp2())


def test_inverse_decision_cp2cp2():
    R = formats.cp2cp2()
    v = check_star(R)
    assert inverse_decision(R, v, LineBundleSum(((1, 0),))) is InverseDecision.NO_BIQUOTIENT_INVERSE
    assert inverse_decision(R, v, LineBundleSum(((0, 0),), extra_trivial_rank=1)) \
        is InverseDecision.HAS_BIQUOTIENT_INVERSE
    assert inverse_decision(R, Unknown(), LineBundleSum(((1, 0),))) is InverseDecision.UNKNOWN
    fails = check_star(formats.s2xs2())
    assert isinstance(fails, Fails)
    assert inverse_decision(formats.s2xs2(), fails, LineBundleSum(((1, 0),))) \
        is InverseDecision.UNKNOWN


def test_kill_c1_partner():
    R = formats.cp2cp2()
    E = LineBundleSum(((1, 2), (3, -1)))
    L = kill_c1_partner(E, R)
    assert chern_summary(E + LineBundleSum((L,)), R).c1.is_zero()


def test_catalog_conditions():
    expected = {"S^2": Condition.H2_IS_LINE, "S^3": Condition.H2I_VANISHES,
                "S^5": Condition.H2I_VANISHES, "S^2xS^3": Condition.H2_IS_LINE,
                "SU(3)/SO(3)": Condition.H2I_VANISHES, "S^3~xS^2": Condition.H2_IS_LINE}
    entries = catalog_low_dim()
    assert [e.name for e in entries] == list(expected)
    for e in entries:
        r = sufficient_conditions(e.profile)
        assert r.real_inverse_guaranteed and r.complex_inverse_guaranteed
        assert r.condition_used is expected[e.name]


def test_conditions_can_fail():
    # CP^2: b_4 = 1, so neither criterion applies
    r = sufficient_conditions(BettiProfile(4, {0: 1, 2: 1, 4: 1}))
    assert not r.real_inverse_guaranteed and not r.complex_inverse_guaranteed
    assert r.condition_used is Condition.NONE
    # S^2 x S^2 x S^3 (dim 7): H^4 != 0 rationally
    r = sufficient_conditions(BettiProfile(7, {0: 1, 2: 2, 3: 1, 4: 1, 5: 2, 7: 1}))
    assert r.condition_used is Condition.NONE
    # b_2 = 2 but no H^4 in dimension 5: real only
    r = sufficient_conditions(BettiProfile(5, {0: 1, 2: 2, 3: 2, 5: 1}))
    assert r.real_inverse_guaranteed and not r.complex_inverse_guaranteed
    assert r.condition_used is Condition.H4I_VANISHES


def test_betti_profile_validation():
    with pytest.raises(ValueError):
        BettiProfile(3, {0: 2})
    with pytest.raises(ValueError):
        BettiProfile(3, {0: 1, 4: 1})


def test_formal_inverse():
    F = inverse_from_finite_order(LineBundleSum(((1, 0),)), 3, 2)
    assert str(F) == "2E ⊕ 2" and F.rank == 4 and F.total_rank == 5
    assert str(inverse_from_finite_order(5, 1, 0)) == "0"
    assert inverse_from_finite_order(5, 2, 0) == FormalInverse("E", 5, 1, 0)
    with pytest.raises(ValueError):
        inverse_from_finite_order(2, 0, 1)
