from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

import oracles
from bihomlie import (BihomLieSuper2, Bracket, GradedSpace, LinearMap, MapsDoNotCommute,
                      NotAHomomorphism, ZeroParameter, lie_superalgebra, osp12, osp12_family,
                      osp_alpha, verify2, yau_twist2)
from bihomlie.errors import FailedPrecondition

nonzero = st.fractions(min_value=-20, max_value=20, max_denominator=9).filter(bool)
H, X, Y, F, G = range(5)


def entry(a, key):
    return a.bracket.basis_value(key)


def test_untwisted_table():
    a = osp12_family(1, 1)
    assert entry(a, (X, Y)) == {H: 1}
    assert entry(a, (F, F)) == {Y: 2}
    assert entry(a, (Y, X)) == {H: -1}
    assert entry(a, (G, F)) == entry(a, (F, G)) == {H: 1}
    assert a.alpha.is_identity() and a.beta.is_identity()


def test_twisted_entries():
    a = osp12_family(2, 3)
    assert entry(a, (H, X)) == {X: 18}
    assert entry(a, (G, F)) == {H: Fraction(2, 3)}
    assert entry(a, (G, G)) == {X: -12}
    assert entry(osp12_family(1, 2), (H, Y)) == {Y: Fraction(-1, 2)}


@given(nonzero, nonzero)
def test_twisted_table_formula(lam, mu):
    a = osp12_family(lam, mu)
    assert entry(a, (H, X)) == {X: 2 * mu ** 2}
    assert entry(a, (G, G)) == {X: -2 * lam * mu}
    assert entry(a, (G, F)) == {H: lam / mu}
    assert entry(a, (H, Y)) == {Y: -2 / mu ** 2}
    assert verify2(a).overall


@pytest.mark.parametrize("lam,mu", [(1, 1), (2, 3), (Fraction(-1, 2), 5), (3, -1)])
def test_osp_family_against_oracle(lam, mu):
    assert oracles.verify2(osp12_family(lam, mu))


def test_zero_parameter():
    with pytest.raises(ZeroParameter):
        osp12_family(0, 1)
    with pytest.raises(ZeroParameter):
        osp_alpha(0)


def test_abelian_passes():
    sp = GradedSpace(3, (0, 1, 1))
    a = lie_superalgebra(sp, Bracket(sp, 2))
    assert verify2(a).overall and oracles.verify2(a)


def test_perturbed_entry_fails_with_witness():
    a = osp12_family(2, 3)
    entries = dict(a.bracket.items())
    entries[(H, X)] = {X: 27}
    entries[(X, H)] = {X: -27}
    bad = BihomLieSuper2(a.space, Bracket(a.space, 2, entries), a.alpha, a.beta)
    rep = verify2(bad)
    assert not rep.overall and not oracles.verify2(bad)
    c = rep.first_failure()
    assert c.witness is not None and c.residual is not None


def test_failures_agree_with_oracle_on_broken_maps():
    a = osp12()
    for alpha in (LinearMap.diagonal(a.space, [1, 2, 1, 1, 1]),
                  LinearMap.diagonal(a.space, [2, 2, 2, 2, 2])):
        b = BihomLieSuper2(a.space, a.bracket, alpha, LinearMap.identity(a.space))
        assert verify2(b).overall == oracles.verify2(b) is False


def test_identity_twist_keeps_bracket():
    a = osp12()
    I = LinearMap.identity(a.space)
    assert yau_twist2(a, I, I).bracket == a.bracket


def test_yau_twist_rejects_bad_maps():
    a = osp12()
    with pytest.raises(NotAHomomorphism) as e:
        yau_twist2(a, LinearMap.diagonal(a.space, [1, 2, 1, 1, 1]), LinearMap.identity(a.space))
    assert e.value.witness is not None
    with pytest.raises(FailedPrecondition):
        yau_twist2(osp12_family(2, 3), osp_alpha(2), osp_alpha(3))
    # a Lie algebra sl2 inside osp: swap X, Y with H -> -H is an automorphism not commuting
    # with a nontrivial weight scaling
    sp = GradedSpace.even(3, ("h", "x", "y"))
    sl2 = lie_superalgebra(sp, Bracket.from_skew(sp, 2, {(0, 1): {1: 2}, (0, 2): {2: -2},
                                                         (1, 2): {0: 1}}))
    w = LinearMap(((-1, 0, 0), (0, 0, -1), (0, -1, 0)), sp)
    s = LinearMap.diagonal(sp, [1, 4, Fraction(1, 4)])
    assert verify2(yau_twist2(sl2, w, w)).overall
    with pytest.raises(MapsDoNotCommute):
        yau_twist2(sl2, w, s)
