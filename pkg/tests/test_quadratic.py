import itertools
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from bihomlie import (Cocycle, FailedPrecondition, GradedSpace, LinearMap, QuadraticAlgebra,
                      SuperForm, dual_ideal, isometry_check, isotropic_complement,
                      isotropic_ideal_check, lemma_theta_condition, qg_form, reconstruct_tstar,
                      series_lift_check, three_lie, tstar_bundle, tstar_extension, verify3,
                      verify_quadratic)
from bihomlie.corpus import (a4, abelian, four_form_theta, gl11_induced, n4, n4_involutive,
                             odd_heisenberg, single_dual_theta, solvable3, twisted_n4)
from bihomlie.graded import Bracket, Subspace, permutation_sign, rank
from bihomlie.quadratic import literal_invariance_residuals


def abelian_quadratic(space, gram):
    g = three_lie(space, Bracket(space, 3))
    return QuadraticAlgebra(g, SuperForm(space, gram))


# ------------------------------------------------------------------- forms

def test_verify_quadratic_examples():
    sp = GradedSpace.even(3)
    qa = abelian_quadratic(sp, [[1, 0, 0], [0, 1, 0], [0, 0, 1]])
    assert verify_quadratic(qa).overall
    qa = abelian_quadratic(sp, [[1, 0, 0], [0, 0, 0], [0, 0, 1]])
    rep = verify_quadratic(qa)
    assert not rep["nondegenerate"].passed and rep["supersymmetric"].passed
    assert verify_quadratic(tstar_extension(n4())).overall


def test_supersymmetry_and_parity():
    sp = GradedSpace(2, (1, 1))
    assert verify_quadratic(abelian_quadratic(sp, [[0, 1], [-1, 0]])).overall
    assert not verify_quadratic(abelian_quadratic(sp, [[0, 1], [1, 0]]))["supersymmetric"]
    with pytest.raises(Exception):
        SuperForm(GradedSpace(2, (0, 1)), [[0, 1], [1, 0]])


def test_qg_form_examples():
    g = odd_heisenberg()
    q = qg_form(g)
    n = g.dim
    for i, j in itertools.product(range(n), repeat=2):
        ei = tuple(int(k == i) for k in range(2 * n))
        fj = tuple(int(k == n + j) for k in range(2 * n))
        ej = tuple(int(k == j) for k in range(2 * n))
        fi = tuple(int(k == n + i) for k in range(2 * n))
        assert q(fj, ei) == int(i == j)
        assert q(ei, fj) == (-1) ** g.space.parity[i] * int(i == j)
        assert q(ei, ej) == 0 and q(fi, fj) == 0
    assert rank(qg_form(n4()).gram) == 8


def test_form_symmetry_check():
    sp = GradedSpace.even(2)
    g = three_lie(sp, Bracket(sp, 3))
    g = type(g)(sp, g.bracket, LinearMap(((1, 1), (0, 1)), sp), LinearMap.identity(sp))
    rep = verify_quadratic(QuadraticAlgebra(g, SuperForm(sp, [[1, 0], [0, 1]])))
    assert not rep["form-symmetric"].passed


def test_isometry_check():
    sp = GradedSpace.even(2)
    q1 = SuperForm(sp, [[0, 1], [1, 0]])
    q2 = SuperForm(sp, [[1, 0], [0, -1]])
    half = Fraction(1, 2)
    phi = LinearMap(((1, half), (1, -half)), sp)
    assert isometry_check(phi, q1, q2)
    assert not isometry_check(LinearMap.identity(sp), q1, q2)


# ------------------------------------------------------------------- lemma

def test_lemma_examples():
    g = n4()
    assert lemma_theta_condition(g, Cocycle.zero(g.space, g.space.dual()))
    c = lemma_theta_condition(g, single_dual_theta(g))
    assert not c and c.witness == ("e1", "e2", "e3", "e4")
    assert lemma_theta_condition(g, four_form_theta(g))


def random_dual_theta(draw, n):
    entries = {}
    for key in itertools.combinations(range(n), 3):
        v = {i: draw(st.integers(-2, 2)) for i in range(n)}
        v = {i: c for i, c in v.items() if c}
        if v:
            entries[key] = v
    return entries


@st.composite
def n4_thetas(draw):
    g = n4()
    kind = draw(st.sampled_from(["skew-in-all-four", "random"]))
    if kind == "random":
        return Cocycle.from_skew(g.space, g.space.dual(), random_dual_theta(draw, 4))
    c = draw(st.integers(-3, 3))
    return Cocycle(g.space, g.space.dual(),
                   {p[:3]: {p[3]: c * permutation_sign((0,) * 4, p)}
                    for p in itertools.permutations(range(4))} if c else {})


@settings(max_examples=30)
@given(n4_thetas())
def test_lemma_biconditional_random(th):
    g = n4()
    assert bool(lemma_theta_condition(g, th)) == verify_quadratic(tstar_bundle(g, th)).overall


@settings(max_examples=15)
@given(st.data())
def test_lemma_biconditional_involutive(data):
    g = n4_involutive()
    th = Cocycle.from_skew(g.space, g.space.dual(), random_dual_theta(data.draw, 4))
    assert bool(lemma_theta_condition(g, th)) == verify_quadratic(tstar_bundle(g, th)).overall


def test_literal_invariance_differs_from_proof_form():
    qa = tstar_extension(n4())
    assert literal_invariance_residuals(qa.algebra, qa.form)
    assert verify_quadratic(qa).overall
    assert any("fails" in n for n in verify_quadratic(qa).notes)


# -------------------------------------------------------------- extensions

def test_tstar_examples():
    qa = tstar_extension(n4())
    assert qa.dim == 8 and verify3(qa.algebra).overall
    qa = tstar_extension(abelian(2))
    assert qa.algebra.bracket.is_zero() and verify_quadratic(qa).overall


def test_tstar_gates():
    g = n4()
    with pytest.raises(FailedPrecondition) as e:
        tstar_extension(g, single_dual_theta(g))
    assert e.value.gate == "lemma_theta_condition"
    with pytest.raises(FailedPrecondition) as e:
        tstar_extension(g, Cocycle(g.space, g.space.dual(), {(0, 1, 2): {3: 1}}))
    assert e.value.gate == "verify_cocycle"
    with pytest.raises(FailedPrecondition) as e:
        tstar_extension(twisted_n4())
    assert e.value.gate == "coadjoint"
    bad = type(g)(g.space, Bracket(g.space, 3, {(0, 1, 2): {3: 1}}), g.alpha, g.beta)
    with pytest.raises(FailedPrecondition) as e:
        tstar_extension(bad)
    assert e.value.gate == "verify3"


def test_series_lifting():
    assert series_lift_check(n4()).overall
    assert series_lift_check(solvable3()).overall
    rep = series_lift_check(abelian(2))
    assert rep.overall and "length 1" in rep["solvable-lifts"].detail
    assert series_lift_check(a4()).overall


# -------------------------------------------------------- isotropic ideals

def test_dual_ideal_in_tstar():
    qa = tstar_extension(n4())
    rep = isotropic_ideal_check(qa, dual_ideal(4))
    assert rep.overall
    assert rep["orthogonal-equals-I"].passed and rep["lemma-proved-form"].passed
    assert any("does not hold" in n for n in rep.notes)


def test_isotropic_ideal_small_examples():
    sp = GradedSpace.even(2)
    qa = abelian_quadratic(sp, [[0, 1], [1, 0]])
    rep = isotropic_ideal_check(qa, Subspace([(1, 0)], 2))
    assert rep.overall and any("holds" in n for n in rep.notes)
    rep = isotropic_ideal_check(qa, Subspace([(1, 1)], 2))
    assert not rep["isotropic"].passed and rep["isotropic"].residual == (Fraction(2),)


CORPUS_TSTAR = [(n4(), None), (n4(), "omega"), (solvable3(), None), (odd_heisenberg(), None),
                (gl11_induced(), None), (n4_involutive(), None), (abelian(2), None)]


@pytest.mark.parametrize("g,th", CORPUS_TSTAR, ids=lambda x: getattr(x, "name", str(x)))
def test_forward_direction_and_orthogonal(g, th):
    th = four_form_theta(g) if th == "omega" else None
    qa = tstar_extension(g, th)
    I = dual_ideal(g.dim)
    rep = isotropic_ideal_check(qa, I)
    assert rep.overall
    assert qa.form.orthogonal(I) == I


def test_witt_correction_even_line():
    sp = GradedSpace.even(2)
    qa = abelian_quadratic(sp, [[1, 0], [0, -1]])
    I = Subspace([(1, 1)], 2)
    B0 = isotropic_complement(qa, I)
    assert B0.rank == 1 and not B0.contains((1, 1))
    b = B0.basis[0]
    assert qa.form(b, b) == 0


def test_witt_correction_odd_block():
    sp = GradedSpace(2, (1, 1))
    qa = abelian_quadratic(sp, [[0, 1], [-1, 0]])
    B0 = isotropic_complement(qa, Subspace([(1, 0)], 2))
    assert B0 == Subspace([(0, 1)], 2)


def test_complement_of_dual_is_g():
    qa = tstar_extension(n4())
    B0 = isotropic_complement(qa, dual_ideal(4))
    assert B0 == Subspace([tuple(int(k == i) for k in range(8)) for i in range(4)], 8)


# ----------------------------------------------------------- reconstruction

@pytest.mark.parametrize("g,th", CORPUS_TSTAR, ids=lambda x: getattr(x, "name", str(x)))
def test_reconstruction_roundtrip(g, th):
    th = four_form_theta(g) if th == "omega" else None
    qa = tstar_extension(g, th)
    rec = reconstruct_tstar(qa, dual_ideal(g.dim))
    assert rec.report.overall
    assert rec.B.bracket.entries == g.bracket.entries
    assert rec.B.alpha.matrix == g.alpha.matrix and rec.B.beta.matrix == g.beta.matrix
    if th is None:
        assert rec.theta.is_zero()
    else:
        assert dict(rec.theta.items()) == dict(th.items())
    assert rec.phi.is_identity() or rec.phi.matrix == tuple(
        tuple(Fraction(int(i == j)) for j in range(2 * g.dim)) for i in range(2 * g.dim))


def test_reconstruction_after_change_of_basis():
    """Relabel T*(N4) by an isometry and recover it from the image of g*."""
    g = n4()
    qa = tstar_extension(g, four_form_theta(g))
    sp = qa.algebra.space
    # x -> x, f -> f + (skew map g -> g*) keeps q_g, and mixes the two halves
    M = [[Fraction(int(i == j)) for j in range(8)] for i in range(8)]
    M[5][0], M[4][1] = 1, -1
    P = LinearMap(M, sp)
    assert isometry_check(P, qa.form, qa.form)
    from bihomlie.graded import invert
    Pi = invert(P)
    br = qa.algebra.bracket.precompose([Pi, Pi, Pi]).postcompose(P)
    h = type(qa.algebra)(sp, br, P @ qa.algebra.alpha @ Pi, P @ qa.algebra.beta @ Pi)
    qb = QuadraticAlgebra(h, qa.form)
    assert verify3(h).overall and verify_quadratic(qb).overall
    I = Subspace([P(v) for v in dual_ideal(4).basis], 8)
    rec = reconstruct_tstar(qb, I)
    assert rec.report.overall


def test_reconstruction_rejects_bad_ideal():
    qa = tstar_extension(n4())
    with pytest.raises(FailedPrecondition) as e:
        reconstruct_tstar(qa, Subspace([tuple(int(k == i) for k in range(8))
                                        for i in range(4)], 8))
    assert e.value.gate == "isotropic_ideal_check"
