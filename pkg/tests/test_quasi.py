import pytest

from uqtorus.hopf import LinForm, TensorElem, uq
from uqtorus.integrals import phi_forms
from uqtorus.mcg import r_on
from uqtorus.quasi import (build_R, build_ribbon, hexagons_factored, l_matrices, l_minus, monodromy,
                           presentation_relations, psi01_matrix, r_inverse, ybe_factored)
from uqtorus.repns import scalar_of, simple_module
from uqtorus.slf import ribbon_scalar


def counit_leg(t, leg):
    alg = t.alg
    return t.apply_functional(leg, lambda k: alg.ctx.one * alg.counit_mono(k))


@pytest.mark.parametrize("p", [2, 3])
def test_r_counit_and_antipode(p):
    alg = uq(p)
    R = build_R(alg)
    assert counit_leg(R, 0) == alg.one()
    assert counit_leg(R, 1) == alg.one()
    assert R.apply_map(0, alg.antipode_mono).apply_map(1, alg.antipode_mono) == R


def test_r_tilde_displayed_matrix():
    # q^{-1/2} [[q,0,0,0],[0,1,qhat,0],[0,0,1,0],[0,0,0,q]] on the lifted X+(2) (x) X+(2)
    alg = uq(2)
    ctx = alg.ctx
    X = simple_module(alg, "+", 2)
    q, qh, z = ctx.q, ctx.qhat, ctx.zeta_pow(-1)
    o = ctx.zero
    target = [[q, o, o, o], [o, ctx.one, qh, o], [o, o, ctx.one, o], [o, o, o, q]]
    target = [[x * z for x in row] for row in target]
    assert r_on(X, X, build_R(alg)) == target


def test_r_tilde_at_p3():
    alg = uq(3)
    ctx = alg.ctx
    X = simple_module(alg, "+", 2)
    m = r_on(X, X, build_R(alg))
    z = ctx.zeta_pow(-1)
    assert m[1][2] == ctx.qhat * z and m[0][0] == ctx.q * z and m[2][1].is_zero()


def test_ybe_direct_expansion_p2():
    alg = uq(2)
    R = build_R(alg)
    R12, R13, R23 = R.embed(3, (0, 1)), R.embed(3, (0, 2)), R.embed(3, (1, 2))
    assert R12 * R13 * R23 == R23 * R13 * R12
    lhs, rhs = ybe_factored(alg)
    assert lhs == rhs


def test_hexagons_direct_p2():
    alg = uq(2)
    R = build_R(alg)
    R12, R13, R23 = R.embed(3, (0, 1)), R.embed(3, (0, 2)), R.embed(3, (1, 2))
    assert R.apply_coproduct(0) == R13 * R23
    assert R.apply_coproduct(1) == R13 * R12
    (a1, b1), (a2, b2) = hexagons_factored(alg)
    assert a1 == b1 and a2 == b2


def test_hexagons_for_r_minus_p2():
    # R^(-) = R'^-1 is again an R-matrix
    alg = uq(2)
    Rm = r_inverse(build_R(alg)).flip()
    R12, R13, R23 = Rm.embed(3, (0, 1)), Rm.embed(3, (0, 2)), Rm.embed(3, (1, 2))
    assert R12 * R13 * R23 == R23 * R13 * R12
    assert Rm.apply_coproduct(0) == R13 * R23
    assert Rm.apply_coproduct(1) == R13 * R12


@pytest.mark.parametrize("p", [2, 3, 4])
def test_ribbon_element(p):
    rd = build_ribbon(p)
    alg, ctx = rd.alg, rd.alg.ctx
    assert rd.v.counit() == ctx.one
    for s in range(1, p + 1):
        c = scalar_of(simple_module(alg, "+", s).act(rd.v), ctx)
        sign = 1 if s % 2 else -1
        assert c == ctx.zeta_pow(-(s * s - 1)) * sign  # (-1)^{s-1} q^{-(s^2-1)/2}
        assert c == ribbon_scalar(ctx, "+", s)
    assert scalar_of(simple_module(alg, "+", 1).act(rd.v), ctx) == ctx.one


@pytest.mark.parametrize("p", [2, 3])
def test_monodromy_and_drinfeld(p):
    rd = build_ribbon(p)
    alg = rd.alg
    assert counit_leg(monodromy(alg), 0) == alg.one()
    # D(eps) = eps(g) (eps (x) id)(RR') = 1: the unit of SLF goes to the unit of the center
    eps = LinForm.counit_form(alg)
    assert rd.drinfeld_map(eps) == alg.one()


def test_drinfeld_of_phi_forms(data2):
    rd = data2.ribbon
    phi_v, phi_vinv = phi_forms(data2.integrals, rd)
    assert rd.drinfeld_map(phi_v) == rd.v
    assert rd.drinfeld_map(phi_vinv) == rd.v_inverse


def test_drinfeld_rank_p2():
    assert build_ribbon(2).drinfeld_rank() == 16


def test_drinfeld_image_of_slf_is_central(data2):
    rd = data2.ribbon
    for f in data2.space.basis_raw:
        assert rd.drinfeld_map(f).is_central()


@pytest.mark.parametrize("p", [2, 3, 4])
def test_psi01_displayed(p):
    alg = uq(p)
    ctx = alg.ctx
    qi, qh = ctx.q.inv(), ctx.qhat
    E, F, K, Ki = alg.E, alg.F, alg.K, alg.Kinv
    M = psi01_matrix(simple_module(alg, "+", 2))
    assert M == [[K + F * E * (qi * qh * qh), F * (qi * qh)], [Ki * E * qh, Ki]]
    assert M[1][1] ** (2 * p) == alg.one()
    assert all(presentation_relations(M, alg).values())


def test_psi01_trivial_module():
    alg = uq(3)
    assert psi01_matrix(simple_module(alg, "+", 1)) == [[alg.one()]]


def test_l_matrices_displayed():
    alg = uq(3)
    qh = alg.ctx.qhat
    Kh, Khi = alg.Khalf, alg.k_power(-1)
    lp, lmi = l_matrices(simple_module(alg, "+", 2))
    zero = alg.elem()
    assert lp == [[Kh, Kh * alg.F * qh], [zero, Khi]]
    assert lmi == [[Kh, zero], [Khi * alg.E * qh, Khi]]
    # L^(-) is the inverse of L^(-)-1
    lm = l_minus(simple_module(alg, "+", 2))
    from uqtorus.quasi import elem_matmul

    assert elem_matmul(lm, lmi, alg) == [[alg.one(), zero], [zero, alg.one()]]


def test_rprime_is_flip():
    alg = uq(2)
    rd = build_ribbon(alg)
    assert rd.Rprime == rd.R.flip()
    assert rd.RRp == rd.R * rd.Rprime
    assert TensorElem.one(alg) == rd.R * r_inverse(rd.R)
