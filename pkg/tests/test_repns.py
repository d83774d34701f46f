import pytest

from uqtorus.hopf import uq
from uqtorus.linalg import KMatrix, identity, mat_eq, mat_mul, mat_scale
from uqtorus.mcg import r_on
from uqtorus.quasi import build_R, l_matrices
from uqtorus.repns import (build_pims, character, hom_space, loewy_check, scalar_of, sign_module, simple_module,
                           tensor_module, twisted_trace)


def test_trivial_module():
    alg = uq(3)
    X = simple_module(alg, "+", 1)
    assert X.dim == 1
    assert X.act(alg.E) == [[alg.ctx.zero]] and X.act(alg.F) == [[alg.ctx.zero]]
    assert X.act(alg.K) == [[alg.ctx.one]]


@pytest.mark.parametrize("p", [2, 3, 4])
def test_simple_modules(p):
    alg = uq(p)
    ctx = alg.ctx
    for eps in "+-":
        for s in range(1, p + 1):
            X = simple_module(alg, eps, s)
            assert X.relations_hold()
            assert X.act(alg.one()) == identity(s, ctx)
            sgn = 1 if eps == "+" else -1
            for j in range(s):
                assert X.act(alg.K)[j][j] == ctx.q_pow(s - 1 - 2 * j) * sgn


@pytest.mark.parametrize("p", [2, 3, 4])
def test_pims(p):
    alg = uq(p)
    pims = build_pims(alg)
    assert len(pims) == 2 * (p - 1)
    for P in pims.values():
        assert P.dim == 2 * p and P.relations_hold() and loewy_check(P)
        # quantum dimension of a projective vanishes
        assert twisted_trace(P, alg.pivotal()).is_zero()


def test_x2_squared_is_projective_at_p2():
    alg = uq(2)
    X = simple_module(alg, "+", 2)
    T = tensor_module(X, X)
    P = build_pims(alg)[("+", 1)]
    homs = hom_space(P, T)
    ctx = alg.ctx
    generic = homs[0]
    for k, h in enumerate(homs[1:], 2):
        generic = [[a + b * k for a, b in zip(ra, rb)] for ra, rb in zip(generic, h)]
    assert KMatrix.from_rows(ctx, generic).rank() == 4


def test_hom_spaces():
    alg = uq(3)
    ctx = alg.ctx
    X1, X2 = simple_module(alg, "+", 1), simple_module(alg, "+", 2)
    assert len(hom_space(X2, X2)) == 1
    phis = hom_space(X1, tensor_module(X2, X2))
    assert len(phis) == 1
    col = [row[0] for row in phis[0]]
    # Phi(1) proportional to q v0 (x) v1 - v1 (x) v0
    assert col[0].is_zero() and col[3].is_zero()
    assert col[1] == col[2] * (-ctx.q)


@pytest.mark.parametrize("p", [2, 3])
def test_braiding_intertwines(p):
    alg = uq(p)
    ctx = alg.ctx
    X = simple_module(alg, "+", 2)
    T = tensor_module(X, X)
    R = r_on(X, X, build_R(alg))
    perm = [[ctx.one if (r % 2, r // 2) == (c // 2, c % 2) else ctx.zero for c in range(4)] for r in range(4)]
    PR = mat_mul(perm, R, ctx)
    for g in (alg.E, alg.F, alg.K):
        assert mat_mul(PR, T.act(g), ctx) == mat_mul(T.act(g), PR, ctx)


@pytest.mark.parametrize("p", [2, 3])
def test_lift_dichotomy(p):
    alg = uq(p)
    ctx = alg.ctx
    R = build_R(alg)
    Xp, Xm = simple_module(alg, "+", 2, 1), simple_module(alg, "+", 2, -1)
    Cm = sign_module(alg)
    assert mat_eq(Xm.lift, mat_scale(Xp.lift, -ctx.one))
    assert mat_eq(tensor_module(Xp, Cm).lift, Xm.lift)
    Kp2 = simple_module(alg, "+", 2).act(alg.k_power(2 * p))
    base = r_on(Xp, Xp, R)
    # R on (I^-, J) is R on (I^+, J) times (K^p)_2; likewise for the second leg
    kron2 = [[Kp2[j][l] if i == k else ctx.zero for k in range(2) for l in range(2)] for i in range(2) for j in range(2)]
    kron1 = [[Kp2[i][k] if j == l else ctx.zero for k in range(2) for l in range(2)] for i in range(2) for j in range(2)]
    assert r_on(Xm, Xp, R) == mat_mul(base, kron2, ctx)
    assert r_on(Xp, Xm, R) == mat_mul(base, kron1, ctx)
    Rp = R.flip()
    assert r_on(Xm, Xp, Rp) == mat_mul(r_on(Xp, Xp, Rp), kron2, ctx)


def test_l_plus_identity_on_trivial():
    alg = uq(2)
    lp, lmi = l_matrices(simple_module(alg, "+", 1))
    assert lp == [[alg.one()]] and lmi == [[alg.one()]]


def test_characters_basic():
    alg = uq(3)
    ctx = alg.ctx
    chi2 = character(simple_module(alg, "+", 2))
    assert chi2(alg.K) == ctx.q + ctx.q.inv()
    for eps in "+-":
        for s in (1, 2, 3):
            assert character(simple_module(alg, eps, s))(alg.one()) == ctx.rational(s)
    assert scalar_of(simple_module(alg, "-", 1).act(alg.K), ctx) == -ctx.one
