import pytest

from uqtorus.hopf import LinForm, dual_antipode, dual_convolve, right_shift, uq
from uqtorus.repns import casimir
from uqtorus.slf import build_slf, ribbon_decomposition_residual, solve_center, solve_slf


def test_dimensions(data2, data3):
    assert len(solve_slf(uq(2))) == 5
    assert len(solve_center(uq(2))) == 5
    assert data3.space.dim == 8
    assert len(data3.center.canonical_basis()) == 8


def test_counit_and_characters(data3):
    alg = data3.alg
    eps = LinForm.counit_form(alg)
    assert data3.space.coords(eps) is not None
    assert data3.space.chi("+", 1) == eps


@pytest.mark.parametrize("fixture", ["data2", "data3"])
def test_center_structure(fixture, request):
    data = request.getfixturevalue(fixture)
    c = data.center
    alg, p = data.alg, data.alg.p
    assert sum(c.idempotents.values(), alg.elem()) == alg.one()
    for s in range(1, p):
        assert (c.w_plus[s] * c.w_plus[s]).is_zero()
        assert (c.w_minus[s] * c.w_minus[s]).is_zero()
    assert ribbon_decomposition_residual(c, data.ribbon).is_zero()
    for z in c.canonical_basis():
        assert z.is_central()
        assert z.antipode() == z


@pytest.mark.parametrize("fixture", ["data2", "data3"])
def test_block_actions(fixture, request):
    data = request.getfixturevalue(fixture)
    sp, c, p = data.space, data.center, data.alg.p
    for s in range(1, p):
        for t in range(1, p):
            wm = right_shift(sp.G(s), c.w_minus[t])
            assert wm == (sp.chi("-", p - s) if s == t else LinForm.zero(data.alg))
            wp = right_shift(sp.G(s), c.w_plus[t])
            assert wp == (sp.chi("+", s) if s == t else LinForm.zero(data.alg))
        for t in range(1, p):
            assert right_shift(sp.chi("+", s), c.w_plus[t]).is_zero()
            assert right_shift(sp.chi("+", s), c.w_minus[t]).is_zero()
    assert dual_convolve(sp.G(1), sp.chi("+", 1)) == sp.G(1)


def test_antipode_fixes_slf(data3):
    for f in data3.space.gta:
        assert dual_antipode(f) == f


def test_drinfeld_is_multiplicative(data3):
    rd, sp = data3.ribbon, data3.space
    chi2 = sp.chi("+", 2)
    for f in [sp.chi("+", 2), sp.chi("-", 3), sp.G(1)]:
        assert rd.drinfeld_map(dual_convolve(chi2, f)) == rd.drinfeld_map(chi2) * rd.drinfeld_map(f)


def test_g_ladder(data3):
    # chi+_2 G_j has G-part ([j-1]/[j]) G_{j-1} + ([j+1]/[j]) G_{j+1}
    sp = data3.space
    ctx = data3.alg.ctx
    p = 3
    for j in range(1, p):
        c = sp.coords(dual_convolve(sp.chi("+", 2), sp.G(j)))
        gpart = c[2 * p:]
        for t in range(1, p):
            expect = ctx.zero
            if t == j - 1:
                expect = ctx.qint(j - 1) / ctx.qint(j)
            if t == j + 1:
                expect = ctx.qint(j + 1) / ctx.qint(j)
            assert gpart[t - 1] == expect


@pytest.mark.parametrize("p", [2, 3])
def test_casimir_from_character(p):
    # D(chi+_2) is a polynomial of degree one in the Casimir
    data = build_slf(p)
    ctx = data.alg.ctx
    W = data.ribbon.drinfeld_map(data.space.chi("+", 2))
    C = casimir(data.alg)
    rest = W + C * ctx.qhat ** 2
    assert rest == data.alg.one() * rest.coeff(0, 0, 0)
