import random

import pytest
from flint import arb
from flint import ctx as flint_ctx
from hypothesis import given
from hypothesis import strategies as st

from uqtorus.cyclo import complex_embed
from uqtorus.hopf import LinForm, dual_convolve, left_right_shift, right_shift, uq
from uqtorus.integrals import (build_integrals, integral_ratio, integral_space, is_left_integral, is_symmetric,
                               is_symmetric_full, phi_forms, symmetry_s2_holds, unibalanced_witness)
from uqtorus.quasi import build_ribbon


@pytest.mark.parametrize("p", [2, 3])
def test_unique_up_to_scale(p):
    assert len(integral_space(uq(p))) == 1
    assert len(integral_space(uq(p), right=True)) == 1


@pytest.mark.parametrize("p", [2, 3, 4])
def test_mu_l_vanishes_on_one(p):
    data = build_integrals(p)
    assert data.mu_l(uq(p).one()).is_zero()
    assert is_left_integral(data.mu_l)


def test_unibalanced_p2():
    data, rd = build_integrals(2), build_ribbon(2)
    g2 = rd.g * rd.g
    assert data.mu_r(g2) == data.mu_l(uq(2).one())
    assert unibalanced_witness(data, rd) is None


@given(st.integers(0, 10 ** 6))
def test_mu_l_s2_symmetry(seed):
    alg = uq(3)
    rng = random.Random(seed)
    assert symmetry_s2_holds(build_integrals(3).mu_l, alg.random_elem(rng), alg.random_elem(rng))


@pytest.mark.parametrize("p", [2, 3])
def test_phi_forms(p):
    data, rd = build_integrals(p), build_ribbon(p)
    alg = rd.alg
    eps = LinForm.counit_form(alg)
    phi_v, phi_vinv = phi_forms(data, rd)
    assert dual_convolve(phi_vinv, phi_v) == eps
    v2 = rd.v_inverse * rd.v_inverse
    assert dual_convolve(phi_vinv, right_shift(phi_vinv, v2)) == eps.scale(data.ratio)
    # phi_{v^-1} phi_{v^-1}^{v^-1} = phi_{v^-1}^{v^-1}
    shifted = right_shift(phi_vinv, rd.v_inverse)
    assert dual_convolve(phi_vinv, shifted) == shifted
    rng = random.Random(p)
    pairs = [(alg.random_elem(rng), alg.random_elem(rng)) for _ in range(20)]
    assert is_symmetric(phi_v, pairs) and is_symmetric(phi_vinv, pairs)
    assert is_symmetric_full(phi_v) and is_symmetric_full(phi_vinv)


@pytest.mark.parametrize("p", [2, 3, 4])
def test_ratio_scale_independent(p):
    data, rd = build_integrals(p), build_ribbon(p)
    ctx = rd.alg.ctx
    c = ctx.from_coeffs([3] + [1] * (ctx.degree - 1))
    assert integral_ratio(data.mu_l.scale(c), rd) == data.ratio
    old = flint_ctx.prec
    flint_ctx.prec = 120
    try:
        r = complex_embed(data.ratio, 100)
        assert abs(abs(r) - 1) < arb(2) ** -60
    finally:
        flint_ctx.prec = old


def test_mu_r_from_mu_l():
    # mu_r = mu_l o S
    data = build_integrals(2)
    alg = uq(2)
    for k in alg.sub_keys:
        x = alg.monomial(*alg.unkey(k))
        assert data.mu_r(x) == data.mu_l(x.antipode())
    assert left_right_shift(data.mu_r, a=alg.one()) == data.mu_r
