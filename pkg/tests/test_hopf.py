import random

import pytest
from hypothesis import given
from hypothesis import strategies as st

from uqtorus.hopf import LinForm, TensorElem, right_shift, t_flip, t_inverse, uq
from uqtorus.quasi import build_R
from uqtorus.repns import simple_module


def rand_elems(p, ext=False):
    alg = uq(p)
    return st.integers(0, 10 ** 6).map(lambda s: alg.random_elem(random.Random(s), ext=ext))


@pytest.mark.parametrize("p", [2, 3, 4])
def test_dimensions(p):
    alg = uq(p)
    assert alg.dim == len(alg.basis_keys()) == 2 * p ** 3
    assert alg.ext_dim == len(alg.basis_keys(ext=True)) == 4 * p ** 3


def test_basic_products():
    alg = uq(3)
    x = alg.random_elem(random.Random(0))
    assert alg.one() * x == x
    assert (alg.E ** 2 * alg.E).is_zero()
    assert alg.K * alg.E * alg.Kinv == alg.E * alg.ctx.q ** 2


def test_kek_on_module():
    # the same relation on the matrices of X+(2)
    alg = uq(2)
    X = simple_module(alg, "+", 2)
    lhs = X.act(alg.K * alg.E * alg.Kinv)
    rhs = X.act(alg.E * alg.ctx.q ** 2)
    assert lhs == rhs


def test_grouplike_k():
    alg = uq(3)
    K = alg.K
    assert K.coproduct() == TensorElem.pure(K, K)
    assert K.antipode() == alg.Kinv
    assert K.counit() == alg.ctx.one


def test_coproduct_of_e():
    alg = uq(3)
    assert alg.E.coproduct() == TensorElem.pure(alg.E, alg.K) + TensorElem.pure(alg.one(), alg.E)


@pytest.mark.parametrize("p", [2, 3, 4])
def test_s_squared_is_pivotal_conjugation(p):
    alg = uq(p)
    g, ginv = alg.pivotal(), alg.k_power(-2 * (p + 1))
    for x in (alg.E, alg.F, alg.K, alg.Khalf):
        assert x.antipode().antipode() == g * x * ginv
    assert alg.E.antipode().antipode() == alg.E * alg.ctx.q ** 2


def test_tensor_ops():
    alg = uq(2)
    a, b = alg.E, alg.F * alg.K
    assert t_flip(TensorElem.pure(a, b)) == TensorElem.pure(b, a)
    one = TensorElem.one(alg)
    assert t_inverse(one) == one
    R = build_R(alg)
    assert t_inverse(R) == R.apply_map(0, alg.antipode_mono)


def test_right_shift_identities():
    alg = uq(2)
    psi = LinForm.from_function(alg, lambda k: alg.ctx.rational(k % 5 - 2))
    v = alg.one() + alg.E + alg.F * alg.K
    assert right_shift(psi, alg.one()) == psi
    assert right_shift(right_shift(psi, v), v.inverse()) == psi


@given(rand_elems(2, ext=True), rand_elems(2, ext=True), rand_elems(2, ext=True))
def test_associative(x, y, z):
    assert (x * y) * z == x * (y * z)


@given(rand_elems(3), rand_elems(3))
def test_coproduct_multiplicative(x, y):
    assert (x * y).coproduct() == x.coproduct() * y.coproduct()


@given(rand_elems(3), rand_elems(3))
def test_antipode_antimultiplicative(x, y):
    assert (x * y).antipode() == y.antipode() * x.antipode()


@given(rand_elems(3, ext=True))
def test_hopf_axioms(x):
    alg = x.alg
    d = x.coproduct()
    assert d.apply_coproduct(0) == d.apply_coproduct(1)
    unit = alg.one() * x.counit()
    assert d.apply_map(0, alg.antipode_mono).multiply_legs() == unit
    assert d.apply_map(1, alg.antipode_mono).multiply_legs() == unit
    assert d.apply_functional(0, lambda k: alg.counit_mono(k) * alg.ctx.one) == x
    assert x.antipode().antipode_inv() == x


@given(rand_elems(2), rand_elems(2))
def test_even_subalgebra_closed(x, y):
    assert x.in_subalgebra() and y.in_subalgebra()
    assert (x * y).in_subalgebra()


def test_json_round_trip():
    alg = uq(3)
    x = alg.random_elem(random.Random(5), ext=True)
    assert type(x).from_json(alg, x.to_json()) == x
