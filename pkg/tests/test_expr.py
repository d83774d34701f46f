import pytest

from uqtorus.expr import ParseError, parse_element, tokenize
from uqtorus.hopf import uq


@pytest.mark.parametrize("p", [2, 3])
def test_commutator(p):
    alg = uq(p)
    q = alg.ctx.q
    assert parse_element(alg, "E*F - F*E") == (alg.K - alg.Kinv) * (q - q.inv()).inv()


def test_literals_and_powers():
    alg = uq(3)
    ctx = alg.ctx
    assert parse_element(alg, "3/2") == alg.scalar(ctx.rational(1.5))
    assert parse_element(alg, "K^-1") == alg.Kinv
    assert parse_element(alg, "Khalf^2") == alg.K
    assert parse_element(alg, "E^3").is_zero()
    assert parse_element(alg, "(E + F)*K / q") == (alg.E + alg.F) * alg.K * ctx.q.inv()
    assert parse_element(alg, "-E") == -alg.E
    assert parse_element(alg, "i^2") == alg.scalar(-ctx.one)
    assert parse_element(alg, "K^0") == alg.one()


@pytest.mark.parametrize("text,pos", [("E*", 2), ("(E", 2), ("E / F", 4), ("E $ F", 2), ("E^F", 2), ("1/0", 1),
                                      ("E)", 1), ("E^-1", 3)])
def test_errors_carry_position(text, pos):
    with pytest.raises(ParseError) as info:
        parse_element(uq(2), text)
    assert info.value.pos == pos
    assert f"position {pos}" in str(info.value)


def test_tokens():
    kinds = [t[0] for t in tokenize("Khalf*3 + E")]
    assert kinds == ["name", "op", "int", "op", "name", "end"]
