"""Zhu products and zero modes on top-level vectors e^lambda."""

from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from vlplus.fock import Ambient, State
from vlplus.generators import build
from vlplus.vertex import mode_apply
from vlplus.zhu import annihilates_lowest, circ, lambda_action_check, star, zero_mode

AMB1 = Ambient.rank_one(6)
OMEGA = build("omega", {"n": 6}).state
H = build("H", {"n": 6}).state
AMB2 = Ambient.from_gram([[4, 0], [0, 9]])
GRID2 = [(Fraction(a, 2), Fraction(b, 3)) for a in range(-2, 3) for b in range(-2, 3)]


def test_vacuum_is_the_unit():
    vac = State.vacuum(AMB1)
    for a in (OMEGA, H):
        assert star(vac, a).state == a
        assert star(a, vac).state == a


def test_circ_with_vacuum_is_translation_plus_weight():
    vac = State.vacuum(AMB1)
    want = mode_apply(OMEGA, -2, vac) + OMEGA.scale(2)
    res = circ(OMEGA, vac)
    assert res.state == want and res.certificate == 1


@given(st.sampled_from([OMEGA, H]), st.sampled_from([OMEGA, H]), st.integers(-4, 4))
def test_zero_mode_is_multiplicative_on_top_vectors(a, b, j):
    """``o(a * b) = o(a) o(b)`` on the top vector ``e^lambda`` of ``M(1, lambda)``."""
    v = State.exp(AMB1, (Fraction(j, 6),))
    assert zero_mode(star(a, b).state, v) == zero_mode(a, zero_mode(b, v))


@given(st.sampled_from([OMEGA, H]), st.integers(-4, 4))
def test_circ_products_act_trivially(a, j):
    """Elements of ``O(V)`` have zero modes vanishing on top vectors."""
    v = State.exp(AMB1, (Fraction(j, 6),))
    assert not zero_mode(circ(a, H).state, v)


def test_omega_zero_mode_is_the_weight():
    v = State.exp(AMB1, (Fraction(2, 6),))
    assert zero_mode(OMEGA, v) == v.scale(Fraction(2 * 2, 2 * 6))


def test_star_requires_homogeneous_left_factor():
    with pytest.raises(ValueError):
        star(OMEGA + H, OMEGA)


@pytest.mark.parametrize("lam", GRID2, ids=str)
def test_lambda_action(lam):
    assert lambda_action_check(AMB2, lam)


@pytest.mark.parametrize("lam", GRID2[:6], ids=str)
def test_eu_annihilates_top_vectors(lam):
    assert annihilates_lowest("Eu", AMB2, lam)


@pytest.mark.xfail(strict=True, reason="o(Et) e^lambda = 150 <h_i,lambda><h_j,lambda> e^lambda, not zero")
def test_et_annihilates_top_vectors():
    assert annihilates_lowest("Et", AMB2, (Fraction(1, 2), Fraction(1, 3)))


def test_et_zero_mode_value():
    lam = (Fraction(1, 2), Fraction(1, 3))
    params = {"gram": [["4", "0"], ["0", "9"]], "i": 1, "j": 2}
    v = State.exp(AMB2, lam)
    hi, hj = Fraction(1, 2) * 4 / 2, Fraction(1, 3) * 9 / 3
    assert zero_mode(build("Et", params).state, v) == v.scale(150 * hi * hj)
