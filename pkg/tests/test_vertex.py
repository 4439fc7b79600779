"""Mode actions on lattice and Fock states."""

from fractions import Fraction

from hypothesis import given, strategies as st

from vlplus import modealg
from vlplus.fock import Ambient, State
from vlplus.generators import build
from vlplus.vertex import (NEG_INF, check_e_mode_identity, check_omega0, commutator_coeffs, conformal_vector,
                           epsilon, heisenberg_vector, mode_apply, symmetrized_exp, translate)

AMB = Ambient.rank_one(4)
OMEGA = conformal_vector(AMB)
H = build("H", {"n": 4}).state
E = symmetrized_exp(AMB, (1,))
TEST_VECTORS = [State.vacuum(AMB), State.exp(AMB, (Fraction(1, 4),)),
                State.monomial(AMB, [(0, 1)], (Fraction(-1, 2),)), State.monomial(AMB, [(0, 2), (0, 1)])]

pairs = st.sampled_from([(OMEGA, OMEGA), (OMEGA, H), (H, H), (OMEGA, E), (H, E)])
modes = st.integers(-3, 4)


@given(pairs, modes, modes, st.sampled_from(TEST_VECTORS))
def test_commutator_formula(ab, m, k, v):
    """``[a_m, b_k] v`` computed directly agrees with the table of ``a_i b``."""
    a, b = ab
    direct = mode_apply(a, m, mode_apply(b, k, v)) - mode_apply(b, k, mode_apply(a, m, v))
    assert commutator_coeffs(a, b).apply(m, k, v) == direct


@given(st.sampled_from(TEST_VECTORS), st.integers(-3, 3))
def test_vacuum_axioms(v, k):
    vac = State.vacuum(AMB)
    assert mode_apply(vac, -1, v) == v
    if k != -1:
        assert not mode_apply(vac, k, v)


@given(st.sampled_from(TEST_VECTORS))
def test_weight_bookkeeping(v):
    """``omega_1`` acts by the weight on homogeneous states."""
    assert mode_apply(OMEGA, 1, v) == v.scale(v.weight())


def test_omega_zero_is_translation():
    for a in (OMEGA, H, E):
        assert check_omega0(a)
    assert translate(State.vacuum(AMB)).is_zero()


def test_virasoro_central_charge():
    """``omega_3 omega = (c/2) vac`` with ``c`` the rank."""
    assert mode_apply(OMEGA, 3, OMEGA) == State.vacuum(AMB).scale(Fraction(1, 2))


def test_epsilon_cutoff():
    assert epsilon(E, State.exp(AMB, (Fraction(3, 4),))) == 2
    assert epsilon(E, State(AMB)) == NEG_INF


def test_e_mode_identity_nondiagonal():
    amb = Ambient.from_gram([[-2, 1], [1, 4]])
    assert all(check_e_mode_identity(amb, (1, 0), (1, 1), n) for n in range(-4, 5))
    assert heisenberg_vector(amb, (1, 0)) == State.monomial(amb, [(0, 1)])


@given(st.sampled_from(["omega", "H"]), st.sampled_from(["omega", "H"]), st.integers(-3, 4), st.integers(-3, 4),
       st.sampled_from([State.vacuum(modealg.AMBIENT), State.monomial(modealg.AMBIENT, [(0, 1), (0, 2)])]))
def test_bracket_routes_agree(a, b, i, k, v):
    """Symbolic mode-algebra brackets against direct mode actions at concrete indices."""
    direct = (mode_apply(modealg.field(a), i, mode_apply(modealg.field(b), k, v))
              - mode_apply(modealg.field(b), k, mode_apply(modealg.field(a), i, v)))
    rhs = State(v.ambient)
    for coef, name, idx in modealg.commutator(a, i, b, k):
        c = coef.const_value()
        rhs = rhs + (v.scale(c) if name == "vac" else mode_apply(modealg.field(name), int(idx), v).scale(c))
    assert rhs == direct
