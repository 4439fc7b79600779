"""Brackets of rank-one quadratic fields with symbolic mode indices."""

import copy

from hypothesis import given, strategies as st

from vlplus import modealg, reference as ref
from vlplus.polyq import PolyQ


def test_printed_bracket_formulas_hold():
    assert modealg.check_bracket_formulas() == {"H3": True, "H3H3": True, "H6_5": True, "H4": True}


def test_reconstruction_after_clearing_powers_of_m():
    assert modealg.check_reconstruction()


def test_perturbed_formula_is_rejected():
    formulas = copy.deepcopy(ref.COMMUTATOR_FORMULAS)
    letters, rhs = formulas["H3"]
    formulas["H3"] = (letters, (("-3*m + 1", "H", "m+3"),) + rhs[1:])
    assert not modealg.check_bracket_formulas(formulas)["H3"]


def test_perturbed_reconstruction_is_rejected():
    recipe = (("-5/m^3", "H3"), ("6/m^6", "H3H3"), ("9/m^5", "H6_5"))
    assert not modealg.check_reconstruction(recipe)


@given(st.integers(-4, 4), st.integers(-4, 4))
def test_symbolic_bracket_specializes(i, k):
    """``[H_i, omega_k]`` with symbolic ``k`` evaluated at ``k`` equals the concrete bracket."""
    m = PolyQ.var("m")
    sym = modealg.commutator("H", i, "omega", m)
    concrete = {(nm, int(idx)): c.const_value() for c, nm, idx in modealg.commutator("H", i, "omega", k)}
    special = {}
    for c, nm, idx in sym:
        key = (nm, int(PolyQ.coerce(idx).evaluate({"m": k})))
        special[key] = special.get(key, 0) + c.evaluate({"m": k})
    if ("vac", -1) not in concrete:
        special = {key: v for key, v in special.items() if key[0] != "vac" or key[1] == -1}
    special = {key: v for key, v in special.items() if v}
    assert special == concrete


def test_field_weights_and_decomposition():
    for name, w in (("omega", 2), ("H", 4), ("H6", 6)):
        assert modealg.field_weight(name) == w
        assert modealg.field(name).weight() == w
    parts = modealg.decompose_state(modealg.field("H"))
    assert parts and all(len(p) == 3 for p in parts)
