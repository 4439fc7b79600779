"""Elimination with witnesses, gcds over Q(n)[t], certified integer roots."""

from fractions import Fraction

import pytest
import sympy
from hypothesis import given, settings, strategies as st

from vlplus import reference as ref
from vlplus.eliminate import (Elimination, EliminationError, constrained_solutions, eliminate_terms,
                              gcd_witness, integer_roots, lowest_chain, polynomial_eliminant,
                              rational_multiple, scalar_relation)
from vlplus.polyq import PolyQ, to_sympy
from vlplus.rewrite import Relation

P = PolyQ.parse
A, B, C = ((), 0, ()), ((), -1, (("omega", 2),)), ((), 1, ())


def rel(**coeffs):
    keys = {"a": A, "b": B, "c": C}
    return Relation({keys[k]: P(v) for k, v in coeffs.items()})


def test_eliminate_terms_with_witness():
    r1 = rel(a="t + 1", b="n")
    r2 = rel(a="t^2", b="t - n")
    out = eliminate_terms([r1, r2], [B])
    assert out.verify()
    assert len(out.relations) == 1 and B not in out.relations[0].terms
    assert out.relations[0].coefficient(A) == P("n*t^2 - (t+1)*(t - n)")


def test_eliminate_terms_rejects_tampered_witness():
    out = eliminate_terms([rel(a="t + 1", b="n"), rel(a="t^2", b="t - n")], [B])
    bad = Elimination(out.inputs, out.targets, out.relations, [[c + 1 for c in row] for row in out.witness])
    assert not bad.verify()


def test_eliminate_terms_needs_enough_relations():
    with pytest.raises(EliminationError) as err:
        eliminate_terms([rel(a="1", b="n")], [B])
    assert err.value.residual


def test_scalar_relation():
    s = scalar_relation(rel(a="t - 2"))
    assert s.poly == P("t - 2") and "E_{t} u" in str(s)
    with pytest.raises(ValueError):
        scalar_relation(rel(a="1", b="1"))


def test_gcd_witness_and_eliminant():
    p1 = P("t^2*(t - n)*(2*n - 1)")
    p2 = P("t^2*(t + 1)")
    gw = gcd_witness(p1, p2, "t")
    assert gw.verify() and gw.g.degree("t") == 2
    ew = polynomial_eliminant(p1, p2, "t")
    assert ew.verify()
    assert "t" not in ew.d.symbols()


def test_rational_multiple():
    assert rational_multiple(P("-2*t - 2*n"), P("t + n")) == -2
    assert rational_multiple(P("t"), P("t + 1")) is None


integer_polys = st.lists(st.integers(-30, 30), min_size=2, max_size=7).filter(lambda cs: cs[-1] != 0)


@settings(max_examples=40)
@given(integer_polys, st.lists(st.integers(-12, 12), max_size=3))
def test_integer_roots_planted(coeffs, planted):
    """Sturm/bisection result vs. sympy (real root count) and brute force (integer roots)."""
    n = PolyQ.var("n")
    p = sum((n ** i * c for i, c in enumerate(coeffs)), PolyQ())
    for r in planted:
        p = p * (n - r)
    rep = integer_roots(p)
    assert rep.verify()
    poly = sympy.Poly(to_sympy(p), sympy.Symbol("n"))
    assert rep.real_root_count == sympy.Poly(poly.sqf_part()).count_roots()
    brute = sorted({r for r in range(-rep.bound, rep.bound + 1) if p.evaluate({"n": r}) == 0})
    assert sorted(rep.integer_roots) == brute
    assert set(planted) <= set(rep.integer_roots)


EXPECTED_G = {  # (degree, real roots, Cauchy bound)
    1: (8, 4, 19), 2: (10, 2, 52), 3: (17, 5, 5793), 4: (28, 6, 126852), 5: (38, 12, 3093896463),
}


@pytest.mark.parametrize("i", [1, 2, 3, 4, 5])
def test_g_polynomials_have_no_integer_roots(i):
    g = ref.poly(ref.G_POLYS[i - 1])
    rep = integer_roots(g)
    assert rep.verify()
    assert rep.integer_roots == []
    assert (g.degree("n"), rep.real_root_count, rep.bound) == EXPECTED_G[i]
    assert sympy.Poly(to_sympy(g), sympy.Symbol("n")).count_roots() >= rep.real_root_count


def test_tampered_certificate_fails():
    rep = integer_roots(ref.poly(ref.G_POLYS[0]))
    a, b = rep.intervals[0]
    rep.intervals[0] = (b, b + 1)
    assert not rep.verify()


def test_constrained_solutions_lowest():
    sols = constrained_solutions(ref.poly(ref.LOWEST_ELIMINANT))
    assert sorted(map(str, sols.solutions)) == sorted(str(ref.poly(s)) for s in ref.CONSTRAINED_T)
    kinds = {str(v.factor): v.kind for v in sols.verdicts}
    assert kinds[str(P("2*t - n + 1"))] == "parity-excluded"
    assert kinds[str(P("2*t - n + 3"))] == "parity-excluded"
    assert "unresolved" not in kinds.values() and "vanishes-at" not in kinds.values()


def test_constrained_solutions_flags_vanishing_parameter_factor():
    sols = constrained_solutions(P("t*(n - 4)"))
    assert {v.kind for v in sols.verdicts} == {"solution", "vanishes-at"}
    assert constrained_solutions(P("t*(n - 2)")).verdicts[-1].kind in ("nonvanishing", "solution")


def test_lowest_chain_eliminant():
    chain = lowest_chain()
    assert rational_multiple(chain.t_factor, ref.poly(ref.LOWEST_T_FACTOR)) == 1
    assert "w" in chain.carrier.symbols()
