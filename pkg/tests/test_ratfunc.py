"""Fractions with factored denominators."""

import sympy
from hypothesis import given, strategies as st

from vlplus.polyq import PolyQ, to_sympy
from vlplus.ratfunc import Frac, clear_denominators, common_multiple, from_sympy

FACTORS = [PolyQ.parse(x) for x in ("2*n - 1", "n - 2", "10*n^2 - 4*n + 3")]
nums = st.lists(st.integers(-5, 5), min_size=1, max_size=3).map(
    lambda cs: sum((PolyQ.var("t", i) * c for i, c in enumerate(cs)), PolyQ()))
dens = st.lists(st.tuples(st.integers(0, 2), st.integers(0, 2)), max_size=2)


def make(num, den):
    f = Frac(num)
    for i, e in den:
        if e:
            f = f.divide_by(FACTORS[i], e)
    return f


def as_sympy(f: Frac):
    den = PolyQ.const(1)
    for p, e in f.den:
        den = den * p ** e
    return to_sympy(f.num) / to_sympy(den)


@given(nums, dens, nums, dens)
def test_arithmetic_agrees_with_sympy(a, da, b, db):
    x, y = make(a, da), make(b, db)
    assert sympy.simplify(as_sympy(x + y) - (as_sympy(x) + as_sympy(y))) == 0
    assert sympy.simplify(as_sympy(x * y) - as_sympy(x) * as_sympy(y)) == 0


@given(nums, dens)
def test_from_sympy_round_trip(a, da):
    x = make(a, da)
    assert from_sympy(as_sympy(x)) == x


def test_clear_denominators_uses_common_multiple():
    a = Frac(PolyQ.parse("t")).divide_by(FACTORS[0])
    b = Frac(PolyQ.parse("1")).divide_by(FACTORS[1], 2)
    cleared = clear_denominators({"a": a, "b": b})
    assert common_multiple([a, b]) == FACTORS[0] * FACTORS[1] ** 2
    assert cleared["a"] == PolyQ.parse("t") * FACTORS[1] ** 2
    assert cleared["b"] == FACTORS[0]


def test_subs_refactors_symbolic_denominator():
    f = Frac(PolyQ.parse("t + 1")).divide_by(FACTORS[0])
    assert f.subs({"n": 3}) == Frac(PolyQ.parse("t/5 + 1/5"))
    assert f.subs({"n": PolyQ.parse("t + 1")}) == Frac(PolyQ.parse("t + 1")).divide_by(PolyQ.parse("2*t + 1"))


def test_equality_across_representations():
    a = Frac(FACTORS[0] * PolyQ.var("t")).divide_by(FACTORS[0])
    assert a == Frac(PolyQ.var("t"))
