"""Exact multivariate polynomials over Q."""

from fractions import Fraction

import sympy
from hypothesis import given, settings, strategies as st

from vlplus.polyq import PolyQ, binom, binom_poly, exact_divide, falling, from_sympy, poly_gcd, to_sympy

SYMS = ("n", "t", "w")

monomials = st.tuples(*[st.integers(0, 3) for _ in SYMS]).map(
    lambda es: tuple((s, e) for s, e in zip(SYMS, es) if e))
coefficients = st.fractions(min_value=-20, max_value=20, max_denominator=6)
polys = st.dictionaries(monomials, coefficients, max_size=5).map(PolyQ)


@given(polys, polys, polys)
def test_ring_axioms(a, b, c):
    assert a + b == b + a
    assert a * b == b * a
    assert (a + b) + c == a + (b + c)
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c
    assert a - a == PolyQ()


@given(polys)
def test_text_round_trip(p):
    assert PolyQ.parse(str(p)) == p


@given(polys)
def test_sympy_round_trip(p):
    assert from_sympy(to_sympy(p)) == p


@settings(max_examples=15)
@given(polys, polys)
def test_exact_divide_inverts_product(a, b):
    if b:
        assert exact_divide(a * b, b) == a


@settings(max_examples=15)
@given(polys, polys, polys)
def test_gcd_contains_common_factor(a, b, c):
    """The gcd divides both inputs and contains ``c`` up to monomial factors (units)."""
    if a and b and c:
        g = poly_gcd([a * c, b * c])
        assert exact_divide(a * c, g) * g == a * c
        assert exact_divide(b * c, g) * g == b * c
        core = poly_gcd([c])
        assert exact_divide(g, core) * core == g


@given(polys, st.dictionaries(st.sampled_from(SYMS), st.integers(-5, 5), min_size=3, max_size=3))
def test_evaluation_is_a_homomorphism(p, point):
    q = p * p + p
    assert q.evaluate(point) == p.evaluate(point) ** 2 + p.evaluate(point)


def test_var_with_zero_exponent_is_one():
    assert PolyQ.var("x", 0) == PolyQ.const(1)
    assert str(PolyQ.var("x") - PolyQ.var("x", 0)) == str(PolyQ.parse("x - 1"))


def test_parse_expression_with_powers_and_fractions():
    p = PolyQ.parse("-(t + 1)^2*(3*n/2 - 1)")
    assert p.evaluate({"t": 1, "n": 2}) == -8


def test_binomials():
    m = PolyQ.var("m")
    assert binom_poly(m, 3).evaluate({"m": 7}) == 35
    assert binom(-2, 3) == -4
    assert falling(m, 2) == m * m - m


def test_degree_and_coeffs():
    p = PolyQ.parse("3*t^2*n + t - 5")
    assert p.degree("t") == 2
    assert p.coeff("t", 2) == PolyQ.parse("3*n")
    assert p.diff("t") == PolyQ.parse("6*t*n + 1")


def test_laurent_clearing():
    p = PolyQ.parse("n^(-2)*t + 1")
    q, k = p.clear_negative("n")
    assert k == 2 and q == PolyQ.parse("t + n^2")


def test_content_and_primitive():
    p = PolyQ.parse("-4/3*n + 2/3")
    assert p.content() == Fraction(2, 3)
    assert p.primitive() == PolyQ.parse("2*n - 1")


def test_gcd_against_sympy():
    a = PolyQ.parse("(n-2)*(2*n-1)*(t^2 - n)")
    b = PolyQ.parse("(n-2)*(t + 3)*(2*n - 1)^2")
    g = poly_gcd([a, b])
    n = sympy.Symbol("n")
    assert sympy.simplify(to_sympy(g) - sympy.expand((n - 2) * (2 * n - 1))) == 0
