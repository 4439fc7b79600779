"""Exact sparse multivariate (Laurent) polynomials over the rationals.

A :class:`PolyQ` maps monomials to :class:`fractions.Fraction` coefficients.
A monomial is a tuple of ``(symbol, exponent)`` pairs sorted by symbol name
with non-zero exponents; negative exponents are allowed (the norm symbol
``n`` is routinely inverted).
"""

from __future__ import annotations

import ast
import operator
from fractions import Fraction
from functools import reduce
from typing import Dict, Iterable, Mapping, Tuple, Union

Monomial = Tuple[Tuple[str, int], ...]
Number = Union[int, Fraction]

ONE_MONO: Monomial = ()


def _mono_mul(a: Monomial, b: Monomial) -> Monomial:
    if not a:
        return b
    if not b:
        return a
    d = dict(a)
    for s, e in b:
        e2 = d.get(s, 0) + e
        if e2:
            d[s] = e2
        else:
            del d[s]
    return tuple(sorted(d.items()))


def _mono_key(m: Monomial):
    # graded, then lexicographic on (symbol, exponent); deterministic printing
    return (sum(e for _, e in m), tuple((s, -e) for s, e in m))


class PolyQ:
    """Immutable exact polynomial.  Construct with :meth:`const` / :meth:`var`."""

    __slots__ = ("terms", "_hash")

    def __init__(self, terms: Mapping[Monomial, Number] | None = None):
        t: Dict[Monomial, Fraction] = {}
        if terms:
            for m, c in terms.items():
                if c:
                    t[m] = c if isinstance(c, Fraction) else Fraction(c)
        self.terms = t
        self._hash = None

    # -- constructors -------------------------------------------------------
    @classmethod
    def const(cls, c: Number) -> "PolyQ":
        return cls({ONE_MONO: c})

    @classmethod
    def var(cls, name: str, exp: int = 1) -> "PolyQ":
        if exp == 0:
            return cls.const(1)
        return cls({((name, exp),): 1})

    @classmethod
    def coerce(cls, x) -> "PolyQ":
        if isinstance(x, PolyQ):
            return x
        if isinstance(x, (int, Fraction)):
            return cls.const(x)
        raise TypeError(f"cannot coerce {type(x).__name__} to PolyQ")

    # -- predicates ---------------------------------------------------------
    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self) -> bool:
        return bool(self.terms)

    def is_const(self) -> bool:
        return not self.terms or (len(self.terms) == 1 and ONE_MONO in self.terms)

    def const_value(self) -> Fraction:
        if not self.is_const():
            raise ValueError(f"{self} is not constant")
        return self.terms.get(ONE_MONO, Fraction(0))

    def symbols(self) -> set:
        return {s for m in self.terms for s, _ in m}

    # -- arithmetic ---------------------------------------------------------
    def __add__(self, other) -> "PolyQ":
        if isinstance(other, (int, Fraction)):
            if not other:
                return self
            other = PolyQ.const(other)
        elif not isinstance(other, PolyQ):
            return NotImplemented
        if not other.terms:
            return self
        if not self.terms:
            return other
        t = dict(self.terms)
        for m, c in other.terms.items():
            v = t.get(m)
            if v is None:
                t[m] = c
            else:
                v += c
                if v:
                    t[m] = v
                else:
                    del t[m]
        r = PolyQ()
        r.terms = t
        return r

    __radd__ = __add__

    def __neg__(self) -> "PolyQ":
        r = PolyQ()
        r.terms = {m: -c for m, c in self.terms.items()}
        return r

    def __sub__(self, other) -> "PolyQ":
        if isinstance(other, (int, Fraction)):
            return self + (-other)
        if not isinstance(other, PolyQ):
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other) -> "PolyQ":
        return (-self) + other

    def __mul__(self, other) -> "PolyQ":
        if isinstance(other, (int, Fraction)):
            if not other:
                return PolyQ()
            r = PolyQ()
            r.terms = {m: c * other for m, c in self.terms.items()}
            return r
        if not isinstance(other, PolyQ):
            return NotImplemented
        if not self.terms or not other.terms:
            return PolyQ()
        t: Dict[Monomial, Fraction] = {}
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                m = _mono_mul(m1, m2)
                v = t.get(m, 0) + c1 * c2
                if v:
                    t[m] = v
                else:
                    t.pop(m, None)
        r = PolyQ()
        r.terms = t
        return r

    __rmul__ = __mul__

    def __truediv__(self, other) -> "PolyQ":
        """Division by a rational number or by a single monomial."""
        if isinstance(other, (int, Fraction)):
            return self * (Fraction(1) / Fraction(other))
        if isinstance(other, PolyQ) and len(other.terms) == 1:
            (m, c), = other.terms.items()
            inv = tuple((s, -e) for s, e in m)
            return self * PolyQ({inv: 1 / c})
        raise ZeroDivisionError("PolyQ division only by numbers or monomials")

    def __pow__(self, k: int) -> "PolyQ":
        if k < 0:
            return PolyQ.const(1) / (self ** (-k))
        result = PolyQ.const(1)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def __eq__(self, other) -> bool:
        if isinstance(other, (int, Fraction)):
            other = PolyQ.const(other)
        if not isinstance(other, PolyQ):
            return NotImplemented
        return self.terms == other.terms

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(frozenset(self.terms.items()))
        return self._hash

    # -- structure ----------------------------------------------------------
    def degree(self, sym: str) -> int:
        """Largest exponent of ``sym`` (``-1`` for the zero polynomial)."""
        if not self.terms:
            return -1
        return max(dict(m).get(sym, 0) for m in self.terms)

    def min_degree(self, sym: str) -> int:
        if not self.terms:
            return 0
        return min(dict(m).get(sym, 0) for m in self.terms)

    def coeffs(self, sym: str) -> Dict[int, "PolyQ"]:
        """Split into ``{exponent: coefficient}`` with respect to ``sym``."""
        out: Dict[int, Dict[Monomial, Fraction]] = {}
        for m, c in self.terms.items():
            d = dict(m)
            e = d.pop(sym, 0)
            out.setdefault(e, {})[tuple(sorted(d.items()))] = c
        return {e: PolyQ(t) for e, t in out.items()}

    def coeff(self, sym: str, e: int) -> "PolyQ":
        return self.coeffs(sym).get(e, PolyQ())

    def subs(self, mapping: Mapping[str, object]) -> "PolyQ":
        """Substitute symbols by numbers or polynomials.

        Negative exponents of a substituted symbol require the value to be a
        number or a monomial.
        """
        if not mapping:
            return self
        vals = {k: PolyQ.coerce(v) for k, v in mapping.items()}
        powcache: Dict[Tuple[str, int], PolyQ] = {}
        out = PolyQ()
        for m, c in self.terms.items():
            rest = []
            f = PolyQ.const(c)
            for s, e in m:
                if s in vals:
                    key = (s, e)
                    if key not in powcache:
                        powcache[key] = vals[s] ** e
                    f = f * powcache[key]
                else:
                    rest.append((s, e))
            out = out + f * PolyQ({tuple(rest): 1})
        return out

    def evaluate(self, mapping: Mapping[str, Number]) -> Fraction:
        r = self.subs(mapping)
        return r.const_value()

    def diff(self, sym: str) -> "PolyQ":
        t: Dict[Monomial, Fraction] = {}
        for m, c in self.terms.items():
            d = dict(m)
            e = d.get(sym, 0)
            if not e:
                continue
            if e == 1:
                del d[sym]
            else:
                d[sym] = e - 1
            t[tuple(sorted(d.items()))] = c * e
        return PolyQ(t)

    def clear_negative(self, sym: str) -> Tuple["PolyQ", int]:
        """Return ``(p * sym**k, k)`` with the smallest ``k >= 0`` making it a polynomial in ``sym``."""
        k = max(0, -self.min_degree(sym))
        if k == 0:
            return self, 0
        return self * PolyQ.var(sym, k), k

    def content(self) -> Fraction:
        """Positive rational ``c`` such that ``self / c`` has coprime integer coefficients."""
        from math import gcd, lcm
        if not self.terms:
            return Fraction(0)
        nums = [c.numerator for c in self.terms.values()]
        dens = [c.denominator for c in self.terms.values()]
        return Fraction(reduce(gcd, (abs(x) for x in nums)), reduce(lcm, dens))

    def primitive(self) -> "PolyQ":
        """Integer-cleared primitive form with positive leading coefficient."""
        if not self.terms:
            return self
        p = self / self.content()
        lead = max(p.terms, key=_mono_key)
        return -p if p.terms[lead] < 0 else p

    def sorted_terms(self):
        return sorted(self.terms.items(), key=lambda mc: _mono_key(mc[0]), reverse=True)

    # -- printing / parsing -------------------------------------------------
    def __str__(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for m, c in self.sorted_terms():
            mono = "*".join(s if e == 1 else f"{s}^{e}" if e > 0 else f"{s}^({e})" for s, e in m)
            if not mono:
                parts.append(str(c))
            elif c == 1:
                parts.append(mono)
            elif c == -1:
                parts.append("-" + mono)
            else:
                parts.append(f"{c}*{mono}")
        s = " + ".join(parts)
        return s.replace("+ -", "- ")

    def __repr__(self) -> str:
        return f"PolyQ({str(self)!r})"

    def to_json(self):
        """Exact serialization: list of ``[[[sym, exp], ...], "p/q"]``."""
        return [[[list(x) for x in m], str(c)] for m, c in self.sorted_terms()]

    @classmethod
    def from_json(cls, data) -> "PolyQ":
        return cls({tuple((s, e) for s, e in m): Fraction(c) for m, c in data})

    @classmethod
    def parse(cls, text: str) -> "PolyQ":
        """Parse an arithmetic expression such as ``"2*(n-2)*t^2 + 1/3"``."""
        tree = ast.parse(text.replace("^", "**").replace("{", "(").replace("}", ")"), mode="eval")
        return _eval_node(tree.body)


_BINOPS = {ast.Add: operator.add, ast.Sub: operator.sub, ast.Mult: operator.mul}


def _eval_node(node) -> PolyQ:
    if isinstance(node, ast.BinOp):
        left = _eval_node(node.left)
        if isinstance(node.op, ast.Pow):
            right = _eval_node(node.right)
            return left ** int(right.const_value())
        right = _eval_node(node.right)
        if isinstance(node.op, ast.Div):
            if right.is_const():
                return left / right.const_value()
            return left / right
        op = _BINOPS.get(type(node.op))
        if op is None:
            raise ValueError(f"unsupported operator {type(node.op).__name__}")
        return op(left, right)
    if isinstance(node, ast.UnaryOp):
        v = _eval_node(node.operand)
        if isinstance(node.op, ast.USub):
            return -v
        if isinstance(node.op, ast.UAdd):
            return v
    if isinstance(node, ast.Constant) and isinstance(node.value, int):
        return PolyQ.const(node.value)
    if isinstance(node, ast.Name):
        return PolyQ.var(node.id)
    raise ValueError(f"cannot parse polynomial node {ast.dump(node)}")


def as_poly(x) -> PolyQ:
    if isinstance(x, str):
        return PolyQ.parse(x)
    return PolyQ.coerce(x)


def falling(x: PolyQ, i: int) -> PolyQ:
    """``x (x-1) ... (x-i+1)``."""
    r = PolyQ.const(1)
    for j in range(i):
        r = r * (x - j)
    return r


def binom_poly(x, i: int) -> PolyQ:
    """``C(x, i)`` as a degree-``i`` polynomial in ``x``."""
    from math import factorial
    return falling(PolyQ.coerce(x), i) / factorial(i)


def binom(m: int, i: int) -> int:
    """Generalized binomial ``C(m, i)`` for any integer ``m`` and ``i >= 0``."""
    if i < 0:
        return 0
    num = 1
    for j in range(i):
        num *= m - j
    from math import factorial
    return num // factorial(i)


def psum(items: Iterable[PolyQ]) -> PolyQ:
    out = PolyQ()
    for p in items:
        out = out + p
    return out


def to_sympy(p: PolyQ):
    """Convert to a sympy expression (symbols by name)."""
    import sympy
    return sympy.sympify(str(p).replace("^", "**")) if p else sympy.Integer(0)


def from_sympy(expr) -> PolyQ:
    """Convert a polynomial (Laurent allowed) sympy expression."""
    import sympy
    text = str(sympy.expand(expr)).replace("**", "^")
    return PolyQ.parse(text)


def poly_gcd(polys: Iterable[PolyQ]) -> PolyQ:
    """Monic-up-to-content gcd of a family of polynomials (via sympy).

    Negative powers are treated as units, so the result is a genuine
    polynomial with no monomial factor.
    """
    import sympy
    g = sympy.Integer(0)
    for p in polys:
        if not p:
            continue
        g = sympy.gcd(g, to_sympy(p))
        if g.is_number:
            return PolyQ.const(1)
    if g == 0:
        return PolyQ.const(1)
    out = from_sympy(g)
    # strip monomial factors
    for s in sorted(out.symbols()):
        k = out.min_degree(s)
        if k:
            out = out / PolyQ.var(s, k)
    return out.primitive()


def exact_divide(p: PolyQ, q: PolyQ) -> PolyQ:
    """``p / q`` assuming exact divisibility (via sympy)."""
    import sympy
    if q.is_const():
        return p / q.const_value()
    num, rem = sympy.div(to_sympy(p), to_sympy(q))
    if rem != 0:
        raise ArithmeticError(f"{q} does not divide {p}")
    return from_sympy(num)
