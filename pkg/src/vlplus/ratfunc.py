"""Fractions ``num / den`` with a polynomial numerator and a factored denominator.

Denominators only ever come from a few irreducible polynomials (in ``n``),
so they are stored as ``{factor: exponent}`` with primitive factors.  This
keeps sums cheap: the common denominator is the factorwise maximum.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Dict, Iterable, Tuple

from .polyq import PolyQ, as_poly

Den = Tuple[Tuple[PolyQ, int], ...]


def _den_key(f: PolyQ):
    return str(f)


def _norm_den(d: Dict[PolyQ, int]) -> Den:
    return tuple(sorted(((f, e) for f, e in d.items() if e), key=lambda fe: _den_key(fe[0])))


def _den_poly(d: Den) -> PolyQ:
    out = PolyQ.const(1)
    for f, e in d:
        out = out * f ** e
    return out


class Frac:
    __slots__ = ("num", "den")

    def __init__(self, num=0, den: Den = ()):
        self.num = as_poly(num)
        self.den = den if self.num else ()

    @classmethod
    def coerce(cls, x) -> "Frac":
        return x if isinstance(x, Frac) else cls(x)

    def is_zero(self) -> bool:
        return not self.num

    def __bool__(self):
        return bool(self.num)

    def _lift(self, target: Dict[PolyQ, int]) -> PolyQ:
        mine = dict(self.den)
        out = self.num
        for f, e in target.items():
            k = e - mine.get(f, 0)
            if k:
                out = out * f ** k
        return out

    def __add__(self, other) -> "Frac":
        other = Frac.coerce(other)
        if not other.num:
            return self
        if not self.num:
            return other
        if self.den == other.den:
            return Frac(self.num + other.num, self.den)
        target = dict(self.den)
        for f, e in other.den:
            target[f] = max(target.get(f, 0), e)
        return Frac(self._lift(target) + other._lift(target), _norm_den(target))

    __radd__ = __add__

    def __neg__(self):
        return Frac(-self.num, self.den)

    def __sub__(self, other):
        return self + (-Frac.coerce(other))

    def __rsub__(self, other):
        return Frac.coerce(other) - self

    def __mul__(self, other) -> "Frac":
        if not isinstance(other, Frac):
            p = as_poly(other)
            return Frac(self.num * p, self.den) if p else Frac()
        if not self.num or not other.num:
            return Frac()
        d = dict(self.den)
        for f, e in other.den:
            d[f] = d.get(f, 0) + e
        return Frac(self.num * other.num, _norm_den(d))

    __rmul__ = __mul__

    def divide_by(self, factor: PolyQ, exp: int = 1) -> "Frac":
        """Divide by ``factor**exp`` (``factor`` primitive, non-constant)."""
        d = dict(self.den)
        d[factor] = d.get(factor, 0) + exp
        return Frac(self.num, _norm_den(d))

    def __eq__(self, other) -> bool:
        other = Frac.coerce(other)
        target = dict(self.den)
        for f, e in other.den:
            target[f] = max(target.get(f, 0), e)
        return self._lift(target) == other._lift(target)

    def __hash__(self):
        raise TypeError("Frac is unhashable")

    def subs(self, mapping) -> "Frac":
        """Substitute symbols; a non-constant denominator is refactored via sympy."""
        num = self.num.subs(mapping)
        den = _den_poly(self.den).subs(mapping)
        if not den:
            raise ZeroDivisionError(f"denominator of {self} vanishes under {mapping}")
        if den.is_const():
            return Frac(num / den.const_value())
        from .polyq import to_sympy
        return from_sympy(to_sympy(num) / to_sympy(den))

    def __str__(self):
        if not self.den:
            return str(self.num)
        return f"({self.num})/({_den_poly(self.den)})"

    __repr__ = __str__


def common_multiple(values: Iterable[Frac]) -> PolyQ:
    """Least common denominator of a family of :class:`Frac` values."""
    target: Dict[PolyQ, int] = {}
    for v in values:
        for f, e in v.den:
            target[f] = max(target.get(f, 0), e)
    return _den_poly(_norm_den(target))


def clear_denominators(values: Dict) -> Dict:
    """Multiply a dict of :class:`Frac` by their common denominator."""
    target: Dict[PolyQ, int] = {}
    for v in values.values():
        for f, e in v.den:
            target[f] = max(target.get(f, 0), e)
    return {k: v._lift(target) for k, v in values.items()}


def from_sympy(expr, symbols=None) -> Frac:
    """Convert a sympy rational function into a :class:`Frac` with factored denominator."""
    import sympy
    num, den = sympy.fraction(sympy.together(expr))
    coeff, factors = sympy.factor_list(den)
    dd: Dict[PolyQ, int] = {}
    num = sympy.expand(num) / coeff
    nump = PolyQ.parse(str(sympy.expand(num)).replace("**", "^"))
    for f, e in factors:
        fp = PolyQ.parse(str(sympy.expand(f)).replace("**", "^"))
        prim = fp.primitive()
        nump = nump / _ratio(fp, prim) ** e
        if len(prim.terms) == 1:
            nump = nump * prim ** (-e)  # monomials are units of the Laurent ring
        else:
            dd[prim] = dd.get(prim, 0) + e
    return Frac(nump, _norm_den(dd))


def _ratio(p: PolyQ, q: PolyQ) -> Fraction:
    m, c = next(iter(q.terms.items()))
    return p.terms[m] / c
