"""Elimination of designated terms, polynomial eliminants and integer roots.

Relations are combined fraction-free: eliminating a target with pivot
relation ``P`` replaces every other relation ``R`` by ``p R - r P`` where
``p`` and ``r`` are the target coefficients.  The polynomial multipliers are
recorded, so each output can be re-expanded from the inputs.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Dict, List, Optional, Sequence, Tuple

from .polyq import PolyQ, exact_divide, from_sympy, poly_gcd, to_sympy
from .rewrite import Key, Relation, format_key, normalize


class EliminationError(ValueError):
    """Raised when the targets cannot be removed; carries the residual matrix."""

    def __init__(self, message: str, residual: List[List[PolyQ]]):
        super().__init__(message)
        self.residual = residual


@dataclass
class ScalarRelation:
    """``poly * carrier = 0`` for a single remaining word."""

    poly: PolyQ
    carrier: str

    def __str__(self):
        return f"0 = ({self.poly}) {self.carrier}"


def scalar_relation(rel: Relation) -> ScalarRelation:
    keys = rel.keys()
    if len(keys) != 1:
        raise ValueError(f"expected a single word, got {len(keys)}")
    return ScalarRelation(rel.terms[keys[0]], format_key(keys[0]))


@dataclass
class Elimination:
    """Outputs of :func:`eliminate_terms` with their combination witness.

    ``witness[k][i]`` is the polynomial multiplier of input ``i`` in output ``k``.
    """

    inputs: List[Relation]
    targets: List[Key]
    relations: List[Relation]
    witness: List[List[PolyQ]]

    def normalized(self) -> List[Relation]:
        return [Relation(normalize(r.terms), r.hypotheses, r.t_min, r.source) for r in self.relations]

    def verify(self) -> bool:
        """Re-expand every output from the witness; targets must vanish."""
        for rel, combo in zip(self.relations, self.witness):
            acc: Dict[Key, PolyQ] = {}
            for c, src in zip(combo, self.inputs):
                for k, v in src.terms.items():
                    acc[k] = acc.get(k, PolyQ()) + c * v
            acc = {k: v for k, v in acc.items() if v}
            if acc != {k: v for k, v in rel.terms.items() if v}:
                return False
            if any(acc.get(t) for t in self.targets):
                return False
        return True


def eliminate_terms(rels: Sequence[Relation], targets: Sequence[Key]) -> Elimination:
    """Remove every target word by fraction-free pivoting.

    The first relation (in input order) with a non-zero coefficient on a
    target serves as its pivot and is consumed.
    """
    rows = [dict(r.terms) for r in rels]
    combos = [[PolyQ.const(int(i == j)) for j in range(len(rels))] for i in range(len(rels))]
    alive = list(range(len(rels)))
    for tgt in targets:
        holders = [i for i in alive if rows[i].get(tgt)]
        if not holders:
            continue
        if len(holders) == len(alive) and len(alive) == 1:
            residual = [[rows[i].get(t, PolyQ()) for t in targets] for i in alive]
            raise EliminationError(f"cannot eliminate {format_key(tgt)}: no relation left", residual)
        p = holders[0]
        pc = rows[p][tgt]
        for i in alive:
            if i == p or not rows[i].get(tgt):
                continue
            rc = rows[i][tgt]
            new: Dict[Key, PolyQ] = {}
            for k in set(rows[i]) | set(rows[p]):
                v = pc * rows[i].get(k, PolyQ()) - rc * rows[p].get(k, PolyQ())
                if v:
                    new[k] = v
            rows[i] = new
            combos[i] = [pc * a - rc * b for a, b in zip(combos[i], combos[p])]
        alive.remove(p)
    outs = [Relation(rows[i], rels[i].hypotheses, rels[i].t_min, f"eliminated from {rels[i].source}") for i in alive]
    return Elimination(list(rels), list(targets), outs, [combos[i] for i in alive])


def rational_multiple(a: PolyQ, b: PolyQ) -> Optional[Fraction]:
    """``c`` with ``a == c * b`` for a rational ``c``, else ``None``."""
    if not b:
        return Fraction(0) if not a else None
    m, cb = b.sorted_terms()[0]
    c = a.terms.get(m, Fraction(0)) / cb
    return c if a == b * c else None


# -- eliminants -----------------------------------------------------------------------

@dataclass
class GcdWitness:
    """``g = s*p1 + r*p2`` with ``p1 = g*q1``, ``p2 = g*q2`` in ``Frac[var]``.

    ``s`` and ``r`` are stored as (numerator, denominator) pairs of PolyQ.
    """

    var: str
    p1: PolyQ
    p2: PolyQ
    g: PolyQ
    q1: PolyQ
    q2: PolyQ
    s: Tuple[PolyQ, PolyQ]
    r: Tuple[PolyQ, PolyQ]

    def verify(self) -> bool:
        if self.g * self.q1 != self.p1 or self.g * self.q2 != self.p2:
            return False
        (sn, sd), (rn, rd) = self.s, self.r
        return sn * rd * self.p1 + rn * sd * self.p2 == self.g * sd * rd


def _bezout(p1: PolyQ, p2: PolyQ, var: str):
    import sympy
    x = sympy.Symbol(var)
    others = sorted((p1.symbols() | p2.symbols()) - {var})
    dom = sympy.QQ.frac_field(*[sympy.Symbol(s) for s in others]) if others else sympy.QQ
    a = sympy.Poly(to_sympy(p1), x, domain=dom)
    b = sympy.Poly(to_sympy(p2), x, domain=dom)
    s, r, h = a.gcdex(b)
    return s.as_expr(), r.as_expr(), h.as_expr()


def _split(expr) -> Tuple[PolyQ, PolyQ]:
    import sympy
    num, den = sympy.fraction(sympy.together(expr))
    return from_sympy(num), from_sympy(den)


def _integer_primitive(p: PolyQ, var: str) -> PolyQ:
    """Divide out the content in the other symbols; leading coefficient made positive."""
    coeffs = p.coeffs(var)
    g = poly_gcd(coeffs.values())
    out = PolyQ()
    for e, c in coeffs.items():
        out = out + exact_divide(c, g) * PolyQ.var(var, e)
    prim = out.primitive()
    lead = prim.coeff(var, prim.degree(var)).sorted_terms()[0][1]
    if lead < 0:
        prim = -prim
    return prim


@lru_cache(maxsize=32)
def gcd_witness(p1: PolyQ, p2: PolyQ, var: str) -> GcdWitness:
    """Generator of ``(p1, p2)`` in ``Frac[var]`` with Bézout and division witnesses."""
    import sympy
    s, r, h = _bezout(p1, p2, var)
    hn, hd = _split(h)
    g = _integer_primitive(hn, var)
    # rescale the Bezout identity from h to g: g = (g/h) h
    ratio = sympy.cancel(to_sympy(g) / h)
    sn, sd = _split(sympy.cancel(s * ratio))
    rn, rd = _split(sympy.cancel(r * ratio))
    q1 = exact_divide(p1, g)
    q2 = exact_divide(p2, g)
    return GcdWitness(var, p1, p2, g, q1, q2, (sn, sd), (rn, rd))


def gcd_eliminant(p1: PolyQ, p2: PolyQ, var: str) -> PolyQ:
    """Primitive integer generator of the ideal ``(p1, p2)`` of ``Frac[var]``."""
    return gcd_witness(p1, p2, var).g


@dataclass
class EliminantWitness:
    """``a*p1 + b*p2 == d * g`` with polynomial ``a``, ``b`` and ``d`` free of ``var``.

    ``g`` is the gcd over the fraction field; ``d`` is the polynomial in the
    other symbols obtained by clearing the Bézout denominators, so
    ``d * g * carrier = 0`` follows from the two relations by polynomial
    combination only.
    """

    var: str
    p1: PolyQ
    p2: PolyQ
    g: PolyQ
    d: PolyQ
    a: PolyQ
    b: PolyQ

    def verify(self) -> bool:
        return self.var not in self.d.symbols() and self.a * self.p1 + self.b * self.p2 == self.d * self.g


def polynomial_eliminant(p1: PolyQ, p2: PolyQ, var: str) -> EliminantWitness:
    """Eliminate every power of ``var`` above the gcd with polynomial multipliers."""
    w = gcd_witness(p1, p2, var)
    (sn, sd), (rn, rd) = w.s, w.r
    den = sd * rd
    a, b = sn * rd, rn * sd
    gc = poly_gcd([a, b, den])
    if not gc.is_const():
        a, b, den = (exact_divide(x, gc) for x in (a, b, den))
    prim = den.primitive()
    content = rational_ratio(den, prim)
    return EliminantWitness(var, p1, p2, w.g, prim, a / content, b / content)


def rational_ratio(p: PolyQ, q: PolyQ) -> Fraction:
    c = rational_multiple(p, q)
    if c is None:
        raise ArithmeticError("not a rational multiple")
    return c


def division_witness(big: PolyQ, small: PolyQ) -> PolyQ:
    """Quotient ``q`` with ``big == q * small`` (raises if inexact)."""
    q = exact_divide(big, small)
    if q * small != big:
        raise ArithmeticError("inexact division")
    return q


# -- integer roots by exact real-root isolation ----------------------------------------

UPoly = List[Fraction]  # coefficients, lowest degree first


def _trim(p: UPoly) -> UPoly:
    while p and not p[-1]:
        p = p[:-1]
    return p


def to_univariate(p: PolyQ, var: Optional[str] = None) -> Tuple[str, UPoly]:
    syms = p.symbols()
    if len(syms) > 1 or (var and syms - {var}):
        raise ValueError(f"{p} is not univariate")
    var = var or (next(iter(syms)) if syms else "x")
    out = [Fraction(0)] * (max(p.degree(var), 0) + 1)
    for e, c in p.coeffs(var).items():
        if e < 0:
            raise ValueError("negative powers are not allowed")
        out[e] = c.const_value()
    return var, _trim(out)


def horner(p: UPoly, x) -> Fraction:
    acc = Fraction(0) if isinstance(x, Fraction) else 0
    for c in reversed(p):
        acc = acc * x + c
    return acc


def _derivative(p: UPoly) -> UPoly:
    return [c * i for i, c in enumerate(p)][1:]


def _divmod(a: UPoly, b: UPoly) -> Tuple[UPoly, UPoly]:
    a = list(a)
    q = [Fraction(0)] * max(len(a) - len(b) + 1, 1)
    lb = b[-1]
    while len(a) >= len(b) and a:
        f = a[-1] / lb
        shift = len(a) - len(b)
        q[shift] = f
        for i, c in enumerate(b):
            a[i + shift] -= f * c
        a = _trim(a)
    return q, a


def _primitive(p: UPoly) -> UPoly:
    """Positive rational multiple with coprime integer coefficients."""
    if not p:
        return p
    den = math.lcm(*[c.denominator for c in p])
    ints = [int(c * den) for c in p]
    g = math.gcd(*ints)
    return [Fraction(c, g) for c in ints]


def _gcd(a: UPoly, b: UPoly) -> UPoly:
    a, b = _primitive(_trim(a)), _primitive(_trim(b))
    while b:
        _, r = _divmod(a, b)
        a, b = b, _primitive(r)
    return a


def squarefree_part(p: UPoly) -> UPoly:
    g = _gcd(p, _derivative(p))
    return _primitive(_divmod(p, g)[0]) if len(g) > 1 else _primitive(p)


def sturm_sequence(p: UPoly) -> List[UPoly]:
    seq = [p, _primitive(_derivative(p))]
    while len(seq[-1]) > 1:
        _, r = _divmod(seq[-2], seq[-1])
        if not r:
            break
        seq.append([-c for c in _primitive(r)])
    return seq


def _sign(x) -> int:
    return (x > 0) - (x < 0)


def sign_variations(seq: List[UPoly], x: Fraction) -> int:
    signs = [s for s in (_sign(horner(q, x)) for q in seq) if s]
    return sum(1 for a, b in zip(signs, signs[1:]) if a != b)


def cauchy_bound(p: UPoly) -> int:
    """Integer ``B`` with every real root in ``(-B, B)``."""
    lead = abs(p[-1])
    return int(1 + max((abs(c) / lead for c in p[:-1]), default=Fraction(0))) + 1


@dataclass
class RootReport:
    """Integer roots of a univariate polynomial with an isolation certificate.

    ``intervals`` are half-open ``(a, b]`` with exactly one real root of the
    square-free part each; ``exact`` lists rational roots hit exactly by a
    bisection point (their certificate is a zero evaluation).
    """

    poly: PolyQ
    var: str
    integer_roots: List[int]
    intervals: List[Tuple[Fraction, Fraction]]
    exact: List[Fraction]
    bound: int
    real_root_count: int

    def verify(self) -> bool:
        """Re-check the certificate by exact evaluation."""
        _, p = to_univariate(self.poly, self.var)
        sqf = squarefree_part(p)
        for a, b in self.intervals:
            if not (a < b and _sign(horner(sqf, a)) * _sign(horner(sqf, b)) < 0):
                return False
        if any(horner(sqf, r) for r in self.exact):
            return False
        spans = sorted(self.intervals)
        if any(b1 > a2 for (_, b1), (a2, _) in zip(spans, spans[1:])):
            return False
        if len(self.intervals) + len(self.exact) != self.real_root_count:
            return False
        for r in self.integer_roots:
            if horner(p, Fraction(r)):
                return False
        return all(-self.bound <= a and b <= self.bound for a, b in self.intervals)

    def to_json(self) -> dict:
        return {
            "poly_degree": self.poly.degree(self.var),
            "integer_roots": self.integer_roots,
            "intervals": [[str(a), str(b)] for a, b in self.intervals],
            "exact_roots": [str(r) for r in self.exact],
            "cauchy_bound": self.bound,
            "real_roots": self.real_root_count,
        }


def integer_roots(p: PolyQ, var: Optional[str] = None) -> RootReport:
    """All integer roots of ``p`` via Sturm-sequence bisection with exact arithmetic.

    Every real root of the square-free part is isolated in an interval of
    width at most 1, so each interval holds at most one candidate integer,
    which is then tested directly.
    """
    if not p:
        raise ValueError("the zero polynomial has every integer as a root")
    var, up = to_univariate(p, var)
    sqf = squarefree_part(up)
    seq = sturm_sequence(sqf)
    bound = cauchy_bound(sqf)
    lo, hi = Fraction(-bound), Fraction(bound)
    total = sign_variations(seq, lo) - sign_variations(seq, hi)
    intervals: List[Tuple[Fraction, Fraction]] = []
    exact: List[Fraction] = []
    stack = [(lo, hi, total)]
    while stack:
        a, b, cnt = stack.pop()
        if cnt == 0:
            continue
        if cnt == 1 and b - a <= 1:
            if horner(sqf, b) == 0:
                exact.append(b)
                continue
            if horner(sqf, a) != 0:  # a root at ``a`` would hide the sign change; keep bisecting
                intervals.append((a, b))
                continue
        mid = (a + b) / 2
        vm = sign_variations(seq, mid)
        left = sign_variations(seq, a) - vm
        stack.append((mid, b, cnt - left))
        stack.append((a, mid, left))
    intervals.sort()
    exact.sort()
    roots = set()
    for a, b in intervals:
        k = math.floor(b)
        if k > a and horner(up, Fraction(k)) == 0:
            roots.add(k)
    roots.update(int(r) for r in exact if r.denominator == 1)
    return RootReport(p, var, sorted(roots), intervals, exact, bound, total)


# -- solving for the cutoff index under parity constraints ------------------------------

@dataclass
class FactorVerdict:
    """How one irreducible factor of ``p`` behaves under the constraints."""

    factor: PolyQ
    kind: str  # "solution", "parity-excluded", "conditional", "nonvanishing", "vanishes-at", "carrier", "unresolved"
    solution: Optional[PolyQ] = None
    detail: str = ""


@dataclass
class Solutions:
    solutions: List[PolyQ]
    verdicts: List[FactorVerdict] = field(default_factory=list)

    def as_strings(self) -> List[str]:
        return [str(s) for s in self.solutions]


def _factor_list(p: PolyQ) -> List[PolyQ]:
    import sympy
    _, factors = sympy.factor_list(to_sympy(p))
    return [from_sympy(f) for f, _ in factors]


def _integer_on_even(sol: PolyQ, var: str) -> str:
    """``always``, ``never`` or ``sometimes``: integrality of ``sol(n)`` at even ``n``.

    With ``n = 2k`` the value is a polynomial in ``k`` whose coefficient
    denominators divide ``D``; such a polynomial mod 1 is periodic in ``k``
    with period ``D``, so checking ``k = 0..D-1`` decides the question.
    """
    inner = sol.subs({var: PolyQ.var("k") * 2})
    den = math.lcm(*[c.denominator for c in inner.terms.values()]) if inner else 1
    hits = [inner.evaluate({"k": k}).denominator == 1 for k in range(den)]
    if all(hits):
        return "always"
    return "never" if not any(hits) else "sometimes"


def constrained_solutions(p, var: str = "t", param: str = "n", excluded: Sequence[int] = (0, 2),
                          carrier_symbols: Sequence[str] = ("w",), search: int = 50) -> Solutions:
    """Values of ``var`` (as expressions in ``param``) with ``p = 0``.

    Constraints: ``param`` is even and not in ``excluded``; ``var`` is an
    integer.  Factors free of ``var`` must not vanish on admissible ``param``
    (checked with :func:`integer_roots`); linear factors give a solution
    unless parity rules out integrality; anything else is reported as
    unresolved rather than guessed.  ``p`` may also be a list of factors.
    """
    factors = list(p) if isinstance(p, (list, tuple)) else _factor_list(p)
    sols: List[PolyQ] = []
    verdicts: List[FactorVerdict] = []
    for f in factors:
        if f.is_const():
            continue
        syms = f.symbols()
        if syms & set(carrier_symbols):
            verdicts.append(FactorVerdict(f, "carrier"))
            continue
        if var not in syms:
            rep = integer_roots(f, param)
            bad = [r for r in rep.integer_roots if r % 2 == 0 and r not in excluded]
            kind = "vanishes-at" if bad else "nonvanishing"
            verdicts.append(FactorVerdict(f, kind, detail=",".join(map(str, bad))))
            continue
        if f.degree(var) != 1 or syms - {var, param}:
            verdicts.append(FactorVerdict(f, "unresolved", detail="not linear in the unknown"))
            continue
        a, b = f.coeff(var, 1), f.coeff(var, 0)
        if not a.is_const():
            verdicts.append(FactorVerdict(f, "unresolved", detail="leading coefficient depends on the parameter"))
            continue
        sol = -b / a.const_value()
        kind = {"always": "solution", "never": "parity-excluded", "sometimes": "conditional"}[_integer_on_even(sol, param)]
        verdicts.append(FactorVerdict(f, kind, sol))
        if kind != "parity-excluded" and sol not in sols:
            sols.append(sol)
    sols.sort(key=lambda s: (s.degree(param), str(s)))
    return Solutions(sols, verdicts)


def common_factor(polys: Sequence[PolyQ]) -> PolyQ:
    """Polynomial gcd of a family (no monomial factors, content 1)."""
    return poly_gcd(polys)


def elimination_generator(polys: Sequence[PolyQ], eliminate: str, var: str, params: Sequence[str] = ("n",)) -> PolyQ:
    """Generator of ``(polys) ∩ Q(params)[var]`` via a lex Gröbner basis (sympy).

    Returns the primitive integer form, or ``1`` when the ideal is the unit
    ideal.  Denominators that appear over ``Q(params)`` only matter for
    exceptional parameter values.
    """
    import sympy
    e, v = sympy.Symbol(eliminate), sympy.Symbol(var)
    dom = sympy.QQ.frac_field(*[sympy.Symbol(p) for p in params])
    gb = sympy.groebner([to_sympy(p) for p in polys], e, v, order="lex", domain=dom)
    free = [p for p in gb.exprs if not p.has(e)]
    if not free:
        return PolyQ()
    num, _ = sympy.fraction(sympy.together(free[0]))
    return _integer_primitive(from_sympy(num), var)


# -- the two elimination chains ---------------------------------------------------------

TERMINAL_VALUES = {("omega", 1): 1, ("H", 3): 1, ("H", 4): 0}
TERMINAL_TARGET: Key = ((), -1, (("omega", 2),))
CARRIER: Key = ((), 0, ())


@dataclass
class TerminalChain:
    relations: List[Relation]
    substituted: List[Relation]
    elimination: Elimination
    polys: List[PolyQ]
    gcd: GcdWitness
    eliminant: EliminantWitness


def terminal_chain() -> TerminalChain:
    """Terminal-setting relations, substitution, elimination of ``E_{t-1} omega_2 u``.

    The two surviving relations are scalar multiples of ``E_t u``; their gcd in
    ``Q(n)[t]`` and the polynomial eliminant are returned with witnesses.
    """
    from .rewrite import TOP_TERMINAL, derive_relation, substitute
    rels = [derive_relation(nm, sh, TOP_TERMINAL) for nm, sh in (("Q4", 4), ("Q51", 5), ("Q6", 6))]
    subs = [substitute(r, TERMINAL_VALUES) for r in rels]
    elim = eliminate_terms(subs, [TERMINAL_TARGET])
    polys = [scalar_relation(r).poly for r in elim.relations]
    gw = gcd_witness(polys[0], polys[1], "t")
    return TerminalChain(rels, subs, elim, polys, gw, polynomial_eliminant(polys[0], polys[1], "t"))


LOWEST_H3: Key = (((("H", 3), 1),), 0, ())


@dataclass
class LowestChain:
    relations: List[Relation]
    pairs: List[PolyQ]
    carrier: PolyQ
    t_factor: PolyQ


def lowest_chain() -> LowestChain:
    """Eliminate ``H_3 E_t u`` from the four lowest-weight relations, then ``omega_1``.

    Each relation reads ``A(w) E_t u + B(w) H_3 E_t u = 0`` with ``w`` the
    eigen-symbol of ``omega_1``.  The 2x2 minors ``A_i B_j - A_j B_i`` share
    a common factor (the carrier); dividing it out and eliminating ``w``
    leaves a polynomial in ``t`` alone.
    """
    from .rewrite import derive_lowest, fold_symbol
    rels = [fold_symbol(derive_lowest(nm, sh)) for nm, sh in (("Q4", 4), ("Q51", 5), ("Q52", 5), ("Q6", 6))]
    a = [r.coefficient(CARRIER) for r in rels]
    b = [r.coefficient(LOWEST_H3) for r in rels]
    minors = [a[i] * b[j] - a[j] * b[i] for i in range(len(rels)) for j in range(i + 1, len(rels))]
    common = common_factor(minors)
    carrier = PolyQ.const(1)
    for f in _factor_list(common):
        if "w" in f.symbols():
            carrier = carrier * f
    quotients = [exact_divide(m, carrier) for m in minors]
    return LowestChain(rels, minors, carrier, elimination_generator(quotients, "w", "t"))
