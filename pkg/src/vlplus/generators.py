"""Named elements of V_L and M(1)^+ and null-vector search.

Elements are built in the lattice basis of :mod:`vlplus.fock`.  With
``h_i = alpha_i / sqrt(n_i)`` every element below that is quadratic in a
single axis picks up the factor ``1/n_i``; the mixed elements ``S_ij`` need
``sqrt(n_i n_j)`` to be rational.

Words such as ``omega_{-3} omega_{-1} E`` are written as tuples of
``(letter, mode)`` pairs read left to right, so the rightmost letter acts
first.
"""

from __future__ import annotations

import itertools
import json
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

from . import linalg
from .fock import Ambient, State
from .polyq import PolyQ, as_poly
from .vertex import mode_apply

Word = Tuple[Tuple[str, int], ...]


@dataclass(frozen=True)
class NamedElement:
    name: str
    state: State
    weight: object
    source: str


class UnknownElement(KeyError):
    pass


# -- printed null elements, as (coefficient in n, word, base) -----------------

SV8_TERMS: Tuple[Tuple[str, Word], ...] = (
    ("-2376", (("omega", -2), ("omega", -2), ("omega", -1))),
    ("3168", (("omega", -3), ("omega", -1), ("omega", -1))),
    ("-6256", (("omega", -3), ("omega", -3))),
    ("-11799", (("omega", -4), ("omega", -2))),
    ("30456", (("omega", -5), ("omega", -1))),
    ("2310", (("omega", -7),)),
    ("-9504", (("omega", -1), ("omega", -1), ("H", -1))),
    ("-6024", (("omega", -3), ("H", -1))),
    ("-13419", (("omega", -2), ("H", -2))),
    ("-6516", (("omega", -1), ("H", -3))),
    ("11868", (("H", -5),)),
    ("5040", (("H", -1), ("H", -1))),
)

Q4_TERMS: Tuple[Tuple[str, Word], ...] = (
    ("2*(n-2)*(-27 + 54*n - 44*n^2 + 40*n^3)", (("omega", -3),)),
    ("-12*n*(n-2)*(-3 + 4*n)", (("omega", -1), ("omega", -1))),
    ("-6*n*(n-2)*(-9 + 2*n)*(-1 + 2*n)", (("H", -1),)),
    ("-72*n^3-96*n^2+210*n-90", (("omega", 0), ("omega", -2))),
    ("120*n^2-48*n+36", (("omega", 0), ("omega", 0), ("omega", -1))),
    ("-48*n-9", (("omega", 0),) * 4),
)

Q51_TERMS: Tuple[Tuple[str, Word], ...] = (
    ("3*(n-2)*(10*n^2-29*n+32)*(10*n^2-4*n+3)", (("omega", -4),)),
    ("-12*n*(3*n-4)*(10*n^2-4*n+3)", (("omega", -2), ("omega", -1))),
    ("-3*(n-8)*(n-2)*(2*n-1)*(10*n^2-4*n+3)", (("H", -2),)),
    ("8*(2*n-7)*(15*n^3-22*n^2+8*n-6)", (("omega", 0), ("omega", -3))),
    ("24*n^2*(8*n-9)", (("omega", 0), ("omega", -1), ("omega", -1))),
    ("-12*(n-2)*(2*n-1)*(6*n^2-5*n+6)", (("omega", 0), ("H", -1))),
    ("-6*(2*n^3-32*n^2+29*n+12)", (("omega", 0), ("omega", 0), ("omega", -2))),
    ("-6*(8*n-9)", (("omega", 0),) * 5),
)

Q6_TERMS: Tuple[Tuple[str, Word], ...] = (
    ("2*(3696*n^8-22564*n^7+66284*n^6-84937*n^5+56207*n^4-91528*n^3+11774*n^2+29190*n-13500)",
     (("omega", -5),)),
    ("-4*n*(352*n^6+2152*n^5-8282*n^4+7951*n^3-11696*n^2+6304*n-1542)",
     (("omega", -3), ("omega", -1))),
    ("-3*n*(1584*n^6-5572*n^5+6456*n^4-6877*n^3+5214*n^2-3040*n+642)",
     (("omega", -2), ("omega", -2))),
    ("720*n^3*(n-2)*(4*n-1)", (("omega", -1),) * 3),
    ("-24*n*(n-2)*(2*n-1)*(44*n^4-98*n^3+157*n^2-88*n+48)", (("omega", -1), ("H", -1))),
    ("-3*(n-2)*(2*n-25)*(2*n-1)^2*(44*n^4-13*n^3+62*n^2-48*n+18)", (("H", -3),)),
    ("3*(1760*n^7-9382*n^6+1391*n^5+28130*n^4-14380*n^3+29762*n^2-25851*n+7650)",
     (("omega", 0), ("omega", -4))),
    ("12*n*(352*n^5-1459*n^4+2396*n^3-2894*n^2+1254*n-225)",
     (("omega", 0), ("omega", -2), ("omega", -1))),
    ("-3*(n-2)*(2*n-1)*(352*n^5+101*n^4+86*n^3-614*n^2+804*n-225)",
     (("omega", 0), ("H", -2))),
    ("12*(88*n^6+1104*n^5-4136*n^4+3714*n^3-3944*n^2+2670*n-675)",
     (("omega", 0), ("omega", 0), ("omega", -3))),
    ("-6*(352*n^5-1099*n^4+686*n^3-689*n^2+804*n-225)",
     (("omega", 0),) * 3 + (("omega", -2),)),
    ("-90*(n-2)*(4*n-1)", (("omega", 0),) * 6),
)

# Not printed in the source; reconstructed as the unique (up to scale) relation
# among these eight words on E.  It differs from Q51 by using omega_0^3 omega_{-1}
# in place of omega_0^2 omega_{-2}.
Q52_TERMS: Tuple[Tuple[str, Word], ...] = (
    ("3*(n-2)*(10*n^2-29*n+32)*(12*n^3+16*n^2-35*n+15)", (("omega", -4),)),
    ("-12*n*(3*n-4)*(12*n^3+16*n^2-35*n+15)", (("omega", -2), ("omega", -1))),
    ("-3*(n-8)*(n-2)*(2*n-1)*(12*n^3+16*n^2-35*n+15)", (("H", -2),)),
    ("2*(136*n^5-316*n^4-1266*n^3+3409*n^2-2470*n+624)", (("omega", 0), ("omega", -3))),
    ("12*n*(20*n^3-3*n^2-44*n+24)", (("omega", 0), ("omega", -1), ("omega", -1))),
    ("-6*(n-2)*(2*n-1)*(14*n^3+21*n^2-74*n+60)", (("omega", 0), ("H", -1))),
    ("-12*(2*n^3-32*n^2+29*n+12)", (("omega", 0),) * 3 + (("omega", -1),)),
    ("-3*(16*n^2+61*n-102)", (("omega", 0),) * 5),
)

Q52_WORDS: Tuple[Word, ...] = tuple(w for _, w in Q52_TERMS)

NULL_ELEMENTS: Dict[str, Tuple[Tuple[Tuple[str, Word], ...], str]] = {
    "sv8H": (SV8_TERMS, "vac"),
    "Q4": (Q4_TERMS, "E"),
    "Q51": (Q51_TERMS, "E"),
    "Q52": (Q52_TERMS, "E"),
    "Q6": (Q6_TERMS, "E"),
}

_BASE_ELEMENTS = {
    "vac": "vacuum vector",
    "omega": "Virasoro vector of one orthonormal axis, (1/2) h(-1)^2",
    "omega_total": "conformal vector, sum of the per-axis Virasoro vectors",
    "H": "weight-4 quadratic element (1/3) h(-3)h(-1) - (1/3) h(-2)^2",
    "H6": "weight-6 quadratic element (1/5) h(-5)h(-1) - (13/10) h(-4)h(-2) + (11/10) h(-3)^2",
    "S": "mixed quadratic h_i(-l) h_j(-m)",
    "Eu": "5 S(1,2) + 25 S(1,3) + 36 S(1,4) + 16 S(1,5)",
    "Et": "-16 S(1,2) + 145 S(1,3) + 19 S(1,4) + 8 S(1,5)",
    "Lambda": "45 S(1,2) + 190 S(1,3) + 240 S(1,4) + 96 S(1,5)",
    "E": "theta-invariant combination e^alpha + e^{-alpha}",
    "sv8H": "weight-8 null vector of M(1)^+ in omega/H words",
    "Q4": "null vector of weight n/2 + 4 on E",
    "Q51": "first null vector of weight n/2 + 5 on E",
    "Q52": "second null vector of weight n/2 + 5 on E (reconstructed)",
    "Q6": "null vector of weight n/2 + 6 on E",
}

_WEIGHTS = {"vac": 0, "omega": 2, "omega_total": 2, "H": 4, "H6": 6, "Eu": 3, "Et": 3, "Lambda": 3}


def catalog() -> List[Tuple[str, str, str]]:
    """``(name, weight, description)`` rows for every buildable element."""
    w = {**{k: str(v) for k, v in _WEIGHTS.items()},
         "S": "l+m", "E": "n/2", "sv8H": "8", "Q4": "n/2+4", "Q51": "n/2+5", "Q52": "n/2+5", "Q6": "n/2+6"}
    w["Eu"] = w["Et"] = w["Lambda"] = "3..6 (inhomogeneous)"
    return [(k, w[k], v) for k, v in _BASE_ELEMENTS.items()]


# -- ambient helpers --------------------------------------------------------------

def ambient_for(params: Optional[dict] = None) -> Ambient:
    """Ambient from ``{"gram": [[...]]}`` or ``{"n": value}`` (default symbolic ``n``)."""
    params = params or {}
    if "gram" in params:
        return Ambient.from_gram(params["gram"])
    return Ambient.rank_one(params.get("n", "n"))


def _rational_sqrt(x: PolyQ) -> PolyQ:
    if x.is_const():
        v = x.const_value()
        if v > 0:
            import math
            a, b = math.isqrt(v.numerator), math.isqrt(v.denominator)
            if a * a == v.numerator and b * b == v.denominator:
                return PolyQ.const(Fraction(a, b))
    if len(x.terms) == 1:
        (mono, c), = x.terms.items()
        if all(e % 2 == 0 for _, e in mono):
            r = _rational_sqrt(PolyQ.const(c))
            return r * PolyQ({tuple((s, e // 2) for s, e in mono): 1})
    raise ValueError(f"sqrt({x}) is not rational; use an ambient with square norms")


def _quadratic(amb: Ambient, i: int, j: int, pairs: Sequence[Tuple[Fraction, int, int]]) -> State:
    """``sum c h_i(-l) h_j(-m) vac`` converted to the lattice basis."""
    if i == j:
        scale = amb.gram[i][i] ** -1
    else:
        scale = _rational_sqrt(amb.gram[i][i] * amb.gram[j][j]) ** -1
    out = State(amb)
    for c, l, m in pairs:
        out = out + State.monomial(amb, [(i, l), (j, m)], coeff=scale * Fraction(c))
    return out


_S_COMBOS = {
    "Eu": (5, 25, 36, 16),
    "Et": (-16, 145, 19, 8),
    "Lambda": (45, 190, 240, 96),
}


def _base(name: str, amb: Ambient, i: int, j: int, l: int, m: int) -> State:
    if name == "vac":
        return State.vacuum(amb)
    if name == "omega":
        return _quadratic(amb, i, i, [(Fraction(1, 2), 1, 1)])
    if name == "omega_total":
        out = State(amb)
        for a in range(amb.rank):
            out = out + _base("omega", amb, a, a, 1, 1)
        return out
    if name == "H":
        return _quadratic(amb, i, i, [(Fraction(1, 3), 3, 1), (Fraction(-1, 3), 2, 2)])
    if name == "H6":
        return _quadratic(amb, i, i, [(Fraction(1, 5), 5, 1), (Fraction(-13, 10), 4, 2), (Fraction(11, 10), 3, 3)])
    if name == "S":
        if i == j:
            raise ValueError("S needs two distinct axes")
        return _quadratic(amb, i, j, [(1, l, m)])
    if name in _S_COMBOS:
        if i == j:
            raise ValueError(f"{name} needs two distinct axes")
        return _quadratic(amb, i, j, [(c, 1, r) for c, r in zip(_S_COMBOS[name], (2, 3, 4, 5))])
    if name == "E":
        beta = [0] * amb.rank
        beta[i] = 1
        return State.exp(amb, beta) + State.exp(amb, [-x for x in beta])
    raise UnknownElement(name)


def apply_word(word: Word, base: State, letters: Dict[str, State]) -> State:
    """``x1_{k1} ... xr_{kr} base`` with the rightmost mode applied first."""
    v = base
    for name, k in reversed(word):
        v = mode_apply(letters[name], k, v)
        if not v:
            break
    return v


def _letters(amb: Ambient, i: int) -> Dict[str, State]:
    return {name: _base(name, amb, i, i, 1, 1) for name in ("omega", "H", "H6")}


def expand_terms(terms, base_name: str, amb: Ambient, i: int = 0, subs=None) -> State:
    letters = _letters(amb, i)
    base = _base(base_name, amb, i, i, 1, 1)
    out = State(amb)
    for coef, word in terms:
        c = as_poly(coef)
        if subs:
            c = c.subs(subs)
        out = out + apply_word(word, base, letters).scale(c)
    return out


def _freeze(params: Optional[dict]) -> str:
    return json.dumps(params or {}, sort_keys=True, default=str)


@lru_cache(maxsize=256)
def _build_cached(name: str, frozen: str) -> NamedElement:
    params = json.loads(frozen)
    amb = ambient_for(params)
    i = int(params.get("i", 1)) - 1
    j = int(params.get("j", 2 if amb.rank > 1 else 1)) - 1
    l, m = int(params.get("l", 1)), int(params.get("m", 2))
    if not (0 <= i < amb.rank and 0 <= j < amb.rank):
        raise ValueError("axis index out of range")
    if name in NULL_ELEMENTS:
        terms, base = NULL_ELEMENTS[name]
        subs = None
        if amb.rank != 1:
            raise ValueError(f"{name} lives in a rank-one lattice")
        g = amb.gram[0][0]
        if g.is_const():
            subs = {"n": g.const_value()}
        state = expand_terms(terms, base, amb, 0, subs)
    else:
        state = _base(name, amb, i, j, l, m)
    wt = state.weight() if state else 0
    return NamedElement(name, state, wt, _BASE_ELEMENTS.get(name, name))


def build(name: str, params: Optional[dict] = None) -> NamedElement:
    """Construct a named element.

    Parameters
    ----------
    name : str
        One of the names listed by :func:`catalog`.
    params : dict, optional
        ``n`` (norm of the rank-one generator, default symbolic) or ``gram``;
        ``i``, ``j`` (1-based axes); ``l``, ``m`` for ``S``.
    """
    if name not in _BASE_ELEMENTS:
        raise UnknownElement(name)
    return _build_cached(name, _freeze(params))


def verify_null(name: str, n=None, terms=None) -> bool:
    """True iff the printed combination expands to the zero state.

    ``n=None`` expands with symbolic ``n``; ``terms`` overrides the printed
    coefficients (used to perturb them).
    """
    if name not in NULL_ELEMENTS:
        raise UnknownElement(name)
    printed, base = NULL_ELEMENTS[name]
    amb = Ambient.rank_one("n" if n is None else n)
    subs = None if n is None else {"n": n}
    return expand_terms(terms if terms is not None else printed, base, amb, 0, subs).is_zero()


# -- null search ------------------------------------------------------------------

LETTER_WEIGHTS = {"omega": 2, "H": 4, "H6": 6}


def mode_words(raise_by: int, letters: Dict[str, int], min_step: int = 1, max_mode: int = 10 ** 9) -> List[Word]:
    """Words ``x_{k1} ... x_{kr}`` of letters raising the weight by exactly ``raise_by``.

    Each letter ``x_k`` raises the weight by ``wt x - k - 1 >= min_step``; ``k``
    is capped by ``max_mode``.  Words are returned in a fixed canonical order
    (letters sorted by name, then by decreasing weight raise), one per multiset.
    """
    alphabet = []
    for name, w in sorted(letters.items()):
        for d in range(min_step, raise_by + 1):
            k = w - 1 - d
            if k <= max_mode:
                alphabet.append((name, k, d))
    alphabet.sort(key=lambda x: (x[0], -x[2]))
    out: List[Word] = []

    def rec(start, remaining, acc):
        if remaining == 0:
            out.append(tuple((a, k) for a, k, _ in acc))
            return
        for idx in range(start, len(alphabet)):
            a, k, d = alphabet[idx]
            if d <= remaining:
                rec(idx, remaining - d, acc + [(a, k, d)])

    rec(0, raise_by, [])
    return out


def _kernel_rational(rows: List[Dict], cols: List) -> List[List[Fraction]]:
    """Nullspace of the linear map sending basis vector r to ``rows[r]``."""
    return linalg.nullspace(rows)


def null_search(weight_raise: int, words: Optional[Iterable[Word]] = None, n=4,
                base: str = "vac", letters: Optional[Dict[str, int]] = None,
                max_raise: int = 12) -> List[List[Tuple[Fraction, Word]]]:
    """Basis of linear relations among mode words applied to ``base``.

    Parameters
    ----------
    weight_raise : int
        Weight of the words above ``base``.
    words : iterable of Word, optional
        Alphabet of words; defaults to :func:`mode_words` over ``letters``.
    n : int or None
        Concrete norm; ``None`` runs the elimination over ``Q(n)``.
    """
    if weight_raise > max_raise:
        raise ValueError("weight bound exceeded")
    if weight_raise <= 0 and words is None:
        return []
    letters = letters or {"omega": 2, "H": 4}
    if words is None:
        words = mode_words(weight_raise, letters, max_mode=-1 if base == "vac" else 10 ** 9)
    words = list(words)
    if not words:
        return []
    amb = Ambient.rank_one("n" if n is None else n)
    lt = _letters(amb, 0)
    b = _base(base, amb, 0, 0, 1, 1)
    images = [apply_word(w, b, lt) for w in words]
    cols = sorted({m for s in images for m in s.terms})
    if n is not None:
        rows = [{m: c.const_value() for m, c in s.terms.items()} for s in images]
        kernel = _kernel_rational(rows, cols)
        return [[(c, w) for c, w in zip(vec, words) if c] for vec in kernel]
    return _kernel_symbolic(images, cols, words)


def _kernel_symbolic(images, cols, words):
    import sympy
    nsym = sympy.Symbol("n")
    mat = sympy.Matrix(len(cols), len(images),
                       lambda c, r: sympy.sympify(str(images[r].terms.get(cols[c], PolyQ())).replace("^", "**"),
                                                  locals={"n": nsym}))
    out = []
    for vec in mat.nullspace(simplify=True):
        vec = sympy.Matrix([sympy.together(x) for x in vec])
        den = sympy.lcm([sympy.fraction(x)[1] for x in vec])
        vec = [sympy.expand(sympy.cancel(x * den)) for x in vec]
        g = sympy.gcd_list([x for x in vec if x != 0])
        vec = [sympy.expand(sympy.cancel(x / g)) for x in vec]
        out.append([(PolyQ.parse(str(x).replace("**", "^")), w) for x, w in zip(vec, words) if x != 0])
    return out
