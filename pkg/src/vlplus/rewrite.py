"""Normal forms of ``X_{t+c} u`` for states ``X`` on ``E = e^alpha + e^{-alpha}``.

Setting: ``u`` lies in a weak module, ``t`` is an integer with ``E_m u = 0``
for ``m > t`` and the modes of ``omega`` and ``H`` act on ``u`` as recorded in
a :class:`Hypotheses` object.  Every mode carries a relative degree

    rdeg(a_k) = wt a - k - 1,        rdeg(X_{t+c}) = wt X - wt E - c,

which is additive along a word and conserved by all rewriting steps.  Words
applied to ``u`` vanish when their relative degree is too low; this is what
makes every sum below finite.

A normal-form term is ``L * E_{t+c} * R u`` where ``L`` is a monomial in the
commuting degree-0 "left symbols" (``omega_1`` and ``H_3`` in the
lowest-weight setting) and ``R`` is a sorted word of "right letters".
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Dict, List, Optional, Sequence, Tuple

from . import modealg
from .fock import Ambient, State
from .generators import NULL_ELEMENTS, Word, apply_word, _letters
from .polyq import PolyQ, as_poly, binom, exact_divide, poly_gcd
from .ratfunc import Frac, clear_denominators, from_sympy

Letter = Tuple[str, int]
Right = Tuple[Letter, ...]
Left = Tuple[Tuple[Letter, int], ...]
Key = Tuple[Left, int, Right]

T = PolyQ.var("t")
N = PolyQ.var("n")

_ORDER = {"H6": 0, "H": 1, "omega": 2}


def rdeg(letter: Letter) -> int:
    name, k = letter
    return modealg.field_weight(name) - k - 1


def word_rdeg(word: Sequence[Letter]) -> int:
    return sum(rdeg(x) for x in word)


def _key(letter: Letter):
    return (_ORDER.get(letter[0], -modealg.field_weight(letter[0])), letter[1])


@dataclass(frozen=True)
class Hypotheses:
    """How the modes of ``omega``, ``H`` (and friends) act on ``u``.

    Attributes
    ----------
    min_right_rdeg : int
        Words of right letters with smaller relative degree kill ``u``.
    left_symbols : tuple of Letter
        Degree-0 modes kept as commuting factors to the left of ``E``.
    terminals : tuple of Letter
        Right letters mapping ``u`` into ``C vac``; kept formal.
    t_min : int
        Side condition ``t >= t_min`` under which index comparisons hold.
    """

    name: str
    min_right_rdeg: int
    left_symbols: Tuple[Letter, ...] = ()
    terminals: Tuple[Letter, ...] = ()
    t_min: int = 0


# Terminal setting: omega_{2+i} u = H_{4+i} u = 0 (i > 0), omega_2 u, H_4 u in C vac.
TOP_TERMINAL = Hypotheses("terminal", min_right_rdeg=-1, terminals=(("omega", 2), ("H", 4)), t_min=0)
# Lowest-weight setting: omega_k u = 0 (k >= 2), H_k u = 0 (k >= 4); omega_1, H_3 kept symbolic.
LOWEST = Hypotheses("lowest", min_right_rdeg=0, left_symbols=(("omega", 1), ("H", 3)), t_min=0)

HYPOTHESES = {h.name: h for h in (TOP_TERMINAL, LOWEST)}


# -- right words ----------------------------------------------------------------

@lru_cache(maxsize=None)
def right_mul(letter: Letter, word: Right, hyp: Hypotheses) -> Tuple[Tuple[Right, PolyQ], ...]:
    """Sorted form of ``letter * word`` acting on ``u``."""
    if rdeg(letter) + word_rdeg(word) < hyp.min_right_rdeg:
        return ()
    if not word or _key(letter) <= _key(word[0]):
        if not word and rdeg(letter) < hyp.min_right_rdeg:
            return ()
        return (((letter,) + word, PolyQ.const(1)),)
    first, rest = word[0], word[1:]
    out: Dict[Right, PolyQ] = {}

    def add(w: Right, c: PolyQ):
        v = out.get(w, PolyQ()) + c
        if v:
            out[w] = v
        else:
            out.pop(w, None)

    for w2, c2 in right_mul(letter, rest, hyp):
        for w3, c3 in right_mul(first, w2, hyp):
            add(w3, c2 * c3)
    for coef, name, idx in modealg.commutator(letter[0], letter[1], first[0], first[1]):
        if name == "vac":
            add(rest, coef)
        else:
            for w3, c3 in right_mul((name, idx), rest, hyp):
                add(w3, coef * c3)
    return tuple(sorted(out.items(), key=lambda kv: repr(kv[0])))


# -- middle states as Virasoro words on E ------------------------------------------

def partitions(d: int, maxpart: Optional[int] = None):
    if maxpart is None:
        maxpart = d
    if d == 0:
        yield ()
        return
    for k in range(min(d, maxpart), 0, -1):
        for rest in partitions(d - k, k):
            yield (k,) + rest


def pbw_words(level: int) -> List[Word]:
    """``L_{-k1} ... L_{-kr} E`` (``k1 >= ... >= kr``) written as omega-modes."""
    return [tuple(("omega", 1 - k) for k in lam) for lam in partitions(level)]


_AMB = Ambient.rank_one("n")


def _state_of(word: Word) -> State:
    base = State.exp(_AMB, [1]) + State.exp(_AMB, [-1])
    return apply_word(word, base, _letters(_AMB, 0))


def _level(word: Word) -> int:
    return sum(rdeg(x) for x in word)


@lru_cache(maxsize=None)
def pbw_expand(word: Word) -> Tuple[Tuple[Word, Frac], ...]:
    """Coefficients of the state ``word(E)`` in the basis :func:`pbw_words`.

    The coefficients are rational functions of ``n``; denominators are the
    factors of the Virasoro Kac determinant at ``c = 1``, ``h = n/2``.
    """
    import sympy

    d = _level(word)
    if d < 0:
        return ()
    target = _state_of(word)
    if not target:
        return ()
    basis = pbw_words(d)
    states = [_state_of(b) for b in basis]
    plus = (Fraction(1),)
    keys = sorted({m for s in states + [target] for m in s.terms if m.momentum == plus},
                  key=lambda m: m.creators)
    nsym = sympy.Symbol("n")

    def conv(p: PolyQ):
        return sympy.sympify(str(p).replace("^", "**"), locals={"n": nsym}) if p else sympy.Integer(0)

    mat = sympy.Matrix([[conv(s.terms.get(k, PolyQ())) for s in states] for k in keys])
    rhs = sympy.Matrix([conv(target.terms.get(k, PolyQ())) for k in keys])
    sol, params = mat.gauss_jordan_solve(rhs)
    if params.shape[0]:
        raise ValueError("Virasoro words on E are dependent at generic n")
    out = []
    for b, x in zip(basis, sol):
        x = sympy.cancel(x)
        if x != 0:
            out.append((b, from_sympy(x)))
    return tuple(out)


# -- reduction ----------------------------------------------------------------------

class Accumulator:
    def __init__(self):
        self.terms: Dict[Key, Frac] = {}

    def add(self, key: Key, c: Frac):
        v = self.terms.get(key)
        v = c if v is None else v + c
        if v:
            self.terms[key] = v
        else:
            self.terms.pop(key, None)


def _left_mul(left: Left, letter: Letter) -> Left:
    d = dict(left)
    d[letter] = d.get(letter, 0) + 1
    return tuple(sorted(d.items(), key=lambda kv: _key(kv[0])))


class Reducer:
    """Rewrites ``W(E)_{t+c} R u`` into normal form under fixed hypotheses."""

    def __init__(self, hyp: Hypotheses):
        self.hyp = hyp
        self.steps = 0
        self._memo: Dict[Tuple[Word, int, Right], Tuple[Tuple[Key, Frac], ...]] = {}

    def _classify(self, letter: Letter) -> str:
        r = rdeg(letter)
        if r >= 1:
            return "left"
        if r == 0 and letter in self.hyp.left_symbols:
            return "symbol"
        return "right"

    def reduce_word(self, word: Word, c: int, right: Right = ()) -> Dict[Key, Frac]:
        """Normal form of ``word(E)_{t+c} right u`` as ``{(L, c', R): coefficient}``."""
        return dict(self._nf(tuple(word), c, tuple(right)))

    def _nf(self, word: Word, c: int, right: Right) -> Tuple[Tuple[Key, Frac], ...]:
        key = (word, c, right)
        hit = self._memo.get(key)
        if hit is not None:
            return hit
        acc = Accumulator()
        self._expand(word, c, right, acc)
        res = tuple(acc.terms.items())
        self._memo[key] = res
        return res

    def _push(self, acc: Accumulator, coef: Frac, word: Word, c: int, right: Right, left: Optional[Letter] = None):
        if not coef:
            return
        for (l2, c2, r2), v in self._nf(word, c, right):
            if left is not None:
                l2 = _left_mul(l2, left)
            acc.add((l2, c2, r2), v * coef)

    def _expand(self, word: Word, c: int, right: Right, acc: Accumulator):
        self.steps += 1
        mid_rdeg = _level(word) - c
        if mid_rdeg + word_rdeg(right) < 0:
            return
        if not word:
            acc.add(((), c, right), Frac(1))
            return
        (a, j), rest = word[0], word[1:]
        if a == "omega" and j == 0:
            # (L_{-1} Y)_p = -p Y_{p-1}
            self._push(acc, Frac(-(T + c)), rest, c - 1, right)
            return
        if j >= 0 or a not in ("omega", "H", "H6"):
            for b, x in pbw_expand(word):
                self._push(acc, x, b, c, right)
            return
        # (a_j Y)_p R u: only the second half of the iterate formula survives
        wt = modealg.field_weight(a)
        top = wt - 1 - self.hyp.min_right_rdeg + word_rdeg(right)
        sign_j = -1 if j % 2 else 1
        for i in range(0, top + 1):
            base = -sign_j * (-1) ** i * binom(j, i)
            if not base:
                continue
            ci = c + j - i
            kind = self._classify((a, i))
            if kind == "right":
                for r2, c2 in right_mul((a, i), right, self.hyp):
                    self._push(acc, Frac(c2 * base), rest, ci, r2)
                continue
            if kind == "symbol":
                self._push(acc, Frac(base), rest, ci, right, left=(a, i))
            # Y_q a_i R u = a_i Y_q R u - sum_l C(i,l) (a_l Y)_{q+i-l} R u
            for l in range(0, i + 1):
                self._push(acc, Frac(-base * binom(i, l)), ((a, l),) + rest, ci + i - l, right)

    def reduce_symbols(self, word: Word, c: int, symbols: Right) -> Dict[Key, Frac]:
        """Normal form of ``word(E)_{t+c} s_1 ... s_k u`` for degree-0 letters ``s_i``.

        Each ``s_i`` is moved to the left of the middle mode with
        ``Y_q a_i R u = a_i Y_q R u - sum_l C(i,l) (a_l Y)_{q+i-l} R u``.
        """
        if not symbols:
            return self.reduce_word(word, c)
        (a, i), rest = symbols[0], symbols[1:]
        acc = Accumulator()
        for (l2, c2, r2), v in self.reduce_symbols(word, c, rest).items():
            acc.add((_left_mul(l2, (a, i)), c2, r2), v)
        for l in range(0, i + 1):
            for k, v in self.reduce_symbols(((a, l),) + word, c + i - l, rest).items():
                acc.add(k, v * Frac(-binom(i, l)))
        return acc.terms


def reduce(word: Word, shift: int, hyp: Hypotheses, right: Right = ()) -> Dict[Key, Frac]:
    """Normal form of ``word(E)_{t+shift} right u`` (exact, not normalized)."""
    return {k: v for k, v in Reducer(hyp).reduce_word(tuple(word), shift, tuple(right)).items() if v}


def reduce_via_pbw(word: Word, shift: int, hyp: Hypotheses, right: Right = ()) -> Dict[Key, Frac]:
    """Second strategy: rewrite ``word(E)`` in the Virasoro basis on ``E`` first, then reduce."""
    red = Reducer(hyp)
    acc = Accumulator()
    for b, x in pbw_expand(tuple(word)):
        for k, v in red.reduce_word(b, shift, tuple(right)).items():
            acc.add(k, v * x)
    return acc.terms


# -- relations ----------------------------------------------------------------------

def _fmt_letter(x: Letter) -> str:
    return f"{x[0]}_{{{x[1]}}}"


def _fmt_index(c: int) -> str:
    return "t" if c == 0 else (f"t+{c}" if c > 0 else f"t{c}")


def format_key(key: Key) -> str:
    left, c, right = key
    parts = []
    for letter, e in left:
        parts.append(_fmt_letter(letter) + (f"^{e}" if e > 1 else ""))
    parts.append(f"E_{{{_fmt_index(c)}}}")
    parts += [_fmt_letter(x) for x in right]
    parts.append("u")
    return " ".join(parts)


def _key_sort(key: Key):
    left, c, right = key
    return (-c, len(right), [_key(x) for x in right], [(_key(l), e) for l, e in left])


@dataclass
class Relation:
    """``0 = sum coeff * word`` with polynomial coefficients in ``n``, ``t`` and left symbols."""

    terms: Dict[Key, PolyQ]
    hypotheses: str = ""
    t_min: int = 0
    source: str = ""

    @classmethod
    def from_fracs(cls, terms: Dict[Key, Frac], **kw) -> "Relation":
        cleared = clear_denominators(terms)
        return cls(normalize(cleared), **kw)

    def coefficient(self, key: Key) -> PolyQ:
        return self.terms.get(key, PolyQ())

    def keys(self):
        return sorted(self.terms, key=_key_sort)

    def pretty(self) -> str:
        lines = ["0 ="]
        for k in self.keys():
            lines.append(f"  + ({self.terms[k]}) {format_key(k)}")
        return "\n".join(lines)

    def to_json(self) -> dict:
        return {
            "hypotheses": self.hypotheses,
            "t_min": self.t_min,
            "source": self.source,
            "terms": [
                {"left": [[l[0], l[1], e] for l, e in k[0]], "shift": k[1],
                 "right": [list(x) for x in k[2]], "coeff": self.terms[k].to_json()}
                for k in self.keys()
            ],
        }

    @classmethod
    def from_json(cls, data: dict) -> "Relation":
        terms = {}
        for item in data["terms"]:
            left = tuple(((l[0], l[1]), l[2]) for l in item["left"])
            key = (left, item["shift"], tuple((x[0], x[1]) for x in item["right"]))
            terms[key] = PolyQ.from_json(item["coeff"])
        return cls(terms, data.get("hypotheses", ""), data.get("t_min", 0), data.get("source", ""))

    def dumps(self) -> str:
        return json.dumps(self.to_json(), sort_keys=True)

    def proportional_to(self, other: "Relation") -> bool:
        """Same relation up to a non-zero scalar factor (in ``Q(n)``)."""
        if set(self.terms) != set(other.terms):
            return False
        keys = self.keys()
        if not keys:
            return True
        k0 = keys[0]
        a0, b0 = self.terms[k0], other.terms[k0]
        return all(self.terms[k] * b0 == other.terms[k] * a0 for k in keys)


def normalize(terms: Dict[Key, PolyQ]) -> Dict[Key, PolyQ]:
    """Divide by the polynomial gcd of all coefficients, then fix content and sign.

    The result is primitive (integer coefficients with content 1) and the
    coefficient of the first key in display order has a positive leading term.
    Dividing by the gcd discards factors such as ``(n-2)(2n-1)`` that only
    vanish at exceptional values of ``n``.
    """
    terms = {k: v for k, v in terms.items() if v}
    if not terms:
        return {}
    # monomials are units: make every symbol's smallest exponent zero
    syms = set().union(*(v.symbols() for v in terms.values()))
    for s in sorted(syms):
        k = min(v.min_degree(s) for v in terms.values())
        if k:
            unit = PolyQ.var(s, -k)
            terms = {key: v * unit for key, v in terms.items()}
    g = poly_gcd(terms.values())
    if not g.is_const():
        terms = {k: exact_divide(v, g) for k, v in terms.items()}
    from math import gcd, lcm
    from functools import reduce
    nums, dens = [], []
    for v in terms.values():
        for c in v.terms.values():
            nums.append(abs(c.numerator))
            dens.append(c.denominator)
    scale = Fraction(reduce(gcd, nums), reduce(lcm, dens))
    first = sorted(terms, key=_key_sort)[0]
    lead = terms[first].sorted_terms()[0][1]
    sign = 1 if lead > 0 else -1
    return {k: v * (sign / scale) for k, v in terms.items()}


def expand_null(terms, shift: int, hyp: Hypotheses) -> Dict[Key, Frac]:
    """Normal form of ``X_{t+shift} u`` for ``X = sum coeff * word(E)`` (not normalized)."""
    red = Reducer(hyp)
    acc = Accumulator()
    for coef, word in terms:
        cf = Frac(as_poly(coef))
        for k, v in red.reduce_word(tuple(word), shift).items():
            acc.add(k, v * cf)
    return {k: v for k, v in acc.terms.items() if v}


def derive_relation(null_name: str, shift: int, hyp: Hypotheses, terms=None) -> Relation:
    """Expand ``(null)_{t+shift} u`` for a catalogued null element into normal form."""
    printed, base = NULL_ELEMENTS[null_name]
    if base != "E":
        raise ValueError(f"{null_name} is not built on E")
    acc = expand_null(terms if terms is not None else printed, shift, hyp)
    return Relation.from_fracs(acc, hypotheses=hyp.name, t_min=hyp.t_min, source=f"{null_name}_(t+{shift})")


def sort_right(right: Right, hyp: Hypotheses) -> Dict[Right, PolyQ]:
    """Rewrite ``right u`` as sorted words under ``hyp`` (dropping words that kill ``u``)."""
    words: Dict[Right, PolyQ] = {(): PolyQ.const(1)}
    for letter in reversed(right):
        nxt: Dict[Right, PolyQ] = {}
        for wd, cf in words.items():
            for w2, c2 in right_mul(letter, wd, hyp):
                v = nxt.get(w2, PolyQ()) + cf * c2
                if v:
                    nxt[w2] = v
                else:
                    nxt.pop(w2, None)
        words = nxt
    return words


def convert_terms(terms: Dict[Key, Frac], hyp: Hypotheses) -> Dict[Key, Frac]:
    """Re-express ``E_{t+c} R u`` terms in the normal form of ``hyp``.

    Used to pass from the terminal setting to the lowest-weight setting: right
    words are sorted (those ending in a mode that kills ``u`` drop out) and the
    remaining degree-0 letters are moved to the left of ``E``.
    """
    red = Reducer(hyp)
    acc = Accumulator()
    for (left, c, right), coef in terms.items():
        if left:
            raise ValueError("conversion expects terms without left symbols")
        for wd, cf in sort_right(right, hyp).items():
            if any(rdeg(x) != 0 or x not in hyp.left_symbols for x in wd):
                raise ValueError(f"cannot move {wd} to the left under {hyp.name}")
            for k, v in red.reduce_symbols((), c, wd).items():
                acc.add(k, v * coef * Frac(cf))
    return acc.terms


def derive_lowest(null_name: str, shift: int, terms=None, route: str = "terminal") -> Relation:
    """Lowest-weight relation from ``(null)_{t+shift} u``.

    ``route="terminal"`` expands in the terminal setting first and then
    converts; ``route="direct"`` reduces straight to the lowest-weight normal
    form.  The two results are both valid but may differ by multiples of
    relations coming from other null elements.
    """
    printed, base = NULL_ELEMENTS[null_name]
    src = terms if terms is not None else printed
    if route == "direct":
        acc = expand_null(src, shift, LOWEST)
    elif route == "terminal":
        acc = convert_terms(expand_null(src, shift, TOP_TERMINAL), LOWEST)
    else:
        raise ValueError(f"unknown route {route!r}")
    return Relation.from_fracs(acc, hypotheses=LOWEST.name, t_min=LOWEST.t_min,
                               source=f"{null_name}_(t+{shift}) via {route}")


def relation_from_terms(terms, **kw) -> Relation:
    """Build a :class:`Relation` from ``(coeff text, left, shift, right)`` tuples."""
    out: Dict[Key, PolyQ] = {}
    for coef, left, shift, right in terms:
        key = (tuple(left), shift, tuple(right))
        out[key] = out.get(key, PolyQ()) + PolyQ.parse(coef)
    return Relation(out, **kw)


def fold_symbol(rel: Relation, letter: Letter = ("omega", 1), var: str = "w") -> Relation:
    """Move powers of a commuting left symbol into the coefficients as ``var``."""
    out: Dict[Key, PolyQ] = {}
    for (left, c, right), v in rel.terms.items():
        rest = tuple((l, e) for l, e in left if l != letter)
        e = sum(e for l, e in left if l == letter)
        key = (rest, c, right)
        out[key] = out.get(key, PolyQ()) + v * PolyQ.var(var, e) if e else out.get(key, PolyQ()) + v
    return Relation(out, rel.hypotheses, rel.t_min, rel.source)


def same_relation(a: Relation, b: Relation) -> bool:
    """Equality after :func:`normalize` (polynomial gcd, content and sign)."""
    return normalize(a.terms) == normalize(b.terms)


def evaluate_on_lattice(rel: Relation, n: int, s: int, t: Optional[int] = None) -> State:
    """Apply a relation to ``u = e^lambda`` in ``V_{lambda + Z alpha}``.

    Here ``<alpha, alpha> = n`` and ``<alpha, lambda> = s``, so ``u`` is a
    lowest-weight vector with ``E_m u = 0`` for ``m > |s| - 1``.  Unless given,
    ``t`` is taken to be that cutoff.  The result is the zero state whenever the
    relation is sound.
    """
    amb = Ambient.rank_one(norm=n)
    u = State.exp(amb, [Fraction(s, n)])
    return evaluate_relation(rel, u, abs(s) - 1 if t is None else t)


def evaluate_relation(rel: Relation, u: State, t: Optional[int] = None) -> State:
    """Apply a relation to an explicit vector ``u`` of a rank-one lattice module.

    ``t`` defaults to the cutoff ``epsilon(E, u)``; the norm ``n`` is read off
    the ambient.  ``u`` must satisfy the vanishing conditions of the relation's
    hypotheses for the result to be meaningful.
    """
    from .generators import _base
    from .vertex import epsilon, mode_apply
    amb = u.ambient
    n = amb.gram[0][0].const_value()
    fields = {nm: _base(nm, amb, 0, 0, 0, 0) for nm in ("omega", "H", "H6")}
    E = _base("E", amb, 0, 0, 0, 0)
    if t is None:
        t = epsilon(E, u)
    total = State(amb)
    cache: Dict[Tuple[Letter, ...], State] = {(): u}

    def right_state(word):
        if word not in cache:
            cache[word] = mode_apply(fields[word[0][0]], word[0][1], right_state(word[1:]))
        return cache[word]

    for (left, c, right), coef in rel.terms.items():
        value = coef.evaluate({"n": n, "t": t})
        if not value:
            continue
        v = mode_apply(E, t + c, right_state(tuple(right)))
        for letter, e in left:
            for _ in range(e):
                v = mode_apply(fields[letter[0]], letter[1], v)
        total = total + v.scale(value)
    return total


def unfold_symbol(rel: Relation, letter: Letter = ("omega", 1), var: str = "w") -> Relation:
    """Inverse of :func:`fold_symbol`: powers of ``var`` become left factors."""
    out: Dict[Key, PolyQ] = {}
    for (left, c, right), v in rel.terms.items():
        for e, part in v.coeffs(var).items():
            lf = dict(left)
            if e:
                lf[letter] = lf.get(letter, 0) + e
            key = (tuple(sorted(lf.items(), key=lambda le: _key(le[0]))), c, right)
            out[key] = out.get(key, PolyQ()) + part
    return Relation(out, rel.hypotheses, rel.t_min, rel.source)


# -- vacuum-based elements on a vector killed by all modes of degree <= 0 ----------

def _vac_key(letter: Letter):
    return (-rdeg(letter), _ORDER.get(letter[0], -modealg.field_weight(letter[0])), letter[1])


@lru_cache(maxsize=None)
def vac_mul(letter: Letter, word: Right) -> Tuple[Tuple[Right, Fraction], ...]:
    """``letter * word u`` in sorted form, for ``u`` killed by every mode of degree <= 0.

    Words are sorted by decreasing relative degree, so a sorted word is zero as
    soon as its last letter has degree <= 0.
    """
    if rdeg(letter) + word_rdeg(word) < 0:
        return ()
    if not word:
        return (((letter,), Fraction(1)),) if rdeg(letter) > 0 else ()
    if _vac_key(letter) <= _vac_key(word[0]):
        return (((letter,) + word, Fraction(1)),)
    first, rest = word[0], word[1:]
    out: Dict[Right, Fraction] = {}

    def add(w: Right, c: Fraction):
        v = out.get(w, Fraction(0)) + c
        if v:
            out[w] = v
        else:
            out.pop(w, None)

    for w2, c2 in vac_mul(letter, rest):
        for w3, c3 in vac_mul(first, w2):
            add(w3, c2 * c3)
    for coef, name, idx in modealg.commutator(letter[0], letter[1], first[0], first[1]):
        c = coef.const_value()
        if name == "vac":
            add(rest, c)
        else:
            for w3, c3 in vac_mul((name, idx), rest):
                add(w3, c * c3)
    return tuple(sorted(out.items(), key=lambda kv: [_vac_key(x) for x in kv[0]]))


def _state_weight(word: Word) -> int:
    return sum(-k - 1 + modealg.field_weight(a) for a, k in word) if word else 0


@lru_cache(maxsize=None)
def vac_mode(word: Word, p: int, right: Right = ()) -> Tuple[Tuple[Right, Fraction], ...]:
    """``(word vac)_p right u`` in sorted form, via the iterate formula.

    ``(a_j Y)_p = sum_i (-1)^i C(j,i) (a_{j-i} Y_{p+i} - (-1)^j Y_{j+p-i} a_i)``;
    both sums are finite because vectors of negative degree vanish.
    """
    out: Dict[Right, Fraction] = {}

    def add(w: Right, c: Fraction):
        v = out.get(w, Fraction(0)) + c
        if v:
            out[w] = v
        else:
            out.pop(w, None)

    if not word:
        if p == -1:
            add(right, Fraction(1))
        return tuple(out.items())
    (a, j), rest = word[0], word[1:]
    wy = _state_weight(rest)
    wr = word_rdeg(right)
    sign_j = -1 if j % 2 else 1
    i = 0
    while wy - (p + i) - 1 + wr >= 0:
        c = (-1) ** i * binom(j, i)
        if c:
            for w2, c2 in vac_mode(rest, p + i, right):
                for w3, c3 in vac_mul((a, j - i), w2):
                    add(w3, c * c2 * c3)
        i += 1
    wa = modealg.field_weight(a)
    i = 0
    while wa - i - 1 + wr >= 0:
        c = -sign_j * (-1) ** i * binom(j, i)
        if c:
            for w2, c2 in vac_mul((a, i), right):
                for w3, c3 in vac_mode(rest, j + p - i, w2):
                    add(w3, c * c2 * c3)
        i += 1
    return tuple(sorted(out.items(), key=lambda kv: [_vac_key(x) for x in kv[0]]))


def expand_vacuum_null(terms, p: int) -> Dict[Right, Fraction]:
    """``X_p u`` for ``X = sum coeff * word(vac)`` with rational coefficients."""
    out: Dict[Right, Fraction] = {}
    for coef, word in terms:
        cf = PolyQ.parse(coef).const_value() if isinstance(coef, str) else Fraction(coef)
        for w, c in vac_mode(tuple(word), p):
            out[w] = out.get(w, Fraction(0)) + cf * c
    return {w: c for w, c in out.items() if c}


@lru_cache(maxsize=None)
def field_expression(name: str, generators: Tuple[str, ...] = ("omega", "H")) -> Tuple[Tuple[Fraction, Word], ...]:
    """``name_{-1} vac`` as a combination of generator mode words on the vacuum.

    Found with :func:`generators.null_search` at the weight of ``name``.
    """
    from . import generators as gen
    w = modealg.field_weight(name)
    letters = {g: modealg.field_weight(g) for g in generators}
    words = gen.mode_words(w, letters, max_mode=-1)
    target = ((name, -1),)
    kernel = gen.null_search(w, words=words + [target], base="vac",
                             letters=dict(letters, **{name: w}), max_raise=w)
    for vec in kernel:
        coef = dict((wd, c) for c, wd in vec)
        if target in coef:
            lead = coef.pop(target)
            return tuple((-c / lead, wd) for wd, c in coef.items())
    raise ValueError(f"{name} is not generated by {generators} at weight {w}")


def _act(letter: Letter, word: Right, generators: Tuple[str, ...]) -> Tuple[Tuple[Right, Fraction], ...]:
    if letter[0] in generators:
        return vac_mul(letter, word)
    out: Dict[Right, Fraction] = {}
    for c, wd in field_expression(letter[0], generators):
        for w2, c2 in vac_mode(wd, letter[1], word):
            out[w2] = out.get(w2, Fraction(0)) + c * c2
    return tuple((w, c) for w, c in out.items() if c)


def eliminate_letters(terms: Dict[Right, Fraction], generators: Tuple[str, ...] = ("omega", "H"),
                      max_rounds: int = 10) -> Dict[Right, Fraction]:
    """Rewrite words containing non-generator modes through :func:`field_expression`."""
    for _ in range(max_rounds):
        if all(x[0] in generators for wd in terms for x in wd):
            return terms
        out: Dict[Right, Fraction] = {}
        for wd, coef in terms.items():
            cur: Dict[Right, Fraction] = {(): coef}
            for letter in reversed(wd):
                nxt: Dict[Right, Fraction] = {}
                for w2, c2 in cur.items():
                    for w3, c3 in _act(letter, w2, generators):
                        nxt[w3] = nxt.get(w3, Fraction(0)) + c2 * c3
                cur = nxt
            for w2, c2 in cur.items():
                out[w2] = out.get(w2, Fraction(0)) + c2
        terms = {w: c for w, c in out.items() if c}
    raise RuntimeError("letter elimination did not terminate")


def derive_vacuum_relation(terms, p: int, generators: Tuple[str, ...] = ("omega", "H")) -> Dict[Right, Fraction]:
    """``X_p u = 0`` in generator words, normalized to content 1 and positive first term."""
    red = eliminate_letters(expand_vacuum_null(terms, p), generators)
    if not red:
        return {}
    from math import gcd, lcm
    from functools import reduce
    keys = sorted(red, key=lambda w: [_vac_key(x) for x in w])
    scale = Fraction(reduce(gcd, [abs(c.numerator) for c in red.values()]),
                     reduce(lcm, [c.denominator for c in red.values()]))
    if red[keys[0]] < 0:
        scale = -scale
    return {w: red[w] / scale for w in keys}


def substitute(rel: Relation, values: Dict[Letter, object], vacuum_letters: Sequence[Letter] = (("omega", 2),)) -> Relation:
    """Evaluate right words on ``u`` where some letters act by scalars.

    ``values`` maps a letter to its eigenvalue on ``u`` (``0`` kills ``u``).  A
    letter in ``vacuum_letters`` sends ``u`` into ``C vac``; it is kept as a
    word, and any further mode of degree >= 0 applied after it gives zero.
    """
    out: Dict[Key, PolyQ] = {}
    for (left, c, right), coef in rel.terms.items():
        scalar, kept = as_poly(coef), ()
        for letter in reversed(right):
            if kept:
                if letter[1] >= 0:
                    scalar = PolyQ()
                    break
                kept = (letter,) + kept
            elif letter in vacuum_letters:
                kept = (letter,)
            elif letter in values:
                scalar = scalar * as_poly(values[letter])
            else:
                raise ValueError(f"no value for {letter}")
            if not scalar:
                break
        if scalar:
            key = (left, c, kept)
            out[key] = out.get(key, PolyQ()) + scalar
    return Relation({k: v for k, v in out.items() if v}, rel.hypotheses, rel.t_min, rel.source + " substituted")
