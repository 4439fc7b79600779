"""Fock-space states of M(1) tensor e^beta over exact Laurent-polynomial coefficients.

States are kept in the (non-normalized) lattice basis: a creator ``(i, k)``
stands for ``alpha^{(i)}(-k)`` and the Heisenberg relations are
``[alpha_i(m), alpha_j(k)] = m * gram[i][j] * delta_{m+k,0}``.  The text
form uses ``a[i](-k)`` for these creators and ``e[b1,...,bd]`` for the
momentum, with 1-based axes.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, Iterable, Mapping, Optional, Sequence, Tuple, Union

from .polyq import PolyQ, as_poly

Creators = Tuple[Tuple[int, int], ...]  # sorted (axis, level) pairs, with repetition
Momentum = Tuple[Fraction, ...]


class AmbientMismatch(ValueError):
    pass


@dataclass(frozen=True)
class Ambient:
    """Heisenberg data: a symmetric Gram matrix in the chosen basis.

    Entries may be symbolic (e.g. ``n``); the rank-1 lattice ``Z alpha`` with
    ``<alpha, alpha> = n`` is ``Ambient.rank_one("n")``.
    """

    gram: Tuple[Tuple[PolyQ, ...], ...]

    @classmethod
    def from_gram(cls, gram) -> "Ambient":
        g = tuple(tuple(as_poly(x) for x in row) for row in gram)
        d = len(g)
        if any(len(r) != d for r in g):
            raise ValueError("Gram matrix must be square")
        for i in range(d):
            for j in range(d):
                if g[i][j] != g[j][i]:
                    raise ValueError("Gram matrix must be symmetric")
        return cls(g)

    @classmethod
    def rank_one(cls, norm="n") -> "Ambient":
        return cls.from_gram([[norm]])

    @classmethod
    def orthonormal(cls, d: int) -> "Ambient":
        return cls.from_gram([[1 if i == j else 0 for j in range(d)] for i in range(d)])

    @property
    def rank(self) -> int:
        return len(self.gram)

    def pair(self, beta: Sequence, gamma: Sequence) -> PolyQ:
        """``<beta, gamma>`` for coordinate vectors in this basis."""
        out = PolyQ()
        for i, b in enumerate(beta):
            if not b:
                continue
            for j, c in enumerate(gamma):
                if c:
                    out = out + self.gram[i][j] * (Fraction(b) * Fraction(c))
        return out

    def pair_axis(self, i: int, beta: Sequence) -> PolyQ:
        """``<alpha_i, beta>``."""
        out = PolyQ()
        for j, b in enumerate(beta):
            if b:
                out = out + self.gram[i][j] * Fraction(b)
        return out

    def zero(self) -> Momentum:
        return tuple(Fraction(0) for _ in range(self.rank))


@dataclass(frozen=True, order=True)
class FockMonomial:
    """``prod alpha_{i}(-k) e^beta``; creators sorted, levels >= 1."""

    creators: Creators
    momentum: Momentum

    @classmethod
    def make(cls, creators: Iterable[Tuple[int, int]], momentum: Sequence) -> "FockMonomial":
        cr = tuple(sorted(creators, key=lambda c: (-c[1], c[0])))
        if any(k < 1 for _, k in cr):
            raise ValueError("creator levels must be >= 1")
        return cls(cr, tuple(Fraction(x) for x in momentum))

    @property
    def level(self) -> int:
        return sum(k for _, k in self.creators)

    def with_creator(self, axis: int, k: int) -> "FockMonomial":
        return FockMonomial.make(self.creators + ((axis, k),), self.momentum)


Coefficient = Union[int, Fraction, PolyQ, str]


class State:
    """Finite linear combination of Fock monomials with :class:`PolyQ` coefficients."""

    __slots__ = ("ambient", "terms")

    def __init__(self, ambient: Ambient, terms: Optional[Mapping[FockMonomial, Coefficient]] = None):
        self.ambient = ambient
        t: Dict[FockMonomial, PolyQ] = {}
        if terms:
            for m, c in terms.items():
                p = as_poly(c)
                if p:
                    t[m] = p
        self.terms = t

    # -- constructors -------------------------------------------------------
    @classmethod
    def vacuum(cls, ambient: Ambient) -> "State":
        return cls(ambient, {FockMonomial.make((), ambient.zero()): 1})

    @classmethod
    def exp(cls, ambient: Ambient, beta: Sequence) -> "State":
        """The vector ``e^beta``."""
        if len(beta) != ambient.rank:
            raise ValueError("momentum has wrong length")
        return cls(ambient, {FockMonomial.make((), beta): 1})

    @classmethod
    def monomial(cls, ambient: Ambient, creators, beta=None, coeff: Coefficient = 1) -> "State":
        """``coeff * prod a[i](-k) e^beta`` with 0-based axes in ``creators``."""
        beta = ambient.zero() if beta is None else beta
        return cls(ambient, {FockMonomial.make(creators, beta): coeff})

    # -- vector space -------------------------------------------------------
    def _check(self, other: "State"):
        if not isinstance(other, State):
            raise TypeError("expected a State")
        if other.ambient != self.ambient:
            raise AmbientMismatch("states live in different ambients")

    def __add__(self, other: "State") -> "State":
        self._check(other)
        t = dict(self.terms)
        for m, c in other.terms.items():
            v = t.get(m)
            v = c if v is None else v + c
            if v:
                t[m] = v
            else:
                t.pop(m, None)
        r = State(self.ambient)
        r.terms = t
        return r

    def __neg__(self) -> "State":
        r = State(self.ambient)
        r.terms = {m: -c for m, c in self.terms.items()}
        return r

    def __sub__(self, other: "State") -> "State":
        return self + (-other)

    def scale(self, c: Coefficient) -> "State":
        p = as_poly(c)
        r = State(self.ambient)
        if p:
            r.terms = {m: v * p for m, v in self.terms.items() if v * p}
        return r

    def __mul__(self, c) -> "State":
        return self.scale(c)

    __rmul__ = __mul__

    def __eq__(self, other) -> bool:
        if not isinstance(other, State):
            return NotImplemented
        return self.ambient == other.ambient and self.terms == other.terms

    def __hash__(self):
        return hash((self.ambient, frozenset(self.terms.items())))

    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self) -> bool:
        return bool(self.terms)

    def subs(self, mapping) -> "State":
        """Specialize coefficient symbols (the ambient is left untouched)."""
        r = State(self.ambient)
        for m, c in self.terms.items():
            v = c.subs(mapping)
            if v:
                r.terms[m] = v
        return r

    def component(self, beta: Sequence) -> "State":
        beta = tuple(Fraction(x) for x in beta)
        return State(self.ambient, {m: c for m, c in self.terms.items() if m.momentum == beta})

    def momenta(self) -> set:
        return {m.momentum for m in self.terms}

    # -- grading ------------------------------------------------------------
    def monomial_weight(self, m: FockMonomial) -> PolyQ:
        return self.ambient.pair(m.momentum, m.momentum) / 2 + m.level

    def weight(self):
        """Common weight of all monomials, or the string ``"inhomogeneous"``."""
        if not self.terms:
            raise ValueError("weight of the zero state is undefined")
        ws = {self.monomial_weight(m) for m in self.terms}
        if len(ws) == 1:
            w = ws.pop()
            return w.const_value() if w.is_const() else w
        return "inhomogeneous"

    def is_homogeneous(self) -> bool:
        return not self.terms or self.weight() != "inhomogeneous"

    # -- involution -----------------------------------------------------------
    def theta(self) -> "State":
        """Lift of the -1 isometry: ``a(-k) -> -a(-k)``, ``e^b -> e^{-b}``."""
        r = State(self.ambient)
        for m, c in self.terms.items():
            m2 = FockMonomial(m.creators, tuple(-x for x in m.momentum))
            r.terms[m2] = -c if len(m.creators) % 2 else c
        return r

    # -- text form ----------------------------------------------------------
    def __str__(self) -> str:
        return format_state(self)

    def __repr__(self) -> str:
        return f"State({format_state(self)!r})"


def add(a: State, b: State) -> State:
    return a + b


def weight(a: State):
    return a.weight()


def theta(a: State) -> State:
    return a.theta()


# -- text grammar -------------------------------------------------------------

def _format_monomial(m: FockMonomial) -> str:
    parts = []
    seen: Dict[Tuple[int, int], int] = {}
    for c in m.creators:
        seen[c] = seen.get(c, 0) + 1
    for (i, k), mult in seen.items():
        parts.append(f"h[{i + 1}](-{k})" + (f"^{mult}" if mult > 1 else ""))
    parts.append("e[" + ",".join(str(x) for x in m.momentum) + "]")
    return " ".join(parts)


def format_state(s: State) -> str:
    if not s.terms:
        return "0"
    items = sorted(s.terms.items(), key=lambda mc: (mc[0].level, mc[0].momentum, mc[0].creators), reverse=True)
    return " + ".join(f"({c}) * {_format_monomial(m)}" for m, c in items)


_TERM_RE = re.compile(r"\((?P<coef>[^()]*(?:\([^()]*\)[^()]*)*)\)\s*\*\s*(?P<body>.*)")
_CREATOR_RE = re.compile(r"[ah]\[(\d+)\]\(-(\d+)\)(?:\^(\d+))?")
_MOM_RE = re.compile(r"e\[([^\]]*)\]")


def parse_state(text: str, ambient: Ambient) -> State:
    """Inverse of :func:`format_state`."""
    text = text.strip()
    if text == "0":
        return State(ambient)
    out = State(ambient)
    for chunk in _split_terms(text):
        mt = _TERM_RE.fullmatch(chunk.strip())
        if not mt:
            raise ValueError(f"malformed term: {chunk!r}")
        body = mt.group("body")
        creators = []
        for cm in _CREATOR_RE.finditer(body):
            creators += [(int(cm.group(1)) - 1, int(cm.group(2)))] * int(cm.group(3) or 1)
        mm = _MOM_RE.search(body)
        if not mm:
            raise ValueError(f"missing momentum in {chunk!r}")
        beta = [Fraction(x) for x in mm.group(1).split(",")] if mm.group(1).strip() else []
        out = out + State(ambient, {FockMonomial.make(creators, beta): PolyQ.parse(mt.group("coef"))})
    return out


def _split_terms(text: str):
    depth, start = 0, 0
    for i, ch in enumerate(text):
        if ch in "([":
            depth += 1
        elif ch in ")]":
            depth -= 1
        elif depth == 0 and text.startswith(" + (", i):
            yield text[start:i]
            start = i + 3
    yield text[start:]
