"""Integer lattices: coset classification and orthogonal sublattices adapted to a momentum.

Vectors are coordinate tuples in the lattice basis; the pairing is
``<x, y> = x^T G y`` with the Gram matrix ``G``.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, List, Optional, Sequence, Tuple

from .polyq import PolyQ

Vector = Tuple[Fraction, ...]

IN_L = "in L"
DUAL_2_IN_L = "in dual, 2*lambda in L"
DUAL_2_NOT_IN_L = "in dual, 2*lambda not in L"
OUTSIDE_DUAL = "outside dual"


def _det(m: List[List[Fraction]]) -> Fraction:
    m = [list(map(Fraction, r)) for r in m]
    d = len(m)
    det = Fraction(1)
    for c in range(d):
        piv = next((r for r in range(c, d) if m[r][c]), None)
        if piv is None:
            return Fraction(0)
        if piv != c:
            m[c], m[piv] = m[piv], m[c]
            det = -det
        det *= m[c][c]
        for r in range(c + 1, d):
            f = m[r][c] / m[c][c]
            m[r] = [a - f * b for a, b in zip(m[r], m[c])]
    return det


@dataclass(frozen=True)
class LatticeData:
    """A non-degenerate even lattice given by its Gram matrix."""

    gram: Tuple[Tuple[int, ...], ...]

    def __post_init__(self):
        d = len(self.gram)
        if any(len(r) != d for r in self.gram):
            raise ValueError("Gram matrix must be square")
        for i in range(d):
            for j in range(d):
                if self.gram[i][j] != self.gram[j][i]:
                    raise ValueError("Gram matrix must be symmetric")
            if self.gram[i][i] % 2:
                raise ValueError("lattice must be even")
        if _det([list(r) for r in self.gram]) == 0:
            raise ValueError("lattice must be non-degenerate")

    @classmethod
    def from_gram(cls, gram) -> "LatticeData":
        return cls(tuple(tuple(int(x) for x in row) for row in gram))

    @classmethod
    def diagonal(cls, *norms: int) -> "LatticeData":
        d = len(norms)
        return cls(tuple(tuple(norms[i] if i == j else 0 for j in range(d)) for i in range(d)))

    @property
    def rank(self) -> int:
        return len(self.gram)

    def pair(self, x: Sequence, y: Sequence) -> Fraction:
        return sum((Fraction(x[i]) * self.gram[i][j] * Fraction(y[j])
                    for i in range(self.rank) for j in range(self.rank)), Fraction(0))

    def norm(self, x: Sequence) -> Fraction:
        return self.pair(x, x)


def momentum(*coords) -> Vector:
    return tuple(Fraction(c) for c in coords)


def in_lattice(v: Sequence) -> bool:
    return all(Fraction(c).denominator == 1 for c in v)


def in_dual(lam: Sequence, lat: LatticeData) -> bool:
    e = [tuple(int(i == j) for j in range(lat.rank)) for i in range(lat.rank)]
    return all(lat.pair(b, lam).denominator == 1 for b in e)


def classify(lam: Sequence, lat: LatticeData) -> str:
    """Which of the four cases ``lambda`` falls into (``L`` checked first)."""
    if in_lattice(lam):
        return IN_L
    if not in_dual(lam, lat):
        return OUTSIDE_DUAL
    return DUAL_2_IN_L if in_lattice([2 * Fraction(c) for c in lam]) else DUAL_2_NOT_IN_L


# -- orthogonal bases ------------------------------------------------------------------

def _primitive_integer(v: Sequence[Fraction]) -> Vector:
    den = math.lcm(*[Fraction(c).denominator for c in v])
    ints = [int(Fraction(c) * den) for c in v]
    g = math.gcd(*ints) or 1
    return tuple(Fraction(c // g) for c in ints)


def orthogonal_basis(lat: LatticeData) -> List[Vector]:
    """Pairwise orthogonal lattice vectors with non-zero norms spanning ``Q (x) L``.

    Gram-Schmidt over Q; an isotropic candidate ``v`` is replaced by ``v + w``
    or ``w`` for a remaining ``w`` with ``<v, w> != 0`` (one of them is
    anisotropic).  Each result is scaled to a primitive integer vector.
    """
    d = lat.rank
    todo = [tuple(Fraction(int(i == j)) for j in range(d)) for i in range(d)]
    basis: List[Vector] = []

    def project(v: Sequence[Fraction]) -> List[Fraction]:
        v = list(v)
        for b in basis:
            c = lat.pair(v, b) / lat.norm(b)
            v = [x - c * y for x, y in zip(v, b)]
        return v

    while todo:
        v = project(todo.pop(0))
        if lat.norm(v) == 0:
            rest = [project(w) for w in todo]
            k = next(i for i, w in enumerate(rest) if lat.pair(v, w) != 0)
            w = rest[k]
            cand = w if lat.norm(w) != 0 else [a + b for a, b in zip(v, w)]
            todo[k] = tuple(v)  # keep the span
            v = cand
        basis.append(_primitive_integer(v))
    return basis


def _xy_candidates():
    s = 2
    while True:
        for x in range(1, s):
            y = s - x
            for sx, sy in ((1, 1), (1, -1), (-1, 1), (-1, -1)):
                yield sx * x, sy * y
        s += 1


def choose_xy(p: int, q: int, search: int = 10000) -> Tuple[int, int]:
    """First ``(x, y)``, both non-zero, by increasing ``|x|+|y|`` with ``p x^2 + q y^2`` not in ``{0, +-1, +-2}``."""
    for k, (x, y) in enumerate(_xy_candidates()):
        if k > search:
            break
        if p * x * x + q * y * y not in (0, 1, -1, 2, -2):
            return x, y
    raise RuntimeError(f"no admissible (x, y) found for p={p}, q={q}")


@dataclass
class MixStep:
    """One replacement ``alpha1, alphak -> beta1, beta2``."""

    k: int
    p: int
    q: int
    x: int
    y: int


def orthogonal_sublattice(lat: LatticeData, lam: Sequence, steps: Optional[List[MixStep]] = None) -> List[Vector]:
    """Pairwise orthogonal ``alpha_i`` in ``L`` with norms not in ``{0, 2}`` and ``<alpha_i, lam> != 0``.

    Start from :func:`orthogonal_basis`, move a vector pairing non-trivially
    with ``lam`` to the front, then for every later ``alpha_k`` orthogonal to
    ``lam`` replace ``(alpha_1, alpha_k)`` by

        beta_1 = x alpha_1 + y alpha_k,     beta_2 = -y q alpha_1 + p x alpha_k

    (``p``, ``q`` the two norms).  A remaining vector of norm 2 is doubled.
    ``steps`` (if given) collects the mixing data.
    """
    lam = tuple(Fraction(c) for c in lam)
    if not any(lam):
        raise ValueError("lambda must be non-zero")
    basis = orthogonal_basis(lat)
    first = next(i for i, b in enumerate(basis) if lat.pair(b, lam) != 0)
    basis.insert(0, basis.pop(first))
    for k in range(1, len(basis)):
        if lat.pair(basis[k], lam) != 0:
            continue
        a1, ak = basis[0], basis[k]
        p, q = int(lat.norm(a1)), int(lat.norm(ak))
        x, y = choose_xy(p, q)
        basis[0] = tuple(x * u + y * v for u, v in zip(a1, ak))
        basis[k] = tuple(-y * q * u + p * x * v for u, v in zip(a1, ak))
        if steps is not None:
            steps.append(MixStep(k, p, q, x, y))
    return [b if lat.norm(b) != 2 else tuple(2 * c for c in b) for b in basis]


def check_orthogonal_output(lat: LatticeData, lam: Sequence, vectors: Sequence[Sequence]) -> bool:
    """All vectors in ``L``, ``rank`` of them, pairwise orthogonal, norms not in {0, 2}, non-zero pairing with ``lam``."""
    if len(vectors) != lat.rank:
        return False
    for v in vectors:
        if not in_lattice(v) or lat.norm(v) in (0, 2) or lat.pair(v, lam) == 0:
            return False
    return all(lat.pair(u, v) == 0 for u, v in itertools.combinations(vectors, 2))


# -- the mixing formulas with symbolic data ---------------------------------------------

def mixing_table() -> Dict[str, tuple]:
    """Pairings of ``beta_1, beta_2`` computed by Gram arithmetic vs. the closed forms.

    Everything is symbolic in ``p, q, x, y`` and ``l = <alpha_1, lambda>``
    (with ``<alpha_2, lambda> = 0``).  Each entry is ``(computed, closed form)``;
    the last two rows hold coordinates and check that the inverse change of
    basis returns ``N alpha_1`` and ``N alpha_2`` with ``N = px^2+qy^2``.
    """
    p, q, x, y, l = (PolyQ.var(s) for s in "pqxyl")
    zero = PolyQ()

    def pair(u, v):  # diag(p, q)
        return u[0] * v[0] * p + u[1] * v[1] * q

    def pair_lam(u):
        return u[0] * l

    b1 = (x, y)
    b2 = (-y * q, p * x)
    big = p * x * x + q * y * y
    inv1 = tuple(p * x * s - y * t for s, t in zip(b1, b2))
    inv2 = tuple(y * q * s + x * t for s, t in zip(b1, b2))
    return {
        "<b1,b1>": (pair(b1, b1), big),
        "<b2,b2>": (pair(b2, b2), p * q * big),
        "<b1,b2>": (pair(b1, b2), zero),
        "<b1,lam>": (pair_lam(b1), x * l),
        "<b2,lam>": (pair_lam(b2), -y * q * l),
        "N*alpha1": (inv1, (big, zero)),
        "N*alpha2": (inv2, (zero, big)),
    }


def check_mixing_table() -> bool:
    return all(a == b for a, b in mixing_table().values())
