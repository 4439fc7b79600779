"""Commutators of modes of quadratic fields in rank-one M(1)^+.

For fields ``a``, ``b`` among ``omega = W2``, ``H = W4``, ``H6 = W6``,
``W8``, ... (the quadratic quasi-primaries) every product ``a_l b`` with
``l >= 0`` is again quadratic or a multiple of the vacuum, hence a unique
combination of derivatives ``L_{-1}^r W``.  With

    (L_{-1}^r X)_p = (-1)^r p (p-1) ... (p-r+1) X_{p-r}

this turns ``[a_i, b_k] = sum_l C(i,l) (a_l b)_{i+k-l}`` into a finite sum of
single modes, with ``i`` and ``k`` allowed to be polynomials (symbolic
indices).
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from typing import Dict, List, Tuple, Union

from . import linalg
from .fock import Ambient, FockMonomial, State
from .polyq import PolyQ, binom_poly, falling
from .vertex import mode_apply

Index = Union[int, PolyQ]

AMBIENT = Ambient.orthonormal(1)

PRINTED = {
    "omega": [(Fraction(1, 2), 1, 1)],
    "H": [(Fraction(1, 3), 3, 1), (Fraction(-1, 3), 2, 2)],
    "H6": [(Fraction(1, 5), 5, 1), (Fraction(-13, 10), 4, 2), (Fraction(11, 10), 3, 3)],
}


def _quad(pairs) -> State:
    out = State(AMBIENT)
    for c, a, b in pairs:
        out = out + State.monomial(AMBIENT, [(0, a), (0, b)], coeff=c)
    return out


def field_name(weight: int) -> str:
    return {2: "omega", 4: "H", 6: "H6"}.get(weight, f"W{weight}")


def field_weight(name: str) -> int:
    if name == "vac":
        return 0
    return {"omega": 2, "H": 4, "H6": 6}.get(name) or int(name[1:])


def _vec(s: State) -> Dict[FockMonomial, Fraction]:
    return {m: c.const_value() for m, c in s.terms.items()}


@lru_cache(maxsize=None)
def field(name: str) -> State:
    """The quadratic quasi-primary of the given name as a state (h-basis)."""
    if name == "vac":
        return State.vacuum(AMBIENT)
    if name in PRINTED:
        return _quad(PRINTED[name])
    w = field_weight(name)
    if w % 2:
        raise KeyError(name)
    # kernel of L_1 = omega_2 on quadratic states of weight w
    basis = [_quad([(1, a, w - a)]) for a in range(w - 1, (w - 1) // 2, -1)]
    om = field("omega")
    images = [_vec(mode_apply(om, 2, b)) for b in basis]
    ker = linalg.nullspace(images)
    if len(ker) != 1:
        raise RuntimeError(f"expected a single quasi-primary at weight {w}")
    vec = ker[0]
    lead = vec[0] * (w - 1)  # normalize h(-(w-1)) h(-1) to coefficient 1/(w-1)
    out = State(AMBIENT)
    for c, b in zip(vec, basis):
        out = out + b.scale(c / lead)
    return out


def _derivative(s: State, r: int) -> State:
    vac = State.vacuum(AMBIENT)
    for _ in range(r):
        s = mode_apply(s, -2, vac)
    return s


def decompose_state(s: State) -> List[Tuple[str, int, Fraction]]:
    """Write ``s`` as ``sum c L_{-1}^r W`` over quadratic quasi-primaries and the vacuum."""
    if not s:
        return []
    w = s.weight()
    if w == "inhomogeneous":
        raise ValueError("decomposition needs a homogeneous state")
    w = int(w)
    cands: List[Tuple[str, int]] = []
    if w == 0:
        cands.append(("vac", 0))
    for k in range(2, w + 1, 2):
        cands.append((field_name(k), w - k))
    cols = [_vec(_derivative(field(nm), r)) for nm, r in cands]
    x = linalg.solve(cols, _vec(s))
    if x is None:
        raise ValueError(f"state {s} is not a combination of quadratic fields")
    return [(nm, r, c) for (nm, r), c in zip(cands, x) if c]


@lru_cache(maxsize=None)
def product(a: str, l: int, b: str) -> Tuple[Tuple[str, int, Fraction], ...]:
    """``a_l b`` for ``l >= 0`` as ``((name, r, coeff), ...)``."""
    return tuple(decompose_state(mode_apply(field(a), l, field(b))))


def max_product(a: str, b: str) -> int:
    return field_weight(a) + field_weight(b) - 1


def _as_index(x: Index) -> PolyQ:
    return x if isinstance(x, PolyQ) else PolyQ.const(x)


def commutator(a: str, i: Index, b: str, k: Index) -> List[Tuple[PolyQ, str, Index]]:
    """``[a_i, b_k]`` as a list of ``(coeff, name, index)``.

    ``("vac", p)`` stands for ``vac_p = delta_{p,-1}``; callers with concrete
    indices turn it into a scalar.
    """
    if a == "vac" or b == "vac":
        return []
    ip, kp = _as_index(i), _as_index(k)
    concrete = ip.is_const() and kp.is_const()
    out: Dict[Tuple[str, object], PolyQ] = {}
    for l in range(0, max_product(a, b) + 1):
        cl = binom_poly(ip, l)
        if not cl:
            continue
        for name, r, c in product(a, l, b):
            p = ip + kp - l
            coef = cl * falling(p, r) * (c * (-1) ** r)
            if not coef:
                continue
            idx = p - r
            key = (name, idx.const_value() if idx.is_const() else idx)
            out[key] = out.get(key, PolyQ()) + coef
    res = []
    for (name, idx), coef in out.items():
        if not coef:
            continue
        if concrete:
            idx = int(idx)
            if name == "vac":
                if idx == -1:
                    res.append((coef, "vac", -1))
                continue
        res.append((coef, name, idx))
    res.sort(key=lambda x: (x[1], str(x[2])))
    return res


# -- brackets as operator identities ------------------------------------------------

ModeSum = Dict[Tuple[str, PolyQ], PolyQ]


def _add(out: ModeSum, key, c: PolyQ):
    v = out.get(key, PolyQ()) + c
    if v:
        out[key] = v
    else:
        out.pop(key, None)


def bracket(letter: Tuple[str, Index], modes: ModeSum) -> ModeSum:
    """``[letter, sum c X_p]`` as a combination of single modes (indices may be symbolic)."""
    a, i = letter
    out: ModeSum = {}
    for (name, p), c in modes.items():
        for coef, nm, idx in commutator(a, i, name, p):
            _add(out, (nm, _as_index(idx)), coef * c)
    return out


def nested_bracket(letters, name: str, index: Index) -> ModeSum:
    """``[l_k, ... [l_1, name_index]]`` with ``letters = (l_1, ..., l_k)``."""
    modes: ModeSum = {(name, _as_index(index)): PolyQ.const(1)}
    for letter in letters:
        modes = bracket(letter, modes)
    return modes


def mode_sum(terms) -> ModeSum:
    """Parse ``(coefficient text, field, index text)`` triples."""
    out: ModeSum = {}
    for coef, name, idx in terms:
        _add(out, (name, PolyQ.parse(idx)), PolyQ.parse(coef))
    return out


def scale(modes: ModeSum, c: PolyQ) -> ModeSum:
    return {k: v * c for k, v in modes.items() if v * c}


def combine(*parts: ModeSum) -> ModeSum:
    out: ModeSum = {}
    for part in parts:
        for k, v in part.items():
            _add(out, k, v)
    return out


def check_bracket_formulas(formulas=None) -> Dict[str, bool]:
    """Compare computed brackets ``[..., omega_{m+1}]`` with printed right-hand sides, symbolically in m."""
    from . import reference
    formulas = formulas or reference.COMMUTATOR_FORMULAS
    m = PolyQ.var("m")
    out = {}
    for name, (letters, rhs) in formulas.items():
        lhs = nested_bracket([(a, PolyQ.parse(i)) for a, i in letters], "omega", m + 1)
        out[name] = lhs == mode_sum(rhs)
    return out


def check_reconstruction(recipe=None, formulas=None) -> bool:
    """``omega_{m+1} = sum c_k [..., omega_{m+1}]`` after clearing powers of m.

    Both sides are multiplied by ``m^d`` with ``d`` the largest power of
    ``1/m`` among the coefficients, and the brackets are recomputed (not
    taken from the printed formulas).
    """
    from . import reference
    recipe = recipe or reference.RECONSTRUCTION
    formulas = formulas or reference.COMMUTATOR_FORMULAS
    m = PolyQ.var("m")
    coeffs = [PolyQ.parse(c) for c, _ in recipe]
    d = max(-c.min_degree("m") for c in coeffs)
    md = PolyQ.var("m", d)
    parts = []
    for c, (_, name) in zip(coeffs, recipe):
        letters = formulas[name][0]
        lhs = nested_bracket([(a, PolyQ.parse(i)) for a, i in letters], "omega", m + 1)
        parts.append(scale(lhs, c * md))
    total = combine(*parts)
    return total == {("omega", m + 1): md}
