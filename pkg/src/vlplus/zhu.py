"""Zhu products and zero-mode actions on lowest vectors ``e^lambda``.

For homogeneous ``a`` of weight ``wt a``

    a * b = sum_i C(wt a, i) a_{i-1} b,     a o b = sum_i C(wt a, i) a_{i-2} b,

and the zero mode is ``o(a) = a_{wt a - 1}``, extended linearly to
inhomogeneous states.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, List, Optional, Sequence

from .fock import Ambient, State
from .generators import build
from .polyq import PolyQ, binom
from .vertex import mode_apply


@dataclass
class ZhuProductResult:
    """``state`` together with the largest ``i`` whose summand is non-zero (``-1`` if none)."""

    state: State
    certificate: int


def _integer_weight(a: State) -> int:
    w = a.weight()
    if w == "inhomogeneous":
        raise ValueError("Zhu products need a homogeneous left factor")
    if not isinstance(w, PolyQ):
        w = PolyQ.const(w)
    if not w.is_const() or w.const_value().denominator != 1:
        raise ValueError(f"weight {w} is not an integer")
    return int(w.const_value())


def _product(a: State, b: State, shift: int) -> ZhuProductResult:
    if not a or not b:
        return ZhuProductResult(State(b.ambient), -1)
    wt = _integer_weight(a)
    out = State(b.ambient)
    cert = -1
    for i in range(wt + 1):
        term = mode_apply(a, i - shift, b)
        if term:
            out = out + term.scale(binom(wt, i))
            cert = i
    return ZhuProductResult(out, cert)


def star(a: State, b: State) -> ZhuProductResult:
    """``a * b = sum_i C(wt a, i) a_{i-1} b``."""
    return _product(a, b, 1)


def circ(a: State, b: State) -> ZhuProductResult:
    """``a o b = sum_i C(wt a, i) a_{i-2} b``."""
    return _product(a, b, 2)


def homogeneous_parts(a: State) -> Dict[Fraction, State]:
    parts: Dict[Fraction, State] = {}
    for m, c in a.terms.items():
        w = a.monomial_weight(m)
        if not w.is_const():
            raise ValueError("symbolic weights are not supported here")
        key = w.const_value()
        parts[key] = parts.get(key, State(a.ambient)) + State(a.ambient, {m: c})
    return parts


def zero_mode(a: State, v: State) -> State:
    """``o(a) v`` with ``o(a) = a_{wt a - 1}`` on each homogeneous component."""
    out = State(v.ambient)
    for w, part in homogeneous_parts(a).items():
        if w.denominator != 1:
            raise ValueError("zero mode needs integer weights")
        out = out + mode_apply(part, int(w) - 1, v)
    return out


def _axis_pairing(amb: Ambient, axis: int, lam: Sequence) -> Fraction:
    """``<h_axis, lambda>`` for the unit vector ``h_axis`` along a diagonal Gram axis."""
    from .generators import _rational_sqrt
    norm = _rational_sqrt(amb.gram[axis][axis]).const_value()
    return amb.pair_axis(axis, lam).const_value() / norm


def lambda_action_check(amb: Ambient, lam: Sequence, i: int = 1, j: int = 2) -> bool:
    """``o(Lambda_ij) e^lam = <h_i,lam><h_j,lam> e^lam`` and ``o(Lambda_ij)^2 = 4 omega^i_1 omega^j_1`` on ``e^lam``.

    ``i`` and ``j`` are 1-based axes of a diagonal Gram matrix with square
    norms; both sides of the second identity are computed with mode actions.
    """
    if amb.rank < 2:
        raise ValueError("Lambda_ij needs rank >= 2")
    params = {"gram": [[str(x) for x in row] for row in amb.gram], "i": i, "j": j}
    lam_state = build("Lambda", params).state
    v = State.exp(amb, lam)
    once = zero_mode(lam_state, v)
    hi, hj = _axis_pairing(amb, i - 1, lam), _axis_pairing(amb, j - 1, lam)
    if once != v.scale(hi * hj):
        return False
    twice = zero_mode(lam_state, once)
    wi = build("omega", {"gram": params["gram"], "i": i, "j": i}).state
    wj = build("omega", {"gram": params["gram"], "i": j, "j": j}).state
    rhs = mode_apply(wi, 1, mode_apply(wj, 1, v)).scale(4)
    return twice == rhs


def annihilates_lowest(name: str, amb: Ambient, lam: Sequence, i: int = 1, j: int = 2) -> bool:
    """``o(X_ij) e^lam == 0`` for ``X`` among the mixed elements ``Eu``, ``Et``."""
    params = {"gram": [[str(x) for x in row] for row in amb.gram], "i": i, "j": j}
    x = build(name, params).state
    return not zero_mode(x, State.exp(amb, lam))
