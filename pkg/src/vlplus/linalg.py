"""Exact dense linear algebra over the rationals (and over Q(n) through sympy)."""

from __future__ import annotations

from fractions import Fraction
from typing import Dict, Hashable, List, Optional, Sequence, Tuple


def rref(rows: List[List[Fraction]]) -> Tuple[List[List[Fraction]], List[int]]:
    """Reduced row echelon form and pivot columns."""
    m = [list(r) for r in rows]
    pivots: List[int] = []
    if not m:
        return m, pivots
    ncols = len(m[0])
    r = 0
    for c in range(ncols):
        piv = next((i for i in range(r, len(m)) if m[i][c]), None)
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        inv = 1 / Fraction(m[r][c])
        m[r] = [x * inv for x in m[r]]
        for i in range(len(m)):
            if i != r and m[i][c]:
                f = m[i][c]
                m[i] = [a - f * b for a, b in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
        if r == len(m):
            break
    return m[:r], pivots


def nullspace(columns: Sequence[Dict[Hashable, Fraction]]) -> List[List[Fraction]]:
    """Kernel of the map ``e_j -> columns[j]`` (vectors given sparsely)."""
    keys = sorted({k for col in columns for k in col}, key=repr)
    rows = [[Fraction(col.get(k, 0)) for col in columns] for k in keys]
    ncols = len(columns)
    if not rows:
        return [[Fraction(int(i == j)) for i in range(ncols)] for j in range(ncols)]
    red, piv = rref(rows)
    free = [c for c in range(ncols) if c not in piv]
    basis = []
    for f in free:
        v = [Fraction(0)] * ncols
        v[f] = Fraction(1)
        for r, c in enumerate(piv):
            v[c] = -red[r][f]
        basis.append(v)
    return basis


def solve(columns: Sequence[Dict[Hashable, Fraction]], target: Dict[Hashable, Fraction]) -> Optional[List[Fraction]]:
    """Some ``x`` with ``sum x_j columns[j] == target``, or ``None``."""
    keys = sorted({k for col in columns for k in col} | set(target), key=repr)
    rows = [[Fraction(col.get(k, 0)) for col in columns] + [Fraction(target.get(k, 0))] for k in keys]
    ncols = len(columns)
    red, piv = rref(rows)
    if ncols in piv:
        return None
    x = [Fraction(0)] * ncols
    for r, c in enumerate(piv):
        x[c] = red[r][ncols]
    return x


def rank(columns: Sequence[Dict[Hashable, Fraction]]) -> int:
    keys = sorted({k for col in columns for k in col}, key=repr)
    rows = [[Fraction(col.get(k, 0)) for col in columns] for k in keys]
    return len(rref(rows)[1]) if rows else 0
