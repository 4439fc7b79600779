"""Named elements, printed null vectors and the null-vector search."""

from fractions import Fraction

import pytest

from vlplus import generators as g
from vlplus.fock import Ambient, State
from vlplus.polyq import PolyQ
from vlplus.rewrite import field_expression
from vlplus.vertex import mode_apply


def _proportional(found, printed, n):
    """``found`` (Fraction, word) pairs vs printed (text, word) pairs at concrete ``n``."""
    want = {tuple(w): PolyQ.parse(c).evaluate({"n": n}) for c, w in printed}
    want = {w: c for w, c in want.items() if c}
    got = {tuple(w): c for c, w in found}
    if set(got) != set(want):
        return False
    w0 = next(iter(want))
    ratio = got[w0] / want[w0]
    return all(got[w] == ratio * want[w] for w in want)


def test_catalog_lists_every_buildable_name():
    names = [row[0] for row in g.catalog()]
    assert {"omega", "H", "H6", "E", "sv8H", "Q4", "Q51", "Q52", "Q6"} <= set(names)
    assert all(len(row) == 3 and row[2] for row in g.catalog())


def test_build_is_memoized_by_value():
    a = g.build("H", {"n": 4})
    b = g.build("H", {"n": 4})
    assert a.state == b.state
    with pytest.raises(g.UnknownElement):
        g.build("nope")


def test_h_weight_and_virasoro_action():
    """``omega_1 H = 4H``; ``H`` is not primary (``omega_2 H``, ``omega_3 H``, ``omega_5 H`` survive)."""
    omega, h = g.build("omega", {"n": 6}).state, g.build("H", {"n": 6}).state
    assert mode_apply(omega, 1, h) == h.scale(4)
    assert mode_apply(omega, 3, h) == omega.scale(2)
    assert mode_apply(omega, 5, h) == State.vacuum(h.ambient).scale(Fraction(-1, 3))
    assert not mode_apply(omega, 4, h)
    assert h.weight() == 4 and h.theta() == h


@pytest.mark.parametrize("name", ["sv8H", "Q4", "Q51", "Q52", "Q6"])
def test_printed_null_elements_vanish(name):
    ns = [None] if name == "sv8H" else [4, 6, -2]
    assert all(g.verify_null(name, n) for n in ns)


@pytest.mark.parametrize("name", ["sv8H", "Q4"])
def test_perturbed_null_elements_do_not_vanish(name):
    printed, _ = g.NULL_ELEMENTS[name]
    coef, word = printed[0]
    bumped = ((f"({coef}) + 1", word),) + tuple(printed[1:])
    assert not g.verify_null(name, None if name == "sv8H" else 6, terms=bumped)


def test_null_search_recovers_sv8():
    """One relation at weight 8 overall, and on the printed words it is the printed one."""
    assert len(g.null_search(8)) == 1
    printed = g.NULL_ELEMENTS["sv8H"][0]
    found = g.null_search(8, words=[tuple(w) for _, w in printed])
    assert len(found) == 1 and _proportional(found[0], printed, 4)


@pytest.mark.parametrize("n", [4, 6, 10])
def test_null_search_recovers_q4(n):
    printed = g.NULL_ELEMENTS["Q4"][0]
    found = g.null_search(4, words=[tuple(w) for _, w in printed], n=n, base="E")
    assert len(found) == 1 and _proportional(found[0], printed, n)


def test_h6_expression():
    expr = dict((tuple(w), c) for c, w in field_expression("H6"))
    assert expr[(("H", -3),)] == Fraction(-39, 10)
    assert expr[(("omega", -2), ("omega", -2))] == Fraction(2, 5)
    assert len(expr) == 5


def test_mode_words_weights():
    for w in g.mode_words(6, g.LETTER_WEIGHTS, max_mode=-1):
        assert sum(g.LETTER_WEIGHTS[f] - k - 1 for f, k in w) == 6
