"""Normal forms of operator words acting on E_t u, and relation bookkeeping."""

from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from vlplus import rewrite as r
from vlplus.fock import Ambient, State
from vlplus.generators import NULL_ELEMENTS
from vlplus.polyq import PolyQ

letters = st.tuples(st.sampled_from(["omega", "H"]), st.integers(-2, 4))


def _difference(word, shift, hyp):
    a, b = r.reduce(word, shift, hyp), r.reduce_via_pbw(word, shift, hyp)
    return {k: a.get(k, r.Frac()) - b.get(k, r.Frac()) for k in set(a) | set(b)}


@given(letters, st.lists(letters, max_size=2), st.sampled_from([r.TOP_TERMINAL, r.LOWEST]))
def test_right_mul_preserves_relative_degree(letter, word, hyp):
    word = tuple(w for w in word if r.rdeg(w) >= hyp.min_right_rdeg)
    word = tuple(sorted(word, key=r._key))
    for out, coef in r.right_mul(letter, word, hyp):
        assert coef
        assert r.word_rdeg(out) == r.rdeg(letter) + r.word_rdeg(word)
        assert list(out) == sorted(out, key=r._key)


@pytest.mark.parametrize("hyp", [r.TOP_TERMINAL, r.LOWEST], ids=["terminal", "lowest"])
@pytest.mark.parametrize("level", [2, 3, 4])
def test_confluence_on_omega_words(hyp, level):
    """Reducing letter by letter and via the PBW basis of the Virasoro module agree."""
    for word in r.pbw_words(level):
        rev = tuple(reversed(word))
        for w in {word, rev}:
            d = _difference(w, level, hyp)
            assert not any(d.values()), w


def test_h_word_routes_differ_by_a_null_relation():
    """For ``H_{-1}`` the two reductions differ exactly by the Q4 relation."""
    d = _difference((("H", -1),), 4, r.LOWEST)
    diff = r.Relation.from_fracs(d)
    assert diff.terms
    assert r.same_relation(diff, r.derive_lowest("Q4", 4, route="direct"))


def test_routes_give_sound_relations():
    """Terminal-then-convert and direct lowest-weight routes both vanish on lattice vectors."""
    for route in ("terminal", "direct"):
        rel = r.derive_lowest("Q4", 4, route=route)
        for n, s in ((4, 1), (6, 2), (8, 3), (-4, 2)):
            assert r.evaluate_on_lattice(rel, n, s).is_zero()


def test_perturbed_relation_is_detected():
    rel = r.derive_relation("Q4", 4, r.TOP_TERMINAL)
    key = ((), 0, ())
    bad = r.Relation({**rel.terms, key: rel.terms[key] + PolyQ.var("t") + 1})
    amb = Ambient.rank_one(6)
    u = State.monomial(amb, [(0, 1)], (Fraction(2, 6),))
    assert r.evaluate_relation(rel, u).is_zero()
    assert not r.evaluate_relation(bad, u).is_zero()


def test_normalize_is_idempotent_and_clears_monomial_units():
    a = {((), 0, ()): PolyQ.parse("n^(-1)*t + 2"), ((), -1, (("omega", 2),)): PolyQ.parse("3*n^(-1)")}
    b = {((), 0, ()): PolyQ.parse("t + 2*n"), ((), -1, (("omega", 2),)): PolyQ.parse("3")}
    assert r.normalize(a) == r.normalize(b) == r.normalize(r.normalize(b))
    scaled = {k: v * PolyQ.parse("-(2*n - 1)/7") for k, v in b.items()}
    assert r.normalize(scaled) == r.normalize(b)


def test_relation_json_round_trip():
    rel = r.derive_lowest("Q51", 5)
    again = r.Relation.from_json(rel.to_json())
    assert again.terms == rel.terms and again.dumps() == rel.dumps()


def test_fold_and_unfold_are_inverse():
    rel = r.derive_lowest("Q4", 4)
    assert r.unfold_symbol(r.fold_symbol(rel)).terms == rel.terms


def test_substitute_scalars_and_vacuum_letters():
    rel = r.Relation({
        ((), 0, (("omega", 1), ("omega", 1))): PolyQ.const(1),
        ((), -1, (("omega", 0), ("omega", 2))): PolyQ.const(5),
        ((), -1, (("omega", -1), ("omega", 2))): PolyQ.const(7),
        ((), 0, (("H", 3),)): PolyQ.var("t"),
    })
    out = r.substitute(rel, {("omega", 1): 2, ("H", 3): 1})
    assert out.terms == {((), 0, ()): PolyQ.parse("t + 4"), ((), -1, (("omega", -1), ("omega", 2))): PolyQ.const(7)}
    with pytest.raises(ValueError):
        r.substitute(rel, {})


def test_vacuum_relation_from_sv8():
    rel = r.derive_vacuum_relation(NULL_ELEMENTS["sv8H"][0], 6)
    assert rel == {(("H", 2),): 3, (("omega", 0),): -1}


def test_format_key():
    assert r.format_key((((("H", 3), 1),), 0, ())) == "H_{3} E_{t} u"
    assert r.format_key(((), -1, (("omega", 2),))) == "E_{t-1} omega_{2} u"
