"""The eleven acceptance criteria, each exact, each reporting one PASS/FAIL line."""

import random
import time
from fractions import Fraction

import pytest

from vlplus import reference as ref
from vlplus.cli import _evaluation_vectors
from vlplus.eliminate import (LOWEST_H3, constrained_solutions, division_witness, integer_roots,
                              rational_multiple, terminal_chain)
from vlplus.fock import Ambient, State
from vlplus.generators import NULL_ELEMENTS, verify_null
from vlplus.lattice import LatticeData, check_mixing_table, check_orthogonal_output, orthogonal_sublattice
from vlplus.modealg import check_bracket_formulas, check_reconstruction
from vlplus.polyq import PolyQ
from vlplus.rewrite import (TOP_TERMINAL, derive_lowest, derive_relation, derive_vacuum_relation,
                            evaluate_relation, fold_symbol, normalize, relation_from_terms)
from vlplus.vertex import check_e_mode_identity, epsilon, symmetrized_exp
from vlplus.zhu import lambda_action_check

EVEN_N = (-8, -6, -4, -2, 4, 6, 8, 10)


def _elapsed(start):
    return f"({time.perf_counter() - start:.1f}s)"


def test_criterion_01_null_vanishing(record):
    start = time.perf_counter()
    ok = verify_null("sv8H")
    bad = [(q, n) for q in ("Q4", "Q51", "Q6") for n in EVEN_N if not verify_null(q, n)]
    assert record(1, "null elements vanish", ok and not bad, _elapsed(start))


def test_criterion_02_commutators(record):
    start = time.perf_counter()
    brackets = check_bracket_formulas()
    ok = all(brackets.values()) and check_reconstruction()
    assert record(2, "bracket identities in symbolic m", ok, _elapsed(start))


def _same(printed, derived):
    return normalize(relation_from_terms(printed).terms) == normalize(derived.terms)


def test_criterion_03_terminal_relations(record):
    start = time.perf_counter()
    ok = all(_same(terms, derive_relation(null, shift, TOP_TERMINAL))
             for (null, shift), terms in ref.TERMINAL.values())
    assert record(3, "terminal-setting relations reproduce", ok, _elapsed(start))


def test_criterion_04_lowest_relations(record):
    start = time.perf_counter()
    ok = all(_same(terms, fold_symbol(derive_lowest(null, shift)))
             for (null, shift), terms in ref.LOWEST.values())
    printed = relation_from_terms(ref.LOWEST["Q4"][1])
    h3 = printed.coefficient(LOWEST_H3)
    ok = ok and h3 == PolyQ.parse("-2*n*(n-2)*(2*n-9)*(2*n-1)")
    ok = ok and fold_symbol(derive_lowest("Q4", 4)).proportional_to(printed)
    assert record(4, "lowest-weight relations reproduce", ok, _elapsed(start))


def test_criterion_05_elimination_chain(record):
    start = time.perf_counter()
    chain = terminal_chain()
    ok = all(rational_multiple(p, ref.poly(t)) is not None
             for p, t in zip(chain.polys, (ref.ELIMINATED_1, ref.ELIMINATED_2)))
    ok = ok and chain.gcd.verify() and chain.eliminant.verify()
    product = ref.eliminant_product()
    ok = ok and division_witness(product, chain.gcd.g) * chain.gcd.g == product
    sols = constrained_solutions(ref.poly(ref.LOWEST_ELIMINANT))
    ok = ok and sorted(map(str, sols.solutions)) == sorted(str(ref.poly(s)) for s in ref.CONSTRAINED_T)
    assert record(5, "elimination chain and admissible cutoffs", ok, _elapsed(start))


def test_criterion_06_roots(record):
    start = time.perf_counter()
    reports = [integer_roots(ref.poly(g)) for g in ref.G_POLYS]
    ok = all(r.verify() and not r.integer_roots for r in reports)
    ok = ok and max(r.poly.degree("n") for r in reports) == 38
    assert record(6, "g_1..g_5 have no integer roots", ok, _elapsed(start))


def test_criterion_07_epsilon(record):
    start = time.perf_counter()
    cases = []
    for norm in (4, 6):
        for j in (-5, -3, -2, 1, 2, 3, 5):
            if j != norm:
                cases.append(([[norm]], (1,), (Fraction(j, norm),)))
    for alpha in ((1, 0), (0, 1), (1, 1)):
        for lam in ((1, 0), (0, 1), (Fraction(1, 2), Fraction(1, 3)), (2, 1), (Fraction(1, 4), Fraction(1, 2))):
            if tuple(map(Fraction, lam)) not in (tuple(map(Fraction, alpha)), tuple(-Fraction(a) for a in alpha)):
                cases.append(([[4, 0], [0, 6]], alpha, lam))
    bad = []
    for gram, alpha, lam in cases:
        amb = Ambient.from_gram(gram)
        want = abs(amb.pair(alpha, lam).const_value()) - 1
        if epsilon(symmetrized_exp(amb, alpha), State.exp(amb, lam)) != want:
            bad.append((gram, alpha, lam))
    assert record(7, "epsilon table", not bad and len(cases) >= 20, f"{len(cases)} cases {_elapsed(start)}")


def test_criterion_08_vacuum_chain(record):
    start = time.perf_counter()
    rel = derive_vacuum_relation(NULL_ELEMENTS["sv8H"][0], 6)
    ok = rel == {(("H", 2),): 3, (("omega", 0),): -1}
    for gram, alpha, beta in (([[4]], (1,), (1,)), ([[4, 0], [0, 6]], (1, 0), (1, 1)),
                              ([[-2, 1], [1, 4]], (1, 0), (1, 1))):
        amb = Ambient.from_gram(gram)
        ok = ok and all(check_e_mode_identity(amb, alpha, beta, n) for n in range(-4, 5))
    assert record(8, "omega_0 u = 3 H_2 u and the E(alpha)-mode identity", ok, _elapsed(start))


def test_criterion_09_lambda(record):
    start = time.perf_counter()
    amb = Ambient.from_gram([[4, 0], [0, 9]])
    grid = [(Fraction(a, 2), Fraction(b, 3)) for a in range(-2, 3) for b in range(-2, 3)]
    ok = all(lambda_action_check(amb, lam) for lam in grid)
    assert record(9, "o(Lambda_ij) and its square on e^lambda", ok, _elapsed(start))


def random_lattice(rng: random.Random, rank: int) -> LatticeData:
    while True:
        g = [[0] * rank for _ in range(rank)]
        for i in range(rank):
            g[i][i] = 2 * rng.choice([x for x in range(-4, 5) if x])
            for j in range(i + 1, rank):
                g[i][j] = g[j][i] = rng.randint(-3, 3)
        try:
            return LatticeData.from_gram(g)
        except ValueError:
            continue


def random_momentum(rng: random.Random, rank: int):
    while True:
        lam = tuple(Fraction(rng.randint(-6, 6), rng.randint(1, 4)) for _ in range(rank))
        if any(lam):
            return lam


def test_criterion_10_lattice(record):
    start = time.perf_counter()
    rng = random.Random(20240610)
    bad = 0
    for _ in range(200):
        rank = rng.randint(1, 4)
        lat, lam = random_lattice(rng, rank), random_momentum(rng, rank)
        if not check_orthogonal_output(lat, lam, orthogonal_sublattice(lat, lam)):
            bad += 1
    ok = bad == 0 and check_mixing_table()
    assert record(10, "orthogonal sublattices and mixing table", ok, f"200 cases {_elapsed(start)}")


def test_criterion_11_evaluation(record):
    start = time.perf_counter()
    rels = [("terminal", derive_relation(nm, sh, TOP_TERMINAL)) for nm, sh in (("Q4", 4), ("Q51", 5), ("Q6", 6))]
    rels += [("lowest", derive_lowest(nm, sh)) for nm, sh in (("Q4", 4), ("Q51", 5), ("Q52", 5), ("Q6", 6))]
    points = [(n, t) for n in (-4, 4, 6, 8, 10, 12) for t in (0, 1, 2)]
    counts = []
    for family, rel in rels:
        count = 0
        for n, t in points:
            for u in _evaluation_vectors(family, n, t):
                assert not evaluate_relation(rel, u), (family, n, t)
                count += 1
        counts.append(count)
    assert record(11, "derived relations vanish on lattice vectors", min(counts) >= 12,
                  f"{sum(counts)} evaluations {_elapsed(start)}")
