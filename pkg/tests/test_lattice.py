"""Lattice data, coset classification and orthogonal sublattices."""

import random
from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from vlplus.lattice import (DUAL_2_IN_L, DUAL_2_NOT_IN_L, IN_L, OUTSIDE_DUAL, LatticeData, MixStep,
                            check_mixing_table, check_orthogonal_output, choose_xy, classify, mixing_table,
                            orthogonal_basis, orthogonal_sublattice)

from test_acceptance import random_lattice, random_momentum


def test_validation():
    for bad in ([[1, 0], [0, 2]], [[2, 1], [0, 2]], [[2, 2], [2, 2]], [[2, 0, 0], [0, 2]]):
        with pytest.raises(ValueError):
            LatticeData.from_gram(bad)


def test_classification():
    lat = LatticeData.diagonal(4, 6)
    assert classify((1, 0), lat) == IN_L
    assert classify((Fraction(1, 2), 0), lat) == DUAL_2_IN_L
    assert classify((Fraction(1, 4), 0), lat) == DUAL_2_NOT_IN_L
    assert classify((Fraction(1, 3), 0), lat) == OUTSIDE_DUAL


def test_reference_case():
    lat = LatticeData.diagonal(4, 6)
    steps = []
    vecs = orthogonal_sublattice(lat, (1, 0), steps)
    assert vecs == [(1, 1), (-6, 4)]
    assert steps == [MixStep(k=1, p=4, q=6, x=1, y=1)]
    assert check_orthogonal_output(lat, (1, 0), vecs)


def test_norm_two_vectors_are_doubled():
    lat = LatticeData.diagonal(2)
    assert orthogonal_sublattice(lat, (1,)) == [(Fraction(2),)]


def test_isotropic_basis_is_repaired():
    lat = LatticeData.from_gram([[0, 1], [1, 0]])
    basis = orthogonal_basis(lat)
    assert all(lat.norm(b) != 0 for b in basis)
    assert lat.pair(basis[0], basis[1]) == 0


@given(st.integers(-8, 8).filter(bool), st.integers(-8, 8).filter(bool))
def test_choose_xy(p, q):
    x, y = choose_xy(2 * p, 2 * q)
    assert x and y and 2 * p * x * x + 2 * q * y * y not in (0, 1, -1, 2, -2)


@given(st.integers(0, 10 ** 6), st.integers(1, 4))
def test_random_corpus(seed, rank):
    rng = random.Random(seed)
    lat, lam = random_lattice(rng, rank), random_momentum(rng, rank)
    assert check_orthogonal_output(lat, lam, orthogonal_sublattice(lat, lam))


def test_check_rejects_bad_output():
    lat = LatticeData.diagonal(4, 6)
    assert not check_orthogonal_output(lat, (1, 0), [(1, 0), (0, 1)])
    assert not check_orthogonal_output(lat, (1, 0), [(1, 1)])


def test_mixing_table():
    assert check_mixing_table()
    table = mixing_table()
    assert set(table) == {"<b1,b1>", "<b2,b2>", "<b1,b2>", "<b1,lam>", "<b2,lam>", "N*alpha1", "N*alpha2"}
