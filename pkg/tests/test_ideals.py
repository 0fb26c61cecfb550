import itertools

import numpy as np
import pytest

from torsionlab.ideals import (
    Ideal,
    annihilator,
    colon,
    enumerate_ideals,
    ideal_intersect,
    ideal_product,
    ideal_sum,
    is_prime,
    spec,
    SymbolicSpec,
)
from torsionlab.rings import INTEGERS

from conftest import CATALOGUE, ring


def brute_ideals(R):
    """Every subset of R closed under + and under multiplication by R (tiny rings only)."""
    n = R.size
    found = set()
    for mask in range(1 << (n - 1)):
        S = {0} | {i + 1 for i in range(n - 1) if mask >> i & 1}
        arr = np.array(sorted(S))
        if not np.isin(R.add_table[np.ix_(arr, arr)], arr).all():
            continue
        if not np.isin(R.mul_table[:, arr], arr).all():
            continue
        found.add(frozenset(S))
    return found


@pytest.mark.parametrize("expr", CATALOGUE)
def test_enumeration_matches_brute_force(expr):
    R = ring(expr)
    assert {I.elements for I in enumerate_ideals(R)} == brute_ideals(R)


def test_counts():
    assert len(enumerate_ideals(ring("Z/12"))) == 6
    assert len(enumerate_ideals(ring("F4"))) == 2
    R = ring("F2[x]/(x^2)")
    assert [I.cardinality() for I in enumerate_ideals(R)] == [1, 2, 4]


def test_examples(Z12):
    I = lambda *g: Ideal(Z12, list(g))
    assert ideal_product(I(2), I(3)) == I(6)
    assert ideal_sum(I(4), I(0)) == I(4)
    assert colon(I(4), 2) == I(2)
    assert colon(I(4), 1) == I(4)
    assert colon(I(4), 0) == I(1)
    assert annihilator(I(4)) == I(3)
    assert annihilator(I(2)) == I(6)
    assert annihilator(I(0)) == I(1)
    assert not is_prime(I(4))
    assert sorted(p.format() for p in spec(Z12)) == ["(2)", "(3)"]


def test_integer_ops():
    I = lambda g: Ideal(INTEGERS, [g])
    assert ideal_intersect(I(4), I(6)) == I(12)
    assert ideal_sum(I(4), I(6)) == I(2)
    assert ideal_product(I(-4), I(6)) == I(24)
    assert Ideal(INTEGERS, [12, 18]).generator == 6
    assert isinstance(spec(INTEGERS), SymbolicSpec)


@pytest.mark.parametrize("expr", CATALOGUE)
def test_ops_against_sets(expr):
    R = ring(expr)
    ideals = enumerate_ideals(R)
    for I, J in itertools.product(ideals, repeat=2):
        assert ideal_intersect(I, J).elements == I.elements & J.elements
        sums = {int(R.add_table[a, b]) for a in I.elements for b in J.elements}
        assert ideal_sum(I, J).elements == sums
        P = ideal_product(I, J)
        prods = {int(R.mul_table[a, b]) for a in I.elements for b in J.elements}
        assert prods <= P.elements and P <= I and P <= J
    for I in ideals:
        for x in range(R.size):
            want = {r for r in range(R.size) if int(R.mul_table[x, r]) in I.elements}
            assert colon(I, R.labels[x]).elements == want


@pytest.mark.parametrize("expr", CATALOGUE)
def test_prime_definition(expr):
    R = ring(expr)
    for I in enumerate_ideals(R):
        brute = (not I.is_unit_ideal()) and all(
            int(R.mul_table[a, b]) not in I.elements
            for a in range(R.size) if a not in I.elements
            for b in range(R.size) if b not in I.elements)
        assert is_prime(I) == brute
