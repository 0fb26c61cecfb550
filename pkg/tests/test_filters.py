import itertools

import pytest

from torsionlab.errors import NotSpecializationClosed
from torsionlab.filters import (
    GabrielFilter,
    SpecSubset,
    all_spec_subsets,
    enumerate_filters,
    filter_from_spec,
    generate_filter,
    spec_from_filter,
    validate_filter,
)
from torsionlab.ideals import Ideal, colon, enumerate_ideals, ideal_intersect, spec
from torsionlab.rings import INTEGERS

from conftest import CATALOGUE, ring


def brute_filters(R):
    """Families of ideals satisfying the Gabriel axioms, by exhaustion over all families."""
    ideals = enumerate_ideals(R)
    out = []
    for bits in itertools.product([False, True], repeat=len(ideals)):
        fam = {I for I, b in zip(ideals, bits) if b}
        if not fam:
            continue
        if any(J >= I and J not in fam for I in fam for J in ideals):
            continue
        if any(ideal_intersect(I, J) not in fam for I in fam for J in fam):
            continue
        if any(colon(I, x) not in fam for I in fam for x in R.labels):
            continue
        # J is in as soon as some member I has (J : x) in the family for all x in I
        closed = True
        for J in ideals:
            if J in fam:
                continue
            if any(all(colon(J, R.labels[x]) in fam for x in I.elements) for I in fam):
                closed = False
                break
        if closed:
            out.append(frozenset(fam))
    return set(out)


@pytest.mark.parametrize("expr", CATALOGUE)
def test_enumeration_matches_brute_force(expr):
    R = ring(expr)
    got = {frozenset(G.members) for G in enumerate_filters(R)}
    assert got == brute_filters(R)


@pytest.mark.parametrize("expr,count", [("Z/12", 4), ("Z/8", 2), ("Z/6", 4), ("F2[x]/(x^2)", 2),
                                        ("F4", 2), ("Z/4*F3", 4)])
def test_counts(expr, count):
    assert len(enumerate_filters(ring(expr))) == count


def test_minimum_is_idempotent():
    for expr in CATALOGUE:
        R = ring(expr)
        for G in enumerate_filters(R):
            m = G.minimum()
            assert m.elements == {int(R.mul_table[a, b]) for a in m.elements for b in m.elements} | {0} \
                or m.is_zero()


def test_z12_examples(Z12):
    G = GabrielFilter(Z12, [Ideal(Z12, [4])])
    assert validate_filter(G).valid
    assert sorted(J.format() for J in G.members) == ["(1)", "(2)", "(4)"]
    bare = validate_filter(GabrielFilter(Z12, [Ideal(Z12, [2])]))
    assert not bare.valid and bare.violations
    gen = generate_filter(Z12, [Ideal(Z12, [2])])
    assert gen == G and [B.format() for B in gen.basis] == ["(4)"]
    assert generate_filter(Z12, []) == GabrielFilter(Z12, [Ideal(Z12, [1])])
    assert validate_filter(GabrielFilter(Z12, [Ideal(Z12, [1])])).valid


def test_integer_seeds():
    G = generate_filter(INTEGERS, [Ideal(INTEGERS, [2]), Ideal(INTEGERS, [3])])
    for n in [1, 2, 3, 6, 12, 72, 2 ** 9 * 3 ** 7]:
        assert G.contains(Ideal(INTEGERS, [n]))
    for n in [0, 5, 10, 14]:
        assert not G.contains(Ideal(INTEGERS, [n]))
    assert validate_filter(G).valid
    P = SpecSubset(INTEGERS, [2, 3])
    assert filter_from_spec(P) == G


@pytest.mark.parametrize("expr", CATALOGUE)
def test_spec_round_trips(expr):
    R = ring(expr)
    subsets = all_spec_subsets(R)
    assert len(subsets) == 2 ** len(spec(R))
    for P in subsets:
        assert spec_from_filter(filter_from_spec(P)) == P
    for G in enumerate_filters(R):
        assert filter_from_spec(spec_from_filter(G)) == G


def test_from_spec_example(Z12):
    G = filter_from_spec(SpecSubset(Z12, [Ideal(Z12, [2])]))
    assert sorted(J.format() for J in G.members) == ["(1)", "(2)", "(4)"]
    assert filter_from_spec(SpecSubset(Z12, [])).minimum().is_unit_ideal()


def test_specialization_closure_enforced():
    # over Z, the generic point alone is not closed under specialization
    with pytest.raises(NotSpecializationClosed):
        filter_from_spec(SpecSubset(INTEGERS, [], generic=True))
