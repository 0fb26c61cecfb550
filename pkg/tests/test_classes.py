import pytest

from torsionlab.classes import (
    closure_suite,
    cogen_class,
    d_sigma_class,
    gen_class,
    in_cogen,
    in_gen,
    theta,
    torsionfree_class,
    verify_bijections,
    xi,
)
from torsionlab.filters import SpecSubset, enumerate_filters, generate_filter
from torsionlab.homological import sigma_for_ideal
from torsionlab.ideals import Ideal, enumerate_ideals
from torsionlab.modules import UniversePolicy, build_universe, cyclic, is_divisible
from torsionlab.rings import INTEGERS
from torsionlab.snf import PIDModule

from conftest import CATALOGUE, ring, universe


def test_theta_example(Z12):
    G = generate_filter(Z12, [Ideal(Z12, [4])])
    cyc = build_universe(Z12, UniversePolicy(summands=1)).members
    assert sorted(M.size for M in theta(G).members(cyc)) == [1, 3]
    trivial = generate_filter(Z12, [])
    assert len(theta(trivial).members(cyc)) == len(cyc)
    full = enumerate_filters(Z12)[0]
    assert full.minimum().is_zero()
    assert [M.size for M in theta(full).members(cyc)] == [1]


def test_xi_example(Z12):
    G = generate_filter(Z12, [Ideal(Z12, [4])])
    res = xi(theta(G), universe("Z/12"))
    assert res.filter == G
    assert sorted(J.format() for J in res.members) == ["(1)", "(2)", "(4)"]
    assert set(res.witnesses) == {"(0)", "(3)", "(6)"}


def test_xi_extremes(Z12):
    trivial = generate_filter(Z12, [])
    assert xi(theta(trivial), universe("Z/12")).filter == trivial
    full = enumerate_filters(Z12)[0]
    res = xi(theta(full), universe("Z/12"))
    assert len(res.members) == 6 and not res.witnesses


def test_torsionfree_class_examples(Z12):
    P = SpecSubset(Z12, [Ideal(Z12, [2])])
    F = torsionfree_class(P)
    assert F.member(cyclic(Z12, Ideal(Z12, [3])))
    assert not F.member(cyclic(Z12, Ideal(Z12, [2])))
    assert all(torsionfree_class(SpecSubset(Z12, [])).vector(universe("Z/12")))
    Q = SpecSubset(INTEGERS, [2])
    FZ = torsionfree_class(Q)
    assert FZ.member(PIDModule.from_cyclic_orders(INTEGERS, [0]))
    assert not FZ.member(PIDModule.from_cyclic_orders(INTEGERS, [2]))


@pytest.mark.parametrize("expr", CATALOGUE)
def test_bijections(expr):
    rep = verify_bijections(ring(expr), universe(expr))
    assert rep.passed, rep.failures
    c = rep.counts
    assert c["filters"] == c["spec_subsets"] == c["div_classes"] == c["torsionfree_classes"]


def test_field_counts():
    rep = verify_bijections(ring("F4"), universe("F4"))
    assert rep.counts["filters"] == 2


@pytest.mark.parametrize("expr", CATALOGUE)
def test_silting_class_is_divisibility(expr):
    R = ring(expr)
    for I in enumerate_ideals(R):
        D = d_sigma_class(sigma_for_ideal(R, list(I.generators) or [R.zero]))
        for M in universe(expr):
            assert D.member(M) == is_divisible(M, I)


def test_gen_and_cogen(Z12):
    R3 = cyclic(Z12, Ideal(Z12, [3]))
    R12 = cyclic(Z12, Ideal(Z12, []))
    for M in universe("Z/12"):
        assert in_gen(M, R12)
        assert in_cogen(M, R12) or M.size > 1
    assert not in_gen(cyclic(Z12, Ideal(Z12, [2])), R3)
    assert in_cogen(R3, R3) and not in_cogen(R12, R3)
    assert gen_class(R3).member(R3) and cogen_class(R3).member(R3)


@pytest.mark.parametrize("expr", CATALOGUE)
def test_closure_properties(expr):
    stats, failures, _ = closure_suite(ring(expr), universe(expr))
    assert not failures
    assert stats["extension"] > 0 and stats["product"] > 0
