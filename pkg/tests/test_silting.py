import pytest

from torsionlab.errors import GeneratorsDontGenerate, NotIdempotent
from torsionlab.ideals import Ideal, enumerate_ideals
from torsionlab.modules import cyclic, is_isomorphic
from torsionlab.rings import idempotent_indices
from torsionlab.silting import (
    alternative_generators,
    build_truncation,
    check_base_level,
    check_generator_independence,
    check_idempotent_class,
    check_step1,
    check_step3_filtration,
    check_step6_membership,
    idempotent_silting,
    presentation_data,
    run_silting,
    step2_ext_criterion,
    transpose_module,
)

from conftest import CATALOGUE, ring, universe


def data_for(R, *pairs):
    return presentation_data(R, [Ideal(R, i) for i, _ in pairs], [g for _, g in pairs])


def test_transpose_examples(Z12):
    d = data_for(Z12, ([4], [4]))
    assert d.A == Ideal(Z12, [3])
    assert transpose_module(d, 0)[1].is_zero()
    d = data_for(Z12, ([2], [2, 6]))
    S = transpose_module(d, 0)[1]
    assert S.size == 3
    trivial = data_for(Z12, ([1], [1]))
    assert transpose_module(trivial, 0)[1].is_zero()


def test_generators_must_generate(Z12):
    with pytest.raises(GeneratorsDontGenerate):
        data_for(Z12, ([2], [4]))


def test_step1_examples():
    Z12 = ring("Z/12")
    assert check_step1(data_for(Z12, ([4], [4])))
    assert check_step1(data_for(Z12, ([1], [1])))
    Z8 = ring("Z/8")
    d = data_for(Z8, ([0], [0]))
    assert d.degenerate and check_step1(d)


@pytest.mark.parametrize("expr", CATALOGUE)
def test_step1_all_filters(expr):
    from torsionlab.filters import enumerate_filters
    R = ring(expr)
    for G in enumerate_filters(R):
        d = presentation_data(R, G.basis)
        assert check_step1(d)


def test_step2_examples(Z12):
    d = data_for(Z12, ([2], [2, 6]))
    Q = d.quotient
    M = cyclic(Q, Ideal(Q, []))
    assert step2_ext_criterion(d, 0, M) == (True, True, True)
    Z = cyclic(Q, Ideal(Q, [Q.one]))
    assert step2_ext_criterion(d, 0, Z)[:2] == (True, True)
    deg = data_for(ring("Z/8"), ([0], [0]))
    assert step2_ext_criterion(deg, 0, None) == (True, True, True)


def test_truncation_sizes(Z12):
    t = build_truncation(data_for(Z12, ([4], [4])), 2)
    assert [lv.C.size for lv in t.levels] == [3, 3, 3]
    t = build_truncation(data_for(Z12, ([2], [2, 6])), 2)
    assert [lv.C.size for lv in t.levels] == [3, 9, 81]
    assert check_base_level(t)
    for n in range(2):
        assert check_step3_filtration(t, n)["ok"]
        assert check_step3_filtration(t, n, primed=True)["ok"]


@pytest.mark.parametrize("expr", CATALOGUE)
def test_base_level(expr):
    R = ring(expr)
    for I in enumerate_ideals(R):
        t = build_truncation(presentation_data(R, [I]), 1)
        assert check_base_level(t)
        assert check_step3_filtration(t, 0)["ok"]


def test_step6_example(Z12):
    t = build_truncation(data_for(Z12, ([4], [4])), 2)
    rep = check_step6_membership(t, universe("Z/12"))
    assert rep["ok"] and rep["stabilization_level"] is not None


def test_idempotent_classes():
    Z12 = ring("Z/12")
    for e in idempotent_indices(Z12):
        assert check_idempotent_class(Z12, e, universe("Z/12"))["ok"]
    members = check_idempotent_class(Z12, 4, universe("Z/12"))["members"]
    assert all(M.size in (1, 3, 9) for M in universe("Z/12") if M.name in members)
    assert len(check_idempotent_class(Z12, 1, universe("Z/12"))["members"]) == len(universe("Z/12"))
    assert check_idempotent_class(Z12, 0, universe("Z/12"))["members"] == ["0"]
    with pytest.raises(NotIdempotent):
        idempotent_silting(Z12, 2)


@pytest.mark.parametrize("expr", CATALOGUE)
def test_generator_independence(expr):
    R = ring(expr)
    for I in enumerate_ideals(R):
        alt = alternative_generators(I)
        assert Ideal(R, alt) == I
        assert check_generator_independence(R, I, [list(I.generators) or [R.zero], alt], universe(expr))


def test_run_silting_redundant_instance(Z12):
    out, t = run_silting(Z12, [Ideal(Z12, [2])], [[2, 6]], level=2, universe=universe("Z/12"))
    assert out["ok"]
    assert out["S"][0]["S_size"] == 3
