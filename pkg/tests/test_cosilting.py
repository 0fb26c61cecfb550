import pytest

from torsionlab.cosilting import build_cosilting, build_precover, in_C_lambda
from torsionlab.filters import enumerate_filters, generate_filter
from torsionlab.ideals import Ideal
from torsionlab.modules import direct_sum, is_torsionfree, zero_module

from conftest import CATALOGUE, ring, universe


def test_z12_four(Z12):
    G = generate_filter(Z12, [Ideal(Z12, [4])])
    asm = build_cosilting(G, universe("Z/12"))
    assert asm.C.size == 3 and asm.K.is_zero()
    assert asm.precover.source.is_zero() and asm.hull_of_F.is_zero()
    assert asm.E1.size == 4
    assert asm.checks["ok"]


def test_precover_into_doubled_target(Z12):
    G = generate_filter(Z12, [Ideal(Z12, [4])])
    asm = build_cosilting(G, universe("Z/12"))
    target = direct_sum(asm.E1, asm.E1)
    pc = build_precover(G, target, universe("Z/12"))
    assert pc.source.is_zero() and pc.certified


def test_precover_of_zero(Z12):
    G = generate_filter(Z12, [])
    pc = build_precover(G, zero_module(Z12))
    assert pc.source.is_zero()


def test_trivial_filter_cogenerates_everything(Z12):
    asm = build_cosilting(generate_filter(Z12, []), universe("Z/12"))
    assert asm.checks["F_members"] == [M.name for M in universe("Z/12")]
    assert asm.checks["ok"]


def test_full_filter_on_z2():
    R = ring("Z/2")
    G = enumerate_filters(R)[0]
    assert G.minimum().is_zero()
    asm = build_cosilting(G, universe("Z/2"))
    assert asm.C.is_zero() and asm.checks["F_members"] == ["0"]


@pytest.mark.parametrize("expr", CATALOGUE)
def test_assembly_all_filters(expr):
    R = ring(expr)
    for G in enumerate_filters(R):
        asm = build_cosilting(G, universe(expr))
        assert asm.checks["ok"], asm.checks
        for M in universe(expr):
            assert in_C_lambda(M, asm.fbar, asm.E1) == is_torsionfree(M, G)
