import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from torsionlab.errors import GuardExceeded
from torsionlab.filters import generate_filter
from torsionlab.ideals import Ideal, enumerate_ideals
from torsionlab.modules import (
    UniversePolicy,
    all_submodules,
    build_universe,
    cyclic,
    direct_sum,
    from_presentation,
    hom_set,
    is_divisible,
    is_isomorphic,
    is_torsionfree,
    quotient,
    submodule,
    torsion_part,
    zero_module,
)
from torsionlab.rings import INTEGERS
from torsionlab.snf import PIDModule

from conftest import CATALOGUE, ring, universe


def zn_module(n, orders):
    R = ring("Z/%d" % n)
    return direct_sum(*[cyclic(R, Ideal(R, [o % n])) for o in orders])


def group_invariants(orders):
    """Elementary divisors of a finite abelian group given by cyclic orders."""
    out = []
    for o in orders:
        for p in range(2, o + 1):
            while o % p == 0:
                k = 1
                while o % p ** (k + 1) == 0:
                    k += 1
                out.append(p ** k)
                o //= p ** k
    return sorted(out)


def test_cyclic_sizes(Z12):
    assert cyclic(Z12, Ideal(Z12, [4])).size == 4
    assert cyclic(Z12, Ideal(Z12, [])).size == 12
    assert cyclic(Z12, Ideal(Z12, [1])).is_zero()
    assert cyclic(INTEGERS, Ideal(INTEGERS, [6])).invariant_factors == (6,)


def test_zero_module(Z12):
    Z = zero_module(Z12)
    assert Z.size == 1 and Z.ngens == 0
    assert len(hom_set(Z, cyclic(Z12, Ideal(Z12, [3])))) == 1


@pytest.mark.parametrize("a", [1, 2, 3, 4, 6, 12])
@pytest.mark.parametrize("b", [1, 2, 3, 4, 6, 12])
def test_hom_counts_between_cyclics(a, b):
    M, N = zn_module(12, [a]), zn_module(12, [b])
    assert len(hom_set(M, N)) == math.gcd(a, b)


def test_hom_examples():
    R6 = ring("Z/6")
    homs = hom_set(cyclic(R6, Ideal(R6, [2])), cyclic(R6, Ideal(R6, [3])))
    assert len(homs) == 1
    R12 = ring("Z/12")
    M = cyclic(R12, Ideal(R12, [2]))
    assert len(hom_set(M, M)) == 2
    for f in hom_set(M, M):
        assert f.respects_structure()


def test_hom_sum_formula():
    # Hom is additive in both variables
    M = zn_module(12, [2, 4])
    N = zn_module(12, [6, 4])
    expect = 1
    for a in (2, 4):
        for b in (6, 4):
            expect *= math.gcd(a, b)
    assert len(hom_set(M, N)) == expect


def brute_submodules(M):
    subs = set()
    n = M.size
    for mask in range(1 << (n - 1)):
        S = [0] + [i + 1 for i in range(n - 1) if mask >> i & 1]
        arr = np.array(S)
        if np.isin(M.add[np.ix_(arr, arr)], arr).all() and np.isin(M.act[:, arr], arr).all():
            subs.add(tuple(S))
    return subs


@pytest.mark.parametrize("expr", ["Z/6", "Z/8", "F4", "F2[x]/(x^2)"])
def test_submodules_match_brute_force(expr):
    for M in universe(expr):
        if M.size > 16:
            continue
        got = {tuple(int(x) for x in s) for s in all_submodules(M)}
        assert got == brute_submodules(M)


@settings(max_examples=40, deadline=None)
@given(st.lists(st.sampled_from([1, 2, 3, 4, 6, 12]), min_size=1, max_size=3),
       st.lists(st.sampled_from([1, 2, 3, 4, 6, 12]), min_size=1, max_size=3))
def test_isomorphism_agrees_with_group_invariants(a, b):
    if math.prod(a) > 300 or math.prod(b) > 300:
        return
    M, N = zn_module(12, a), zn_module(12, b)
    assert is_isomorphic(M, N) == (group_invariants(a) == group_invariants(b))


def test_isomorphism_map_is_bijective():
    M = zn_module(12, [4, 3])
    N = zn_module(12, [12])
    ok, f = is_isomorphic(M, N, return_map=True)
    assert ok and f.is_injective() and f.is_surjective() and f.respects_structure()


def test_presentation_sizes():
    R = ring("Z/12")
    # coker of [[2, 0], [0, 3]] plus a redundant column
    M = from_presentation(R, 2, [[2, 0, 4], [0, 3, 3]])
    assert M.size == 6
    with pytest.raises(GuardExceeded):
        from_presentation(R, 4, np.zeros((4, 1), dtype=np.int64))


def test_quotient_and_submodule(Z12):
    M = cyclic(Z12, Ideal(Z12, []))
    S = submodule(M, M.ideal_times(Ideal(Z12, [4])))
    Q = quotient(M, S.inclusion)
    assert S.size == 3 and Q.size == 4
    assert is_isomorphic(Q, cyclic(Z12, Ideal(Z12, [4])))


def test_divisibility_examples(Z12):
    M3 = cyclic(Z12, Ideal(Z12, [3]))
    M2 = cyclic(Z12, Ideal(Z12, [2]))
    I4 = Ideal(Z12, [4])
    assert is_divisible(M3, I4)
    assert not is_divisible(M2, I4)
    for M in universe("Z/12"):
        assert is_divisible(M, Ideal(Z12, [1]))


def test_torsion_examples(Z12):
    G = generate_filter(Z12, [Ideal(Z12, [4])])
    M = cyclic(Z12, Ideal(Z12, [6]))
    assert torsion_part(M, G).size == 2
    trivial = generate_filter(Z12, [])
    for N in universe("Z/12"):
        assert is_torsionfree(N, trivial)
        assert torsion_part(N, trivial).size == 1


def test_integer_torsion():
    G = generate_filter(INTEGERS, [Ideal(INTEGERS, [2])])
    M = PIDModule.from_cyclic_orders(INTEGERS, [0, 2])
    assert not is_torsionfree(M, G)
    assert torsion_part(M, G).invariant_factors == (2,)
    assert is_torsionfree(PIDModule.from_cyclic_orders(INTEGERS, [0, 9]), G)


def test_universe_examples():
    R = ring("Z/12")
    U = build_universe(R, UniversePolicy(summands=1)).members
    assert sorted(M.size for M in U) == [1, 2, 3, 4, 6, 12]
    assert [M.size for M in build_universe(R, UniversePolicy(bound=1)).members] == [1]
    S = ring("F2[x]/(x^2)")
    U = build_universe(S, UniversePolicy(summands=2, bound=16)).members
    assert sorted(M.size for M in U) == [1, 2, 4, 4, 8, 16]


@pytest.mark.parametrize("expr", CATALOGUE)
def test_universe_pairwise_non_isomorphic(expr):
    U = universe(expr)
    for i, M in enumerate(U):
        assert M.size <= 512
        for N in U[i + 1:]:
            assert not is_isomorphic(M, N)
    assert len(U) >= len(enumerate_ideals(ring(expr)))
