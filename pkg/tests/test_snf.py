import random

import pytest
from hypothesis import given, settings, strategies as st

from torsionlab.filters import generate_filter
from torsionlab.homological import ProjectiveMap
from torsionlab.ideals import Ideal
from torsionlab.rings import INTEGERS, PolyRingContext
from torsionlab.snf import PIDModule, diagonal, matmul, smith_normal_form, pid_in_D_sigma, pid_in_T_sigma

from oracles import check_snf, coker_check

matrices = st.integers(1, 4).flatmap(
    lambda m: st.integers(1, 4).flatmap(
        lambda n: st.lists(st.lists(st.integers(-9, 9), min_size=n, max_size=n), min_size=m, max_size=m)))


def test_examples():
    _, S, _ = smith_normal_form([[2, 0], [0, 3]])
    assert diagonal(INTEGERS, S) == [1, 6]
    _, S, _ = smith_normal_form([[0, 0], [0, 0]])
    assert diagonal(INTEGERS, S) == [0, 0]
    _, S, _ = smith_normal_form([[4, 2], [2, 2]])
    assert diagonal(INTEGERS, S) == [2, 2]


@settings(max_examples=200, deadline=None)
@given(matrices)
def test_random_integer_matrices(A):
    problems, d = check_snf(A)
    assert not problems
    assert coker_check(A, d) in (None, True)


def test_polynomial_ring():
    R = PolyRingContext(2)
    x = R.parse_element("x") if hasattr(R, "parse_element") else (0, 1)
    one = R.one
    A = [[R.mul(x, x), R.zero], [R.zero, R.add(x, one)]]
    U, S, V = smith_normal_form(A, R)
    assert matmul(R, matmul(R, U, A), V) == S
    d = diagonal(R, S)
    assert R.is_unit(d[0])
    assert R.divmod(d[1], R.mul(R.mul(x, x), R.add(x, one)))[1] == R.zero


def test_pid_module():
    M = PIDModule.from_presentation(INTEGERS, [[4, 2], [2, 2]])
    assert M.invariant_factors == (2, 2) and M.cardinality() == 4
    F = PIDModule.from_cyclic_orders(INTEGERS, [0, 6, 4])
    assert F.rank == 1 and F.invariant_factors == (2, 12)


def test_pid_sigma_membership():
    sigma = ProjectiveMap(INTEGERS, [[2]])
    Q3 = PIDModule.from_cyclic_orders(INTEGERS, [3])
    Q2 = PIDModule.from_cyclic_orders(INTEGERS, [2])
    assert pid_in_D_sigma(sigma, Q3) and not pid_in_D_sigma(sigma, Q2)
    assert pid_in_T_sigma(sigma, Q3) and not pid_in_T_sigma(sigma, Q2)
    assert not pid_in_D_sigma(sigma, PIDModule.from_cyclic_orders(INTEGERS, [0]))
