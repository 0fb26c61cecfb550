import functools

import pytest

from torsionlab.modules import build_universe
from torsionlab.parsing import parse_ring_expr
from torsionlab.rings import make_ring

CATALOGUE = ["Z/6", "Z/8", "Z/12", "F4", "F2[x]/(x^2)", "Z/4*F3"]


@functools.lru_cache(maxsize=None)
def ring(expr):
    return make_ring(parse_ring_expr(expr))


@functools.lru_cache(maxsize=None)
def universe(expr):
    return build_universe(ring(expr)).members


@pytest.fixture
def Z12():
    return ring("Z/12")
