"""Finitely generated ideals: arithmetic, colon ideals, annihilators, Spec."""

from __future__ import annotations

from functools import reduce

import numpy as np

from .errors import GuardExceeded, NotFinite, RingMismatch
from .rings import default_guard, require_finite


def _span(R, elements):
    """Sorted index array of the ideal generated by ``elements`` (indices)."""
    span = np.zeros(1, dtype=np.int64)
    for x in elements:
        x = int(x)
        if np.any(span == x):
            continue
        span = np.unique(R.add_table[np.ix_(span, R.principal(x))])
    return span


def _greedy_generators(R, elements):
    # a single generator when the ideal is principal
    for x in elements:
        if len(R.principal(int(x))) == len(elements):
            return [int(x)] if x else []
    span = np.zeros(1, dtype=np.int64)
    gens = []
    for x in elements:
        x = int(x)
        if np.any(span == x):
            continue
        gens.append(x)
        span = np.unique(R.add_table[np.ix_(span, R.principal(x))])
    return gens


class Ideal:
    """An ideal of a finite ring (element set) or of a Euclidean domain (one generator)."""

    def __init__(self, ring, generators=(), *, _elements=None):
        self.ring = ring
        if ring.is_finite:
            if _elements is None:
                _elements = _span(ring, [ring.index(g) for g in generators])
            self.elements = frozenset(int(x) for x in _elements)
            self._sorted = tuple(sorted(self.elements))
            self.generators = [ring.labels[i] for i in _greedy_generators(ring, self._sorted)]
        else:
            g = ring.zero
            for x in generators:
                g = ring.gcd(g, x)
            self.generator = ring.normalize(g)
            self.generators = [] if ring.is_zero(self.generator) else [self.generator]

    @classmethod
    def from_indices(cls, ring, elements):
        return cls(ring, _elements=np.unique(np.asarray(list(elements), dtype=np.int64)))

    # comparisons ------------------------------------------------------
    def _key(self):
        if self.ring.is_finite:
            return self._sorted
        return ("pid", self.generator)

    def __eq__(self, other):
        return isinstance(other, Ideal) and other.ring == self.ring and other._key() == self._key()

    def __hash__(self):
        return hash(self._key())

    def __le__(self, other):
        """Containment ``self ⊆ other``."""
        _check(self, other)
        if self.ring.is_finite:
            return self.elements <= other.elements
        if self.ring.is_zero(self.generator):
            return True
        if self.ring.is_zero(other.generator):
            return False
        return self.ring.is_zero(self.ring.divmod(self.generator, other.generator)[1])

    def __ge__(self, other):
        return other <= self

    def __lt__(self, other):
        return self <= other and self != other

    def sort_key(self):
        if self.ring.is_finite:
            return (len(self.elements), self._sorted)
        return (self.ring.norm(self.generator), str(self.generator))

    def __len__(self):
        if not self.ring.is_finite:
            raise NotFinite("ideals of %s are infinite" % self.ring.name)
        return len(self.elements)

    def cardinality(self):
        return len(self)

    @property
    def indices(self):
        return np.array(self._sorted, dtype=np.int64)

    def contains(self, x):
        if self.ring.is_finite:
            return self.ring.index(x) in self.elements
        if self.ring.is_zero(self.generator):
            return self.ring.is_zero(x)
        return self.ring.is_zero(self.ring.divmod(x, self.generator)[1])

    def is_zero(self):
        if self.ring.is_finite:
            return self.elements == {0}
        return self.ring.is_zero(self.generator)

    def is_unit_ideal(self):
        if self.ring.is_finite:
            return len(self.elements) == self.ring.size
        return self.ring.is_unit(self.generator)

    def format(self):
        if not self.ring.is_finite:
            return "(%s)" % self.ring.format(self.generator)
        if self.is_zero():
            return "(0)"
        if self.is_unit_ideal():
            return "(%s)" % self.ring.format(self.ring.one)
        return "(%s)" % ", ".join(self.ring.format(g) for g in self.generators)

    def __repr__(self):
        return "Ideal%s" % self.format()

    def to_json(self):
        return [self.ring.format(g) for g in self.generators]


def _check(I, J):
    if I.ring != J.ring:
        raise RingMismatch("ideals live in different rings")


def zero_ideal(R):
    return Ideal(R, [])


def unit_ideal(R):
    return Ideal(R, [R.one])


def ideal_sum(I, J):
    _check(I, J)
    R = I.ring
    if R.is_finite:
        return Ideal.from_indices(R, np.unique(R.add_table[np.ix_(I.indices, J.indices)]))
    return Ideal(R, [I.generator, J.generator])


def ideal_product(I, J):
    _check(I, J)
    R = I.ring
    if R.is_finite:
        prods = np.unique(R.mul_table[np.ix_(I.indices, J.indices)])
        return Ideal(R, _elements=_span(R, prods))
    return Ideal(R, [R.mul(I.generator, J.generator)])


def ideal_power(I, k):
    out = unit_ideal(I.ring)
    for _ in range(k):
        out = ideal_product(out, I)
    return out


def ideal_intersect(I, J):
    _check(I, J)
    R = I.ring
    if R.is_finite:
        return Ideal.from_indices(R, I.elements & J.elements)
    return Ideal(R, [R.lcm(I.generator, J.generator)])


def colon(I, x):
    """``(I : x) = {r | x r ∈ I}``."""
    R = I.ring
    if R.is_finite:
        xi = R.index(x)
        mask = np.isin(R.mul_table[xi], I.indices)
        return Ideal.from_indices(R, np.nonzero(mask)[0])
    if R.is_zero(x):
        return unit_ideal(R)
    g = I.generator
    if R.is_zero(g):
        return zero_ideal(R)
    return Ideal(R, [R.divmod(g, R.gcd(g, x))[0]])


def colon_ideal(I, J):
    """``(I : J) = {r | r J ⊆ I}``."""
    _check(I, J)
    R = I.ring
    if R.is_finite:
        mask = np.isin(R.mul_table[:, J.indices], I.indices).all(axis=1)
        return Ideal.from_indices(R, np.nonzero(mask)[0])
    return reduce(ideal_intersect, [colon(I, g) for g in J.generators], unit_ideal(R))


def annihilator(I):
    R = I.ring
    if R.is_finite:
        mask = (R.mul_table[:, I.indices] == 0).all(axis=1)
        return Ideal.from_indices(R, np.nonzero(mask)[0])
    return unit_ideal(R) if I.is_zero() else zero_ideal(R)


def enumerate_ideals(R, guard=None):
    """All ideals of a finite ring, sorted by (cardinality, element set)."""
    require_finite(R)
    guard = default_guard() if guard is None else guard
    if R.size > guard:
        raise GuardExceeded("ring has %d elements, guard is %d" % (R.size, guard))
    found = {}
    for x in range(R.size):
        p = tuple(int(v) for v in R.principal(x))
        found[p] = None
    frontier = list(found)
    while frontier:
        new = []
        keys = list(found)
        for a in frontier:
            for b in keys:
                s = tuple(int(v) for v in np.unique(R.add_table[np.ix_(a, b)]))
                if s not in found:
                    found[s] = None
                    new.append(s)
        frontier = new
    ideals = [Ideal.from_indices(R, s) for s in found]
    ideals.sort(key=Ideal.sort_key)
    return ideals


def is_prime(I):
    R = I.ring
    if not R.is_finite:
        if I.is_zero():
            return True
        return R.is_irreducible(I.generator)
    if I.is_unit_ideal():
        return False
    inside = np.zeros(R.size, dtype=bool)
    inside[I.indices] = True
    prod_in = inside[R.mul_table]
    bad = prod_in & ~inside[:, None] & ~inside[None, :]
    return not bad.any()


def is_maximal(I):
    R = I.ring
    if not R.is_finite:
        return not I.is_zero() and R.is_irreducible(I.generator)
    if I.is_unit_ideal():
        return False
    return all(J == I or J.is_unit_ideal() for J in enumerate_ideals(R) if I <= J)


class SymbolicSpec:
    """Spec of Z or F_p[x]: the zero ideal plus the principal primes."""

    def __init__(self, ring):
        self.ring = ring

    def contains(self, I):
        return is_prime(I)

    def describe(self):
        if self.ring.name == "Z":
            return "{(0)} ∪ {(p) : p prime}"
        return "{(0)} ∪ {(f) : f monic irreducible}"

    def materialize(self, bound):
        """The zero ideal and the primes of norm/degree at most ``bound``."""
        R = self.ring
        out = [zero_ideal(R)]
        if R.name == "Z":
            from sympy import primerange

            out += [Ideal(R, [int(p)]) for p in primerange(2, bound + 1)]
        else:
            import itertools

            for d in range(1, bound + 1):
                for tail in itertools.product(range(R.p), repeat=d):
                    f = tuple(tail) + (1,)
                    if R.is_irreducible(f):
                        out.append(Ideal(R, [f]))
        return out

    def __repr__(self):
        return "SymbolicSpec(%s)" % self.describe()


def spec(R):
    """Prime ideals: a list for finite rings, a ``SymbolicSpec`` for Z and F_p[x]."""
    if not R.is_finite:
        return SymbolicSpec(R)
    return [I for I in enumerate_ideals(R) if is_prime(I)]


def maximal_ideals(R):
    # every prime of a finite ring is maximal
    return spec(R)


def jacobson_radical(R):
    return reduce(ideal_intersect, maximal_ideals(R), unit_ideal(R))
