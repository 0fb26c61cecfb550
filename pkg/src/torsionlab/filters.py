"""Gabriel filters of finite type and specialization-closed subsets of Spec."""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from functools import cached_property, reduce

from .errors import NotFinite, NotSpecializationClosed
from .ideals import (
    Ideal,
    colon,
    enumerate_ideals,
    ideal_intersect,
    ideal_product,
    spec,
    unit_ideal,
    zero_ideal,
)

PRODUCT_EXPONENT_CAP = 8


class SpecSubset:
    """A set of primes.

    Finite rings: an explicit frozenset of prime ideals.  Z and F_p[x]: a flag
    for the generic point (0) plus a finite set of prime generators, which is
    either the set itself or, when ``cofinite`` is true, its complement among
    the nonzero primes.
    """

    def __init__(self, ring, primes=(), generic=False, cofinite=False):
        self.ring = ring
        if ring.is_finite:
            self.primes = frozenset(primes)
            self.generic = False
            self.cofinite = False
        else:
            self.primes = frozenset(ring.normalize(p.generator if isinstance(p, Ideal) else p)
                                    for p in primes)
            self.generic = bool(generic)
            self.cofinite = bool(cofinite)

    def contains(self, p):
        if self.ring.is_finite:
            return p in self.primes
        if p.is_zero():
            return self.generic
        inside = p.generator in self.primes
        return not inside if self.cofinite else inside

    def is_specialization_closed(self):
        if self.ring.is_finite:
            primes = spec(self.ring)
            return all(q in self.primes for p in self.primes for q in primes if p <= q)
        # every nonzero prime of a PID lies over (0)
        return not self.generic or (self.cofinite and not self.primes)

    def _key(self):
        if self.ring.is_finite:
            return tuple(sorted(p.sort_key() for p in self.primes))
        return (self.generic, self.cofinite, tuple(sorted(map(str, self.primes))))

    def __eq__(self, other):
        return isinstance(other, SpecSubset) and other.ring == self.ring and other._key() == self._key()

    def __hash__(self):
        return hash(self._key())

    def format(self):
        if self.ring.is_finite:
            return "{%s}" % ", ".join(p.format() for p in sorted(self.primes, key=Ideal.sort_key))
        names = ", ".join("(%s)" % self.ring.format(p) for p in sorted(self.primes, key=str))
        if self.generic:
            return "Spec R"
        if self.cofinite:
            return "Spec R minus {(0)%s}" % (", " + names if names else "")
        return "{%s}" % names

    __repr__ = format

    def to_json(self):
        if self.ring.is_finite:
            return {"primes": [p.to_json() for p in sorted(self.primes, key=Ideal.sort_key)]}
        return {"generic": self.generic, "cofinite": self.cofinite,
                "primes": sorted(self.ring.format(p) for p in self.primes)}


def all_spec_subsets(R):
    """Every subset of Spec R (finite rings), in order of size then prime order."""
    if not R.is_finite:
        raise NotFinite("Spec of %s is infinite" % R.name)
    primes = spec(R)
    out = []
    for k in range(len(primes) + 1):
        for combo in itertools.combinations(primes, k):
            out.append(SpecSubset(R, combo))
    return out


class GabrielFilter:
    """A family of ideals given by a basis: ``J ∈ G`` iff ``J`` contains a basis ideal.

    Over Z and F_p[x] a filter produced by ``generate_filter`` or
    ``filter_from_spec`` also carries its ``support`` (the primes it
    contains); membership is then decided by prime factorization.
    """

    def __init__(self, ring, basis, support=None):
        self.ring = ring
        self.basis = sorted(set(basis), key=Ideal.sort_key)
        self.support = support

    @cached_property
    def members(self):
        if not self.ring.is_finite:
            raise NotFinite("filters over %s have infinitely many members" % self.ring.name)
        return [J for J in enumerate_ideals(self.ring) if any(B <= J for B in self.basis)]

    @cached_property
    def member_set(self):
        return frozenset(self.members)

    def contains(self, J):
        R = self.ring
        if R.is_finite:
            return J in self.member_set
        if self.support is not None:
            if J.is_zero():
                return self.support.generic
            if R.is_unit(J.generator):
                return True
            return all(self.support.contains(Ideal(R, [p])) for p in R.factor(J.generator))
        return any(B <= J for B in self.basis)

    __contains__ = contains

    def minimum(self):
        """The least member (finite rings)."""
        if not self.ring.is_finite:
            raise NotFinite("no least member over %s" % self.ring.name)
        if not self.members:
            return None
        return reduce(ideal_intersect, self.members)

    def explicit_basis(self, cap=PRODUCT_EXPONENT_CAP):
        """Basis products ``B1^e1 ... Bk^ek`` with exponents up to ``cap`` (PID listing)."""
        R = self.ring
        if R.is_finite or not self.basis:
            return list(self.basis)
        out = set()
        for exps in itertools.product(range(cap + 1), repeat=len(self.basis)):
            g = R.one
            for B, e in zip(self.basis, exps):
                for _ in range(e):
                    g = R.mul(g, B.generator)
            out.add(Ideal(R, [g]))
        return sorted(out, key=Ideal.sort_key)

    def _key(self):
        if self.ring.is_finite:
            m = self.minimum()
            members = tuple(sorted(J.sort_key() for J in self.members))
            return (m.sort_key() if m is not None else None, members)
        if self.support is not None:
            return ("support", self.support._key())
        return ("basis", tuple(B.sort_key() for B in self.basis))

    def __eq__(self, other):
        return isinstance(other, GabrielFilter) and other.ring == self.ring and other._key() == self._key()

    def __hash__(self):
        return hash(self._key())

    def format(self):
        if self.ring.is_finite:
            return "<%s>" % ", ".join(B.format() for B in self.basis)
        if self.support is not None:
            return "G(%s)" % self.support.format()
        return "<%s>" % ", ".join(B.format() for B in self.basis)

    __repr__ = format

    def to_json(self):
        out = {"ring": self.ring.name, "basis": [B.to_json() for B in self.basis]}
        if self.ring.is_finite:
            out["members"] = [J.to_json() for J in self.members]
        elif self.support is not None:
            out["support"] = self.support.to_json()
        return out


@dataclass
class ValidationReport:
    valid: bool = True
    violations: list = field(default_factory=list)

    def fail(self, kind, **witness):
        self.valid = False
        self.violations.append(dict(kind=kind, **witness))

    def to_json(self):
        return {"valid": self.valid, "violations": self.violations}


def validate_filter(G, pid_sample=(0, 1, 2, 3, 4, 5, 6, 12)):
    """Check the filter and Gabriel axioms; every violation carries a witness."""
    R = G.ring
    report = ValidationReport()
    if R.is_finite:
        members = G.member_set
        ideals = enumerate_ideals(R)
        if unit_ideal(R) not in members:
            report.fail("empty")
            return report
        for I in members:
            for J in ideals:
                if I <= J and J not in members:
                    report.fail("upward", member=I.format(), missing=J.format())
        for I, J in itertools.combinations(sorted(members, key=Ideal.sort_key), 2):
            if ideal_intersect(I, J) not in members:
                report.fail("intersection", left=I.format(), right=J.format())
        for I in sorted(members, key=Ideal.sort_key):
            for x in R.labels:
                if colon(I, x) not in members:
                    report.fail("axiom_i", ideal=I.format(), x=R.format(x))
        for J in ideals:
            if J in members:
                continue
            for I in sorted(members, key=Ideal.sort_key):
                if all(colon(J, R.labels[x]) in members for x in I.indices):
                    report.fail("axiom_ii", ideal=J.format(), witness=I.format())
                    break
        for B1, B2 in itertools.combinations_with_replacement(G.basis, 2):
            if ideal_product(B1, B2) not in members:
                report.fail("product", left=B1.format(), right=B2.format())
        return report

    if not G.basis and G.support is None:
        report.fail("empty")
        return report
    for B in G.basis:
        if not G.contains(B):
            report.fail("basis", ideal=B.format())
    for B1, B2 in itertools.combinations_with_replacement(G.basis, 2):
        if not G.contains(ideal_product(B1, B2)):
            report.fail("product", left=B1.format(), right=B2.format())
    for B in G.basis:
        for x in pid_sample:
            xe = _pid_element(R, x)
            if not G.contains(colon(B, xe)):
                report.fail("axiom_i", ideal=B.format(), x=R.format(xe))
    return report


def _pid_element(R, k):
    if R.name == "Z":
        return k
    # k-th polynomial in base-p digit order
    coeffs = []
    while k:
        coeffs.append(k % R.p)
        k //= R.p
    return R.trim(coeffs)


def generate_filter(R, seeds, cap=PRODUCT_EXPONENT_CAP):
    """The least Gabriel filter of finite type containing ``seeds``."""
    seeds = [S if isinstance(S, Ideal) else Ideal(R, S) for S in seeds]
    if R.is_finite:
        closure = set(seeds) or {unit_ideal(R)}
        while True:
            new = {ideal_product(a, b) for a in closure for b in closure} - closure
            if not new:
                break
            closure |= new
        minimal = [I for I in closure if not any(J < I for J in closure)]
        return GabrielFilter(R, minimal)
    if any(S.is_zero() for S in seeds):
        return GabrielFilter(R, [zero_ideal(R)], SpecSubset(R, (), generic=True, cofinite=True))
    primes = set()
    for S in seeds:
        if not R.is_unit(S.generator):
            primes |= set(R.factor(S.generator))
    basis = [S for S in seeds if not S.is_unit_ideal()] or [unit_ideal(R)]
    return GabrielFilter(R, basis, SpecSubset(R, primes))


def enumerate_filters(R):
    """All Gabriel filters of a finite ring, ordered by their least member.

    Over a finite ring a filter is closed under finite intersections, so it is
    the upward closure of its least member; each such candidate is kept only
    if ``validate_filter`` accepts it.
    """
    if not R.is_finite:
        raise NotFinite("%s has infinitely many filters" % R.name)
    out = []
    for I in enumerate_ideals(R):
        G = GabrielFilter(R, [I])
        if validate_filter(G).valid:
            out.append(G)
    return out


def filter_from_spec(P):
    R = P.ring
    if not P.is_specialization_closed():
        raise NotSpecializationClosed("%s is not closed under specialization" % P.format())
    if R.is_finite:
        primes = spec(R)
        members = [I for I in enumerate_ideals(R)
                   if all(P.contains(p) for p in primes if I <= p)]
        least = reduce(ideal_intersect, members)
        return GabrielFilter(R, [least])
    if P.generic:
        return GabrielFilter(R, [zero_ideal(R)], P)
    basis = [] if P.cofinite else [Ideal(R, [p]) for p in P.primes]
    return GabrielFilter(R, basis or [unit_ideal(R)], P)


def spec_from_filter(G):
    R = G.ring
    if R.is_finite:
        return SpecSubset(R, [p for p in spec(R) if G.contains(p)])
    if G.support is not None:
        return G.support
    return generate_filter(R, G.basis).support


def trivial_filter(R):
    return GabrielFilter(R, [unit_ideal(R)])
