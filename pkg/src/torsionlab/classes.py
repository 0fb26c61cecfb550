"""Module classes, the two maps between filters and divisibility classes, and their round trips."""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import reduce

import numpy as np

from .errors import NotFinite
from .filters import (
    GabrielFilter,
    all_spec_subsets,
    enumerate_filters,
    filter_from_spec,
    spec_from_filter,
)
from .homological import character_dual, in_D_sigma, in_T_sigma
from .ideals import Ideal, enumerate_ideals, ideal_intersect, spec
from .errors import GuardExceeded
from .modules import (
    Module,
    _evaluate,
    all_submodules,
    cyclic,
    direct_sum,
    hom_candidates,
    is_divisible,
    is_torsionfree,
    quotient,
    submodule,
    torsion_part,
)
from .rings import idempotent_indices


class ModuleClass:
    """A membership predicate with a printable description."""

    def __init__(self, ring, kind, predicate, params=None):
        self.ring = ring
        self.kind = kind
        self._predicate = predicate
        self.params = params or {}

    def member(self, M):
        return bool(self._predicate(M))

    __contains__ = member

    def vector(self, universe):
        return tuple(self.member(M) for M in universe)

    def members(self, universe):
        return [M for M in universe if self.member(M)]

    def __repr__(self):
        return "<%s class over %s>" % (self.kind, self.ring.name)


# ---------------------------------------------------------------------------
# predicates


def divisible_by_filter(M, G):
    """``M = I M`` for every basis ideal."""
    return all(is_divisible(M, B) for B in G.basis)


def divisible_by_all_members(M, G):
    return all(is_divisible(M, J) for J in G.members)


def in_gen(M, N):
    """``M`` is an epimorphic image of a finite power of ``N`` (trace of ``N`` is all of ``M``)."""
    if M.is_zero():
        return True
    cand = hom_candidates(N, M)
    images = np.unique(cand)
    return len(M.span(images)) == M.size


def in_cogen(M, N):
    """``M`` embeds in a finite power of ``N`` (the maps to ``N`` separate points)."""
    if M.is_zero():
        return True
    cand = hom_candidates(M, N)
    alive = np.ones(M.size, dtype=bool)
    alive[0] = False
    for start in range(0, len(cand), 4096):
        tables = _evaluate(M, N, cand[start:start + 4096])
        alive &= ~(tables != 0).any(axis=0)
        if not alive.any():
            return True
    return not alive.any()


def theta(G):
    """The class of G-divisible modules."""
    return ModuleClass(G.ring, "Div", lambda M: divisible_by_filter(M, G), {"filter": G})


def torsionfree_by_filter(G):
    return ModuleClass(G.ring, "TorsionFree", lambda M: is_torsionfree(M, G), {"filter": G})


def torsionfree_class(P):
    """``{M : Hom(R/p, M) = 0 for p in P}``, tested prime by prime."""
    R = P.ring

    def pred(M):
        if R.is_finite:
            return all(len(M.annihilated_by(p)) == 1 for p in P.primes)
        if M.is_zero():
            return True
        if P.generic:
            return False
        for d in M.invariant_factors:
            for q in R.factor(d):
                if P.contains(Ideal(R, [q])):
                    return False
        return True

    return ModuleClass(R, "F(P)", pred, {"spec": P})


def d_sigma_class(sigma):
    return ModuleClass(sigma.ring, "D_sigma", lambda M: in_D_sigma(sigma, M), {"sigma": sigma})


def t_sigma_class(sigma):
    return ModuleClass(sigma.ring, "T_sigma", lambda M: in_T_sigma(sigma, M), {"sigma": sigma})


def gen_class(N):
    return ModuleClass(N.ring, "Gen", lambda M: in_gen(M, N), {"module": N})


def cogen_class(N):
    return ModuleClass(N.ring, "Cogen", lambda M: in_cogen(M, N), {"module": N})


# ---------------------------------------------------------------------------
# the inverse map


def filter_idempotent(G):
    """Index of the idempotent ``e`` with ``min(G) = R e`` (finite rings)."""
    R = G.ring
    least = G.minimum()
    for e in idempotent_indices(R):
        if Ideal(R, [R.labels[e]]) == least:
            return e
    raise AssertionError("least member %s is not generated by an idempotent" % least.format())


def idempotent_witness(R, e):
    """``R e`` as the cyclic module ``R / R(1-e)``."""
    one_minus = R.labels[R.sub(R.one_index, e)]
    W = cyclic(R, Ideal(R, [one_minus]))
    W.name = "R*%s" % R.format_index(e)
    return W


@dataclass
class XiResult:
    filter: GabrielFilter
    members: list
    witnesses: dict = field(default_factory=dict)  # excluded ideal -> witness name

    def to_json(self):
        return {"filter": self.filter.to_json(),
                "excluded": [{"ideal": k, "witness": v} for k, v in self.witnesses.items()]}


def xi(D, witnesses):
    """Ideals ``J`` with ``M = J M`` for every witness ``M`` in ``D``.

    When ``D`` is a divisibility class the idempotent witness ``R e`` is
    added to the witness list, which makes the answer exact over a finite ring.
    """
    R = D.ring
    if not R.is_finite:
        raise NotFinite("xi enumerates ideals of a finite ring")
    pool = [M for M in witnesses if D.member(M)]
    if D.kind == "Div":
        W = idempotent_witness(R, filter_idempotent(D.params["filter"]))
        if D.member(W):
            pool.insert(0, W)
    members = []
    found = {}
    for J in enumerate_ideals(R):
        bad = next((M for M in pool if not is_divisible(M, J)), None)
        if bad is None:
            members.append(J)
        else:
            found[J.format()] = bad.name
    least = reduce(ideal_intersect, members)
    return XiResult(GabrielFilter(R, [least]), members, found)


# ---------------------------------------------------------------------------
# verification


@dataclass
class CorrespondenceReport:
    ring: str
    filters: list = field(default_factory=list)
    spec_round_trips: list = field(default_factory=list)
    counts: dict = field(default_factory=dict)
    failures: list = field(default_factory=list)
    note: str = ("Xi(Theta(G)) is computed with the idempotent witness R*e (min G = Re) added "
                 "to the universe; this witness makes the equality exact over a finite ring.")

    @property
    def passed(self):
        return not self.failures

    def to_json(self):
        return {"ring": self.ring, "passed": self.passed, "counts": self.counts,
                "filters": self.filters, "spec_round_trips": self.spec_round_trips,
                "failures": self.failures, "note": self.note}


def dual_of(M):
    if not hasattr(M, "_dual"):
        M._dual = character_dual(M).module
    return M._dual


def verify_bijections(R, universe):
    report = CorrespondenceReport(R.name)
    filters = enumerate_filters(R)
    div_vectors = set()
    tf_vectors = set()
    for G in filters:
        D = theta(G)
        F = torsionfree_by_filter(G)
        dvec = D.vector(universe)
        fvec = F.vector(universe)
        div_vectors.add(dvec)
        tf_vectors.add(fvec)
        res = xi(D, universe)
        entry = {"filter": G.format(), "minimum": G.minimum().format(),
                 "theta_members": [M.name for M, b in zip(universe, dvec) if b],
                 "xi_basis": [B.format() for B in res.filter.basis],
                 "xi_equal": res.filter == G,
                 "excluded_witnesses": res.witnesses}
        if res.filter != G:
            report.failures.append({"kind": "xi_theta", "filter": G.format(),
                                    "got": res.filter.format()})
        # every excluded ideal needs a witness in D failing it
        for J in enumerate_ideals(R):
            if G.contains(J):
                continue
            if J.format() not in res.witnesses:
                report.failures.append({"kind": "missing_witness", "filter": G.format(), "ideal": J.format()})
        # theta(xi(D)) = D on the universe
        if theta(res.filter).vector(universe) != dvec:
            report.failures.append({"kind": "theta_xi", "filter": G.format()})
        # the basis test agrees with quantifying over all members
        for M in universe:
            if divisible_by_all_members(M, G) != D.member(M):
                report.failures.append({"kind": "div_paths", "filter": G.format(), "module": M.name})
        # spec round trip through the filter
        P = spec_from_filter(G)
        entry["spec"] = P.format()
        if filter_from_spec(P) != G:
            report.failures.append({"kind": "filter_spec", "filter": G.format(), "spec": P.format()})
        # F(P) agrees with the filter's torsionfree class
        if torsionfree_class(P).vector(universe) != fvec:
            report.failures.append({"kind": "torsionfree_spec", "filter": G.format()})
        # duality bridge
        bridge_fail = [M.name for M in universe if D.member(M) != F.member(dual_of(M))]
        entry["duality_bridge"] = not bridge_fail
        for name in bridge_fail:
            report.failures.append({"kind": "duality", "filter": G.format(), "module": name})
        report.filters.append(entry)
    subsets = all_spec_subsets(R)
    for P in subsets:
        back = spec_from_filter(filter_from_spec(P))
        ok = back == P
        report.spec_round_trips.append({"spec": P.format(), "ok": ok})
        if not ok:
            report.failures.append({"kind": "spec_round_trip", "spec": P.format(), "got": back.format()})
    report.counts = {"ideals": len(enumerate_ideals(R)), "spec": len(spec(R)),
                     "filters": len(filters), "spec_subsets": len(subsets),
                     "div_classes": len(div_vectors), "torsionfree_classes": len(tf_vectors)}
    c = report.counts
    if not (c["filters"] == c["spec_subsets"] == c["div_classes"] == c["torsionfree_classes"]):
        report.failures.append({"kind": "counts", **c})
    return report


# ---------------------------------------------------------------------------
# closure properties on a universe


def _hom_is_zero(M, N):
    if M.is_zero() or N.is_zero():
        return True
    return not hom_candidates(M, N).any()


def closure_suite(R, universe, filters=None, submodule_limit=400):
    """Torsion-pair axioms for every filter, checked member by member.

    For each module the submodule lattice is enumerated (skipped above
    ``submodule_limit``); every short exact sequence ``0 -> S -> M -> M/S -> 0``
    found this way feeds the quotient, submodule and extension checks.
    Returns ``(stats, failures, skipped)``.
    """
    from .homological import injective_hull

    filters = enumerate_filters(R) if filters is None else filters
    stats = {"quotient": 0, "submodule": 0, "extension": 0, "product": 0, "hull": 0,
             "torsion_sequence": 0, "hom_vanishing": 0}
    failures = []
    skipped = []
    lattices = {}
    for M in universe:
        try:
            lattices[M.name] = [(submodule(M, S), quotient(M, S)) for S in all_submodules(M, submodule_limit)]
        except GuardExceeded:
            skipped.append(M.name)
    hulls = {M.name: injective_hull(M)[0] for M in universe}
    for G in filters:
        g = G.format()
        D = theta(G)
        F = torsionfree_by_filter(G)
        dvec = D.vector(universe)
        fvec = F.vector(universe)
        for M, d, f in zip(universe, dvec, fvec):
            for S, Q in lattices.get(M.name, ()):
                sd, qd = D.member(S), D.member(Q)
                sf, qf = F.member(S), F.member(Q)
                stats["quotient"] += d
                stats["submodule"] += f
                stats["extension"] += 2
                if d and not qd:
                    failures.append({"kind": "div_quotient", "filter": g, "module": M.name, "sub": S.size})
                if f and not sf:
                    failures.append({"kind": "tf_submodule", "filter": g, "module": M.name, "sub": S.size})
                if sd and qd and not d:
                    failures.append({"kind": "div_extension", "filter": g, "module": M.name, "sub": S.size})
                if sf and qf and not f:
                    failures.append({"kind": "tf_extension", "filter": g, "module": M.name, "sub": S.size})
            if f:
                stats["hull"] += 1
                if not F.member(hulls[M.name]):
                    failures.append({"kind": "tf_hull", "filter": g, "module": M.name})
            # 0 -> t(M) -> M -> M/t(M) -> 0 with a torsion kernel and torsionfree cokernel
            t = torsion_part(M, G)
            rest = quotient(M, t.inclusion)
            stats["torsion_sequence"] += 1
            if not (len(torsion_part(t, G).inclusion) == t.size and F.member(rest)
                    and t.size * rest.size == M.size and (f == (t.size == 1))):
                failures.append({"kind": "torsion_sequence", "filter": g, "module": M.name})
        small = [(M, d, f) for M, d, f in zip(universe, dvec, fvec) if M.size <= 24]
        for i, (M, dm, fm) in enumerate(small):
            for N, dn, fn in small[i:]:
                if not (dm and dn) and not (fm and fn):
                    continue
                P = direct_sum(M, N)
                stats["product"] += 1
                if dm and dn and not D.member(P):
                    failures.append({"kind": "div_product", "filter": g, "modules": [M.name, N.name]})
                if fm and fn and not F.member(P):
                    failures.append({"kind": "tf_product", "filter": g, "modules": [M.name, N.name]})
        torsion = [torsion_part(M, G) for M in universe]
        free = [M for M, f in zip(universe, fvec) if f]
        for T in torsion:
            for N in free:
                stats["hom_vanishing"] += 1
                if not _hom_is_zero(T, N):
                    failures.append({"kind": "hom_torsion_to_tf", "filter": g, "module": N.name})
    return stats, failures, skipped


def is_module(x):
    return isinstance(x, Module)
