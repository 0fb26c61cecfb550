"""Verification suites per ring and the catalogue runner behind ``torsionlab catalogue run``."""

from __future__ import annotations

from dataclasses import dataclass, field

from .classes import dual_of, verify_bijections
from .cosilting import build_cosilting
from .errors import TorsionLabError
from .filters import enumerate_filters
from .homological import character_dual, in_D_sigma, in_T_sigma, sigma_for_ideal
from .ideals import Ideal, enumerate_ideals
from .modules import UniversePolicy, build_universe
from .parsing import parse_ring_expr, parse_seed_spec
from .rings import idempotent_indices, make_ring
from .silting import (
    alternative_generators,
    check_generator_independence,
    check_idempotent_class,
    idempotent_silting,
    presentation_data,
    run_silting,
    step2_ext_criterion,
)

DEFAULT_CATALOGUE = """\
Z/6
Z/8
Z/12 | seeds=(2):[2,6]
F4
F2[x]/(x^2)
Z/4*F3
"""


def verdict(check, ok, witness=None, **info):
    out = {"check": check, "verdict": "pass" if ok else "fail"}
    if not ok:
        out["witness"] = witness if witness is not None else {"detail": "see payload"}
    out.update(info)
    return out


# ---------------------------------------------------------------------------


def duality_sigmas(R):
    """sigma_I for every ideal with two generator lists, plus the idempotent maps."""
    out = []
    for I in enumerate_ideals(R):
        for gens in (list(I.generators) or [R.zero], alternative_generators(I)):
            out.append(("sigma_%s%s" % (I.format(), [R.format(g) for g in gens]), sigma_for_ideal(R, gens)))
    for e in idempotent_indices(R):
        out.append(("idempotent_%s" % R.format_index(e), idempotent_silting(R, e)[0]))
    return out


def verify_duality(R, universe):
    failures = []
    pairs = 0
    for name, sigma in duality_sigmas(R):
        for X in universe:
            pairs += 1
            if in_T_sigma(sigma, X) != in_D_sigma(sigma, dual_of(X)):
                failures.append({"sigma": name, "module": X.name})
    double = [X.name for X in universe if not character_dual(X).double_dual_check()]
    return {"pairs": pairs, "failures": failures, "double_dual_failures": double,
            "ok": not failures and not double}


def step2_samples(R, filters):
    """Generic Ext oracle against divisibility for members of each filter and both generator lists."""
    rows = []
    cache = {}
    for G in filters:
        for I in G.members:
            data = presentation_data(R, [I])
            if data.degenerate:
                continue
            key = data.A
            if key not in cache:
                cache[key] = build_universe(data.quotient).members
            for gens in (list(I.generators) or [R.zero], alternative_generators(I)):
                for M in cache[key]:
                    ext_zero, div, fast = step2_ext_criterion(data, 0, M, gens)
                    rows.append({"filter": G.format(), "ideal": I.format(), "module": M.name,
                                 "gens": [R.format(g) for g in gens],
                                 "ext_vanishes": ext_zero, "divisible": div, "fast_path": fast,
                                 "ok": ext_zero == div == fast})
    return rows


def verify_construction(R, universe, level=2, extra=()):
    """Silting checks per filter (default and redundant generator lists), Ext-versus-divisibility samples, cosilting."""
    filters = enumerate_filters(R)
    silting = []
    for G in filters:
        variants = [[list(B.generators) or [R.zero] for B in G.basis],
                    [alternative_generators(B) for B in G.basis]]
        for gens in variants:
            out, _ = run_silting(R, G.basis, gens, level=level, universe=universe)
            silting.append(out)
    for ideals, gens in extra:
        out, _ = run_silting(R, ideals, gens, level=level, universe=universe)
        silting.append(out)
    idem = [check_idempotent_class(R, e, universe) for e in idempotent_indices(R)]
    independence = all(
        check_generator_independence(R, I, [list(I.generators) or [R.zero], alternative_generators(I)], universe)
        for I in enumerate_ideals(R))
    step2 = step2_samples(R, filters)
    cos = [build_cosilting(G, universe) for G in filters]
    return {
        "silting": silting,
        "idempotent": idem,
        "generator_independence": independence,
        "skipped": [dict(s["data"], reason=s["skipped"]) for s in silting if "skipped" in s],
        "level_capped": [dict(s["data"], **s["level_capped"]) for s in silting if "level_capped" in s],
        "step2": {"pairs": len(step2), "failures": [r for r in step2 if not r["ok"]]},
        "cosilting": [a.to_json() for a in cos],
        "ok": (all(s["ok"] for s in silting) and all(i["ok"] for i in idem) and independence
               and all(r["ok"] for r in step2) and all(a.checks["ok"] for a in cos)),
    }


# ---------------------------------------------------------------------------


@dataclass
class CatalogueEntry:
    expr: str
    seeds: str = ""
    level: int = 2

    def extra_instances(self, R):
        if not self.seeds:
            return []
        pairs = parse_seed_spec(R, self.seeds)
        return [([Ideal(R, i) for i, _ in pairs], [g for _, g in pairs])]


def parse_catalogue(text):
    entries = []
    for raw in text.splitlines():
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        expr, _, opts = line.partition("|")
        entry = CatalogueEntry(expr.strip())
        for opt in opts.split(";"):
            if not opt.strip():
                continue
            key, _, value = opt.partition("=")
            key = key.strip()
            if key == "seeds":
                entry.seeds = value.strip()
            elif key == "level":
                entry.level = int(value)
            else:
                raise ValueError("unknown catalogue option %r" % key)
        entries.append(entry)
    return entries


@dataclass
class RingRun:
    expr: str
    counts: dict = field(default_factory=dict)
    verdicts: list = field(default_factory=list)
    payload: dict = field(default_factory=dict)
    error: str = ""

    def to_json(self):
        out = {"ring": self.expr, "counts": self.counts, "verdicts": self.verdicts}
        if self.error:
            out["error"] = self.error
        if self.payload:
            out["payload"] = self.payload
        return out


def run_ring(entry, policy=None, detail=False):
    run = RingRun(entry.expr)
    try:
        R = make_ring(parse_ring_expr(entry.expr))
        universe = build_universe(R, policy or UniversePolicy()).members
        bij = verify_bijections(R, universe)
        run.counts = dict(bij.counts, universe=len(universe))
        run.verdicts.append(verdict("bijection", bij.passed, {"failures": bij.failures}))
        dual = verify_duality(R, universe)
        run.verdicts.append(verdict("duality", dual["ok"], {"failures": dual["failures"],
                                                           "double_dual": dual["double_dual_failures"]},
                                    pairs=dual["pairs"]))
        cons = verify_construction(R, universe, entry.level, entry.extra_instances(R))
        bad = [s["data"] for s in cons["silting"] if not s["ok"]]
        run.verdicts.append(verdict("construction", cons["ok"], {"silting": bad,
                                                                 "step2": cons["step2"]["failures"]},
                                    step2_pairs=cons["step2"]["pairs"]))
        if detail:
            run.payload = {"bijection": bij.to_json(), "duality": dual, "construction": cons}
    except TorsionLabError as exc:
        run.error = "%s: %s" % (type(exc).__name__, exc)
        run.verdicts.append(verdict("run", False, {"error": run.error}))
    return run


def run_catalogue(entries, policy=None, detail=False):
    runs = [run_ring(e, policy, detail) for e in entries]
    ok = all(v["verdict"] == "pass" for r in runs for v in r.verdicts)
    return {"rings": [r.to_json() for r in runs], "ok": ok}
