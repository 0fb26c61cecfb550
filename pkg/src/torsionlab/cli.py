"""Command-line front end.

Every subcommand builds a JSON report ``{schema_version, command, ring,
payload, verdicts}``; the plain-text output is rendered from that report.
Timing goes to stderr with ``--timing`` and is never part of the report.
"""

from __future__ import annotations

import argparse
import json
import sys
import time

from . import __version__
from .catalogue import DEFAULT_CATALOGUE, parse_catalogue, run_catalogue, verdict
from .classes import (
    dual_of,
    theta,
    torsionfree_by_filter,
    verify_bijections,
)
from .cosilting import build_cosilting
from .errors import TorsionLabError
from .filters import (
    SpecSubset,
    enumerate_filters,
    filter_from_spec,
    generate_filter,
    spec_from_filter,
    validate_filter,
)
from .ideals import (
    Ideal,
    annihilator,
    colon_ideal,
    enumerate_ideals,
    ideal_intersect,
    ideal_product,
    ideal_sum,
    is_maximal,
    is_prime,
    spec,
)
from .modules import UniversePolicy, build_universe, cyclic, direct_sum, torsion_part, zero_module
from .parsing import parse_ideal_gens, parse_module_literal, parse_ring_expr, parse_seed_spec, parse_seeds
from .rings import idempotents, local_factors, make_ring
from .silting import run_silting

SCHEMA_VERSION = 1

IDEAL_OPS = {
    "sum": ideal_sum,
    "product": ideal_product,
    "intersect": ideal_intersect,
    "colon": colon_ideal,
}


# ---------------------------------------------------------------------------
# helpers


def _ring(args):
    if not args.ring:
        raise SystemExit("error: --ring is required")
    return make_ring(parse_ring_expr(args.ring))


def _ideals(R, text):
    return [Ideal(R, gens) for gens in parse_seeds(R, text)]


def _universe(R, args):
    return build_universe(R, _policy(args)).members


def _policy(args):
    return UniversePolicy(summands=args.summands, bound=args.universe_size)


def _filter(R, args):
    """The filter generated by ``--seeds`` (all of R when no seeds are given)."""
    return generate_filter(R, _ideals(R, args.seeds or ""))


def _module(R, text):
    parts = [cyclic(R, Ideal(R, gens)) for gens in parse_module_literal(R, text)]
    if not parts:
        return zero_module(R)
    M = direct_sum(*parts) if len(parts) > 1 else parts[0]
    M.name = text.strip()
    return M


def _spec_json(R):
    P = spec(R)
    if isinstance(P, list):
        return [p.to_json() for p in P]
    return P.describe()


# ---------------------------------------------------------------------------
# subcommands; each returns (payload, verdicts)


def cmd_ring_info(R, args):
    out = {"descriptor": R.name}
    if R.is_finite:
        out.update({
            "cardinality": R.size,
            "characteristic": R.characteristic,
            "units": sorted(R.format_index(u) for u in R.units),
            "idempotents": [R.format(e) for e in idempotents(R)],
            "local_factors": [{"idempotent": R.format(e), "size": F.size} for e, F in local_factors(R)],
            "ideals": len(enumerate_ideals(R)),
        })
    out["spec"] = _spec_json(R)
    return out, []


def cmd_ideal_list(R, args):
    rows = []
    for I in enumerate_ideals(R):
        rows.append({"ideal": I.to_json(), "size": I.cardinality(), "prime": is_prime(I),
                     "maximal": is_maximal(I), "annihilator": annihilator(I).to_json()})
    return {"ideals": rows}, []


def cmd_ideal_op(R, args):
    I = Ideal(R, parse_ideal_gens(R, args.left))
    J = Ideal(R, parse_ideal_gens(R, args.right))
    res = IDEAL_OPS[args.op](I, J)
    return {"op": args.op, "left": I.to_json(), "right": J.to_json(), "result": res.to_json()}, []


def cmd_filter_list(R, args):
    return {"filters": [G.to_json() for G in enumerate_filters(R)]}, []


def cmd_filter_generate(R, args):
    G = _filter(R, args)
    rep = validate_filter(G)
    return {"filter": G.to_json()}, [verdict("valid", rep.valid, {"violations": rep.violations})]


def cmd_filter_validate(R, args):
    # the seeds are taken as a basis as given, without closing them up
    from .filters import GabrielFilter
    G = GabrielFilter(R, _ideals(R, args.seeds or "()") or [Ideal(R, [R.one])])
    rep = validate_filter(G)
    return {"filter": G.to_json(), "report": rep.to_json()}, [
        verdict("valid", rep.valid, {"violations": rep.violations})]


def cmd_filter_from_spec(R, args):
    gens = parse_seeds(R, args.primes or "")
    if R.is_finite:
        primes = [Ideal(R, g) for g in gens]
    else:
        primes = [Ideal(R, g).generator for g in gens]
    P = SpecSubset(R, primes)
    G = filter_from_spec(P)
    return {"spec": P.to_json(), "filter": G.to_json()}, []


def cmd_filter_to_spec(R, args):
    G = _filter(R, args)
    return {"filter": G.to_json(), "spec": spec_from_filter(G).to_json()}, []


def cmd_classify(R, args):
    M = _module(R, args.module)
    rows = []
    for G in enumerate_filters(R):
        t = torsion_part(M, G)
        rows.append({"filter": G.format(), "divisible": theta(G).member(M),
                     "torsionfree": torsionfree_by_filter(G).member(M),
                     "torsion_part_size": t.size,
                     "dual_torsionfree": torsionfree_by_filter(G).member(dual_of(M))})
    return {"module": M.to_json(), "classes": rows}, []


def cmd_verify_bijection(R, args):
    universe = _universe(R, args)
    rep = verify_bijections(R, universe)
    payload = dict(rep.to_json(), universe=[U.name for U in universe])
    return payload, [verdict("bijection", rep.passed, {"failures": rep.failures})]


def cmd_verify_duality(R, args):
    from .catalogue import verify_duality
    out = verify_duality(R, _universe(R, args))
    return out, [verdict("duality", out["ok"], {"failures": out["failures"],
                                                "double_dual": out["double_dual_failures"]})]


def cmd_verify_construction(R, args):
    from .catalogue import verify_construction
    extra = []
    if args.gens:
        pairs = parse_seed_spec(R, args.gens)
        extra.append(([Ideal(R, i) for i, _ in pairs], [g for _, g in pairs]))
    out = verify_construction(R, _universe(R, args), args.level, extra)
    bad = [s["data"] for s in out["silting"] if not s["ok"]]
    return out, [verdict("construction", out["ok"], {"silting": bad, "step2": out["step2"]["failures"]})]


def cmd_construct_silting(R, args):
    if args.gens:
        pairs = parse_seed_spec(R, args.gens)
        ideals = [Ideal(R, i) for i, _ in pairs]
        gen_lists = [g for _, g in pairs]
    else:
        G = _filter(R, args)
        ideals = G.basis
        gen_lists = [list(B.generators) or [R.zero] for B in ideals]
    universe = _universe(R, args) if args.universe_size else None
    out, t = run_silting(R, ideals, gen_lists, level=args.level, universe=universe)
    if t is not None:
        out["presentations"] = [{"level": lv.n, "sigma": lv.sigma.to_json()} for lv in t.levels]
    return out, [verdict("silting", out["ok"], {"data": out["data"]})]


def cmd_construct_cosilting(R, args):
    G = _filter(R, args)
    asm = build_cosilting(G, _universe(R, args))
    out = asm.to_json()
    out["E"]["module"] = asm.E.to_json()
    out["K"]["module"] = asm.K.to_json()
    out["C_G"]["module"] = asm.C.to_json()
    return out, [verdict("cosilting", asm.checks["ok"], {"mismatches": asm.checks["mismatches"]})]


def cmd_catalogue_run(args):
    if args.catalogue:
        with open(args.catalogue) as fh:
            text = fh.read()
    else:
        text = DEFAULT_CATALOGUE
    rep = run_catalogue(parse_catalogue(text), _policy(args), detail=args.detail)
    verdicts = []
    for r in rep["rings"]:
        for v in r["verdicts"]:
            verdicts.append(dict(v, ring=r["ring"]))
    table = [dict(ring=r["ring"], **r["counts"]) for r in rep["rings"]]
    return {"counts": table, "rings": rep["rings"]}, verdicts


# ---------------------------------------------------------------------------
# rendering


def make_report(command, ring, payload, verdicts):
    return {"schema_version": SCHEMA_VERSION, "command": command, "ring": ring,
            "payload": payload, "verdicts": verdicts}


def dumps(report):
    return json.dumps(report, indent=2, sort_keys=True, ensure_ascii=False) + "\n"


def _text_lines(value, indent=0):
    pad = "  " * indent
    if isinstance(value, dict):
        for k in sorted(value):
            v = value[k]
            if isinstance(v, (dict, list)) and v:
                yield "%s%s:" % (pad, k)
                yield from _text_lines(v, indent + 1)
            else:
                yield "%s%s: %s" % (pad, k, json.dumps(v, ensure_ascii=False))
    elif isinstance(value, list):
        if all(not isinstance(v, (dict, list)) for v in value):
            yield pad + ", ".join(json.dumps(v, ensure_ascii=False) for v in value)
            return
        for v in value:
            if isinstance(v, dict):
                lines = list(_text_lines(v, indent + 1))
                if lines:
                    yield pad + "- " + lines[0].lstrip()
                    yield from lines[1:]
            else:
                yield pad + "- " + json.dumps(v, ensure_ascii=False)
    else:
        yield pad + json.dumps(value, ensure_ascii=False)


def render_text(report):
    lines = ["%s  (%s)" % (report["command"], report["ring"] or "catalogue")]
    counts = report["payload"].get("counts") if isinstance(report["payload"], dict) else None
    if isinstance(counts, list) and counts:
        cols = list(counts[0].keys())
        widths = [max(len(c), *(len(str(row.get(c, ""))) for row in counts)) for c in cols]
        lines.append("  ".join(c.ljust(w) for c, w in zip(cols, widths)))
        for row in counts:
            lines.append("  ".join(str(row.get(c, "")).ljust(w) for c, w in zip(cols, widths)))
        payload = {k: v for k, v in report["payload"].items() if k not in ("counts", "rings")}
    else:
        payload = report["payload"]
    lines.extend(_text_lines(payload))
    for v in report["verdicts"]:
        tag = "PASS" if v["verdict"] == "pass" else "FAIL"
        where = (" [%s]" % v["ring"]) if "ring" in v else ""
        lines.append("%s %s%s" % (tag, v["check"], where))
        if v["verdict"] == "fail":
            lines.append("  witness: " + json.dumps(v.get("witness"), sort_keys=True, ensure_ascii=False))
    return "\n".join(lines) + "\n"


# ---------------------------------------------------------------------------
# argument parsing


def _common(p, ring=True):
    if ring:
        p.add_argument("--ring", required=True, help="ring expression, e.g. Z/12 or F2[x]/(x^2)")
    p.add_argument("--json", action="store_true", help="emit the JSON report")
    p.add_argument("--out", help="write the output to this file")
    p.add_argument("--timing", action="store_true", help="print the wall-clock time to stderr")


def _universe_flags(p, size=512):
    p.add_argument("--universe-size", type=int, default=size, help="largest module cardinality in the universe")
    p.add_argument("--summands", type=int, default=2, help="most cyclic summands per universe member")


def build_parser():
    ap = argparse.ArgumentParser(prog="torsionlab", description="Torsion pairs, Gabriel filters and "
                                 "silting/cosilting modules over small commutative rings.")
    ap.add_argument("--version", action="version", version=__version__)
    top = ap.add_subparsers(dest="group", required=True)

    ring = top.add_parser("ring").add_subparsers(dest="action", required=True)
    _common(ring.add_parser("info"))

    ideal = top.add_parser("ideal").add_subparsers(dest="action", required=True)
    _common(ideal.add_parser("list"))
    op = ideal.add_parser("op")
    _common(op)
    op.add_argument("op", choices=sorted(IDEAL_OPS))
    op.add_argument("left", help="ideal, e.g. (2)")
    op.add_argument("right", help="ideal, e.g. (3)")

    filt = top.add_parser("filter").add_subparsers(dest="action", required=True)
    _common(filt.add_parser("list"))
    for name in ("generate", "validate", "to-spec"):
        p = filt.add_parser(name)
        _common(p)
        p.add_argument("--seeds", default="", help='ideals separated by ";", e.g. "(2);(3)"')
    p = filt.add_parser("from-spec")
    _common(p)
    p.add_argument("--primes", default="", help='primes separated by ";", e.g. "(2);(3)"')

    p = top.add_parser("classify")
    _common(p)
    p.add_argument("module", help='module literal, e.g. "R/(2) (+) R/(3)"')

    ver = top.add_parser("verify").add_subparsers(dest="action", required=True)
    for name in ("bijection", "duality", "construction"):
        p = ver.add_parser(name)
        _common(p)
        _universe_flags(p)
        if name == "construction":
            p.add_argument("--level", type=int, default=2)
            p.add_argument("--gens", default="", help='extra instance, e.g. "(2):[2,6]"')

    con = top.add_parser("construct").add_subparsers(dest="action", required=True)
    p = con.add_parser("silting")
    _common(p)
    p.add_argument("--seeds", default="")
    p.add_argument("--gens", default="", help='ideals with generator lists, e.g. "(2):[2,6];(4)"')
    p.add_argument("--level", type=int, default=2)
    _universe_flags(p, size=0)
    p = con.add_parser("cosilting")
    _common(p)
    p.add_argument("--seeds", default="")
    _universe_flags(p)

    cat = top.add_parser("catalogue").add_subparsers(dest="action", required=True)
    p = cat.add_parser("run")
    _common(p, ring=False)
    _universe_flags(p)
    p.add_argument("catalogue", nargs="?", help="catalogue file (default: the built-in catalogue)")
    p.add_argument("--detail", action="store_true", help="include the full per-ring payloads")
    return ap


HANDLERS = {
    ("ring", "info"): cmd_ring_info,
    ("ideal", "list"): cmd_ideal_list,
    ("ideal", "op"): cmd_ideal_op,
    ("filter", "list"): cmd_filter_list,
    ("filter", "generate"): cmd_filter_generate,
    ("filter", "validate"): cmd_filter_validate,
    ("filter", "from-spec"): cmd_filter_from_spec,
    ("filter", "to-spec"): cmd_filter_to_spec,
    ("classify", None): cmd_classify,
    ("verify", "bijection"): cmd_verify_bijection,
    ("verify", "duality"): cmd_verify_duality,
    ("verify", "construction"): cmd_verify_construction,
    ("construct", "silting"): cmd_construct_silting,
    ("construct", "cosilting"): cmd_construct_cosilting,
}


def run(argv=None):
    """Parse ``argv`` and return ``(report, exit_code)``."""
    args = build_parser().parse_args(argv)
    action = getattr(args, "action", None)
    command = args.group + (" " + action if action else "")
    ring = getattr(args, "ring", None)
    try:
        if args.group == "catalogue":
            payload, verdicts = cmd_catalogue_run(args)
        else:
            R = _ring(args)
            payload, verdicts = HANDLERS[(args.group, action)](R, args)
    except TorsionLabError as exc:
        err = "%s: %s" % (type(exc).__name__, exc)
        payload, verdicts = {}, [verdict("run", False, {"error": err})]
    report = make_report(command, ring, payload, verdicts)
    code = 0 if all(v["verdict"] == "pass" for v in verdicts) else 1
    return report, code, args


def main(argv=None):
    start = time.perf_counter()
    report, code, args = run(argv)
    text = dumps(report) if args.json else render_text(report)
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    if args.timing:
        print("elapsed %.3fs" % (time.perf_counter() - start), file=sys.stderr)
    return code


if __name__ == "__main__":
    sys.exit(main())
