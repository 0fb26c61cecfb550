"""Finite truncations of the silting module attached to a Gabriel filter of finite type.

Given chosen ideals generating the filter, each with an explicit generator
list ``x_0, ..., x_{n-1}``, words over the alphabet of pairs
``(ideal, k)`` index free modules; the relations
``lam - sum_k x_k (lam + (ideal, k))`` cut out the modules ``C_n``.  The
checks below cover the statements that can be verified level by level.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from functools import cached_property

import numpy as np

from .classes import ModuleClass, divisible_by_filter, gen_class, in_gen
from .errors import GeneratorsDontGenerate, GuardExceeded, NotIdempotent
from .filters import GabrielFilter, generate_filter
from .homological import ProjectiveMap, ext1, ext1_divisibility, in_D_sigma, sigma_for_ideal
from .ideals import Ideal, annihilator, unit_ideal
from .modules import (
    cyclic,
    direct_sum,
    from_presentation,
    is_divisible,
    is_isomorphic,
    quotient,
    zero_module,
    ModuleMap,
)
from .rings import quotient_ring

MAX_LEVEL = 3
MAX_WORDS = 256


@dataclass
class FilterPresentationData:
    ring: object
    filter: GabrielFilter
    ideals: list  # chosen ideals generating the filter
    gens: list  # one generator list (labels) per chosen ideal
    A: Ideal

    @cached_property
    def quotient(self):
        """``R/A`` (None when ``A = R``)."""
        if self.A.is_unit_ideal():
            return None
        return quotient_ring(self.ring, self.A.indices)

    @property
    def degenerate(self):
        return self.A.is_unit_ideal()

    def project(self, x):
        """Label of the image of ``x`` in ``R/A``."""
        Q = self.quotient
        return Q.labels[Q.projection[self.ring.index(x)]]

    @cached_property
    def alphabet(self):
        return [(b, k) for b, g in enumerate(self.gens) for k in range(len(g))]

    def words(self, n):
        """Words of length at most ``n``, shortest first then lexicographic."""
        s = len(self.alphabet)
        out = []
        for length in range(n + 1):
            out += list(itertools.product(range(s), repeat=length))
        return out

    def to_json(self):
        R = self.ring
        return {"filter": self.filter.format(),
                "ideals": [I.format() for I in self.ideals],
                "generators": [[R.format(x) for x in g] for g in self.gens],
                "A": self.A.format()}


def presentation_data(R, ideals, gen_lists=None):
    """Fix the chosen ideals and generator lists; ``A`` is the sum of the annihilators.

    The annihilators are summed over the whole generated filter.  Over a
    finite ring this is ``Ann(min G)``; it agrees with the sum over the chosen
    ideals whenever those are closed under products.
    """
    ideals = [I if isinstance(I, Ideal) else Ideal(R, I) for I in ideals] or [unit_ideal(R)]
    gen_lists = list(gen_lists) if gen_lists is not None else [list(I.generators) or [R.zero] for I in ideals]
    for I, g in zip(ideals, gen_lists):
        if Ideal(R, g) != I:
            raise GeneratorsDontGenerate("%s do not generate %s" % ([R.format(x) for x in g], I.format()))
    G = generate_filter(R, ideals)
    A = annihilator(G.minimum())
    return FilterPresentationData(R, G, ideals, gen_lists, A)


def transpose_module(data, b):
    """``(Tr(R/I), S_I)`` for the ``b``-th chosen ideal: cokernels of ``1 -> (x_0, ...)`` over R and R/A."""
    R = data.ring
    gens = data.gens[b]
    sigma = sigma_for_ideal(R, gens)
    Tr = sigma.cokernel(name="Tr(R/%s)" % data.ideals[b].format())
    if data.degenerate:
        return Tr, zero_module(R)
    Q = data.quotient
    sbar = ProjectiveMap(Q, [[data.project(x)] for x in gens], "sigma_I mod A")
    S = sbar.cokernel(name="S_%s" % data.ideals[b].format())
    S.over_quotient = sbar
    return Tr, S


def check_step1(data):
    """``r I ⊆ A`` forces ``r ∈ A`` for every chosen ideal."""
    R = data.ring
    inside = np.zeros(R.size, dtype=bool)
    inside[data.A.indices] = True
    for I in data.ideals:
        lands = inside[R.mul_table[:, I.indices]].all(axis=1)
        if (lands & ~inside).any():
            return False
    return True


def step2_ext_criterion(data, b, M, gens=None):
    """``(Ext^1_{R/A}(S_I, M) == 0, M == I M, M / I M == 0)`` for an R/A-module ``M``.

    ``gens`` overrides the generator list of the ``b``-th ideal.
    """
    Q = data.quotient
    if Q is None:
        return True, True, True
    gens = data.gens[b] if gens is None else gens
    sbar = ProjectiveMap(Q, [[data.project(x)] for x in gens])
    vanishes = ext1(sbar, M).is_zero()
    image = Ideal(Q, [data.project(x) for x in gens])
    return vanishes, is_divisible(M, image), ext1_divisibility(M, image).is_zero()


# ---------------------------------------------------------------------------
# truncations


@dataclass
class Level:
    n: int
    words: list
    C: object  # over R/A
    C_prime: object
    sigma: ProjectiveMap  # truncated presentation over R

    def to_json(self):
        return {"level": self.n, "words": len(self.words), "C_size": self.C.size,
                "C_prime_size": self.C_prime.size, "sigma_shape": list(self.sigma.shape)}


@dataclass
class TruncatedConstruction:
    data: FilterPresentationData
    levels: list = field(default_factory=list)

    def level(self, n):
        return self.levels[n]


def _relation_columns(data, words, n, drop_empty):
    """Columns ``lam - sum_k x_k (lam + (I, k))`` for ``lam`` of length ``< n`` (R labels)."""
    R = data.ring
    rows = [w for w in words if not (drop_empty and len(w) == 0)]
    pos = {w: i for i, w in enumerate(rows)}
    cols = []
    for lam in words:
        if len(lam) >= n:
            continue
        for b, g in enumerate(data.gens):
            col = [R.zero] * len(rows)
            if lam in pos:
                col[pos[lam]] = R.one
            for k, x in enumerate(g):
                letter = data.alphabet.index((b, k))
                i = pos[lam + (letter,)]
                col[i] = R.add(col[i], R.neg(x))
            cols.append(col)
    return rows, cols


def _cokernel_mod_A(data, nrows, cols, name):
    R = data.ring
    if data.degenerate or nrows == 0:
        Z = zero_module(R if data.degenerate else data.quotient)
        Z.presentation_gens = [0] * nrows
        Z.kept_rows = []
        return Z
    Q = data.quotient
    rel = np.array([[Q.projection[R.index(x)] for x in col] for col in cols], dtype=np.int64).T
    rel = rel.reshape(nrows, len(cols))
    return from_presentation(Q, nrows, rel, name=name)


def build_truncation(data, n, max_words=MAX_WORDS):
    if n > MAX_LEVEL:
        raise GuardExceeded("level %d exceeds the level guard %d" % (n, MAX_LEVEL))
    out = TruncatedConstruction(data)
    for level in range(n + 1):
        words = data.words(level)
        if len(words) > max_words:
            raise GuardExceeded("%d words at level %d exceed %d" % (len(words), level, max_words))
        rows, cols = _relation_columns(data, words, level, drop_empty=False)
        rows_p, cols_p = _relation_columns(data, words, level, drop_empty=True)
        C = _cokernel_mod_A(data, len(rows), cols, "C_%d" % level)
        Cp = _cokernel_mod_A(data, len(rows_p), cols_p, "C'_%d" % level)
        sigma = _block_sigma(data.ring, len(rows), cols, len(rows_p), cols_p, level)
        out.levels.append(Level(level, words, C, Cp, sigma))
    return out


def _block_sigma(R, b1, cols1, b2, cols2, level):
    b = b1 + b2
    a = len(cols1) + len(cols2)
    mat = [[R.zero] * a for _ in range(b)]
    for j, col in enumerate(cols1):
        for i, x in enumerate(col):
            mat[i][j] = x
    for j, col in enumerate(cols2):
        for i, x in enumerate(col):
            mat[b1 + i][len(cols1) + j] = x
    return ProjectiveMap(R, mat, "sigma_%d" % level)


def as_R_module(data, M):
    """Restrict an R/A-module to R."""
    if M.ring is data.ring:
        return M
    R = data.ring
    out = M.restrict_scalars(R, data.quotient.projection)
    out.name = M.name
    return out


def level_inclusion(t, n, primed=False):
    """The map ``C_n -> C_{n+1}`` induced by the inclusion of words."""
    lo, hi = t.levels[n], t.levels[n + 1]
    src, dst = (lo.C_prime, hi.C_prime) if primed else (lo.C, hi.C)
    if src.is_zero():
        return ModuleMap(src, dst, np.zeros(src.ngens, dtype=np.int64))
    lo_rows = [w for w in lo.words if not (primed and len(w) == 0)]
    hi_rows = [w for w in hi.words if not (primed and len(w) == 0)]
    hi_pos = {w: i for i, w in enumerate(hi_rows)}
    images = [dst.presentation_gens[hi_pos[lo_rows[r]]] for r in src.kept_rows]
    return ModuleMap(src, dst, np.array(images, dtype=np.int64))


def predicted_quotient(data, n):
    """Direct sum of the S_I, one copy per word of length exactly ``n`` and chosen ideal."""
    count = len(data.alphabet) ** n
    parts = []
    for _ in range(count):
        for b in range(len(data.ideals)):
            parts.append(transpose_module(data, b)[1])
    parts = [S for S in parts if not S.is_zero()]
    if not parts:
        return None
    return direct_sum(*parts)


def check_step3_filtration(t, n, primed=False):
    """``C_{n+1} / C_n`` is the predicted sum of copies of the S_I; returns a dict of verdicts."""
    f = level_inclusion(t, n, primed)
    dst = f.codomain
    well_defined = f.respects_structure()
    injective = f.is_injective()
    Q = quotient(dst, f.image(), name="C_%d/C_%d" % (n + 1, n))
    P = predicted_quotient(t.data, n)
    if P is None:
        iso = Q.is_zero()
    else:
        iso = is_isomorphic(Q, P)
    return {"level": n, "primed": primed, "well_defined": well_defined, "injective": injective,
            "quotient_size": Q.size, "predicted_size": 1 if P is None else P.size,
            "isomorphic": iso, "ok": bool(well_defined and injective and iso)}


def check_base_level(t):
    """``C_0 ≅ R/A``."""
    data = t.data
    C0 = t.levels[0].C
    if data.degenerate:
        return C0.is_zero()
    return is_isomorphic(C0, cyclic(data.quotient, Ideal(data.quotient, [])))


def check_step6_membership(t, universe):
    """Level-wise membership checks on the universe; failures carry the module name."""
    data = t.data
    R = data.ring
    G = data.filter
    report = {"levels": [], "failures": [], "stabilization_level": None}
    div = [divisible_by_filter(M, G) for M in universe]
    for lv in t.levels:
        entry = {"level": lv.n, "skipped": []}
        vec = []
        for M, d in zip(universe, div):
            try:
                member = in_D_sigma(lv.sigma, M)
            except GuardExceeded:
                entry["skipped"].append(M.name)
                vec.append(None)
                continue
            vec.append(member)
            if d and not member:
                report["failures"].append({"kind": "div_not_in_D", "level": lv.n, "module": M.name})
            if lv.n >= 1 and member and len(M.ideal_times(data.A)) != 1:
                report["failures"].append({"kind": "annihilation", "level": lv.n, "module": M.name})
        C = as_R_module(data, lv.C)
        for M, d in zip(universe, div):
            if not d:
                continue
            try:
                generated = in_gen(M, C)
            except GuardExceeded:
                entry["skipped"].append("Gen:" + M.name)
                continue
            if not generated:
                report["failures"].append({"kind": "generation", "level": lv.n, "module": M.name})
        equal = all(v == d for v, d in zip(vec, div) if v is not None)
        entry["D_equals_Div"] = equal
        entry["D_members"] = [M.name for M, v in zip(universe, vec) if v]
        if equal and report["stabilization_level"] is None and None not in vec:
            report["stabilization_level"] = lv.n
        report["levels"].append(entry)
    report["ok"] = not report["failures"]
    return report


# ---------------------------------------------------------------------------
# idempotents


def idempotent_silting(R, e):
    """``sigma: R -> R ⊕ R``, ``1 -> (e, 0)``, and its class ``{M : e M = M}``.

    This is the free stand-in for the projection ``R -> R e``; both give the
    same surjectivity condition on ``Hom(-, M)``.
    """
    e = R.index(e) if not isinstance(e, (int, np.integer)) else int(e)
    if int(R.mul_table[e, e]) != e:
        raise NotIdempotent("%s is not idempotent" % R.format_index(e))
    sigma = ProjectiveMap(R, [[R.labels[e]], [R.zero]], "idempotent")
    cls = ModuleClass(R, "D_sigma", lambda M: in_D_sigma(sigma, M), {"sigma": sigma})
    return sigma, cls


def idempotent_gen_module(R, e):
    one_minus = R.labels[R.sub(R.one_index, e)]
    W = cyclic(R, Ideal(R, [one_minus]))
    W.name = "R*%s" % R.format_index(e)
    return W


def check_idempotent_class(R, e, universe):
    """``D_sigma`` for the idempotent map equals ``Gen(R e)`` on the universe."""
    _, cls = idempotent_silting(R, e)
    gen = gen_class(idempotent_gen_module(R, e))
    bad = [M.name for M in universe if cls.member(M) != gen.member(M)]
    return {"e": R.format_index(e), "members": [M.name for M in universe if cls.member(M)],
            "ok": not bad, "mismatches": bad}


def check_generator_independence(R, I, lists, universe):
    """Different generator lists of ``I`` give the same D class on the universe."""
    vecs = [tuple(in_D_sigma(sigma_for_ideal(R, g), M) for M in universe) for g in lists]
    div = tuple(is_divisible(M, I) for M in universe)
    return all(v == vecs[0] for v in vecs) and vecs[0] == div


def alternative_generators(I):
    """A second generator list for ``I``: the greedy list with a redundant element appended."""
    R = I.ring
    gens = list(I.generators) or [R.zero]
    extra = next((R.labels[x] for x in I.indices if R.labels[x] not in gens and x != 0), None)
    if extra is None:
        extra = R.zero
    return gens + [extra]


def run_silting(R, ideals, gen_lists=None, level=2, universe=None):
    """Build and check everything for one filter presentation; returns a JSON-ready dict."""
    data = presentation_data(R, ideals, gen_lists)
    requested = level
    while True:
        try:
            t = build_truncation(data, level)
            break
        except GuardExceeded as exc:
            # retry with fewer levels; a free S_I makes C_n grow like |R|^(words)
            if level <= 1:
                return {"data": data.to_json(), "skipped": str(exc), "ok": True}, None
            level -= 1
            reason = str(exc)
    out = {"data": data.to_json(), "step1": check_step1(data), "base_level": check_base_level(t),
           "levels": [lv.to_json() for lv in t.levels], "step3": []}
    for b in range(len(data.ideals)):
        Tr, S = transpose_module(data, b)
        out.setdefault("S", []).append({"ideal": data.ideals[b].format(), "Tr_size": Tr.size, "S_size": S.size})
    for n in range(level):
        out["step3"].append(check_step3_filtration(t, n))
        out["step3"].append(check_step3_filtration(t, n, primed=True))
    if universe is not None:
        out["step6"] = check_step6_membership(t, universe)
    if level < requested:
        out["level_capped"] = {"requested": requested, "built": level, "reason": reason}
    out["ok"] = bool(out["step1"] and out["base_level"] and all(s["ok"] for s in out["step3"])
                     and (universe is None or out["step6"]["ok"]))
    return out, t


__all__ = [
    "FilterPresentationData", "presentation_data", "transpose_module", "check_step1",
    "step2_ext_criterion", "build_truncation", "check_step3_filtration", "check_step6_membership",
    "idempotent_silting", "check_idempotent_class", "run_silting",
]
