"""Hom, the two classes cut out by a map of free modules, character duals, Ext^1, injective hulls.

Everything here works on the concrete finite modules of ``modules``; the
D/T membership tests also accept ``snf.PIDModule`` arguments over Z and
F_p[x].
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import cached_property

import numpy as np

from .errors import EmbeddingSearchFailed, GuardExceeded, NotFinite
from .ideals import Ideal, enumerate_ideals, jacobson_radical, spec
from .modules import (
    HOM_GUARD,
    Codec,
    Module,
    ModuleMap,
    _evaluate,
    cyclic,
    direct_sum,
    find_injection,
    free_module,
    from_presentation,
    hom_candidates,
    hom_set,
    module_from_vectors,
    quotient,
    reduce_by_units,
    submodule,
    zero_module,
)
from .rings import ZMod, make_ring, primitive_idempotents

__all__ = [
    "ProjectiveMap", "sigma_for_ideal", "hom_set", "in_D_sigma", "in_T_sigma",
    "character_dual", "CharacterModule", "ext1", "ext1_divisibility", "restricted_check",
    "socle", "injective_hull", "is_essential", "baer_injective",
]


@dataclass
class ProjectiveMap:
    """``sigma: R^a -> R^b`` as a ``b x a`` matrix of ring labels (columns are images)."""

    ring: object
    matrix: list
    role: str = ""

    @property
    def shape(self):
        b = len(self.matrix)
        a = len(self.matrix[0]) if b else 0
        return b, a

    @cached_property
    def indices(self):
        R = self.ring
        b, a = self.shape
        return np.array([[R.index(x) for x in row] for row in self.matrix], dtype=np.int64).reshape(b, a)

    @cached_property
    def reduced(self):
        """The matrix with unit pivots split off (same D and T classes)."""
        B, _, _, _ = reduce_by_units(self.ring, self.indices)
        return B

    def cokernel(self, name=None):
        b, _ = self.shape
        return from_presentation(self.ring, b, self.indices, name=name)

    def transpose(self, role=""):
        b, a = self.shape
        return ProjectiveMap(self.ring, [[self.matrix[i][j] for i in range(b)] for j in range(a)], role)

    def format(self):
        R = self.ring
        return "[" + "; ".join(", ".join(R.format(x) for x in row) for row in self.matrix) + "]"

    def to_json(self):
        R = self.ring
        b, a = self.shape
        return {"role": self.role, "shape": [b, a],
                "matrix": [[R.format(x) for x in row] for row in self.matrix]}


def sigma_for_ideal(R, gens, role=None):
    """``R -> R^n``, ``1 -> (x_0, ..., x_{n-1})`` for a generator list of an ideal."""
    gens = list(gens) or [R.zero]
    return ProjectiveMap(R, [[g] for g in gens], role or "sigma_I")


# ---------------------------------------------------------------------------
# D_sigma and T_sigma


def _power_span(M, vectors, guard=HOM_GUARD):
    """Size of the R-submodule of ``M^k`` spanned by the rows of ``vectors``."""
    vectors = np.asarray(vectors, dtype=np.int64)
    k = vectors.shape[1] if vectors.ndim == 2 else 0
    codec = Codec(M.size, k)
    if codec.total > guard:
        raise GuardExceeded("|M|^%d = %d exceeds the guard" % (k, codec.total))
    span = np.zeros(1, dtype=np.int64)
    for v in vectors:
        code = int(codec.encode(v))
        if np.any(span == code):
            continue
        multiples = np.unique(codec.encode(M.act[:, v]))
        ds = codec.digits(span)[:, None, :]
        dm = codec.digits(multiples)[None, :, :]
        span = np.unique(codec.encode(M.add[ds, dm]))
        if len(span) == codec.total:
            break
    return len(span), codec.total


def in_D_sigma(sigma, M):
    """``Hom(sigma, M): M^b -> M^a`` is surjective."""
    if not isinstance(M, Module):
        from .snf import pid_in_D_sigma

        return pid_in_D_sigma(sigma.matrix, M)
    B = sigma.reduced
    b, a = B.shape
    if a == 0:
        return True
    if M.is_zero():
        return True
    if M.size ** a > HOM_GUARD:
        # |image| = |M|^b / |Hom(coker, M)|, the kernel being Hom(coker, M)
        C = from_presentation(M.ring, b, B)
        homs = len(hom_candidates(C, M))
        return homs * M.size ** a == M.size ** b
    vectors = [M.act[B[i], g] for i in range(b) for g in M.gens]
    if not vectors:
        return False
    size, total = _power_span(M, np.array(vectors))
    return size == total


def in_T_sigma(sigma, X, chunk=1 << 16):
    """``sigma ⊗ X: X^a -> X^b`` is injective."""
    if not isinstance(X, Module):
        from .snf import pid_in_T_sigma

        return pid_in_T_sigma(sigma.matrix, X)
    B = sigma.reduced
    b, a = B.shape
    if a == 0 or X.is_zero():
        return True
    codec = Codec(X.size, a)
    if codec.total > HOM_GUARD:
        raise GuardExceeded("|X|^%d = %d exceeds the guard" % (a, codec.total))
    for start in range(1, codec.total, chunk):
        xs = codec.digits(np.arange(start, min(start + chunk, codec.total)))
        zero = np.ones(len(xs), dtype=bool)
        for i in range(b):
            acc = np.zeros(len(xs), dtype=np.int64)
            for j in range(a):
                acc = X.add[acc, X.act[B[i, j], xs[:, j]]]
            zero &= acc == 0
        if zero.any():
            return False
    return True


# ---------------------------------------------------------------------------
# character duals


class CharacterModule:
    """``M+ = Hom_Z(M, Z/n)`` (``n`` the characteristic) with ``(r chi)(m) = chi(r m)``.

    ``values[h, x]`` is the value of the character that is element ``h`` of
    ``module`` at the element ``x`` of the original module.
    """

    def __init__(self, original, module, values, modulus):
        self.original = original
        self.module = module
        self.values = values
        self.modulus = modulus

    def pairing(self, x, h):
        return int(self.values[h, x])

    def radicals_trivial(self):
        """The evaluation pairing is perfect on both sides."""
        left = (self.values != 0).any(axis=0)
        right = (self.values != 0).any(axis=1)
        return bool(left[1:].all() and right[1:].all())

    def evaluation_map(self):
        """``M -> M++``, ``x -> (chi -> chi(x))`` as an element-index array."""
        dd = character_dual(self.module, _check=False)
        index = {dd.values[h].tobytes(): h for h in range(dd.module.size)}
        cols = np.ascontiguousarray(self.values.T)
        return dd, np.array([index[cols[x].tobytes()] for x in range(self.original.size)], dtype=np.int64)

    def double_dual_check(self):
        """The evaluation map is a bijective module homomorphism ``M -> M++``."""
        dd, ev = self.evaluation_map()
        M, D = self.original, dd.module
        if len(np.unique(ev)) != M.size or D.size != M.size:
            return False
        return bool((ev[M.add] == D.add[ev[:, None], ev[None, :]]).all()
                    and (ev[M.act] == D.act[:, ev]).all())


_ZN_CACHE = {}


def _zn(n):
    if n not in _ZN_CACHE:
        Zn = make_ring(ZMod(n))
        _ZN_CACHE[n] = (Zn, cyclic(Zn, Ideal(Zn, [])))
    return _ZN_CACHE[n]


def _as_abelian_group(M, n):
    """``M`` as a Z/n-module (only the additive structure)."""
    Zn, _ = _zn(n)
    act = np.zeros((n, M.size), dtype=np.int64)
    x = np.arange(M.size)
    for k in range(1, n):
        act[k] = M.add[act[k - 1], x]
    return Module(Zn, M.add, act)


def character_dual(M, _check=True):
    if not isinstance(M, Module):
        raise NotFinite("character duals are computed for finite modules")
    R = M.ring
    n = R.characteristic
    if M.is_zero():
        return CharacterModule(M, zero_module(R), np.zeros((1, 1), dtype=np.int64), n)
    Zn, target = _zn(n)
    A = _as_abelian_group(M, n)
    cand = hom_candidates(A, target)
    values = _evaluate(A, target, cand)  # element index of Z/n regular module = value
    assert not cand[0].any()
    scaled = values[:, M.act[:, A.gens]].transpose(1, 0, 2)  # (|R|, H, k)
    D = module_from_vectors(R, Zn.add_table, cand, scaled, name="(%s)+" % (M.name or "M"))
    dual = CharacterModule(M, D, values, n)
    if _check and D.size != M.size:
        raise AssertionError("character group has the wrong size")
    return dual


# ---------------------------------------------------------------------------
# Ext^1 through presentations


def _image_submodule(sigma):
    """``Z = im(sigma)`` inside ``R^b``, with the free module and its codec."""
    R = sigma.ring
    b, _ = sigma.shape
    F = free_module(R, b)
    cols = [F.element_of(col) for col in sigma.indices.T]
    Z = submodule(F, F.span(cols), name="im")
    return F, Z, cols


def _hom_module(D, M, cand):
    scaled = M.act[:, cand]
    return module_from_vectors(D.ring, M.add, cand, scaled, name="Hom")


def ext1(sigma, M):
    """``Ext^1(coker sigma, M)`` as ``coker(Hom(R^b, M) -> Hom(im sigma, M))``."""
    R = sigma.ring
    b, _ = sigma.shape
    F, Z, _ = _image_submodule(sigma)
    cand = hom_candidates(Z, M)
    H = _hom_module(Z, M, cand)
    # restrictions of the maps R^b -> M (one per element of M^b)
    zcoords = F.coords[Z.inclusion[Z.gens]]  # coordinates of Z's generators in R^b
    # Hom(R^b, M) = M^b is generated by the maps e_j -> g for g among the
    # generators of M, and restriction is linear, so their images span it
    gens = list(M.gens) or [0]
    restricted = np.zeros((b * len(gens), Z.ngens), dtype=np.int64)
    for j in range(b):
        for k, g in enumerate(gens):
            restricted[j * len(gens) + k] = M.act[zcoords[:, j], g]
    index = {row.tobytes(): h for h, row in enumerate(np.ascontiguousarray(H.vectors))}
    image = H.span([index[row.tobytes()] for row in np.ascontiguousarray(restricted)])
    E = quotient(H, image, name="Ext1")
    return E


def ext1_divisibility(M, I):
    """The short path for cokernels of ideal maps: ``M / I M``."""
    return quotient(M, M.ideal_times(I), name="M/IM")


def restricted_check(sigma, M):
    """Membership through ``sigma' : R^a -> im(sigma)``: every map ``R^a -> M`` factors."""
    _, a = sigma.shape
    F, Z, cols = _image_submodule(sigma)
    cand = hom_candidates(Z, M)
    pos = np.searchsorted(Z.inclusion, cols)
    seen = set()
    for start in range(0, len(cand), 4096):
        tables = _evaluate(Z, M, cand[start:start + 4096])
        for row in np.ascontiguousarray(tables[:, pos]):
            seen.add(row.tobytes())
    return len(seen) == M.size ** a


def factorization_membership(sigma, M):
    """``(Ext^1(coker sigma, M) == 0, restricted_check)`` and their conjunction."""
    e = ext1(sigma, M).is_zero()
    r = restricted_check(sigma, M)
    return e, r, e and r


# ---------------------------------------------------------------------------
# socles and injective hulls


def socle(M):
    J = jacobson_radical(M.ring)
    return submodule(M, M.annihilated_by(J), name="soc(%s)" % (M.name or "M"))


@dataclass
class LocalInjective:
    maximal: Ideal
    residue_size: int
    module: Module  # injective hull of R/m


def indecomposable_injectives(R):
    """One entry per maximal ideal: the dual of the matching local factor."""
    cache = getattr(R, "_injectives", None)
    if cache is not None:
        return cache
    out = []
    prims = primitive_idempotents(R)
    for m in spec(R):
        e = next(e for e in prims if not m.contains(R.labels[e]))
        one_minus = R.labels[R.sub(R.one_index, e)]
        local = cyclic(R, Ideal(R, [one_minus]))  # R e as a cyclic module
        E = character_dual(local).module
        E.name = "E(R/%s)" % m.format()
        out.append(LocalInjective(m, R.size // len(m), E))
    R._injectives = out
    return out


def socle_multiplicities(M):
    out = []
    for inj in indecomposable_injectives(M.ring):
        count = len(M.annihilated_by(inj.maximal))
        out.append(round(math.log(count, inj.residue_size)))
    return out


def injective_hull(M):
    """``(E, embedding)`` with ``E`` a direct sum of indecomposable injectives."""
    R = M.ring
    if M.is_zero():
        Z = zero_module(R)
        return Z, ModuleMap(M, Z, np.zeros(M.ngens, dtype=np.int64))
    parts = []
    for inj, k in zip(indecomposable_injectives(R), socle_multiplicities(M)):
        parts += [inj.module] * k
    E = direct_sum(*parts, name="E(%s)" % (M.name or "M"))
    f = find_injection(M, E)
    if f is not None:
        if not is_essential(f):
            raise EmbeddingSearchFailed("injective map into the hull is not essential")
        return E, f
    raise EmbeddingSearchFailed("no embedding of %s into %s" % (M.name, E.name))


def is_essential(f):
    """Every nonzero cyclic submodule of the codomain meets the image."""
    E = f.codomain
    inside = np.zeros(E.size, dtype=bool)
    inside[f.image()] = True
    hits = inside[E.act] & (E.act != 0)
    return bool(hits[:, 1:].any(axis=0).all())


def baer_injective(E):
    """Every map from an ideal into ``E`` extends to ``R``."""
    R = E.ring
    for J in enumerate_ideals(R):
        sigma = ProjectiveMap(R, [list(J.generators) or [R.zero]])
        if not ext1(sigma, E).is_zero():
            return False
    return True


def tensor_cyclic(M, I):
    """``M ⊗ R/I = M / I M``."""
    return ext1_divisibility(M, I)


__all__ += ["factorization_membership", "indecomposable_injectives", "socle_multiplicities", "tensor_cyclic",
            "LocalInjective"]
