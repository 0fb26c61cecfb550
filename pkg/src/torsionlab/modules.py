"""Finite modules over finite commutative rings.

A ``Module`` is stored concretely: its elements are the indices ``0..m-1``
(0 is zero), with an addition table and a scalar-action table indexed by
ring-element indices.  Each module also knows a generating set, coordinates
of every element with respect to it, and a generating set of relations, so it
is at the same time a presentation ``R^g / span(relations)``.
"""

from __future__ import annotations

import copy
import itertools
import math
from dataclasses import dataclass, field
from functools import cached_property

import numpy as np

from .errors import GuardExceeded, NotFinite
from .ideals import Ideal, enumerate_ideals

MODULE_GUARD = 300_000
MAX_ELEMENTS = 2048
HOM_GUARD = 1_000_000


# ---------------------------------------------------------------------------
# vectors over a finite set with componentwise tables


class Codec:
    """Mixed-radix codes for tuples in ``B^k`` where ``B`` has ``q`` elements."""

    def __init__(self, q, k):
        self.q = q
        self.k = k
        self.total = q ** k
        self.strides = np.array([q ** i for i in range(k)], dtype=np.int64)

    def digits(self, codes):
        codes = np.asarray(codes, dtype=np.int64)
        return (codes[..., None] // self.strides) % self.q

    def encode(self, digits):
        digits = np.asarray(digits, dtype=np.int64)
        if self.k == 0:
            return np.zeros(digits.shape[:-1], dtype=np.int64)
        return digits @ self.strides


def ring_matrix(R, rows):
    """A matrix of ring labels -> array of indices."""
    return np.array([[R.index(x) for x in row] for row in rows], dtype=np.int64).reshape(len(rows), -1)


def reduce_by_units(R, A):
    """Eliminate unit pivots from a matrix over ``R`` (indices).

    Returns ``(B, kept_rows, kept_cols, E)``: ``B`` is the residual matrix
    on the surviving rows/columns, and ``E`` (original rows x kept rows)
    expresses every original generator through the surviving ones when the
    matrix is read as a presentation (columns are relations).  Read as a map
    ``R^cols -> R^rows``, ``A`` is equivalent to ``B`` plus identity blocks.
    """
    A = np.array(A, dtype=np.int64).copy()
    g, r = A.shape
    rows = list(range(g))
    cols = list(range(r))
    E = np.zeros((g, g), dtype=np.int64)
    E[np.arange(g), np.arange(g)] = R.one_index
    units = np.zeros(R.size, dtype=bool)
    units[list(R.units)] = True
    add, mul, neg = R.add_table, R.mul_table, R.neg_table
    while A.size:
        hits = np.argwhere(units[A])
        if len(hits) == 0:
            break
        i, j = hits[0]
        uinv = R.inverse(int(A[i, j]))
        c = neg[mul[uinv, A[:, j]]]  # generator i = sum_k c_k e_k (k != i)
        c[i] = 0
        # columns l: A[k, l] += A[i, l] * c_k
        A = add[A, mul[c[:, None], A[i][None, :]]]
        E = add[E, mul[E[:, i][:, None], c[None, :]]]
        A = np.delete(np.delete(A, i, axis=0), j, axis=1)
        E = np.delete(E, i, axis=1)
        del rows[i]
        del cols[j]
    return A, rows, cols, E


# ---------------------------------------------------------------------------
# the module class


class Module:
    def __init__(self, ring, add, act, gens=None, coords=None, relations=None, name=None):
        self.ring = ring
        self.add = np.ascontiguousarray(add, dtype=np.int64)
        self.act = np.ascontiguousarray(act, dtype=np.int64)
        self.size = self.add.shape[0]
        self.name = name
        neg = np.empty(self.size, dtype=np.int64)
        rows, cols = np.nonzero(self.add == 0)
        neg[rows] = cols
        self.neg = neg
        if gens is None:
            gens, coords = _greedy_generators(self)
        self.gens = [int(x) for x in gens]
        self.coords = np.asarray(coords, dtype=np.int64).reshape(self.size, len(self.gens))
        self._relations = None
        if relations is not None:
            relations = np.asarray(relations, dtype=np.int64)
            self._relations = relations.reshape(len(self.gens), -1) if self.gens else np.zeros((0, 0), dtype=np.int64)

    def __repr__(self):
        return "<Module %s over %s, %d elements>" % (self.name or "?", self.ring.name, self.size)

    def __len__(self):
        return self.size

    @property
    def ngens(self):
        return len(self.gens)

    def is_zero(self):
        return self.size == 1

    @property
    def relations(self):
        if self._relations is None:
            self._relations = _schreier_relations(self)
        return self._relations

    def scale(self, r, x):
        return int(self.act[r, x])

    def span(self, elements):
        """Sorted element indices of the submodule generated by ``elements``."""
        span = np.zeros(1, dtype=np.int64)
        for x in elements:
            x = int(x)
            if np.any(span == x):
                continue
            span = np.unique(self.add[np.ix_(span, np.unique(self.act[:, x]))])
        return span

    def cyclic_span(self, x):
        return np.unique(self.act[:, int(x)])

    def ideal_times(self, I):
        """Element indices of ``I M``."""
        prods = [self.act[i, g] for i in I.indices for g in self.gens]
        return self.span(prods)

    def annihilated_by(self, I):
        """``{m : I m = 0}`` as sorted element indices."""
        mask = (self.act[I.indices] == 0).all(axis=0)
        return np.nonzero(mask)[0]

    def annihilator(self):
        R = self.ring
        mask = (self.act == 0).all(axis=1)
        return Ideal.from_indices(R, np.nonzero(mask)[0])

    @cached_property
    def invariant(self):
        """Isomorphism invariant: size and, per ring element r, the size of ``{m : r m = 0}``."""
        kernel_sizes = tuple(sorted(int(c) for c in (self.act == 0).sum(axis=1)))
        orders = tuple(sorted(int(x) for x in _additive_orders(self)))
        return (self.size, kernel_sizes, orders)

    def element_of(self, coords):
        """The element ``sum coords[i] * gens[i]`` (coords are ring indices)."""
        x = 0
        for c, g in zip(coords, self.gens):
            x = int(self.add[x, self.act[c, g]])
        return x

    def format_element(self, x):
        parts = []
        for c, i in zip(self.coords[int(x)], range(self.ngens)):
            if c != 0:
                parts.append("%s*g%d" % (self.ring.format_index(c), i))
        return " + ".join(parts) or "0"

    def restrict_scalars(self, R, projection):
        """View this module (over a quotient or factor of ``R``) as an ``R``-module."""
        act = self.act[np.asarray(projection, dtype=np.int64)]
        return Module(R, self.add, act, name=self.name)

    def to_json(self):
        return {
            "ring": self.ring.name,
            "name": self.name,
            "size": self.size,
            "generators": self.ngens,
            "relations": [[self.ring.format_index(x) for x in row] for row in self.relations.tolist()],
        }


def _additive_orders(M):
    orders = np.ones(M.size, dtype=np.int64)
    x = np.arange(M.size)
    cur = x.copy()
    k = 1
    done = cur == 0
    while not done.all():
        cur = M.add[cur, x]
        k += 1
        newly = (cur == 0) & ~done
        orders[newly] = k
        done |= newly
    orders[0] = 1
    return orders


def _greedy_generators(M):
    """Greedy generating set, with coordinates for every element."""
    R = M.ring
    span = np.zeros(1, dtype=np.int64)
    span_coords = np.zeros((1, 0), dtype=np.int64)
    gens = []
    inside = np.zeros(M.size, dtype=bool)
    inside[0] = True
    for x in range(M.size):
        if inside[x]:
            continue
        k = len(gens)
        gens.append(x)
        multiples = M.act[:, x]  # indexed by ring element
        sums = M.add[span[:, None], multiples[None, :]]  # (|span|, |R|)
        flat = sums.ravel()
        uniq, first = np.unique(flat, return_index=True)
        src = first // R.size
        rr = first % R.size
        new_coords = np.zeros((len(uniq), k + 1), dtype=np.int64)
        new_coords[:, :k] = span_coords[src]
        new_coords[:, k] = rr
        span, span_coords = uniq, new_coords
        inside[span] = True
    coords = np.zeros((M.size, len(gens)), dtype=np.int64)
    coords[span] = span_coords
    return gens, coords


def _schreier_relations(M):
    """Generators of the kernel of ``R^g -> M``, pruned to an R-independent-ish list."""
    R = M.ring
    g = M.ngens
    if g == 0:
        return np.zeros((0, 0), dtype=np.int64)
    add, neg = R.add_table, R.neg_table
    C = M.coords
    rels = []
    for i, gi in enumerate(M.gens):
        targets = M.add[np.arange(M.size)[:, None], M.act[:, gi][None, :]]  # (m, |R|)
        v = np.broadcast_to(C[:, None, :], (M.size, R.size, g)).copy()
        v[:, :, i] = add[v[:, :, i], np.arange(R.size)[None, :]]
        v = add[v, neg[C[targets]]]
        rels.append(v.reshape(-1, g))
    rels = np.unique(np.concatenate(rels), axis=0)
    rels = rels[(rels != 0).any(axis=1)]
    codec = Codec(R.size, g)
    if codec.total > MODULE_GUARD:
        return rels.T.copy()
    kept = []
    span = np.zeros(1, dtype=np.int64)
    for v in rels:
        code = int(codec.encode(v))
        if np.any(span == code):
            continue
        kept.append(v)
        multiples = codec.encode(R.mul_table[:, v])  # r * v for all r
        span = np.unique(_code_add(R, codec, span[:, None], multiples[None, :]))
        if len(span) * M.size == codec.total:
            break
    if not kept:
        return np.zeros((g, 0), dtype=np.int64)
    return np.array(kept, dtype=np.int64).T.copy()


def _code_add(R, codec, a, b):
    da = codec.digits(a)
    db = codec.digits(b)
    return codec.encode(R.add_table[da, db])


# ---------------------------------------------------------------------------
# constructors


def zero_module(R):
    return Module(R, np.zeros((1, 1)), np.zeros((R.size, 1)), [], np.zeros((1, 0)),
                  np.zeros((0, 0)), name="0")


def from_presentation(R, ngens, relations, name=None, guard=MODULE_GUARD):
    """``R^ngens / span(columns of relations)``.

    ``relations`` is a ``ngens x r`` array of ring indices.  The returned
    module carries ``presentation_gens``: the images of the ``ngens``
    presentation generators.
    """
    if not R.is_finite:
        raise NotFinite("finite enumeration needs a finite ring; use snf.PIDModule")
    A = np.asarray(relations, dtype=np.int64).reshape(ngens, -1)
    B, kept, _, E = reduce_by_units(R, A)
    k = len(kept)
    codec = Codec(R.size, k)
    if codec.total > guard:
        raise GuardExceeded("%d^%d candidate vectors exceed the module guard %d" % (R.size, k, guard))
    # span of the residual relations in R^k
    span = np.zeros(1, dtype=np.int64)
    for col in B.T:
        code = int(codec.encode(col))
        if np.any(span == code):
            continue
        multiples = codec.encode(R.mul_table[:, col])
        span = np.unique(_code_add(R, codec, span[:, None], multiples[None, :]))
    if codec.total // len(span) > MAX_ELEMENTS:
        raise GuardExceeded("presented module has %d elements, more than %d"
                            % (codec.total // len(span), MAX_ELEMENTS))
    label = np.full(codec.total, -1, dtype=np.int64)
    reps = []
    for x in range(codec.total):
        if label[x] >= 0:
            continue
        label[_code_add(R, codec, np.int64(x), span)] = len(reps)
        reps.append(x)
    reps = np.array(reps, dtype=np.int64)
    add = label[_code_add(R, codec, reps[:, None], reps[None, :])]
    rep_digits = codec.digits(reps)
    if k:
        act = label[codec.encode(R.mul_table[np.arange(R.size)[:, None, None], rep_digits[None, :, :]])]
    else:
        act = np.zeros((R.size, 1), dtype=np.int64)
    gens = [int(label[codec.encode(np.eye(k, dtype=np.int64)[i] * R.one_index)]) for i in range(k)]
    coords = rep_digits.reshape(len(reps), k)
    M = Module(R, add, act, gens, coords, B, name=name)
    pres = []
    for i in range(ngens):
        pres.append(M.element_of(E[i]) if k else 0)
    M.presentation_gens = pres
    M.kept_rows = list(kept)
    return M


def cyclic(R, I, name=None):
    """``R/I`` presented by one generator and the generators of ``I``."""
    if not R.is_finite:
        from .snf import PIDModule

        return PIDModule.cyclic(R, I)
    gens = [R.index(g) for g in I.generators] or [0]
    if name is None:
        name = "R" if I.is_zero() else "R/%s" % I.format()
    return from_presentation(R, 1, np.array([gens], dtype=np.int64), name=name)


def free_module(R, k):
    return from_presentation(R, k, np.zeros((k, 0), dtype=np.int64), name="R^%d" % k if k != 1 else "R")


def direct_sum(*modules, name=None):
    if not modules:
        raise ValueError("direct_sum needs at least one module")
    M = modules[0]
    for N in modules[1:]:
        M = _direct_sum2(M, N)
    if len(modules) == 1 and name is not None:
        M = copy.copy(M)  # renaming must not touch the summand
    if name is not None:
        M.name = name
    elif len(modules) > 1:
        M.name = " (+) ".join(m.name or "?" for m in modules)
    return M


def _direct_sum2(M, N):
    R = M.ring
    n = N.size
    add = M.add[:, None, :, None] * n + N.add[None, :, None, :]
    add = add.reshape(M.size * n, M.size * n)
    act = (M.act[:, :, None] * n + N.act[:, None, :]).reshape(R.size, M.size * n)
    gens = [g * n for g in M.gens] + list(N.gens)
    coords = np.zeros((M.size * n, M.ngens + N.ngens), dtype=np.int64)
    coords[:, :M.ngens] = np.repeat(M.coords, n, axis=0)
    coords[:, M.ngens:] = np.tile(N.coords, (M.size, 1))
    rel_m, rel_n = M.relations, N.relations
    rel = np.zeros((M.ngens + N.ngens, rel_m.shape[1] + rel_n.shape[1]), dtype=np.int64)
    rel[:M.ngens, :rel_m.shape[1]] = rel_m
    rel[M.ngens:, rel_m.shape[1]:] = rel_n
    out = Module(R, add, act, gens, coords, rel, name=None)
    out.summands = getattr(M, "summands", [M]) + [N]
    return out


def direct_power(M, k):
    if k == 0:
        return zero_module(M.ring)
    return direct_sum(*([M] * k), name="(%s)^%d" % (M.name, k) if k > 1 else M.name)


def submodule(M, elements, name=None):
    """The submodule on the given (closed) element set, plus the inclusion array."""
    elems = np.unique(np.asarray(elements, dtype=np.int64))
    pos = np.full(M.size, -1, dtype=np.int64)
    pos[elems] = np.arange(len(elems))
    add = pos[M.add[np.ix_(elems, elems)]]
    act = pos[M.act[:, elems]]
    if (add < 0).any() or (act < 0).any():
        raise ValueError("element set is not a submodule")
    S = Module(M.ring, add, act, name=name)
    S.inclusion = elems
    return S


def quotient(M, sub_elements, name=None):
    """``M / S`` and the projection array ``M -> M/S``."""
    S = np.unique(np.asarray(sub_elements, dtype=np.int64))
    label = np.full(M.size, -1, dtype=np.int64)
    reps = []
    for x in range(M.size):
        if label[x] >= 0:
            continue
        label[M.add[x, S]] = len(reps)
        reps.append(x)
    reps = np.array(reps, dtype=np.int64)
    add = label[M.add[np.ix_(reps, reps)]]
    act = label[M.act[:, reps]]
    Q = Module(M.ring, add, act, name=name)
    Q.projection = label
    return Q


def module_from_vectors(R, base_add, vectors, scaled, name=None):
    """The module on a set of tuples with componentwise addition.

    ``vectors`` is an ``(n, k)`` array over a finite additive group with
    table ``base_add``; ``scaled[r]`` is the ``(n, k)`` array of ``r``
    times each vector.  The zero vector becomes element 0.
    """
    vectors = np.asarray(vectors, dtype=np.int64)
    scaled = np.asarray(scaled, dtype=np.int64)
    n, k = vectors.shape
    codec = Codec(base_add.shape[0], k)
    codes = codec.encode(vectors)
    zero_pos = int(np.nonzero(codes == 0)[0][0])
    order = np.array([zero_pos] + [i for i in range(n) if i != zero_pos], dtype=np.int64)
    vectors = vectors[order]
    codes = codes[order]
    scaled = scaled[:, order]
    sorter = np.argsort(codes)

    def lookup(c):
        pos = np.searchsorted(codes, c, sorter=sorter)
        found = sorter[np.minimum(pos, n - 1)]
        if not (codes[found] == c).all():
            raise ValueError("vector set is not closed")
        return found

    add = lookup(codec.encode(base_add[vectors[:, None, :], vectors[None, :, :]]))
    act = lookup(codec.encode(scaled))
    M = Module(R, add, act, name=name)
    M.vectors = vectors
    return M


# ---------------------------------------------------------------------------
# submodule lattice


def cyclic_submodules(M):
    seen = {}
    for x in range(M.size):
        s = tuple(int(v) for v in M.cyclic_span(x))
        seen.setdefault(s, x)
    return [np.array(s) for s in seen]


def all_submodules(M, limit=5000):
    """Every submodule as a sorted element array (sums of cyclic submodules)."""
    cyc = [tuple(int(v) for v in c) for c in cyclic_submodules(M)]
    found = {c: None for c in cyc}
    found[(0,)] = None
    frontier = list(found)
    while frontier:
        new = []
        for a in frontier:
            for b in cyc:
                s = tuple(int(v) for v in np.unique(M.add[np.ix_(a, b)]))
                if s not in found:
                    found[s] = None
                    new.append(s)
                    if len(found) > limit:
                        raise GuardExceeded("more than %d submodules" % limit)
        frontier = new
    return sorted((np.array(s) for s in found), key=lambda a: (len(a), tuple(a)))


# ---------------------------------------------------------------------------
# homomorphisms and isomorphism


@dataclass
class ModuleMap:
    domain: Module
    codomain: Module
    images: np.ndarray  # images of domain.gens

    @cached_property
    def table(self):
        """Image of every domain element."""
        return _evaluate(self.domain, self.codomain, self.images[None, :])[0]

    def __call__(self, x):
        return int(self.table[int(x)])

    def kernel(self):
        return np.nonzero(self.table == 0)[0]

    def image(self):
        return np.unique(self.table)

    def is_injective(self):
        return len(self.kernel()) == 1

    def is_surjective(self):
        return len(self.image()) == self.codomain.size

    def is_zero(self):
        return bool((self.table == 0).all())

    def compose(self, other):
        """``self ∘ other``."""
        return ModuleMap(other.domain, self.codomain, self.table[other.table[other.domain.gens]]
                         if other.domain.ngens else np.zeros(0, dtype=np.int64))

    def respects_structure(self):
        t = self.table
        D, C = self.domain, self.codomain
        ok_add = (t[D.add] == C.add[t[:, None], t[None, :]]).all()
        ok_act = (t[D.act] == C.act[:, t]).all()
        return bool(ok_add and ok_act)


def _evaluate(D, C, images):
    """Full tables ``(H, |D|)`` of the maps with generator images ``images (H, g)``."""
    H = images.shape[0]
    out = np.zeros((H, D.size), dtype=np.int64)
    for i in range(D.ngens):
        term = C.act[D.coords[:, i][None, :], images[:, i][:, None]]
        out = C.add[out, term]
    return out


def hom_candidates(M, N, guard=HOM_GUARD):
    """Array ``(H, g)`` of generator images of all homomorphisms ``M -> N``."""
    g = M.ngens
    if g == 0:
        return np.zeros((1, 0), dtype=np.int64)
    rel = M.relations
    # build candidates generator by generator, filtering relations that only
    # involve the generators assigned so far
    cand = np.zeros((1, 0), dtype=np.int64)
    support = [np.nonzero(rel[:, j])[0] for j in range(rel.shape[1])]
    last = [int(s.max()) if len(s) else -1 for s in support]
    for i in range(g):
        if len(cand) * N.size > guard:
            raise GuardExceeded("more than %d candidate assignments into a module of size %d"
                                % (guard, N.size))
        cand = np.concatenate([np.repeat(cand, N.size, axis=0),
                               np.tile(np.arange(N.size), len(cand))[:, None]], axis=1)
        for j in range(rel.shape[1]):
            if last[j] != i:
                continue
            acc = np.zeros(len(cand), dtype=np.int64)
            for k in support[j]:
                acc = N.add[acc, N.act[rel[k, j], cand[:, k]]]
            cand = cand[acc == 0]
    return cand


def hom_set(M, N, guard=HOM_GUARD):
    return [ModuleMap(M, N, row) for row in hom_candidates(M, N, guard)]


def find_injection(M, N, bijective=False):
    """An injective homomorphism ``M -> N`` (or None), by backtracking over generator images.

    The map is grown one generator at a time on the span of the generators
    placed so far; a branch is cut as soon as the partial map is not well
    defined or not injective.
    """
    if M.size > N.size or (bijective and M.size != N.size):
        return None
    if M.is_zero():
        return ModuleMap(M, N, np.zeros(0, dtype=np.int64))
    ann_m = [(M.act[:, g] == 0).tobytes() for g in M.gens]
    ann_n = {}
    for y in range(N.size):
        ann_n.setdefault((N.act[:, y] == 0).tobytes(), []).append(y)
    table = np.full(M.size, -1, dtype=np.int64)
    table[0] = 0
    images = []

    def extend(i, span):
        if i == M.ngens:
            return True
        g = M.gens[i]
        reach = M.add[span[:, None], M.act[:, g][None, :]]
        uniq, first, inverse = np.unique(reach, return_index=True, return_inverse=True)
        old_values = table[span]
        used = np.zeros(N.size, dtype=bool)
        used[old_values] = True
        for n in ann_n.get(ann_m[i], ()):
            if used[n]:
                continue
            vals = N.add[old_values[:, None], N.act[:, n][None, :]].ravel()
            assigned = vals[first]
            if not (vals == assigned[inverse.ravel()]).all():
                continue
            if len(np.unique(assigned)) != len(uniq):
                continue
            saved = table[uniq].copy()
            table[uniq] = assigned
            images.append(n)
            if extend(i + 1, uniq):
                return True
            images.pop()
            table[uniq] = saved
        return False

    if extend(0, np.zeros(1, dtype=np.int64)):
        return ModuleMap(M, N, np.array(images, dtype=np.int64))
    return None


def is_isomorphic(M, N, return_map=False):
    f = None
    if M.size == N.size and M.invariant == N.invariant:
        f = find_injection(M, N, bijective=True)
    ok = f is not None
    return (ok, f) if return_map else ok


# ---------------------------------------------------------------------------
# divisibility and torsion


def is_divisible(M, I):
    """``M = I M``."""
    if not M.ring.is_finite:
        from .snf import pid_is_divisible

        return pid_is_divisible(M, I)
    return len(M.ideal_times(I)) == M.size


def torsion_elements(M, G):
    """``{m : B m = 0 for some basis ideal B of G}``."""
    mask = np.zeros(M.size, dtype=bool)
    for B in G.basis:
        mask[M.annihilated_by(B)] = True
    return np.nonzero(mask)[0]


def torsion_elements_by_minimum(M, G):
    """``{m : min(G) m = 0}`` (finite rings only)."""
    return M.annihilated_by(G.minimum())


def is_torsionfree(M, G):
    if not M.ring.is_finite:
        from .snf import pid_torsion_part

        return pid_torsion_part(M, G).is_zero()
    return len(torsion_elements(M, G)) == 1


def torsion_part(M, G):
    """The G-torsion submodule (its ``inclusion`` attribute maps it into ``M``)."""
    if not M.ring.is_finite:
        from .snf import pid_torsion_part

        return pid_torsion_part(M, G)
    return submodule(M, torsion_elements(M, G), name="t(%s)" % (M.name or "M"))


# ---------------------------------------------------------------------------
# the module universe


@dataclass
class UniversePolicy:
    summands: int = 2
    bound: int = 512
    include_duals: bool = False


@dataclass
class ModuleUniverse:
    ring: object
    policy: UniversePolicy
    members: list = field(default_factory=list)

    def __iter__(self):
        return iter(self.members)

    def __len__(self):
        return len(self.members)

    def find(self, M):
        """Index of the member isomorphic to ``M`` (or None)."""
        for i, N in enumerate(self.members):
            if is_isomorphic(M, N):
                return i
        return None

    def cyclics(self):
        return [M for M in self.members if getattr(M, "is_cyclic_member", False)]


def build_universe(R, policy=None, **kw):
    """0, every cyclic R/J, and direct sums of up to ``summands`` cyclics within ``bound``."""
    if not R.is_finite:
        raise NotFinite("universes are built over finite rings")
    policy = policy or UniversePolicy(**kw)
    cyclics = []
    for J in enumerate_ideals(R):
        if J.is_unit_ideal():
            continue
        C = cyclic(R, J)
        C.is_cyclic_member = True
        C.cyclic_ideal = J
        cyclics.append(C)
    candidates = [zero_module(R)]
    candidates[0].is_cyclic_member = True
    if policy.bound >= 1:
        candidates += [C for C in cyclics if C.size <= policy.bound]
    for k in range(2, policy.summands + 1):
        for combo in itertools.combinations_with_replacement(range(len(cyclics)), k):
            size = math.prod(cyclics[i].size for i in combo)
            if size > policy.bound:
                continue
            candidates.append(direct_sum(*[cyclics[i] for i in combo]))
    members = []
    for M in candidates:
        if M.size > policy.bound and not M.is_zero():
            continue
        if not any(is_isomorphic(M, N) for N in members):
            members.append(M)
    if policy.include_duals:
        from .homological import character_dual

        for M in list(members):
            D = character_dual(M).module
            if not any(is_isomorphic(D, N) for N in members):
                D.name = "(%s)+" % M.name
                members.append(D)
    members.sort(key=lambda M: (M.size, M.name or ""))
    return ModuleUniverse(R, policy, members)
