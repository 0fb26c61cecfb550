"""Computable commutative rings.

Two families are supported:

* finite rings, built from descriptors (``ZMod``, ``PolyQuot``, ``Product``)
  and materialized as addition/multiplication tables over element indices;
* the Euclidean domains ``Z`` and ``F_p[x]`` (``IntegerRing``, ``PolyRing``).

Elements of a finite ring are exposed as canonical labels (an ``int`` for
``Z/n``, a coefficient tuple for a polynomial quotient, a component tuple for
a product).  Internally everything works on element *indices*: the position
of the label in ``ring.elements()``.  Index 0 is always the zero element.
"""

from __future__ import annotations

import itertools
import math
import os
from dataclasses import dataclass
from functools import cached_property

import numpy as np

from .errors import DepthExceeded, GuardExceeded, InvalidModulus, NotFinite, NotIdempotent

DEFAULT_GUARD = 4096
MAX_POLYQUOT_DEPTH = 2


def default_guard():
    """Cardinality guard; ``TORSIONLAB_GUARD`` overrides the default of 4096."""
    value = os.environ.get("TORSIONLAB_GUARD")
    if value:
        return int(value)
    return DEFAULT_GUARD


# ---------------------------------------------------------------------------
# descriptors


@dataclass(frozen=True)
class ZMod:
    n: int

    def describe(self):
        return "Z/%d" % self.n


@dataclass(frozen=True)
class PolyQuot:
    """``base[var]/(modulus)``; modulus coefficients are base labels, low degree first."""

    base: object
    modulus: tuple
    var: str = "x"

    def describe(self):
        from .parsing import format_poly

        base = self.base.describe()
        if isinstance(self.base, (Product, PolyQuot)):
            base = "(%s)" % base
        return "%s[%s]/(%s)" % (base, self.var, format_poly(self.base, self.modulus, self.var))


@dataclass(frozen=True)
class Product:
    factors: tuple

    def describe(self):
        parts = []
        for f in self.factors:
            text = f.describe()
            if isinstance(f, Product):
                text = "(%s)" % text
            parts.append(text)
        return " * ".join(parts)


@dataclass(frozen=True)
class IntegerRing:
    def describe(self):
        return "Z"


@dataclass(frozen=True)
class PolyRing:
    p: int
    var: str = "x"

    def describe(self):
        return "F%d[%s]" % (self.p, self.var)


def is_finite_descriptor(desc):
    if isinstance(desc, (IntegerRing, PolyRing)):
        return False
    if isinstance(desc, ZMod):
        return True
    if isinstance(desc, PolyQuot):
        return is_finite_descriptor(desc.base)
    if isinstance(desc, Product):
        return all(is_finite_descriptor(f) for f in desc.factors)
    raise TypeError("unknown ring descriptor %r" % (desc,))


def cardinality(desc):
    if isinstance(desc, ZMod):
        return desc.n
    if isinstance(desc, PolyQuot):
        return cardinality(desc.base) ** (len(desc.modulus) - 1)
    if isinstance(desc, Product):
        return math.prod(cardinality(f) for f in desc.factors)
    raise NotFinite("%s is not finite" % desc.describe())


def polyquot_depth(desc):
    if isinstance(desc, PolyQuot):
        return 1 + polyquot_depth(desc.base)
    if isinstance(desc, Product):
        return max(polyquot_depth(f) for f in desc.factors)
    return 0


# ---------------------------------------------------------------------------
# finite rings


class FiniteRing:
    """A finite commutative ring given by operation tables on indices 0..N-1."""

    is_finite = True

    def __init__(self, labels, add, mul, one, name, descriptor=None, formatter=None):
        self.labels = list(labels)
        self.size = len(self.labels)
        self.add_table = np.ascontiguousarray(add, dtype=np.int64)
        self.mul_table = np.ascontiguousarray(mul, dtype=np.int64)
        self.zero_index = 0
        self.one_index = int(one)
        self.name = name
        self.descriptor = descriptor
        self._formatter = formatter
        self._index = {lab: i for i, lab in enumerate(self.labels)}
        neg = np.empty(self.size, dtype=np.int64)
        rows, cols = np.nonzero(self.add_table == 0)
        neg[rows] = cols
        self.neg_table = neg

    def __repr__(self):
        return "<FiniteRing %s (%d elements)>" % (self.name, self.size)

    # label-level API
    @property
    def zero(self):
        return self.labels[0]

    @property
    def one(self):
        return self.labels[self.one_index]

    def cardinality(self):
        return self.size

    def elements(self):
        return list(self.labels)

    def index(self, label):
        try:
            return self._index[label]
        except KeyError:
            raise ValueError("%r is not an element of %s" % (label, self.name)) from None

    def element(self, i):
        return self.labels[int(i)]

    def add(self, a, b):
        return self.labels[self.add_table[self.index(a), self.index(b)]]

    def mul(self, a, b):
        return self.labels[self.mul_table[self.index(a), self.index(b)]]

    def neg(self, a):
        return self.labels[self.neg_table[self.index(a)]]

    def format(self, label):
        if self._formatter is not None:
            return self._formatter(label)
        return str(label)

    def format_index(self, i):
        return self.format(self.labels[int(i)])

    def parse_element(self, text):
        if self.descriptor is None:
            raise ValueError("ring %s has no element grammar" % self.name)
        from .parsing import parse_element

        return parse_element(self.descriptor, text)

    # index-level helpers
    def sub(self, a, b):
        return int(self.add_table[a, self.neg_table[b]])

    def power(self, a, k):
        r = self.one_index
        for _ in range(k):
            r = int(self.mul_table[r, a])
        return r

    def times(self, k, a):
        """``k * a`` for a non-negative integer ``k``."""
        r = 0
        for _ in range(k):
            r = int(self.add_table[r, a])
        return r

    @cached_property
    def units(self):
        return frozenset(int(i) for i in np.nonzero((self.mul_table == self.one_index).any(axis=1))[0])

    def is_unit(self, a):
        return int(a) in self.units

    def inverse(self, a):
        hits = np.nonzero(self.mul_table[a] == self.one_index)[0]
        if len(hits) == 0:
            raise ZeroDivisionError("%s is not a unit" % self.format_index(a))
        return int(hits[0])

    @cached_property
    def characteristic(self):
        """Additive order of 1."""
        k, x = 1, self.one_index
        while x != 0:
            x = int(self.add_table[x, self.one_index])
            k += 1
        return k if self.size > 1 else 1

    def principal(self, a):
        """Sorted indices of the principal ideal ``R*a``."""
        return np.unique(self.mul_table[a])


def _zmod_ring(n):
    labels = list(range(n))
    r = np.arange(n)
    add = (r[:, None] + r[None, :]) % n
    mul = (r[:, None] * r[None, :]) % n
    return FiniteRing(labels, add, mul, 1 % n, "Z/%d" % n, ZMod(n), str)


def _product_ring(desc, parts):
    sizes = [p.size for p in parts]
    combos = list(itertools.product(*[range(s) for s in sizes]))
    labels = [tuple(parts[k].labels[c[k]] for k in range(len(parts))) for c in combos]
    n = len(combos)
    digits = np.array(combos, dtype=np.int64).reshape(n, len(parts))
    strides = np.ones(len(parts), dtype=np.int64)
    for k in range(len(parts) - 2, -1, -1):
        strides[k] = strides[k + 1] * sizes[k + 1]
    add = np.zeros((n, n), dtype=np.int64)
    mul = np.zeros((n, n), dtype=np.int64)
    for k, part in enumerate(parts):
        col = digits[:, k]
        add += part.add_table[col[:, None], col[None, :]] * strides[k]
        mul += part.mul_table[col[:, None], col[None, :]] * strides[k]
    one = int(sum(part.one_index * strides[k] for k, part in enumerate(parts)))

    def fmt(label):
        return "<%s>" % ", ".join(p.format(x) for p, x in zip(parts, label))

    return FiniteRing(labels, add, mul, one, desc.describe(), desc, fmt)


def _polyquot_ring(desc, base):
    d = len(desc.modulus) - 1
    if d < 1:
        raise InvalidModulus("modulus must have degree >= 1")
    mod_idx = [base.index(c) for c in desc.modulus]
    lead = mod_idx[-1]
    if not base.is_unit(lead):
        raise InvalidModulus("leading coefficient %s is not a unit" % base.format_index(lead))
    inv = base.inverse(lead)
    monic = [int(base.mul_table[inv, c]) for c in mod_idx]
    # x^d = -(monic_0 + ... + monic_{d-1} x^{d-1})
    tail = np.array([base.neg_table[c] for c in monic[:d]], dtype=np.int64)

    # enumerate coefficient tuples, highest degree most significant
    combos = list(itertools.product(range(base.size), repeat=d))
    coeffs = np.array([c[::-1] for c in combos], dtype=np.int64).reshape(len(combos), d)
    n = len(combos)
    strides = np.array([base.size ** k for k in range(d)], dtype=np.int64)
    A, M = base.add_table, base.mul_table

    add = np.zeros((n, n), dtype=np.int64)
    for k in range(d):
        add += A[coeffs[:, k][:, None], coeffs[:, k][None, :]] * strides[k]

    mul = np.zeros((n, n), dtype=np.int64)
    for a in range(n):
        prod = np.zeros((n, 2 * d - 1), dtype=np.int64)
        for i in range(d):
            ai = coeffs[a, i]
            if ai == 0:
                continue
            terms = M[ai, coeffs]  # shape (n, d)
            for j in range(d):
                prod[:, i + j] = A[prod[:, i + j], terms[:, j]]
        for top in range(2 * d - 2, d - 1, -1):
            c = prod[:, top]
            for k in range(d):
                prod[:, top - d + k] = A[prod[:, top - d + k], M[c, tail[k]]]
            prod[:, top] = 0
        mul[a] = prod[:, :d] @ strides
    one = 0
    one_vec = np.zeros(d, dtype=np.int64)
    one_vec[0] = base.one_index
    one = int(one_vec @ strides)
    labels = [tuple(base.labels[c] for c in row) for row in coeffs.tolist()]

    def fmt(label):
        from .parsing import format_poly

        return format_poly(desc.base, label, desc.var)

    return FiniteRing(labels, add, mul, one, desc.describe(), desc, fmt)


def _build_finite(desc):
    if isinstance(desc, ZMod):
        return _zmod_ring(desc.n)
    if isinstance(desc, Product):
        return _product_ring(desc, [_build_finite(f) for f in desc.factors])
    if isinstance(desc, PolyQuot):
        return _polyquot_ring(desc, _build_finite(desc.base))
    raise TypeError(desc)


def _validate(desc):
    if isinstance(desc, ZMod):
        if not isinstance(desc.n, int) or desc.n < 1:
            raise ValueError("Z/n needs n >= 1")
    elif isinstance(desc, Product):
        if len(desc.factors) < 2:
            raise ValueError("a product needs at least two factors")
        for f in desc.factors:
            _validate(f)
    elif isinstance(desc, PolyQuot):
        if not is_finite_descriptor(desc.base):
            raise ValueError("polynomial quotients need a finite base ring")
        _validate(desc.base)
    elif isinstance(desc, PolyRing):
        from sympy import isprime

        if not isprime(desc.p):
            raise ValueError("F_p[x] needs p prime")
    if polyquot_depth(desc) > MAX_POLYQUOT_DEPTH:
        raise DepthExceeded("polynomial quotients nest at most %d deep" % MAX_POLYQUOT_DEPTH)


def make_ring(desc, guard=None):
    """Build the ring context for a descriptor."""
    _validate(desc)
    if isinstance(desc, IntegerRing):
        return INTEGERS
    if isinstance(desc, PolyRing):
        return PolyRingContext(desc.p, desc.var)
    guard = default_guard() if guard is None else guard
    n = cardinality(desc)
    if n > guard:
        raise GuardExceeded("ring %s has %d elements, guard is %d" % (desc.describe(), n, guard))
    return _build_finite(desc)


def require_finite(R):
    if not getattr(R, "is_finite", False):
        raise NotFinite("%s is not a finite ring" % R.name)


# ---------------------------------------------------------------------------
# derived finite rings


def idempotents(R):
    """All ``e`` with ``e*e == e`` (labels, in ring order)."""
    require_finite(R)
    diag = R.mul_table[np.arange(R.size), np.arange(R.size)]
    return [R.labels[i] for i in np.nonzero(diag == np.arange(R.size))[0]]


def idempotent_indices(R):
    diag = R.mul_table[np.arange(R.size), np.arange(R.size)]
    return [int(i) for i in np.nonzero(diag == np.arange(R.size))[0]]


def corner_ring(R, e):
    """The ring ``R*e`` with identity ``e`` (index input); labels are inherited."""
    if int(R.mul_table[e, e]) != e:
        raise NotIdempotent("%s is not idempotent" % R.format_index(e))
    elems = [int(i) for i in np.unique(R.mul_table[e])]
    pos = {x: k for k, x in enumerate(elems)}
    sel = np.array(elems)
    remap = np.vectorize(pos.__getitem__, otypes=[np.int64])
    add = remap(R.add_table[np.ix_(sel, sel)])
    mul = remap(R.mul_table[np.ix_(sel, sel)])
    ring = FiniteRing([R.labels[x] for x in elems], add, mul, pos[e],
                      "%s*%s" % (R.name, R.format_index(e)), None, R.format)
    ring.parent = R
    ring.parent_indices = sel
    # r -> r*e, as a map from R-indices to ring-indices
    ring.projection = remap(R.mul_table[e])
    return ring


def quotient_ring(R, ideal_elements):
    """``R/A`` for a (finite) ideal given by its sorted element indices.

    Cosets are labelled by the label of their smallest-index representative.
    ``ring.projection`` maps R-indices to quotient indices.
    """
    A = np.asarray(sorted(int(a) for a in ideal_elements), dtype=np.int64)
    proj = np.full(R.size, -1, dtype=np.int64)
    reps = []
    for r in range(R.size):
        if proj[r] >= 0:
            continue
        coset = R.add_table[r, A]
        proj[coset] = len(reps)
        reps.append(r)
    reps = np.array(reps, dtype=np.int64)
    add = proj[R.add_table[np.ix_(reps, reps)]]
    mul = proj[R.mul_table[np.ix_(reps, reps)]]
    one = int(proj[R.one_index])
    ring = FiniteRing([R.labels[r] for r in reps], add, mul, one,
                      "%s/(%s)" % (R.name, ", ".join(R.format_index(a) for a in _few_gens(R, A))),
                      None, R.format)
    ring.parent = R
    ring.projection = proj
    ring.representatives = reps
    return ring


def _few_gens(R, elements):
    """Greedy generator list for an ideal given by element indices."""
    elements = [int(x) for x in sorted(elements)]
    span = {0}
    gens = []
    for x in elements:
        if x in span:
            continue
        gens.append(x)
        span = {int(R.add_table[s, t]) for s in span for t in R.principal(x)}
    return gens


def local_factors(R):
    """Primitive orthogonal idempotents with their factor rings ``R*e``.

    Returned as a list of ``(idempotent label, factor ring)`` in ring order.
    """
    require_finite(R)
    if R.size == 1:
        return []
    prims = primitive_idempotents(R)
    return [(R.labels[e], corner_ring(R, e)) for e in prims]


def primitive_idempotents(R):
    """Index list of the primitive idempotents: refine {1} by splitting e into e*f, e*(1-f)."""
    if R.size == 1:
        return []
    idem = idempotent_indices(R)
    parts = [R.one_index]
    changed = True
    while changed:
        changed = False
        for i, e in enumerate(parts):
            for f in idem:
                ef = int(R.mul_table[e, f])
                if ef != 0 and ef != e:
                    rest = R.sub(e, ef)
                    parts[i:i + 1] = [ef, rest]
                    changed = True
                    break
            if changed:
                break
    return sorted(parts)


# ---------------------------------------------------------------------------
# Euclidean domains


class IntegerRingContext:
    is_finite = False
    name = "Z"
    descriptor = IntegerRing()
    zero = 0
    one = 1

    def __repr__(self):
        return "<IntegerRing Z>"

    def add(self, a, b):
        return a + b

    def sub(self, a, b):
        return a - b

    def mul(self, a, b):
        return a * b

    def neg(self, a):
        return -a

    def is_zero(self, a):
        return a == 0

    def is_unit(self, a):
        return a in (1, -1)

    def unit_inverse(self, a):
        return a

    def norm(self, a):
        return abs(a)

    def divmod(self, a, b):
        return divmod(a, b)

    def normalize(self, a):
        return abs(a)

    def unit_part(self, a):
        return -1 if a < 0 else 1

    def gcd(self, a, b):
        return math.gcd(a, b)

    def lcm(self, a, b):
        return abs(a * b) // math.gcd(a, b) if a and b else 0

    def factor(self, a):
        from sympy import factorint

        if a == 0:
            raise ValueError("cannot factor 0")
        return {int(p): int(k) for p, k in factorint(abs(a)).items()}

    def is_irreducible(self, a):
        from sympy import isprime

        return isprime(abs(a))

    def format(self, a):
        return str(a)

    def parse_element(self, text):
        from .parsing import parse_element

        return parse_element(IntegerRing(), text)

    def cardinality(self):
        return math.inf


INTEGERS = IntegerRingContext()


class PolyRingContext:
    """``F_p[x]``; elements are coefficient tuples (low degree first, no trailing zeros)."""

    is_finite = False

    def __init__(self, p, var="x"):
        self.p = p
        self.var = var
        self.name = "F%d[%s]" % (p, var)
        self.descriptor = PolyRing(p, var)
        self.zero = ()
        self.one = (1,)

    def __repr__(self):
        return "<PolyRing %s>" % self.name

    def __eq__(self, other):
        return isinstance(other, PolyRingContext) and other.p == self.p

    def __hash__(self):
        return hash(("polyring", self.p))

    def trim(self, coeffs):
        c = [int(x) % self.p for x in coeffs]
        while c and c[-1] == 0:
            c.pop()
        return tuple(c)

    def add(self, a, b):
        n = max(len(a), len(b))
        return self.trim([(a[i] if i < len(a) else 0) + (b[i] if i < len(b) else 0) for i in range(n)])

    def neg(self, a):
        return self.trim([-x for x in a])

    def sub(self, a, b):
        return self.add(a, self.neg(b))

    def mul(self, a, b):
        if not a or not b:
            return ()
        out = [0] * (len(a) + len(b) - 1)
        for i, x in enumerate(a):
            for j, y in enumerate(b):
                out[i + j] += x * y
        return self.trim(out)

    def is_zero(self, a):
        return not a

    def is_unit(self, a):
        return len(a) == 1

    def unit_inverse(self, a):
        return (pow(a[0], -1, self.p),)

    def norm(self, a):
        return len(a) - 1 if a else -1

    def divmod(self, a, b):
        if not b:
            raise ZeroDivisionError("division by zero polynomial")
        inv = pow(b[-1], -1, self.p)
        r = list(a)
        q = [0] * max(len(a) - len(b) + 1, 1)
        while len(r) >= len(b) and r:
            c = (r[-1] * inv) % self.p
            k = len(r) - len(b)
            q[k] = c
            for i, y in enumerate(b):
                r[i + k] = (r[i + k] - c * y) % self.p
            r = list(self.trim(r))
        return self.trim(q), self.trim(r)

    def normalize(self, a):
        if not a:
            return ()
        inv = pow(a[-1], -1, self.p)
        return self.trim([x * inv for x in a])

    def unit_part(self, a):
        return (a[-1],) if a else (1,)

    def gcd(self, a, b):
        while b:
            a, b = b, self.divmod(a, b)[1]
        return self.normalize(a)

    def lcm(self, a, b):
        if not a or not b:
            return ()
        return self.normalize(self.divmod(self.mul(a, b), self.gcd(a, b))[0])

    def _sympy(self, a):
        from sympy import Poly, symbols

        x = symbols("x")
        return Poly(list(reversed(a)), x, modulus=self.p)

    def factor(self, a):
        if not a:
            raise ValueError("cannot factor 0")
        _, facs = self._sympy(a).factor_list()
        out = {}
        for f, k in facs:
            coeffs = [int(c) % self.p for c in reversed(f.all_coeffs())]
            out[self.normalize(self.trim(coeffs))] = int(k)
        return out

    def is_irreducible(self, a):
        if len(a) < 2:
            return False
        return bool(self._sympy(a).is_irreducible)

    def format(self, a):
        from .parsing import format_poly

        return format_poly(ZMod(self.p), tuple(a), self.var)

    def parse_element(self, text):
        from .parsing import parse_element

        return parse_element(self.descriptor, text)

    def cardinality(self):
        return math.inf


# ---------------------------------------------------------------------------
# finite fields sugar


def smallest_irreducible(p, k):
    """The first monic irreducible of degree k over F_p.

    Candidates ``x^k + c_{k-1} x^{k-1} + ... + c_0`` are ordered by the integer
    ``sum c_i p^i``.  Degree 2 over F_2 gives ``x^2 + x + 1``.
    """
    R = PolyRingContext(p)
    for n in range(p ** k):
        coeffs = [(n // p ** i) % p for i in range(k)] + [1]
        if R.is_irreducible(tuple(coeffs)):
            return tuple(coeffs)
    raise ValueError("no irreducible of degree %d over F_%d" % (k, p))


def finite_field_descriptor(p, k):
    if k == 1:
        return ZMod(p)
    return PolyQuot(ZMod(p), smallest_irreducible(p, k))
