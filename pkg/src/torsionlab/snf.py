"""Smith normal form over Z and F_p[x], and modules over those PIDs."""

from __future__ import annotations

from dataclasses import dataclass

from .errors import NotFinite
from .ideals import Ideal
from .rings import INTEGERS


def _identity(R, n):
    return [[R.one if i == j else R.zero for j in range(n)] for i in range(n)]


def _row_op(R, M, dst, src, q):
    """row dst -= q * row src"""
    M[dst] = [R.sub(a, R.mul(q, b)) for a, b in zip(M[dst], M[src])]


def _col_op(R, M, dst, src, q):
    for row in M:
        row[dst] = R.sub(row[dst], R.mul(q, row[src]))


def smith_normal_form(A, ring=INTEGERS):
    """Return ``(U, S, V)`` with ``U A V = S`` diagonal and ``S[0][0] | S[1][1] | ...``.

    ``A`` is a list of rows over ``ring`` (Z or F_p[x]); diagonal entries are
    normalized (nonnegative over Z, monic over F_p[x]).
    """
    R = ring
    m = len(A)
    n = len(A[0]) if m else 0
    S = [list(row) for row in A]
    U = _identity(R, m)
    V = _identity(R, n)
    t = 0
    while t < min(m, n):
        pivot = _min_entry(R, S, t, t)
        if pivot is None:
            break
        _swap(S, U, V, t, *pivot)
        while True:
            p = S[t][t]
            clean = True
            for i in range(t + 1, m):
                if not R.is_zero(S[i][t]):
                    q = R.divmod(S[i][t], p)[0]
                    _row_op(R, S, i, t, q)
                    _row_op(R, U, i, t, q)
                    clean = clean and R.is_zero(S[i][t])
            for j in range(t + 1, n):
                if not R.is_zero(S[t][j]):
                    q = R.divmod(S[t][j], p)[0]
                    _col_op(R, S, j, t, q)
                    _col_op(R, V, j, t, q)
                    clean = clean and R.is_zero(S[t][j])
            if not clean:
                pivot = _min_in_cross(R, S, t)
                _swap(S, U, V, t, *pivot)
                continue
            bad = next(((i, j) for i in range(t + 1, m) for j in range(t + 1, n)
                        if not R.is_zero(R.divmod(S[i][j], p)[1])), None)
            if bad is None:
                break
            # fold the offending row into row t and retry
            S[t] = [R.add(a, b) for a, b in zip(S[t], S[bad[0]])]
            U[t] = [R.add(a, b) for a, b in zip(U[t], U[bad[0]])]
        u = R.unit_part(S[t][t])
        if u != R.one:
            inv = R.unit_inverse(u)
            S[t] = [R.mul(inv, a) for a in S[t]]
            U[t] = [R.mul(inv, a) for a in U[t]]
        t += 1
    return U, S, V


def _min_entry(R, S, r0, c0):
    best = None
    for i in range(r0, len(S)):
        for j in range(c0, len(S[0])):
            if not R.is_zero(S[i][j]) and (best is None or R.norm(S[i][j]) < R.norm(S[best[0]][best[1]])):
                best = (i, j)
    return best


def _min_in_cross(R, S, t):
    cells = [(i, t) for i in range(t, len(S))] + [(t, j) for j in range(t + 1, len(S[0]))]
    cells = [c for c in cells if not R.is_zero(S[c[0]][c[1]])]
    return min(cells, key=lambda c: R.norm(S[c[0]][c[1]]))


def _swap(S, U, V, t, i, j):
    if i != t:
        S[t], S[i] = S[i], S[t]
        U[t], U[i] = U[i], U[t]
    if j != t:
        for M in (S, V):
            for row in M:
                row[t], row[j] = row[j], row[t]


def matmul(R, A, B):
    inner = len(B)
    cols = len(B[0]) if B else 0
    out = []
    for row in A:
        new = []
        for j in range(cols):
            acc = R.zero
            for k in range(inner):
                acc = R.add(acc, R.mul(row[k], B[k][j]))
            new.append(acc)
        out.append(new)
    return out


def diagonal(R, S):
    return [S[i][i] for i in range(min(len(S), len(S[0]) if S else 0))]


def determinant(R, A):
    """Cofactor expansion (the matrices here are at most a few rows)."""
    n = len(A)
    if n == 0:
        return R.one
    if n == 1:
        return A[0][0]
    total = R.zero
    for j in range(n):
        if R.is_zero(A[0][j]):
            continue
        minor = [row[:j] + row[j + 1:] for row in A[1:]]
        term = R.mul(A[0][j], determinant(R, minor))
        total = R.add(total, term) if j % 2 == 0 else R.sub(total, term)
    return total


def is_invertible(R, A):
    return R.is_unit(determinant(R, A))


# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class PIDModule:
    """``R/(d1) ⊕ ... ⊕ R/(dk) ⊕ R^rank`` with nonunit ``d1 | d2 | ...``."""

    ring: object
    invariant_factors: tuple
    rank: int = 0

    @classmethod
    def from_presentation(cls, R, relations):
        """Cokernel of ``relations`` (list of g rows; columns are relators)."""
        g = len(relations)
        if g == 0:
            return cls(R, (), 0)
        if not relations[0]:
            return cls(R, (), g)
        _, S, _ = smith_normal_form(relations, R)
        diag = diagonal(R, S)
        nonzero = [d for d in diag if not R.is_zero(d)]
        factors = tuple(R.normalize(d) for d in nonzero if not R.is_unit(d))
        return cls(R, factors, g - len(nonzero))

    @classmethod
    def cyclic(cls, R, I):
        if I.is_zero():
            return cls(R, (), 1)
        if I.is_unit_ideal():
            return cls(R, (), 0)
        return cls(R, (I.generator,), 0)

    @classmethod
    def from_cyclic_orders(cls, R, orders):
        """Direct sum of ``R/(o)`` (``o = 0`` gives a free summand)."""
        rel = [[R.zero] * len(orders) for _ in orders]
        for i, o in enumerate(orders):
            rel[i][i] = o
        return cls.from_presentation(R, rel)

    def is_zero(self):
        return not self.invariant_factors and self.rank == 0

    def is_finite(self):
        return self.rank == 0

    def cardinality(self):
        if self.rank:
            raise NotFinite("module has free rank %d" % self.rank)
        R = self.ring
        total = 1
        for d in self.invariant_factors:
            total *= abs(d) if R is INTEGERS else R.p ** R.norm(d)
        return total

    def cyclic_orders(self):
        return list(self.invariant_factors) + [self.ring.zero] * self.rank

    def direct_sum(self, other):
        return PIDModule.from_cyclic_orders(self.ring, self.cyclic_orders() + other.cyclic_orders())

    def format(self):
        R = self.ring
        parts = ["R/(%s)" % R.format(d) for d in self.invariant_factors]
        if self.rank:
            parts.append("R^%d" % self.rank if self.rank > 1 else "R")
        return " (+) ".join(parts) or "0"

    def to_json(self):
        R = self.ring
        return {"ring": R.name, "invariant_factors": [R.format(d) for d in self.invariant_factors],
                "rank": self.rank}

    def __repr__(self):
        return "PIDModule(%s over %s)" % (self.format(), self.ring.name)


def _coprime(R, a, b):
    return R.is_unit(R.gcd(a, b))


def pid_is_divisible(M, I):
    R = M.ring
    g = I.generator
    if R.is_unit(g):
        return True
    if R.is_zero(g):
        return M.is_zero()
    return M.rank == 0 and all(_coprime(R, g, d) for d in M.invariant_factors)


def _support_part(R, d, support):
    """The factor of ``d`` made of primes in ``support``."""
    out = R.one
    for p, k in R.factor(d).items():
        if support.contains(Ideal(R, [p])):
            for _ in range(k):
                out = R.mul(out, p)
    return R.normalize(out)


def pid_torsion_part(M, G):
    """Torsion part of ``M`` for a filter over Z or F_p[x]."""
    R = M.ring
    support = G.support
    if support is None:
        from .filters import generate_filter

        support = generate_filter(R, G.basis).support
    if support.generic:
        return M
    orders = [_support_part(R, d, support) for d in M.invariant_factors]
    return PIDModule.from_cyclic_orders(R, orders)


def _sigma_diagonal(R, sigma):
    """Diagonal of the SNF of ``sigma`` padded with zeros to the column count."""
    sigma = getattr(sigma, "matrix", sigma)
    b = len(sigma)
    a = len(sigma[0]) if b else 0
    if a == 0:
        return []
    if b == 0:
        return [R.zero] * a
    _, S, _ = smith_normal_form(sigma, R)
    diag = diagonal(R, S)
    return diag + [R.zero] * (a - len(diag))


def pid_in_D_sigma(sigma, M):
    """``Hom(sigma, M)`` surjective, for ``sigma`` a ``b x a`` matrix over the PID."""
    R = M.ring
    return all(pid_is_divisible(M, Ideal(R, [s])) for s in _sigma_diagonal(R, sigma))


def pid_in_T_sigma(sigma, X):
    """``sigma ⊗ X`` injective."""
    R = X.ring
    for s in _sigma_diagonal(R, sigma):
        if R.is_zero(s):
            if not X.is_zero():
                return False
        elif not all(_coprime(R, s, d) for d in X.invariant_factors):
            return False
    return True
