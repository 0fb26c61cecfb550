"""Text syntax for rings, elements, ideals and module literals.

Ring expressions::

    ring    := factor ('*' factor)*
    factor  := atom postfix*
    atom    := 'Z' ['/' INT] | 'F' INT ['^' INT] | '(' ring ')'
    postfix := '[' VAR ']' ['/' '(' poly ')']

``F<q>`` with ``q = p^k`` is the field ``F_p[x]/(f)`` for the first monic
irreducible ``f`` of degree ``k`` (see ``rings.smallest_irreducible``); a
quotient binds tighter than ``*``.  ``F<p>[x]`` without a quotient is the
polynomial ring.

Element literals: integers for ``Z/n`` and ``Z``; polynomials such as
``x^2+2*x+1`` or ``(y+1)*x`` over a polynomial quotient; ``<a, b>`` for
products.
"""

from __future__ import annotations

import re

from .errors import ParseError
from .rings import (
    IntegerRing,
    PolyQuot,
    PolyRing,
    Product,
    ZMod,
    finite_field_descriptor,
)

_TOKEN = re.compile(r"\s*(?:(\d+)|([A-Za-z_]+)|(\(\+\))|(.))")


def tokenize(text):
    tokens = []
    pos = 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if m is None:
            break
        if m.end() == pos:
            break
        start = m.start(m.lastindex) if m.lastindex else pos
        if m.group(1) is not None:
            tokens.append(("INT", int(m.group(1)), start))
        elif m.group(2) is not None:
            tokens.append(("NAME", m.group(2), start))
        elif m.group(3) is not None:
            tokens.append(("OP", "(+)", start))
        elif m.group(4) is not None:
            if not m.group(4).isspace():
                tokens.append(("OP", m.group(4), start))
        pos = m.end()
    tokens.append(("END", None, len(text)))
    return tokens


class _Parser:
    def __init__(self, text):
        self.text = text
        self.tokens = tokenize(text)
        self.i = 0

    @property
    def tok(self):
        return self.tokens[self.i]

    def error(self, msg, expected=()):
        raise ParseError(msg, self.text, self.tok[2], expected)

    def at(self, kind, value=None):
        t = self.tok
        return t[0] == kind and (value is None or t[1] == value)

    def accept(self, kind, value=None):
        if self.at(kind, value):
            t = self.tok
            self.i += 1
            return t
        return None

    def expect(self, kind, value=None):
        t = self.accept(kind, value)
        if t is None:
            self.error("unexpected %s" % (self.tok[1] if self.tok[1] is not None else "end of input"),
                       [value if value is not None else kind])
        return t

    def end(self):
        if not self.at("END"):
            self.error("trailing input %r" % (self.tok[1],), ["end of input"])

    # rings -------------------------------------------------------------
    def ring(self):
        factors = [self.factor()]
        while self.accept("OP", "*"):
            factors.append(self.factor())
        if len(factors) == 1:
            return factors[0]
        return Product(tuple(factors))

    def factor(self):
        desc = self.atom()
        while self.at("OP", "["):
            self.expect("OP", "[")
            var = self.expect("NAME")[1]
            self.expect("OP", "]")
            if self.accept("OP", "/"):
                self.expect("OP", "(")
                coeffs = self.poly(desc, var)
                self.expect("OP", ")")
                desc = PolyQuot(desc, coeffs, var)
            else:
                if isinstance(desc, ZMod) and _is_prime(desc.n):
                    desc = PolyRing(desc.n, var)
                else:
                    self.error("polynomial rings are only supported over prime fields",
                               ["'/' quotient"])
        return desc

    def atom(self):
        if self.accept("OP", "("):
            desc = self.ring()
            self.expect("OP", ")")
            return desc
        t = self.accept("NAME")
        if t is None:
            self.error("expected a ring", ["Z", "F", "("])
        if t[1] == "Z":
            if self.accept("OP", "/"):
                n = self.expect("INT")[1]
                if n < 1:
                    self.error("Z/n needs n >= 1")
                return ZMod(n)
            return IntegerRing()
        if t[1] == "F":
            q = self.expect("INT")[1]
            k = 1
            if self.accept("OP", "^"):
                k = self.expect("INT")[1]
            p, e = _prime_power(q)
            if p is None:
                self.i -= 1
                self.error("F<q> needs a prime power q")
            return finite_field_descriptor(p, e * k)
        self.i -= 1
        self.error("unknown ring %r" % t[1], ["Z", "F", "("])

    # polynomials ------------------------------------------------------
    def poly(self, base, var):
        """Polynomial over ``base`` in ``var``; returns coefficient labels, low degree first."""
        ops = _base_ops(base)
        coeffs = {}
        sign = -1 if self.accept("OP", "-") else 1
        if sign == 1:
            self.accept("OP", "+")
        while True:
            c, deg = self.term(base, var, ops)
            if sign < 0:
                c = ops.neg(c)
            coeffs[deg] = ops.add(coeffs.get(deg, ops.zero), c)
            if self.accept("OP", "+"):
                sign = 1
            elif self.accept("OP", "-"):
                sign = -1
            else:
                break
        top = max(coeffs) if coeffs else 0
        out = [coeffs.get(d, ops.zero) for d in range(top + 1)]
        while len(out) > 1 and out[-1] == ops.zero:
            out.pop()
        return tuple(out)

    def term(self, base, var, ops):
        coef = None
        if self.at("INT"):
            coef = ops.from_int(self.expect("INT")[1])
        elif self.at("OP", "(") or self.at("OP", "<"):
            coef = self.coefficient(base)
        if coef is not None and not self.accept("OP", "*"):
            return coef, 0
        if coef is None:
            coef = ops.one
        name = self.expect("NAME", var)
        deg = 1
        if self.accept("OP", "^"):
            deg = self.expect("INT")[1]
        del name
        return coef, deg

    def coefficient(self, base):
        if self.accept("OP", "("):
            c = self.element(base)
            self.expect("OP", ")")
            return c
        return self.element(base)

    # elements ---------------------------------------------------------
    def element(self, desc):
        if isinstance(desc, ZMod):
            neg = bool(self.accept("OP", "-"))
            v = self.expect("INT")[1]
            return (-v if neg else v) % desc.n
        if isinstance(desc, IntegerRing):
            neg = bool(self.accept("OP", "-"))
            v = self.expect("INT")[1]
            return -v if neg else v
        if isinstance(desc, Product):
            self.expect("OP", "<")
            parts = [self.element(desc.factors[0])]
            for f in desc.factors[1:]:
                self.expect("OP", ",")
                parts.append(self.element(f))
            self.expect("OP", ">")
            return tuple(parts)
        if isinstance(desc, PolyRing):
            coeffs = self.poly(ZMod(desc.p), desc.var)
            return tuple(c for c in coeffs) if coeffs != (0,) else ()
        if isinstance(desc, PolyQuot):
            coeffs = self.poly(desc.base, desc.var)
            return _reduce_mod(desc, coeffs)
        raise TypeError(desc)


class _BaseOps:
    def __init__(self, ring):
        self.ring = ring
        self.zero = ring.zero
        self.one = ring.one

    def add(self, a, b):
        return self.ring.add(a, b)

    def neg(self, a):
        return self.ring.neg(a)

    def from_int(self, k):
        R = self.ring
        i = R.times(k, R.one_index)
        return R.labels[i]


_BASE_CACHE = {}


def _base_ops(desc):
    if desc not in _BASE_CACHE:
        from .rings import make_ring

        _BASE_CACHE[desc] = _BaseOps(make_ring(desc))
    return _BASE_CACHE[desc]


def _reduce_mod(desc, coeffs):
    """Reduce a coefficient tuple modulo the (unit-leading) modulus of ``desc``."""
    ops = _base_ops(desc.base)
    R = ops.ring
    d = len(desc.modulus) - 1
    mod = [R.index(c) for c in desc.modulus]
    inv = R.inverse(mod[-1])
    monic = [int(R.mul_table[inv, c]) for c in mod]
    c = [R.index(x) for x in coeffs]
    for top in range(len(c) - 1, d - 1, -1):
        lead = c[top]
        if lead == 0:
            continue
        for k in range(d + 1):
            c[top - d + k] = R.sub(c[top - d + k], int(R.mul_table[lead, monic[k]]))
    c = c[:d] + [0] * max(0, d - len(c))
    return tuple(R.labels[x] for x in c)


def _is_prime(n):
    from sympy import isprime

    return isprime(n)


def _prime_power(q):
    from sympy import factorint

    if q < 2:
        return None, None
    f = factorint(q)
    if len(f) != 1:
        return None, None
    (p, e), = f.items()
    return int(p), int(e)


# ---------------------------------------------------------------------------
# public entry points


def parse_ring_expr(text):
    """Parse a ring expression such as ``Z/12``, ``F2[x]/(x^2+x+1)`` or ``Z/4 * F3``."""
    p = _Parser(text)
    desc = p.ring()
    p.end()
    return desc


def parse_element(desc, text):
    p = _Parser(text)
    value = p.element(desc)
    p.end()
    return value


def format_poly(base, coeffs, var):
    """Format a coefficient tuple (low degree first, base labels)."""
    if isinstance(base, ZMod):
        fmt_c = str
        zero, one = 0, 1 % base.n
    else:
        ops = _base_ops(base)
        fmt_c = ops.ring.format
        zero, one = ops.zero, ops.one
    terms = []
    for deg in range(len(coeffs) - 1, -1, -1):
        c = coeffs[deg]
        if c == zero:
            continue
        text = fmt_c(c)
        simple = re.fullmatch(r"\d+", text) is not None
        if deg == 0:
            terms.append(text if simple else "(%s)" % text)
            continue
        mono = var if deg == 1 else "%s^%d" % (var, deg)
        if c == one:
            terms.append(mono)
        else:
            terms.append("%s*%s" % (text if simple else "(%s)" % text, mono))
    return "+".join(terms) if terms else "0"


def split_top_level(text, sep):
    parts, depth, cur = [], 0, []
    for ch in text:
        if ch in "(<[":
            depth += 1
        elif ch in ")>]":
            depth -= 1
        if ch == sep and depth == 0:
            parts.append("".join(cur))
            cur = []
        else:
            cur.append(ch)
    parts.append("".join(cur))
    return [p.strip() for p in parts]


def parse_ideal_gens(ring, text):
    """``(g1, g2, ...)`` -> list of element labels."""
    text = text.strip()
    if not (text.startswith("(") and text.endswith(")")):
        raise ParseError("an ideal is written (g1, g2, ...)", text, 0, ["("])
    inner = text[1:-1].strip()
    if not inner:
        return []
    return [ring.parse_element(g) for g in split_top_level(inner, ",")]


def parse_seeds(ring, text):
    """``(2);(3)`` -> list of generator lists."""
    if not text or not text.strip():
        return []
    return [parse_ideal_gens(ring, part) for part in text.split(";") if part.strip()]


def parse_gen_lists(ring, text):
    """``(2):[2,6];(4):[4]`` or ``[2,6];[4]`` -> list of generator lists."""
    out = []
    if not text:
        return out
    for part in text.split(";"):
        part = part.strip()
        if not part:
            continue
        if ":" in part:
            part = part.split(":", 1)[1].strip()
        if not (part.startswith("[") and part.endswith("]")):
            raise ParseError("generator lists are written [g1, g2, ...]", part, 0, ["["])
        inner = part[1:-1].strip()
        out.append([ring.parse_element(g) for g in split_top_level(inner, ",")] if inner else [])
    return out


def parse_seed_spec(ring, text):
    """``(2):[2,6];(4)`` -> list of ``(ideal generators, chosen generator list)``.

    A bare ``(..)`` uses the ideal's own generators as the list; a bare
    ``[..]`` takes the ideal generated by the list.
    """
    out = []
    for part in split_top_level(text or "", ";"):
        if not part:
            continue
        ideal_txt, _, list_txt = part.partition(":")
        ideal_txt = ideal_txt.strip()
        if ideal_txt.startswith("["):
            gens = parse_gen_lists(ring, ideal_txt)[0]
            out.append((gens, gens))
            continue
        ideal = parse_ideal_gens(ring, ideal_txt)
        gens = parse_gen_lists(ring, list_txt)[0] if list_txt.strip() else (ideal or [ring.zero])
        out.append((ideal, gens))
    return out


def parse_module_literal(ring, text):
    """``R/(g1,...) (+) R/(h,...) (+) R^k`` -> list of summands.

    Each summand is a generator list of the ideal J in a cyclic ``R/J``
    (``R`` alone is ``R/(0)``, ``R^k`` expands to ``k`` copies).
    """
    summands = []
    text = text.strip()
    if text in ("0", ""):
        return summands
    for part in text.split("(+)"):
        part = part.strip().replace(" ", "")
        if part == "R":
            summands.append([])
        elif part.startswith("R^"):
            k = int(part[2:])
            summands.extend([] for _ in range(k))
        elif part.startswith("R/"):
            summands.append(parse_ideal_gens(ring, part[2:]))
        elif part == "0":
            continue
        else:
            raise ParseError("unknown module summand %r" % part, text, text.find(part),
                             ["R", "R^k", "R/(...)"])
    return summands
