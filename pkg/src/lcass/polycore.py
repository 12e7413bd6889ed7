"""Exact coefficient fields, monomial orders and multivariate polynomials.

Polynomials are sparse: a dict from dense exponent tuples to nonzero
coefficients.  Coefficients over a prime field are plain ints in ``[0, p)``;
rational coefficients are reduced :class:`fractions.Fraction` values.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable

from .errors import ContextMismatch, MalformedInput

DEFAULT_CHARACTERISTIC = 32003

# exponent fields are packed into ints by the order keys and the GB engine
EXP_BITS = 16
EXP_BASE = 1 << EXP_BITS
EXP_LIMIT = 1 << (EXP_BITS - 1)


def _is_prime(n):
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    f = 3
    while f * f <= n:
        if n % f == 0:
            return False
        f += 2
    return True


@dataclass(frozen=True)
class CoeffField:
    """The prime field F_p (``characteristic=p``) or the rationals (``0``)."""

    characteristic: int = DEFAULT_CHARACTERISTIC

    def __post_init__(self):
        c = self.characteristic
        if c != 0 and not _is_prime(c):
            raise MalformedInput(f"characteristic must be 0 or a prime, got {c}")

    @property
    def kind(self):
        return "rationals" if self.characteristic == 0 else "prime-field"

    @property
    def p(self):
        return self.characteristic

    def __call__(self, x):
        """Convert an int, Fraction or numeric string into a canonical coefficient."""
        p = self.characteristic
        if isinstance(x, str):
            x = Fraction(x)
        if p:
            if isinstance(x, Fraction):
                if x.denominator % p == 0:
                    raise ZeroDivisionError(f"{x} is not defined modulo {p}")
                return x.numerator * pow(x.denominator, -1, p) % p
            return int(x) % p
        x = Fraction(x)
        return x

    def inv(self, a):
        if a == 0:
            raise ZeroDivisionError("inverse of zero")
        if self.characteristic:
            return pow(a, -1, self.characteristic)
        return 1 / Fraction(a)

    def neg(self, a):
        return (-a) % self.characteristic if self.characteristic else -a

    def display(self, a):
        """Signed representative used in text output."""
        p = self.characteristic
        if p and a > p // 2:
            return a - p
        return a

    def __str__(self):
        return "qq" if self.characteristic == 0 else f"zp({self.characteristic})"


QQ = CoeffField(0)


def _grevlex_key(exp):
    n = len(exp)
    k = sum(exp)
    for i in range(n - 1, -1, -1):
        k = k * EXP_BASE + (EXP_LIMIT - exp[i])
    return k


@dataclass(frozen=True)
class MonomialOrder:
    """``grevlex``, ``lex``, ``elim`` or ``lexblock``.

    ``elim`` compares the first ``block`` variables by grevlex and breaks ties
    by grevlex on the rest; ``lexblock`` uses lex on the first block instead.
    """

    kind: str = "grevlex"
    block: int = 0

    def __post_init__(self):
        if self.kind not in ("grevlex", "lex", "elim", "lexblock"):
            raise MalformedInput(f"unknown monomial order {self.kind!r}")

    def key(self, exp):
        """Integer sort key; larger key means larger monomial."""
        if self.kind == "grevlex":
            return _grevlex_key(exp)
        if self.kind == "lex":
            k = 0
            for e in exp:
                k = k * EXP_BASE + e
            return k
        b = self.block
        rest = exp[b:]
        if self.kind == "lexblock":
            head = 0
            for e in exp[:b]:
                head = head * EXP_BASE + e
        else:
            head = _grevlex_key(exp[:b])
        return head * EXP_BASE ** (len(rest) + 1) + _grevlex_key(rest)

    def __str__(self):
        return f"{self.kind}({self.block})" if self.kind in ("elim", "lexblock") else self.kind


GREVLEX = MonomialOrder("grevlex")
LEX = MonomialOrder("lex")


def monomial_compare(a, b, order=GREVLEX):
    """Return -1, 0 or 1 as monomial ``a`` is smaller, equal or larger than ``b``."""
    if len(a) != len(b):
        raise MalformedInput("exponent vectors of different length")
    ka, kb = order.key(tuple(a)), order.key(tuple(b))
    return (ka > kb) - (ka < kb)


_RINGS = {}


class Ring:
    """Polynomial ring over an exact field, read as the local ring at the origin.

    Rings are interned: equal (field, variables, order) triples give the same
    object, which lets per-ring caches be shared.
    """

    def __new__(cls, field=None, variables=("x",), order=GREVLEX):
        if field is None:
            field = CoeffField()
        elif isinstance(field, int):
            field = CoeffField(field)
        if isinstance(variables, str):
            variables = [v for v in re.split(r"[,\s]+", variables) if v]
        variables = tuple(variables)
        if isinstance(order, str):
            order = MonomialOrder(order)
        if not variables:
            raise MalformedInput("a ring needs at least one variable")
        if len(set(variables)) != len(variables):
            raise MalformedInput(f"duplicate variable names in {variables}")
        for v in variables:
            if not re.fullmatch(r"[A-Za-z_][A-Za-z_0-9]*", v):
                raise MalformedInput(f"bad variable name {v!r}")
        key = (field, variables, order)
        ring = _RINGS.get(key)
        if ring is None:
            ring = super().__new__(cls)
            ring.field = field
            ring.variables = variables
            ring.order = order
            ring.nvars = len(variables)
            ring._index = {v: i for i, v in enumerate(variables)}
            ring._cache = {}
            _RINGS[key] = ring
        return ring

    def __reduce__(self):
        return (Ring, (self.field, self.variables, self.order))

    def __repr__(self):
        return f"Ring({self.field}[{','.join(self.variables)}], {self.order})"

    def __str__(self):
        return f"{self.field}[{','.join(self.variables)}]"

    # construction helpers
    def zero(self):
        return Polynomial(self, {})

    def one(self):
        return self.const(1)

    def const(self, c):
        c = self.field(c)
        return Polynomial(self, {(0,) * self.nvars: c} if c else {})

    def var(self, name):
        if isinstance(name, int):
            i = name
        else:
            try:
                i = self._index[name]
            except KeyError:
                raise MalformedInput(f"{name!r} is not a variable of {self}") from None
        e = [0] * self.nvars
        e[i] = 1
        return Polynomial(self, {tuple(e): self.field(1)})

    def gens(self):
        return [self.var(i) for i in range(self.nvars)]

    def monomial(self, exp, coeff=1):
        return normalize(self, [(tuple(exp), coeff)])

    def index(self, name):
        return self._index[name]

    def __call__(self, x):
        """Parse text, or coerce an int/Fraction/Polynomial, into this ring."""
        if isinstance(x, Polynomial):
            return x if x.ring is self else x.to_ring(self)
        if isinstance(x, str):
            return parse_poly(self, x)
        return self.const(x)

    def with_variables(self, variables, order=GREVLEX):
        return Ring(self.field, variables, order)

    def extend(self, names, front=True, order=None):
        """Ring with extra variables placed in front (default) or at the back."""
        names = tuple(names)
        vs = names + self.variables if front else self.variables + names
        if order is None:
            order = MonomialOrder("elim", len(names)) if front else self.order
        return Ring(self.field, vs, order)


class Polynomial:
    """An immutable sparse polynomial attached to a :class:`Ring`."""

    __slots__ = ("ring", "_d", "_hash")

    def __init__(self, ring, d):
        self.ring = ring
        self._d = d
        self._hash = None

    # --- inspection -----------------------------------------------------
    @property
    def terms(self):
        """``(exponent, coefficient)`` pairs in strictly descending order."""
        key = self.ring.order.key
        return sorted(self._d.items(), key=lambda t: key(t[0]), reverse=True)

    def items(self):
        return self._d.items()

    def is_zero(self):
        return not self._d

    def __bool__(self):
        return bool(self._d)

    def __len__(self):
        return len(self._d)

    def lm(self):
        if not self._d:
            raise ValueError("zero polynomial has no leading monomial")
        return max(self._d, key=self.ring.order.key)

    def lc(self):
        return self._d[self.lm()]

    def lt(self):
        m = self.lm()
        return m, self._d[m]

    def is_constant(self):
        return all(not any(e) for e in self._d)

    def constant_term(self):
        return self._d.get((0,) * self.ring.nvars, 0)

    def is_monomial(self):
        return len(self._d) == 1

    def total_degree(self):
        return max((sum(e) for e in self._d), default=-1)

    def degree(self, var):
        i = var if isinstance(var, int) else self.ring.index(var)
        return max((e[i] for e in self._d), default=-1)

    def support_vars(self):
        """Indices of variables that occur."""
        s = set()
        for e in self._d:
            s.update(i for i, a in enumerate(e) if a)
        return sorted(s)

    def is_homogeneous(self):
        return len({sum(e) for e in self._d}) <= 1

    # --- arithmetic ----------------------------------------------------
    def _coerce(self, other):
        if isinstance(other, Polynomial):
            if other.ring is not self.ring:
                raise ContextMismatch(f"{self.ring} vs {other.ring}")
            return other
        if isinstance(other, (int, Fraction)):
            return self.ring.const(other)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return poly_arith("add", self, other)

    __radd__ = __add__

    def __neg__(self):
        F = self.ring.field
        return Polynomial(self.ring, {e: F.neg(c) for e, c in self._d.items()})

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return poly_arith("add", self, -other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return poly_arith("scalar-mul", self, other)
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return poly_arith("mul", self, other)

    __rmul__ = __mul__

    def __pow__(self, n):
        if not isinstance(n, int) or n < 0:
            raise MalformedInput("polynomial powers need a non-negative int")
        result = self.ring.one()
        base = self
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = self.ring.const(other)
        if not isinstance(other, Polynomial):
            return NotImplemented
        return self.ring is other.ring and self._d == other._d

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((id(self.ring), frozenset(self._d.items())))
        return self._hash

    def monic(self):
        if not self._d:
            return self
        return poly_arith("scalar-mul", self, self.ring.field.inv(self.lc()))

    def mul_term(self, exp, c=1):
        p = self.ring.field.p
        d = {}
        for e, v in self._d.items():
            w = v * c % p if p else v * c
            if w:
                d[tuple(a + b for a, b in zip(e, exp))] = w
        return Polynomial(self.ring, d)

    def subs(self, mapping):
        """Substitute polynomials (same ring) for variables given by name."""
        R = self.ring
        images = [R.var(i) for i in range(R.nvars)]
        for name, val in mapping.items():
            images[R.index(name)] = R(val)
        return self.compose(images)

    def compose(self, images):
        """Evaluate at a list of polynomials (one per variable); they may live in another ring."""
        target = images[0].ring if images else self.ring
        out = target.zero()
        powers = [dict() for _ in images]
        for e, c in self._d.items():
            t = target.const(c)
            for i, a in enumerate(e):
                if a:
                    pw = powers[i].get(a)
                    if pw is None:
                        pw = images[i] ** a
                        powers[i][a] = pw
                    t = t * pw
            out = out + t
        return out

    def to_ring(self, ring):
        """Re-express in a ring whose variables include all variables that occur here."""
        if ring is self.ring:
            return self
        if ring.field != self.ring.field:
            raise ContextMismatch("rings over different fields")
        src = self.ring.variables
        pos = []
        for i, v in enumerate(src):
            pos.append(ring._index.get(v))
        d = {}
        n = ring.nvars
        for e, c in self._d.items():
            ne = [0] * n
            for i, a in enumerate(e):
                if a:
                    j = pos[i]
                    if j is None:
                        raise ContextMismatch(f"variable {src[i]} missing from {ring}")
                    ne[j] = a
            d[tuple(ne)] = c
        return Polynomial(ring, d)

    def derivative(self, var):
        i = var if isinstance(var, int) else self.ring.index(var)
        F = self.ring.field
        d = {}
        for e, c in self._d.items():
            if e[i]:
                w = F(c * e[i])
                if w:
                    ne = list(e)
                    ne[i] -= 1
                    d[tuple(ne)] = w
        return Polynomial(self.ring, d)

    def __str__(self):
        return format_poly(self)

    def __repr__(self):
        return f"Polynomial({format_poly(self)!r})"


def normalize(ring, raw_terms: Iterable):
    """Canonical polynomial from ``(exponent, coeff)`` pairs; merges duplicates, drops zeros."""
    F = ring.field
    p = F.p
    d = {}
    n = ring.nvars
    for e, c in raw_terms:
        e = tuple(int(a) for a in e)
        if len(e) != n:
            raise MalformedInput(f"exponent vector {e} has length {len(e)}, ring has {n} variables")
        if any(a < 0 for a in e):
            raise MalformedInput(f"negative exponent in {e}")
        if any(a >= EXP_LIMIT for a in e):
            raise MalformedInput(f"exponent too large in {e}")
        c = F(c)
        w = d.get(e, 0) + c
        if p:
            w %= p
        if w:
            d[e] = w
        else:
            d.pop(e, None)
    return Polynomial(ring, d)


def poly_arith(op, f, g):
    """``op`` in ``add``, ``mul``, ``scalar-mul``; ``g`` is a scalar for ``scalar-mul``."""
    R = f.ring
    p = R.field.p
    if op == "scalar-mul":
        c = R.field(g)
        if not c:
            return R.zero()
        if p:
            return Polynomial(R, {e: v * c % p for e, v in f._d.items()})
        return Polynomial(R, {e: v * c for e, v in f._d.items()})
    if g.ring is not R:
        raise ContextMismatch(f"{R} vs {g.ring}")
    if op == "add":
        d = dict(f._d)
        for e, v in g._d.items():
            w = d.get(e, 0) + v
            if p:
                w %= p
            if w:
                d[e] = w
            else:
                d.pop(e, None)
        return Polynomial(R, d)
    if op == "mul":
        d = {}
        for e1, v1 in f._d.items():
            for e2, v2 in g._d.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                d[e] = d.get(e, 0) + v1 * v2
        if p:
            d = {e: v % p for e, v in d.items() if v % p}
        else:
            d = {e: v for e, v in d.items() if v}
        return Polynomial(R, d)
    raise MalformedInput(f"unknown operation {op!r}")


def exact_quotient(f, g):
    """Return ``f / g`` if ``g`` divides ``f`` exactly, else ``None``."""
    if g.is_zero():
        raise ZeroDivisionError("division by the zero polynomial")
    R = f.ring
    F = R.field
    key = R.order.key
    gm, gc = g.lt()
    ginv = F.inv(gc)
    rem = dict(f._d)
    q = {}
    p = F.p
    while rem:
        m = max(rem, key=key)
        c = rem[m]
        if any(a < b for a, b in zip(m, gm)):
            return None
        s = tuple(a - b for a, b in zip(m, gm))
        qc = c * ginv % p if p else c * ginv
        q[s] = qc
        for e, v in g._d.items():
            u = tuple(a + b for a, b in zip(e, s))
            w = rem.get(u, 0) - qc * v
            if p:
                w %= p
            if w:
                rem[u] = w
            else:
                rem.pop(u, None)
    return Polynomial(R, q)


# --- text form --------------------------------------------------------------

def _format_monomial(ring, e):
    parts = []
    for v, a in zip(ring.variables, e):
        if a == 1:
            parts.append(v)
        elif a > 1:
            parts.append(f"{v}^{a}")
    return "*".join(parts)


def format_poly(f):
    if f.is_zero():
        return "0"
    F = f.ring.field
    out = []
    for e, c in f.terms:
        c = F.display(c)
        neg = c < 0
        a = -c if neg else c
        mono = _format_monomial(f.ring, e)
        if not mono:
            body = str(a)
        elif a == 1:
            body = mono
        else:
            body = f"{a}*{mono}"
        if not out:
            out.append(("-" if neg else "") + body)
        else:
            out.append((" - " if neg else " + ") + body)
    return "".join(out)


_TOKEN = re.compile(r"\s*(?:(\d+)|([A-Za-z_][A-Za-z_0-9]*)|(\S))")


def _tokenize(text):
    toks = []
    pos = 0
    text = text.rstrip()
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m:
            break
        num, name, sym = m.groups()
        if num is not None:
            toks.append(("num", int(num), m.start(1)))
        elif name is not None:
            toks.append(("name", name, m.start(2)))
        else:
            toks.append(("sym", sym, m.start(3)))
        pos = m.end()
    return toks


class _PolyParser:
    def __init__(self, ring, text):
        self.ring = ring
        self.text = text
        self.toks = _tokenize(text)
        self.i = 0

    def peek(self):
        return self.toks[self.i] if self.i < len(self.toks) else (None, None, len(self.text))

    def take(self):
        t = self.peek()
        self.i += 1
        return t

    def fail(self, msg):
        _, _, pos = self.peek()
        raise MalformedInput(f"{msg} at column {pos + 1} in {self.text!r}")

    def parse(self):
        if not self.toks:
            self.fail("empty polynomial")
        f = self.expr()
        if self.i != len(self.toks):
            self.fail("unexpected token")
        return f

    def expr(self):
        sign = 1
        kind, val, _ = self.peek()
        if kind == "sym" and val in "+-":
            self.take()
            sign = -1 if val == "-" else 1
        f = self.term()
        if sign < 0:
            f = -f
        while True:
            kind, val, _ = self.peek()
            if kind == "sym" and val in "+-":
                self.take()
                g = self.term()
                f = f + g if val == "+" else f - g
            else:
                return f

    def term(self):
        f = self.factor()
        while True:
            kind, val, _ = self.peek()
            if kind == "sym" and val == "*":
                self.take()
                f = f * self.factor()
            elif kind in ("num", "name") or (kind == "sym" and val == "("):
                f = f * self.factor()
            else:
                return f

    def factor(self):
        base = self.atom()
        kind, val, _ = self.peek()
        if kind == "sym" and val == "^":
            self.take()
            kind, val, _ = self.take()
            if kind != "num":
                self.i -= 1
                self.fail("expected an integer exponent")
            return base ** val
        return base

    def atom(self):
        kind, val, _ = self.peek()
        if kind == "num":
            self.take()
            k2, v2, _ = self.peek()
            if k2 == "sym" and v2 == "/":
                self.take()
                k3, v3, _ = self.take()
                if k3 != "num" or v3 == 0:
                    self.i -= 1
                    self.fail("expected a nonzero integer denominator")
                return self.ring.const(Fraction(val, v3))
            return self.ring.const(val)
        if kind == "name":
            if val not in self.ring._index:
                self.fail(f"unknown variable {val!r}")
            self.take()
            return self.ring.var(val)
        if kind == "sym" and val == "(":
            self.take()
            f = self.expr()
            k2, v2, _ = self.peek()
            if not (k2 == "sym" and v2 == ")"):
                self.fail("expected ')'")
            self.take()
            return f
        self.fail("expected a number, variable or '('")


def parse_poly(ring, text):
    """Parse canonical text such as ``x^2 + 3*x*y - y`` (``*`` optional)."""
    return _PolyParser(ring, text).parse()
