"""Ideals: reduced Gröbner bases, membership, elimination, intersection,
colon/saturation, radical membership and Krull dimension."""

from __future__ import annotations

from itertools import combinations

from ._engine import engine_for
from .errors import ContextMismatch, MalformedInput
from .polycore import MonomialOrder, Polynomial, Ring, exact_quotient

_TAG = "_t"


class Ideal:
    """An ideal given by generators; the reduced GB is computed lazily and cached."""

    __slots__ = ("ring", "gens", "_gb", "_key")

    def __init__(self, ring, gens=()):
        self.ring = ring
        gl = []
        for g in gens:
            g = ring(g)
            if g:
                gl.append(g)
        self.gens = tuple(gl)
        self._gb = None
        self._key = None

    @classmethod
    def parse(cls, ring, texts):
        if isinstance(texts, str):
            texts = _split_top(texts)
        return cls(ring, [ring(t) for t in texts])

    def __repr__(self):
        return f"Ideal({', '.join(map(str, self.gens)) or '0'})"

    def __str__(self):
        return "(" + ", ".join(str(g) for g in self.gb()) + ")" if self.gb() else "(0)"

    def gb(self):
        """Reduced Gröbner basis as a tuple of monic polynomials."""
        if self._gb is None:
            cache = self.ring._cache.setdefault("ideal_gb", {})
            k = frozenset(self.gens)
            res = cache.get(k)
            if res is None:
                eng = engine_for(self.ring)
                basis = eng.gb([eng.from_polys(g) for g in self.gens])
                res = tuple(eng.to_poly(b) for b in basis)
                cache[k] = res
            self._gb = res
        return self._gb

    def key(self):
        """Canonical, hashable serialization (the reduced GB text)."""
        if self._key is None:
            self._key = tuple(str(g) for g in self.gb())
        return self._key

    def __eq__(self, other):
        if not isinstance(other, Ideal):
            return NotImplemented
        return self.ring is other.ring and self.key() == other.key()

    def __hash__(self):
        return hash((id(self.ring), self.key()))

    def _check(self, other):
        if other.ring is not self.ring:
            raise ContextMismatch(f"{self.ring} vs {other.ring}")

    def is_unit(self):
        gb = self.gb()
        return len(gb) == 1 and gb[0].is_constant()

    def is_zero(self):
        return not self.gb()

    def is_monomial(self):
        return all(g.is_monomial() for g in self.gb())

    def is_homogeneous(self):
        return all(g.is_homogeneous() for g in self.gb())

    def in_maximal(self):
        """Is the ideal inside m = (all variables)?"""
        return all(g.constant_term() == 0 for g in self.gens)

    def contains(self, f):
        return normal_form(f, self).is_zero()

    def __contains__(self, f):
        return self.contains(self.ring(f))

    def issubset(self, other):
        self._check(other)
        return all(other.contains(g) for g in self.gb())

    def __add__(self, other):
        if isinstance(other, Ideal):
            self._check(other)
            return Ideal(self.ring, self.gens + other.gens)
        return Ideal(self.ring, self.gens + tuple(self.ring(g) for g in other))

    def __mul__(self, other):
        self._check(other)
        return Ideal(self.ring, [f * g for f in self.gens for g in other.gens])

    def __pow__(self, t):
        J = Ideal(self.ring, [self.ring.one()])
        for _ in range(t):
            J = Ideal(J.ring, J.gb()) * self
        return Ideal(self.ring, J.gb())

    def leading_ideal(self):
        return Ideal(self.ring, [self.ring.monomial(g.lm()) for g in self.gb()])


def _split_top(text):
    parts, depth, cur = [], 0, []
    for ch in text:
        if ch == "(":
            depth += 1
        elif ch == ")":
            depth -= 1
        if ch == "," and depth == 0:
            parts.append("".join(cur))
            cur = []
        else:
            cur.append(ch)
    if "".join(cur).strip():
        parts.append("".join(cur))
    return [p.strip() for p in parts if p.strip()]


def unit_ideal(ring):
    return Ideal(ring, [ring.one()])


def maximal_ideal(ring):
    return Ideal(ring, ring.gens())


def groebner_basis(I):
    return I.gb()


def normal_form(f, I):
    if f.ring is not I.ring:
        raise ContextMismatch(f"{f.ring} vs {I.ring}")
    eng = engine_for(I.ring)
    red = eng.reducers([(eng.lead(v), v) for v in (eng.from_polys(g) for g in I.gb())])
    return eng.to_poly(eng.nf(eng.from_polys(f), red))


def is_groebner(gens):
    """Buchberger certificate: every S-polynomial reduces to zero."""
    if not gens:
        return True
    ring = gens[0].ring
    eng = engine_for(ring)
    vs = [eng.monic(eng.from_polys(g)) for g in gens]
    lts = [eng.lead(v) for v in vs]
    red = eng.reducers(list(zip(lts, vs)))
    for i, j in combinations(range(len(vs)), 2):
        L = eng.lcm(lts[i], lts[j])
        s = eng.shift(vs[i], L - lts[i])
        eng.sub_mul(s, 1, L - lts[j], vs[j])
        if eng.nf(s, red):
            return False
    return True


# --- elimination --------------------------------------------------------------

def eliminate(I, drop_vars, *, same_ring=False):
    """Generators of I ∩ k[remaining variables].

    Returns an ideal in the subring on the remaining variables, or in the
    original ring when ``same_ring`` is set.
    """
    R = I.ring
    drop = [v if isinstance(v, str) else R.variables[v] for v in drop_vars]
    for v in drop:
        if v not in R._index:
            raise MalformedInput(f"{v!r} is not a variable of {R}")
    keep = [v for v in R.variables if v not in drop]
    if not drop:
        return I
    E = Ring(R.field, tuple(drop) + tuple(keep), MonomialOrder("elim", len(drop)))
    basis = Ideal(E, [g.to_ring(E) for g in I.gens]).gb()
    didx = range(len(drop))
    surv = [g for g in basis if all(e[i] == 0 for e, _ in g.items() for i in didx)]
    if same_ring:
        return Ideal(R, [g.to_ring(R) for g in surv])
    if not keep:
        sub = Ring(R.field, ("_c",))
        return Ideal(sub, [sub.const(g.constant_term()) for g in surv])
    sub = Ring(R.field, keep)
    return Ideal(sub, [g.to_ring(sub) for g in surv])


def _tag_ring(R):
    name = _TAG
    while name in R._index:
        name += "_"
    return R.extend([name]), name


def intersect(I, J):
    """I ∩ J from t·I + (1 − t)·J by eliminating t."""
    I._check(J)
    R = I.ring
    if I.is_zero() or J.is_zero():
        return Ideal(R, [])
    if I.is_unit():
        return J
    if J.is_unit():
        return I
    T, t = _tag_ring(R)
    tv = T.var(t)
    gens = [tv * g.to_ring(T) for g in I.gb()] + [(1 - tv) * g.to_ring(T) for g in J.gb()]
    K = eliminate(Ideal(T, gens), [t])
    return Ideal(R, [g.to_ring(R) for g in K.gens])


def intersect_all(ideals):
    ideals = list(ideals)
    out = ideals[0]
    for J in ideals[1:]:
        out = intersect(out, J)
    return out


def quotient_by_element(I, f):
    """(I : f)."""
    R = I.ring
    if f.is_zero():
        return unit_ideal(R)
    if I.contains(f):
        return unit_ideal(R)
    K = intersect(I, Ideal(R, [f]))
    return Ideal(R, [exact_quotient(g, f) for g in K.gb()])


def colon_and_saturate(I, J, mode="colon"):
    """``mode='colon'`` gives (I : J); ``mode='saturation'`` gives (I : J^∞)."""
    I._check(J)
    if mode == "colon":
        return _colon(I, J)
    if mode != "saturation":
        raise MalformedInput(f"unknown mode {mode!r}")
    cur = I
    while True:
        nxt = _colon(cur, J)
        if nxt == cur:
            return cur
        cur = nxt


def _colon(I, J):
    R = I.ring
    gens = J.gb()
    if not gens:
        return unit_ideal(R)
    parts = [quotient_by_element(I, g) for g in gens]
    return Ideal(R, intersect_all(parts).gb())


def colon(I, J):
    return colon_and_saturate(I, J, "colon")


def saturate(I, J):
    if isinstance(J, Polynomial):
        J = Ideal(I.ring, [J])
    return colon_and_saturate(I, J, "saturation")


def saturate_by_element(I, h):
    """(I : h^∞) as (I + (1 − t·h)) ∩ k[x]."""
    R = I.ring
    if h.is_constant():
        return I
    T, t = _tag_ring(R)
    gens = [g.to_ring(T) for g in I.gens] + [1 - T.var(t) * h.to_ring(T)]
    K = eliminate(Ideal(T, gens), [t])
    return Ideal(R, [g.to_ring(R) for g in K.gens])


def radical_membership(f, I):
    """f ∈ √I, tested as 1 ∈ I + (1 − t·f) in R[t]."""
    if f.ring is not I.ring:
        raise ContextMismatch(f"{f.ring} vs {I.ring}")
    R = I.ring
    if f.is_zero():
        return True
    T, t = _tag_ring(R)
    T = Ring(T.field, T.variables)  # any order will do for the unit test
    gens = [g.to_ring(T) for g in I.gens] + [1 - T.var(t) * f.to_ring(T)]
    return Ideal(T, gens).is_unit()


def radical_contains(I, J):
    """Is J ⊆ √I?"""
    return all(radical_membership(g, I) for g in J.gens)


# --- dimension ----------------------------------------------------------------

def independent_sets(I):
    """Maximal-size sets of variable indices independent modulo LT(I)."""
    R = I.ring
    if I.is_unit():
        return []
    lead = [g.lm() for g in I.gb()]
    supports = [frozenset(i for i, a in enumerate(m) if a) for m in lead]
    n = R.nvars
    for size in range(n, -1, -1):
        found = []
        for U in combinations(range(n), size):
            Us = set(U)
            if all(not s <= Us for s in supports):
                found.append(U)
        if found:
            return found
    return []


def krull_dim(I):
    """dim R/I; the unit ideal gets -1."""
    if I.is_unit():
        return -1
    return len(independent_sets(I)[0])


def codim(I):
    return I.ring.nvars - krull_dim(I) if not I.is_unit() else I.ring.nvars + 1
