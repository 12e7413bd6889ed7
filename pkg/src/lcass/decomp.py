"""Prime decomposition: minimal primes of ideals and associated primes of modules.

Minimal primes
    Monomial ideals are split combinatorially into variable-generated primes.
    Otherwise (prime fields only) the ideal is first split along reducible
    Gröbner basis elements; an ideal whose basis elements are all irreducible
    is localized at a maximal independent set ``U``: over ``K = k(U)`` it is
    zero-dimensional, a random linear form ``w`` is adjoined and a lex basis
    in shape position is computed.  Each irreducible factor of the minimal
    polynomial of ``w`` gives a maximal ideal of ``K[y]``, whose contraction
    is a prime of the original ring.  The part of ``V(I)`` where the
    denominators vanish is handled recursively.

Associated primes
    Ass(M) = ⋃_c {p ∈ Min(Ann Ext^c(M, S)) : codim p = c}, checked against
    the definition-level test p ∈ Ass(M) ⇔ Ann Hom(S/p, M) ⊆ p.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field

from .errors import DecompositionFailure, UnsupportedField
from .factor import factor_poly, univar_factor  # noqa: F401  (re-exported)
from .fgmod import ModulePresentation, annihilator, ext, hom
from .groebner import (Ideal, eliminate, independent_sets, krull_dim,
                       saturate_by_element)
from .polycore import MonomialOrder, Polynomial, Ring

DEFAULT_SEED = 42
_SHAPE_ATTEMPTS = 8


class PrimeIdeal:
    """A prime ideal together with dim R/p and a flag saying it was certified."""

    __slots__ = ("ideal", "verified", "dim")

    def __init__(self, ideal, verified=True, dim=None):
        self.ideal = ideal
        self.verified = verified
        self.dim = krull_dim(ideal) if dim is None else dim

    @classmethod
    def parse(cls, ring, texts, verified=False):
        return cls(Ideal.parse(ring, texts), verified)

    @property
    def ring(self):
        return self.ideal.ring

    @property
    def gens(self):
        return self.ideal.gb()

    def key(self):
        return self.ideal.key()

    def codim(self):
        return self.ring.nvars - self.dim

    def is_local(self):
        """Does p lie inside the maximal ideal at the origin?"""
        return all(g.constant_term() == 0 for g in self.gens)

    def contains(self, I):
        return I.issubset(self.ideal)

    def to_json(self):
        return {"gens": list(self.key()), "dim": self.dim}

    def __eq__(self, other):
        if not isinstance(other, PrimeIdeal):
            return NotImplemented
        return self.ring is other.ring and self.key() == other.key()

    def __hash__(self):
        return hash(self.key())

    def __repr__(self):
        return f"PrimeIdeal(({', '.join(self.key())}), dim={self.dim})"

    __str__ = lambda self: "(" + ", ".join(self.key()) + ")"  # noqa: E731


@dataclass(frozen=True)
class AssSet:
    """A finite set of primes, deduplicated and sorted by reduced-GB text."""

    primes: tuple = field(default=())

    def __post_init__(self):
        seen = {}
        for p in self.primes:
            seen.setdefault(p.key(), p)
        object.__setattr__(self, "primes", tuple(seen[k] for k in sorted(seen)))

    def __iter__(self):
        return iter(self.primes)

    def __len__(self):
        return len(self.primes)

    def __contains__(self, p):
        return any(q.key() == p.key() for q in self.primes)

    def __eq__(self, other):
        if not isinstance(other, AssSet):
            return NotImplemented
        return self.keys() == other.keys()

    def __hash__(self):
        return hash(self.keys())

    def keys(self):
        return tuple(p.key() for p in self.primes)

    def __or__(self, other):
        return AssSet(self.primes + tuple(other))

    union = __or__

    def __and__(self, other):
        ks = set(other.keys())
        return AssSet(tuple(p for p in self.primes if p.key() in ks))

    def __le__(self, other):
        return set(self.keys()) <= set(other.keys())

    def at_least(self, k):
        """Primes with dim R/p ≥ k."""
        return AssSet(tuple(p for p in self.primes if p.dim >= k))

    def dim_equal(self, k):
        return AssSet(tuple(p for p in self.primes if p.dim == k))

    def in_variety(self, I):
        """Primes containing I."""
        return AssSet(tuple(p for p in self.primes if p.contains(I)))

    def local(self):
        return AssSet(tuple(p for p in self.primes if p.is_local()))

    def to_json(self):
        return [p.to_json() for p in self.primes]

    def __repr__(self):
        return "{" + ", ".join(str(p) for p in self.primes) + "}"


# --- monomial path ---------------------------------------------------------------------

def _monomial_min_primes(I):
    R = I.ring
    supports = sorted({frozenset(i for i, a in enumerate(g.lm()) if a) for g in I.gb()}, key=len)
    covers = set()

    def split(chosen, rest):
        rest = [s for s in rest if not (s & chosen)]
        if not rest:
            covers.add(frozenset(chosen))
            return
        for v in sorted(rest[0]):
            split(chosen | {v}, rest)

    split(frozenset(), supports)
    minimal = [c for c in covers if not any(d < c for d in covers)]
    return [PrimeIdeal(Ideal(R, [R.var(i) for i in sorted(c)]), True, R.nvars - len(c))
            for c in minimal]


# --- general path ----------------------------------------------------------------------

def _minimalize(primes):
    uniq = {}
    for p in primes:
        uniq.setdefault(p.key(), p)
    ps = sorted(uniq.values(), key=lambda p: -p.dim)
    out = []
    for p in ps:
        if any(q.dim > p.dim and q.ideal.issubset(p.ideal) for q in out):
            continue
        out.append(p)
    return out


def _branch_seed(seed, I):
    """Per-branch seed derived from the global seed and the branch's ideal."""
    return random.Random(f"{seed}|{'|'.join(I.key())}").getrandbits(48)


def _min_primes(I, seed):
    R = I.ring
    if I.is_unit():
        return []
    if I.is_zero():
        return [PrimeIdeal(I, True, R.nvars)]
    if I.is_monomial():
        return _monomial_min_primes(I)
    if R.field.p == 0:
        raise UnsupportedField("minimal primes of non-monomial ideals need a prime field")
    cache = R._cache.setdefault("min_primes", {})
    ck = (I.key(), seed)
    hit = cache.get(ck)
    if hit is not None:
        return hit
    out = None
    for g in I.gb():
        fs = factor_poly(g)
        if len(fs) > 1 or fs[0][1] > 1:
            out = []
            for h, _ in fs:
                out += _min_primes(I + [h], seed)
            break
    if out is None:
        U = independent_sets(I)[0]
        primes, h = _localized_primes(I, U, _branch_seed(seed, I))
        out = list(primes)
        if not h.is_constant():
            for f, _ in factor_poly(h):
                out += _min_primes(I + [f], seed)
    out = _minimalize(out)
    cache[ck] = out
    return out


def _fresh(R, base):
    name = base
    while name in R._index:
        name += "_"
    return name


def _split_main(g, nmain):
    """Leading (y,w)-exponent of g and its coefficient in k[u] (as a dict)."""
    best = None
    for e, _ in g.items():
        m = e[:nmain]
        if best is None or m > best:
            best = m
    coeff = {e: c for e, c in g.items() if e[:nmain] == best}
    return best, coeff


def _minimal_over_K(G, nmain):
    info = []
    for g in G:
        m, c = _split_main(g, nmain)
        info.append((m, g, c))
    out = []
    for i, (m, g, c) in enumerate(info):
        dominated = False
        for j, (m2, _, _) in enumerate(info):
            if j == i:
                continue
            if all(a <= b for a, b in zip(m2, m)) and (m2 != m or j < i):
                dominated = True
                break
        if not dominated:
            out.append((m, g, c))
    return out


def _is_shape(mins, r):
    """Leading (y,w)-monomials exactly y_1, ..., y_r, w^d."""
    leads = sorted(m for m, _, _ in mins)
    if len(leads) != r + 1:
        return False
    want = set()
    for j in range(r):
        e = [0] * (r + 1)
        e[j] = 1
        want.add(tuple(e))
    last = [m for m in leads if tuple(m) not in want]
    return len(last) == 1 and all(a == 0 for a in last[0][:r]) and last[0][r] > 0 and \
        want <= set(map(tuple, leads))


def _squarefree_in(f, var_index):
    """Product of the distinct irreducible factors of f that involve ``var_index``."""
    R = f.ring
    out = R.one()
    for h, _ in factor_poly(f):
        if h.degree(var_index) > 0:
            out = out * h
    return out


def _univariate_eliminant(T, gens, j, r):
    """An element of (gens)·K[y,w] ∩ K[y_j] with coefficients in k[u], minimal in y_j-degree."""
    names = T.variables
    main = list(names[: r + 1])
    target = main.pop(j)
    order = main + [target]
    Tj = Ring(T.field, tuple(order) + names[r + 1:], MonomialOrder("lexblock", r + 1))
    G = Ideal(Tj, [g.to_ring(Tj) for g in gens]).gb()
    best = None
    for g in G:
        if all(e[i] == 0 for e, _ in g.items() for i in range(r)):
            d = g.degree(r)
            if d > 0 and (best is None or d < best.degree(r)):
                best = g
    if best is None:
        raise DecompositionFailure("localized ideal is not zero-dimensional")
    return best.to_ring(T)


def _localized_primes(I, U, seed):
    """Primes of I·k(U)[Y] contracted to R, and the denominator product h ∈ k[U].

    The last non-independent variable is tried as separating element first;
    after that, seeded random linear forms ``w`` are adjoined.
    """
    R = I.ring
    rng = random.Random(seed)
    p = R.field.p
    Y = [i for i in range(R.nvars) if i not in U]
    ynames = [R.variables[i] for i in Y]
    unames = tuple(R.variables[i] for i in U)
    w = _fresh(R, "_w")
    for attempt in range(_SHAPE_ATTEMPTS + 1):
        if attempt == 0:
            main = tuple(ynames)
            T = Ring(R.field, main + unames, MonomialOrder("lexblock", len(main)))
            gens = [g.to_ring(T) for g in I.gb()]
        else:
            main = tuple(ynames) + (w,)
            T = Ring(R.field, main + unames, MonomialOrder("lexblock", len(main)))
            cs = [rng.randrange(1, p) for _ in Y]
            lin = T.var(w) - sum((T.const(c) * T.var(y) for c, y in zip(cs, ynames)), T.zero())
            gens = [g.to_ring(T) for g in I.gb()] + [lin]
        m = len(main) - 1
        mins = _minimal_over_K(Ideal(T, gens).gb(), m + 1)
        if not _is_shape(mins, m):
            extra = [_squarefree_in(_univariate_eliminant(T, gens, j, m), j) for j in range(m + 1)]
            gens = gens + extra
            mins = _minimal_over_K(Ideal(T, gens).gb(), m + 1)
            if not _is_shape(mins, m):
                continue
        return _primes_from_shape(R, T, mins, m, w if attempt else None, len(U))
    raise DecompositionFailure(f"no shape position found for {I!r} after {_SHAPE_ATTEMPTS} attempts")


def _coeff_in_u(T, c, nmain):
    """The k[u]-coefficient of a leading (y,w)-monomial, as a polynomial of T."""
    zero = (0,) * nmain
    return Polynomial(T, {zero + e[nmain:]: v for e, v in c.items()})


def _primes_from_shape(R, T, mins, r, w, nu):
    q = None
    others = []
    h = T.one()
    for m, g, c in mins:
        lc_u = _coeff_in_u(T, c, r + 1)
        if not lc_u.is_constant():
            h = h * lc_u
        if all(a == 0 for a in m[:r]):
            q = g
        else:
            others.append(g)
    primes = []
    dim = nu
    for qi, _ in factor_poly(q):
        if qi.degree(r) == 0:
            continue
        L = Ideal(T, others + [qi])
        hi = h
        lq_u = _coeff_in_u(T, _split_main(qi, r + 1)[1], r + 1)
        if not lq_u.is_constant():
            hi = hi * lq_u
        P = saturate_by_element(L, hi) if not hi.is_constant() else L
        Pc = eliminate(P, [w]) if w is not None else P
        primes.append(PrimeIdeal(Ideal(R, [g.to_ring(R) for g in Pc.gens]), True, dim))
    h_R = h.to_ring(R) if not h.is_constant() else R.one()
    return primes, _radical_of_product(h_R)


def _radical_of_product(h):
    R = h.ring
    if h.is_constant():
        return R.one()
    out = R.one()
    for f, _ in factor_poly(h):
        out = out * f
    return out


def minimal_primes(I, seed=DEFAULT_SEED):
    """Minimal primes over I, as an :class:`AssSet` (empty for the unit ideal)."""
    return AssSet(tuple(_min_primes(I, seed)))


# --- associated primes -----------------------------------------------------------------

def _free_rank_one(ring):
    return ModulePresentation.free(ring, 1)


def ext_annihilators(M):
    """[(c, Ann Ext^c(M, S))] for c = 0..n."""
    S = _free_rank_one(M.ring)
    return [(c, annihilator(ext(c, M, S))) for c in range(M.ring.nvars + 1)]


def associated_primes(M, seed=DEFAULT_SEED):
    """Ass(M) via the codimension criterion on Ext^c(M, S)."""
    if isinstance(M, Ideal):
        M = ModulePresentation.cyclic(M)
    R = M.ring
    cache = R._cache.setdefault("ass", {})
    ck = (M.pruned().key(), seed)
    hit = cache.get(ck)
    if hit is not None:
        return hit
    found = []
    if not M.is_zero():
        for c, A in ext_annihilators(M):
            if A.is_unit():
                continue
            found += [p for p in minimal_primes(A, seed) if p.codim() == c]
    out = AssSet(tuple(found))
    cache[ck] = out
    return out


def oracle_candidates(M, seed=DEFAULT_SEED):
    """⋃_c Min(Ann Ext^c(M, S)); contains Ass(M)."""
    found = []
    for _, A in ext_annihilators(M):
        if not A.is_unit():
            found += list(minimal_primes(A, seed))
    return AssSet(tuple(found))


def is_associated_oracle(p, M):
    """p ∈ Ass(M) iff Ann Hom(S/p, M) ⊆ p."""
    if isinstance(M, Ideal):
        M = ModulePresentation.cyclic(M)
    H = hom(ModulePresentation.cyclic(p.ideal), M)
    return annihilator(H).issubset(p.ideal)


def local_primes(A):
    """Primes of A lying in the maximal ideal at the origin."""
    return A.local()
