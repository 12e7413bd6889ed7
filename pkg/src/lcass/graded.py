"""Graded modules over standard graded R-algebras and stability explorers.

A graded algebra is R[y_1..y_m]/L with every y of degree 1; a graded module
is the cokernel of y-homogeneous relation columns on free generators of
given degrees.  Degree-n components are R-module presentations, and the
explorers sample a quantity over a range of n and look for a window of
identical consecutive values.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations_with_replacement

from .decomp import DEFAULT_SEED, AssSet
from .dimdepth import (FilterSpec, avoid_primes, depth_k, filter_primes,
                       is_sequence_in_dim_gt_k, local_ass)
from .errors import ExceedsDepth, Inconclusive, MalformedInput
from .fgmod import ModulePresentation, quotient_by_sequence, submodule_quotient
from .groebner import Ideal
from .polycore import MonomialOrder, Polynomial, Ring
from .theorems import ass_lch_formula, ext_ass_sets

DEFAULT_WINDOW = 3
DEFAULT_RANGE = (0, 12)


def _y_exponents(m, d):
    """All exponent vectors of total degree d in m variables, in a fixed order."""
    if d < 0:
        return []
    out = []
    for combo in combinations_with_replacement(range(m), d):
        e = [0] * m
        for i in combo:
            e[i] += 1
        out.append(tuple(e))
    return out


@dataclass(frozen=True)
class GradedAlgebraSpec:
    """R[y_1..y_m]/(relations); ``ring`` is the polynomial ring on x's then y's."""

    base: Ring
    ynames: tuple
    relations: tuple = ()

    @classmethod
    def make(cls, base, ynames, relations=()):
        ynames = tuple(ynames)
        clash = set(ynames) & set(base.variables)
        if clash:
            raise MalformedInput(f"graded variables clash with ring variables: {sorted(clash)}")
        spec = cls(base, ynames, ())
        rels = tuple(r for r in (spec.ring(r) for r in relations) if not r.is_zero())
        for r in rels:
            spec.y_degree(r)
        return cls(base, ynames, rels)

    @property
    def ring(self):
        return Ring(self.base.field, self.base.variables + self.ynames)

    @property
    def m(self):
        return len(self.ynames)

    def split(self, exp):
        n = self.base.nvars
        return exp[:n], exp[n:]

    def y_degree(self, f):
        """The common y-degree of f's terms; raises if f is not y-homogeneous."""
        degs = {sum(self.split(e)[1]) for e, _ in f.items()}
        if len(degs) > 1:
            raise MalformedInput(f"{f} is not homogeneous in {', '.join(self.ynames)}")
        return degs.pop() if degs else 0


@dataclass(frozen=True)
class GradedModulePresentation:
    algebra: GradedAlgebraSpec
    degrees: tuple
    relations: tuple = ()
    label: str = "custom"

    @classmethod
    def make(cls, algebra, degrees, relations=(), label="custom"):
        RY = algebra.ring
        degrees = tuple(degrees)
        cols = []
        for col in relations:
            col = tuple(RY(c) for c in col)
            if len(col) != len(degrees):
                raise MalformedInput("relation column length differs from the number of generators")
            if all(c.is_zero() for c in col):
                continue
            shifts = {algebra.y_degree(c) + d for c, d in zip(col, degrees) if not c.is_zero()}
            if len(shifts) > 1:
                raise MalformedInput("relation column is not homogeneous for the generator degrees")
            cols.append(col)
        return cls(algebra, degrees, tuple(cols), label)

    def column_degree(self, col):
        for c, d in zip(col, self.degrees):
            if not c.is_zero():
                return self.algebra.y_degree(c) + d
        return None

    def direct_sum(self, other):
        if other.algebra != self.algebra:
            raise MalformedInput("graded modules over different algebras")
        RY = self.algebra.ring
        g, h = len(self.degrees), len(other.degrees)
        cols = [tuple(c) + (RY.zero(),) * h for c in self.relations]
        cols += [(RY.zero(),) * g + tuple(c) for c in other.relations]
        return GradedModulePresentation(self.algebra, self.degrees + other.degrees, tuple(cols),
                                        f"{self.label}+{other.label}")


def graded_component(G, n):
    """The degree-n component N_n as an R-module presentation."""
    if n < 0:
        raise MalformedInput("component degree must be non-negative")
    A = G.algebra
    R = A.base
    m = A.m
    basis = []
    index = {}
    for i, d in enumerate(G.degrees):
        for a in _y_exponents(m, n - d):
            index[(i, a)] = len(basis)
            basis.append((i, a))
    rank = len(basis)
    F = R.field
    if rank == 0:
        return ModulePresentation(R, 0, ())

    def expand(vector, shift):
        """R-coordinates of Σ vector_i · y^shift in the degree-n basis."""
        coords = [dict() for _ in range(rank)]
        for i, f in enumerate(vector):
            for e, c in f.items():
                xe, ye = A.split(e)
                key = (i, tuple(a + b for a, b in zip(ye, shift)))
                slot = coords[index[key]]
                slot[xe] = F(slot.get(xe, 0) + c)
        return tuple(Polynomial(R, {e: c for e, c in d.items() if c}) for d in coords)

    cols = []
    for col in G.relations:
        e = G.column_degree(col)
        for beta in _y_exponents(m, n - e):
            cols.append(expand(col, beta))
    RY = A.ring
    for rho in A.relations:
        a = A.y_degree(rho)
        for i, d in enumerate(G.degrees):
            vec = [RY.zero()] * len(G.degrees)
            vec[i] = rho
            for beta in _y_exponents(m, n - d - a):
                cols.append(expand(vec, beta))
    return ModulePresentation(R, rank, cols).pruned()


# --- families --------------------------------------------------------------------------

def _fresh_names(R, stem, count):
    names, i = [], 1
    while len(names) < count:
        cand = f"{stem}{i}"
        if cand not in R._index:
            names.append(cand)
        i += 1
    return names


def _rees_kernel(I, M, ynames):
    """Relations of ⊕ I^n M over R[y]: vectors f with Σ f_j(a t) e_j = 0 in M[t]."""
    R = I.ring
    a = list(I.gens)
    g = M.rank
    tname = "_t"
    while tname in R._index or tname in ynames:
        tname += "_"
    if g == 1:
        T = Ring(R.field, (tname,) + tuple(ynames) + R.variables, MonomialOrder("elim", 1))
        t = T.var(tname)
        gens = [T.var(y) - ai.to_ring(T) * t for y, ai in zip(ynames, a)]
        gens += [col[0].to_ring(T) for col in M.relations]
        G = Ideal(T, gens).gb()
        return [(f,) for f in G if f.degree(0) == 0]
    enames = _fresh_names(R, "_e", g)
    T = Ring(R.field, (tname,) + tuple(ynames) + R.variables + tuple(enames), MonomialOrder("elim", 1))
    t = T.var(tname)
    E = [T.var(e) for e in enames]
    gens = [(T.var(y) - ai.to_ring(T) * t) * Ej for y, ai in zip(ynames, a) for Ej in E]
    gens += [sum((c.to_ring(T) * Ej for c, Ej in zip(col, E)), T.zero()) for col in M.relations]
    gens += [E[i] * E[j] for i in range(g) for j in range(i, g)]
    eidx = [T.index(e) for e in enames]
    out = []
    for f in Ideal(T, gens).gb():
        if f.degree(0) != 0:
            continue
        if any(sum(e[k] for k in eidx) != 1 for e, _ in f.items()):
            continue
        parts = [dict() for _ in range(g)]
        for e, c in f.items():
            j = next(i for i, k in enumerate(eidx) if e[k])
            ne = list(e)
            ne[eidx[j]] = 0
            parts[j][tuple(ne)] = c
        out.append(tuple(Polynomial(T, d) for d in parts))
    return out


def make_family(kind, I=None, M=None, *, ynames=None, relations=(), degrees=None, columns=()):
    """Graded test families.

    ``rees``: ⊕_n I^n M over the Rees algebra R[It] ≅ R[y]/L, with L and the
    module relations computed exactly by eliminating t.
    ``assoc-graded-pullback``: ⊕_n I^n M / I^{n+1} M over the same algebra.
    ``custom``: the algebra relations, generator degrees and columns as given.
    """
    if kind in ("rees", "assoc-graded-pullback"):
        if I is None:
            raise MalformedInput("a Rees family needs an ideal")
        R = I.ring
        if M is None:
            M = ModulePresentation.free(R, 1)
        if isinstance(M, Ideal):
            M = ModulePresentation.cyclic(M)
        if not I.gens:
            raise MalformedInput("a Rees family needs a nonzero ideal")
        ynames = tuple(ynames or _fresh_names(R, "u", len(I.gens)))
        if len(ynames) != len(I.gens):
            raise MalformedInput("one graded variable per generator")
        free = ModulePresentation.free(R, 1)
        L_vecs = _rees_kernel(I, free, ynames)
        A = GradedAlgebraSpec.make(R, ynames, [v[0] for v in L_vecs])
        RY = A.ring
        cols = [tuple(c.to_ring(RY) for c in v) for v in _rees_kernel(I, M, ynames)]
        label = "rees"
        if kind == "assoc-graded-pullback":
            g = M.rank
            for ai in I.gens:
                for j in range(g):
                    cols.append(tuple(ai.to_ring(RY) if i == j else RY.zero() for i in range(g)))
            label = "assoc-graded"
        return GradedModulePresentation.make(A, [0] * M.rank, cols, label)
    if kind == "custom":
        if M is None or ynames is None:
            raise MalformedInput("custom families need a base ring (as M) and graded variables")
        R = M if isinstance(M, Ring) else M.ring
        A = GradedAlgebraSpec.make(R, ynames, relations)
        return GradedModulePresentation.make(A, degrees or [0], columns, "custom")
    raise MalformedInput(f"unknown family kind {kind!r}")


def power_component(I, M, n):
    """I^n M as an R-module, computed directly (for cross-checking Rees components)."""
    R = I.ring
    if isinstance(M, Ideal):
        M = ModulePresentation.cyclic(M)
    P = I ** n if n else Ideal(R, [R.one()])
    gens = []
    for f in P.gens:
        for j in range(M.rank):
            gens.append(tuple(f if i == j else R.zero() for i in range(M.rank)))
    return submodule_quotient(gens, M).pruned()


# --- stabilization ---------------------------------------------------------------------

@dataclass
class StabilizationReport:
    quantity: str
    values: list
    window: int
    stable_value: object = None
    onset: int | None = None
    verdict: str = "not-stable-in-window"
    seed: int = DEFAULT_SEED
    extra: dict = field(default_factory=dict)

    @property
    def stable(self):
        return self.verdict == "stable-in-window"

    def to_json(self):
        out = {
            "quantity": self.quantity,
            "values": [[n, v] for n, v in self.values],
            "window": self.window,
            "stable_value": self.stable_value,
            "onset": self.onset,
            "verdict": self.verdict,
            "seed": self.seed,
        }
        if self.extra:
            out["extra"] = self.extra
        return out


def _judge(quantity, values, window, seed, extra=None):
    if window < 2:
        raise MalformedInput("window must be at least 2")
    if not values:
        raise MalformedInput("empty range")
    rep = StabilizationReport(quantity, values, window, seed=seed, extra=extra or {})
    vs = [v for _, v in values]
    last = vs[-1]
    i = len(vs) - 1
    while i > 0 and vs[i - 1] == last:
        i -= 1
    rep.onset = values[i][0]
    if len(vs) >= window and all(v == last for v in vs[-window:]):
        rep.verdict = "stable-in-window"
        rep.stable_value = last
    return rep


def _range(nrange):
    lo, hi = nrange
    if hi < lo or lo < 0:
        raise MalformedInput("range must satisfy 0 ≤ lo ≤ hi")
    return range(lo, hi + 1)


def stabilize_ass(G, nrange=DEFAULT_RANGE, window=DEFAULT_WINDOW, seed=DEFAULT_SEED):
    values = [(n, local_ass(graded_component(G, n), seed).to_json()) for n in _range(nrange)]
    return _judge("ass", values, window, seed)


def _depth_json(dv):
    return dv.to_json()["value"]


def stabilize_depth_k(G, I, k, nrange=DEFAULT_RANGE, window=DEFAULT_WINDOW, seed=DEFAULT_SEED):
    values = [(n, _depth_json(depth_k(I, graded_component(G, n), k, seed))) for n in _range(nrange)]
    rep = _judge(f"depth_{k}", values, window, seed)
    if rep.stable:
        rep.extra["eventual_r"] = rep.stable_value
    return rep


@dataclass
class CommonSequenceReport:
    sequence: tuple
    table: list
    onset: int
    r: object

    def valid_past_onset(self):
        return all(ok for n, ok in self.table if n >= self.onset)

    def to_json(self):
        return {
            "sequence": [str(x) for x in self.sequence],
            "table": [[n, ok] for n, ok in self.table],
            "onset": self.onset,
            "r": self.r,
        }


def common_sequence(G, I, k, nrange=DEFAULT_RANGE, window=DEFAULT_WINDOW, seed=DEFAULT_SEED):
    """One sequence that is an N_n-sequence in dimension > k for every n past the onset."""
    rep = stabilize_depth_k(G, I, k, nrange, window, seed)
    if not rep.stable:
        raise Inconclusive("depth_k did not stabilize in the sampled range")
    r = rep.stable_value
    if r == "infinity":
        raise Inconclusive("eventual depth_k is infinite; no finite common sequence to build")
    tail = [n for n in _range(nrange) if n >= rep.onset]
    comps = {n: graded_component(G, n) for n in _range(nrange)}
    spec = FilterSpec(k, strict=True)
    xs = []
    for step in range(r):
        A = AssSet()
        for n in tail:
            A = A | filter_primes(local_ass(quotient_by_sequence(comps[n], xs), seed), spec)
        xs.append(avoid_primes(I, A, seed + step))
    table = [(n, bool(is_sequence_in_dim_gt_k(xs, comps[n], k, seed))) for n in _range(nrange)]
    return CommonSequenceReport(tuple(xs), table, rep.onset, r)


def stabilize_theorem_sets(G, I, M, k, l, nrange=DEFAULT_RANGE, window=DEFAULT_WINDOW,
                           seed=DEFAULT_SEED):
    """Per-n theorem unions, each cross-checked against the Ext oracle with t = 1."""
    values, regimes, checks = [], {}, {}
    for n in _range(nrange):
        Nn = graded_component(G, n)
        try:
            res = ass_lch_formula(I, M, Nn, k, l, seed)
        except ExceedsDepth:
            values.append((n, "declined"))
            continue
        values.append((n, res.union.to_json()))
        regimes[n] = res.regime
        oracle = ext_ass_sets(res.ideal, Nn, k, l, 1, seed=seed, check_depth=False)
        checks[n] = oracle == res.union
    extra = {
        "regime": [[n, r] for n, r in sorted(regimes.items())],
        "oracle_t1": [[n, ok] for n, ok in sorted(checks.items())],
    }
    return _judge(f"theorem_sets(k={k},l={l})", values, window, seed, extra)
