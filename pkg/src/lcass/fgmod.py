"""Finitely generated modules as cokernels of relation matrices.

A presentation ``M = F^g / im(A)`` stores the columns of ``A`` (relations).
Modules are only ever compared through invariants (annihilator, Ass,
dimension), never structurally.
"""

from __future__ import annotations

from dataclasses import dataclass

from ._engine import engine_for
from .errors import ContextMismatch, MalformedInput, RankMismatch
from .groebner import Ideal, intersect_all, krull_dim, radical_membership, unit_ideal


class ModulePresentation:
    """coker of a ``rank x len(relations)`` matrix over ``ring``."""

    __slots__ = ("ring", "rank", "relations", "_gb", "_key", "_pruned")

    def __init__(self, ring, rank, relations=()):
        self.ring = ring
        self.rank = int(rank)
        cols = []
        for c in relations:
            c = tuple(ring(e) for e in c)
            if len(c) != self.rank:
                raise RankMismatch(f"relation of length {len(c)} in a rank-{self.rank} module")
            if any(c):
                cols.append(c)
        self.relations = tuple(cols)
        self._gb = None
        self._key = None
        self._pruned = None

    # --- constructors ----------------------------------------------------
    @classmethod
    def free(cls, ring, rank=1):
        return cls(ring, rank, ())

    @classmethod
    def cyclic(cls, I):
        """S/I."""
        return cls(I.ring, 1, [(g,) for g in I.gens])

    @classmethod
    def from_rows(cls, ring, rows):
        """Rows top-to-bottom; columns are relations."""
        rows = [[ring(e) for e in r] for r in rows]
        if not rows:
            return cls(ring, 0, ())
        ncols = len(rows[0])
        if any(len(r) != ncols for r in rows):
            raise MalformedInput("ragged matrix")
        return cls(ring, len(rows), [tuple(r[j] for r in rows) for j in range(ncols)])

    def __repr__(self):
        return f"ModulePresentation(rank={self.rank}, relations={len(self.relations)})"

    def rows(self):
        return [[c[i] for c in self.relations] for i in range(self.rank)]

    def matrix_text(self):
        return "[" + ", ".join("[" + ", ".join(str(e) for e in r) + "]" for r in self.rows()) + "]"

    # --- engine views ----------------------------------------------------
    def _vecs(self):
        eng = engine_for(self.ring)
        return [eng.from_polys(list(c)) for c in self.relations]

    def gb(self):
        """Module Gröbner basis of the relations (position-over-term), as packed vectors."""
        if self._gb is None:
            cache = self.ring._cache.setdefault("module_gb", {})
            k = (self.rank, frozenset(self.relations))
            res = cache.get(k)
            if res is None:
                res = tuple(engine_for(self.ring).gb(self._vecs()))
                cache[k] = res
            self._gb = res
        return self._gb

    def key(self):
        """Canonical serialization of the relation submodule."""
        if self._key is None:
            eng = engine_for(self.ring)
            self._key = (self.rank, tuple(tuple(str(e) for e in eng.to_polys(g, self.rank)) for g in self.gb()))
        return self._key

    def _reducers(self):
        eng = engine_for(self.ring)
        return eng.reducers([(eng.lead(g), g) for g in self.gb()])

    def nf(self, v):
        """Normal form of a vector (list of polynomials) modulo the relations."""
        if len(v) != self.rank:
            raise RankMismatch(f"vector of length {len(v)} in a rank-{self.rank} module")
        eng = engine_for(self.ring)
        return eng.to_polys(eng.nf(eng.from_polys([self.ring(e) for e in v]), self._reducers()), self.rank)

    def is_zero(self):
        eng = engine_for(self.ring)
        red = self._reducers()
        return all(not eng.nf({eng.pack(i, (0,) * self.ring.nvars): 1}, red) for i in range(self.rank))

    def __add__(self, other):
        return direct_sum(self, other)

    def pruned(self):
        """Isomorphic presentation with generators eliminated through unit entries."""
        if self._pruned is None:
            self._pruned = _prune(self)
        return self._pruned


def direct_sum(M, N):
    if M.ring is not N.ring:
        raise ContextMismatch(f"{M.ring} vs {N.ring}")
    z = M.ring.zero()
    cols = [tuple(c) + (z,) * N.rank for c in M.relations]
    cols += [(z,) * M.rank + tuple(c) for c in N.relations]
    return ModulePresentation(M.ring, M.rank + N.rank, cols)


def _unit_entry(col):
    for i, e in enumerate(col):
        if e and e.is_constant():
            return i
    return None


def _prune(M):
    F = M.ring.field
    cols = [list(c) for c in M.relations]
    alive = list(range(M.rank))
    while True:
        hit = None
        for ci, c in enumerate(cols):
            i = _unit_entry(c)
            if i is not None:
                hit = (ci, i)
                break
        if hit is None:
            break
        ci, i = hit
        piv = cols.pop(ci)
        inv = F.inv(piv[i].constant_term())
        new = []
        for c in cols:
            if c[i]:
                f = c[i] * inv
                c = [a - f * b for a, b in zip(c, piv)]
            del c[i]
            if any(c):
                new.append(c)
        cols = new
        del alive[i]
    return ModulePresentation(M.ring, len(alive), [tuple(c) for c in cols])


# --- syzygies and kernels ---------------------------------------------------------

def _kernel_mod(ring, vecs, mod_vecs, rank):
    """Packed generators of {s : sum s_c vecs[c] in span(mod_vecs)} (positions 0..len(vecs)-1)."""
    eng = engine_for(ring)
    if not vecs:
        return []
    sh = eng.pshift
    aug = []
    for k, v in enumerate(vecs):
        w = dict(v)
        w[(rank + k) << sh] = 1
        aug.append(w)
    off = rank << sh
    out = []
    for g in eng.gb(aug + [dict(m) for m in mod_vecs]):
        if eng.lead(g) >> sh >= rank:
            out.append({t - off: c for t, c in g.items()})
    return out


def syzygies(vectors, rank=None):
    """Syzygy module of a list of vectors (each a list of polynomials of one length).

    Returns a :class:`ModulePresentation`-style list of columns over the
    index set of ``vectors``.
    """
    if not vectors:
        return []
    ring = vectors[0][0].ring
    rank = len(vectors[0]) if rank is None else rank
    eng = engine_for(ring)
    packed = [eng.from_polys(list(v)) for v in vectors]
    return [tuple(eng.to_polys(s, len(vectors))) for s in eng.syzygies(packed, rank)]


def _prune_pair(eng, ncols, syz):
    """Drop columns that are unit combinations of the others; returns kept indices and reduced syzygies."""
    sh = eng.pshift
    mask = (1 << sh) - 1
    p = eng.p
    syz = [dict(s) for s in syz]
    dropped = set()
    while True:
        hit = None
        for si, s in enumerate(syz):
            comps = {}
            for t, c in s.items():
                comps.setdefault(t >> sh, []).append((t & mask, c))
            for pos, terms in comps.items():
                if len(terms) == 1 and terms[0][0] == 0:
                    hit = (si, pos, terms[0][1])
                    break
            if hit:
                break
        if hit is None:
            break
        si, col, c = hit
        piv = syz.pop(si)
        inv = pow(c, -1, p) if p else 1 / c
        for s in syz:
            coef = [(t & mask, v) for t, v in s.items() if t >> sh == col]
            for m, v in coef:
                eng.sub_mul(s, v * inv % p if p else v * inv, m, piv)
        dropped.add(col)
        syz = [s for s in syz if s]
    kept = [i for i in range(ncols) if i not in dropped]
    remap = {old: new for new, old in enumerate(kept)}
    out = []
    for s in syz:
        out.append({(t & mask) | (remap[t >> sh] << sh): v for t, v in s.items()})
    return kept, out


@dataclass
class Resolution:
    """Free resolution ``F_0 <- F_1 <- ... <- F_L``; ``maps[i]`` is ``d_{i+1}`` as packed columns."""

    ring: object
    ranks: list
    maps: list

    def matrix(self, i):
        """``d_i`` (1-based) as a list of columns of polynomials."""
        eng = engine_for(self.ring)
        return [tuple(eng.to_polys(c, self.ranks[i - 1])) for c in self.maps[i - 1]]

    @property
    def length(self):
        return len(self.maps)


def free_resolution(M, length):
    """Resolution of ``M`` (through its pruned presentation) with ``length`` maps.

    Columns that are unit combinations of the others are pruned at each stage.
    """
    M = M.pruned()
    ring = M.ring
    eng = engine_for(ring)
    cache = ring._cache.setdefault("resolution", {})
    k = M.key()
    hit = cache.get(k)
    if hit is not None and (hit.length >= length or hit.ranks[-1] == 0):
        return _truncate(hit, length)
    ranks = [M.rank]
    maps = []
    cols = [c for c in M._vecs() if c]
    for _ in range(length):
        if not cols:
            maps.append([])
            ranks.append(0)
            break
        syz = eng.syzygies(cols, ranks[-1])
        kept, syz = _prune_pair(eng, len(cols), syz)
        cols = [cols[i] for i in kept]
        maps.append(cols)
        ranks.append(len(cols))
        cols = syz
    res = Resolution(ring, ranks, maps)
    cache[k] = res
    return _truncate(res, length)


def _truncate(res, length):
    maps = list(res.maps[:length])
    ranks = list(res.ranks[: len(maps) + 1])
    while len(maps) < length:
        maps.append([])
        ranks.append(0)
    return Resolution(res.ring, ranks, maps)


# --- Hom / Ext --------------------------------------------------------------------

@dataclass
class ExtResult:
    index: int
    module: ModulePresentation

    def is_zero(self):
        return self.module.is_zero()


def _dual_map_columns(eng, dcols, r_src, g0):
    """Columns of Hom(F_i, N) -> Hom(F_{i+1}, N) on the ambient G0^{r_i} -> G0^{r_{i+1}}.

    ``dcols`` are the columns of d_{i+1} (vectors in F_i of rank ``r_src``).
    """
    sh = eng.pshift
    mask = (1 << sh) - 1
    # entries d[a][b] for column b
    entries = [{} for _ in range(r_src)]
    for b, col in enumerate(dcols):
        for t, c in col.items():
            a = t >> sh
            entries[a].setdefault(b, {})[t & mask] = c
    out = []
    for a in range(r_src):
        for u in range(g0):
            v = {}
            for b, poly in entries[a].items():
                base = (b * g0 + u) << sh
                for m, c in poly.items():
                    v[base | m] = c
            out.append(v)
    return out


def _block_relations(eng, N_vecs, g0, copies):
    sh = eng.pshift
    mask = (1 << sh) - 1
    out = []
    for b in range(copies):
        for v in N_vecs:
            out.append({((t >> sh) + b * g0) << sh | (t & mask): c for t, c in v.items()})
    return out


def hom_and_ext(j, M, N):
    """Ext^j(M, N) as the cohomology of Hom(F_•, N) for a free resolution F_• of M."""
    if M.ring is not N.ring:
        raise ContextMismatch(f"{M.ring} vs {N.ring}")
    if j < 0:
        raise MalformedInput("Ext index must be non-negative")
    ring = M.ring
    N = N.pruned()
    cache = ring._cache.setdefault("ext", {})
    ck = (j, M.pruned().key(), N.key())
    hit = cache.get(ck)
    if hit is not None:
        return ExtResult(j, hit)
    eng = engine_for(ring)
    res = free_resolution(M, j + 1)
    g0 = N.rank
    Nv = [v for v in N._vecs() if v]
    r = res.ranks
    rj = r[j]
    amb = rj * g0
    if amb == 0:
        out = ModulePresentation(ring, 0, ())
        cache[ck] = out
        return ExtResult(j, out)
    # cycles
    if r[j + 1] == 0:
        sh = eng.pshift
        Z = [{k << sh: 1} for k in range(amb)]
    else:
        phi = _dual_map_columns(eng, res.maps[j], rj, g0)
        Z = _kernel_mod(ring, phi, _block_relations(eng, Nv, g0, r[j + 1]), r[j + 1] * g0)
    Z = [z for z in Z if z]
    # boundaries
    Bd = _block_relations(eng, Nv, g0, rj)
    if j >= 1:
        Bd += [v for v in _dual_map_columns(eng, res.maps[j - 1], r[j - 1], g0) if v]
    rel = _kernel_mod(ring, Z, Bd, amb)
    out = ModulePresentation(ring, len(Z), [tuple(eng.to_polys(s, len(Z))) for s in rel]).pruned()
    cache[ck] = out
    return ExtResult(j, out)


def hom(M, N):
    return hom_and_ext(0, M, N).module


def hom_direct(M, N):
    """Hom(M, N) straight from the unpruned presentations, without a resolution.

    A map is a vector phi in N^{r0} with phi(A) = 0 in N^{r1}, where A is
    the relation matrix of M as given.  Used to cross-check Ext^0.
    """
    if M.ring is not N.ring:
        raise ContextMismatch(f"{M.ring} vs {N.ring}")
    ring = M.ring
    eng = engine_for(ring)
    g0, r0 = N.rank, M.rank
    amb = r0 * g0
    if amb == 0:
        return ModulePresentation(ring, 0, ())
    Nv = [v for v in N._vecs() if v]
    A = [c for c in M._vecs() if c]
    if A:
        phi = _dual_map_columns(eng, A, r0, g0)
        Z = _kernel_mod(ring, phi, _block_relations(eng, Nv, g0, len(A)), len(A) * g0)
    else:
        Z = [{k << eng.pshift: 1} for k in range(amb)]
    Z = [z for z in Z if z]
    rel = _kernel_mod(ring, Z, _block_relations(eng, Nv, g0, r0), amb)
    return ModulePresentation(ring, len(Z), [tuple(eng.to_polys(s, len(Z))) for s in rel])


def ext(j, M, N):
    return hom_and_ext(j, M, N).module


# --- invariants ---------------------------------------------------------------------

def generator_colon(M, i):
    """{f : f e_i ∈ relations}."""
    ring = M.ring
    eng = engine_for(ring)
    ev = {eng.pack(i, (0,) * ring.nvars): 1}
    coeffs = _kernel_mod(ring, [ev], list(M.gb()), M.rank)
    return Ideal(ring, [eng.to_poly(c) for c in coeffs])


def annihilator(M):
    """Ann(M) = ∩_i (relations : e_i)."""
    ring = M.ring
    cache = ring._cache.setdefault("ann", {})
    k = M.key()
    hit = cache.get(k)
    if hit is not None:
        return hit
    if M.rank == 0:
        out = unit_ideal(ring)
    else:
        out = Ideal(ring, intersect_all([generator_colon(M, i) for i in range(M.rank)]).gb())
    cache[k] = out
    return out


def quotient_by_sequence(N, xs):
    """N/(x_1,...,x_j)N."""
    ring = N.ring
    z = ring.zero()
    cols = list(N.relations)
    for x in xs:
        x = ring(x)
        if x.ring is not ring:
            raise ContextMismatch("sequence element from another ring")
        for l in range(N.rank):
            cols.append(tuple(x if i == l else z for i in range(N.rank)))
    return ModulePresentation(ring, N.rank, cols)


def quotient_by_ideal(N, I):
    return quotient_by_sequence(N, I.gens)


def support_dim(M):
    """dim M = dim R/Ann(M) (affine); -1 for the zero module."""
    return krull_dim(annihilator(M))


def is_zero(M):
    return M.is_zero()


def is_I_torsion(N, I):
    """Is N killed by a power of I, i.e. I ⊆ √Ann(N)?"""
    A = annihilator(N)
    return all(radical_membership(g, A) for g in I.gens)


def submodule_quotient(gens, M):
    """Presentation of (span(gens) + U)/U for vectors ``gens`` in the ambient of ``M``."""
    ring = M.ring
    eng = engine_for(ring)
    vs = [eng.from_polys([ring(e) for e in g]) for g in gens]
    rel = _kernel_mod(ring, vs, list(M.gb()), M.rank)
    return ModulePresentation(ring, len(vs), [tuple(eng.to_polys(s, len(vs))) for s in rel])


def compose_is_zero(res):
    """Check d_i ∘ d_{i+1} = 0 for consecutive differentials."""
    eng = engine_for(res.ring)
    sh = eng.pshift
    mask = (1 << sh) - 1
    for i in range(1, res.length):
        d1 = res.maps[i - 1]
        d2 = res.maps[i]
        for col in d2:
            acc = {}
            for t, c in col.items():
                b = t >> sh
                m = t & mask
                eng.sub_mul(acc, (-c) % eng.p if eng.p else -c, m, d1[b])
            if acc:
                return False
    return True
