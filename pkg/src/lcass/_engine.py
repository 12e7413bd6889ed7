"""Buchberger engine for submodules of free modules over a polynomial ring.

A term ``x^a e_i`` is packed into a single int: 16-bit exponent fields with a
guard bit each, and the position ``i`` in the topmost field.  Multiplying
terms is integer addition and divisibility is a single masked subtraction.
Vectors are dicts ``{packed_term: coeff}``; ideals are vectors supported in
position 0.

Terms are ordered position-over-term: position 0 is the largest, and within a
position the ring's monomial order applies.
"""

from __future__ import annotations

import heapq

from .polycore import EXP_BASE, EXP_BITS, EXP_LIMIT

_MASK = EXP_BASE - 1


class _KeyCache(dict):
    __slots__ = ("engine",)

    def __init__(self, engine):
        super().__init__()
        self.engine = engine

    def __missing__(self, t):
        k = self.engine._term_key(t)
        self[t] = k
        return k


class Engine:
    """Per-ring engine; obtain via :func:`engine_for`."""

    def __init__(self, ring):
        self.ring = ring
        self.n = n = ring.nvars
        self.p = ring.field.p
        self.pshift = EXP_BITS * n
        self.guard = sum(1 << (EXP_BITS * i + EXP_BITS - 1) for i in range(n))
        self.key_base = EXP_BASE ** (n + 2)
        self._mono_key = ring.order.key
        self.keys = _KeyCache(self)
        self._deg = {}

    # --- packing -------------------------------------------------------
    def pack(self, pos, exp):
        t = pos << self.pshift
        for i, a in enumerate(exp):
            t |= a << (EXP_BITS * i)
        return t

    def unpack(self, t):
        exp = tuple((t >> (EXP_BITS * i)) & _MASK for i in range(self.n))
        return t >> self.pshift, exp

    def pos(self, t):
        return t >> self.pshift

    def _term_key(self, t):
        pos, exp = self.unpack(t)
        return self._mono_key(exp) - pos * self.key_base

    def degree(self, t):
        d = self._deg.get(t)
        if d is None:
            d = sum(self.unpack(t)[1])
            self._deg[t] = d
        return d

    def lcm(self, a, b):
        out = (a >> self.pshift) << self.pshift
        for i in range(self.n):
            s = EXP_BITS * i
            out |= max((a >> s) & _MASK, (b >> s) & _MASK) << s
        return out

    def divides(self, a, b):
        """Does term ``a`` divide term ``b`` (same position)?"""
        if (a ^ b) >> self.pshift:
            return False
        G = self.guard
        return ((b | G) - a) & G == G

    def lead(self, f):
        return max(f, key=self.keys.__getitem__)

    # --- conversion ------------------------------------------------------
    def from_polys(self, entries):
        """Pack a vector given as a list of Polynomials (or one Polynomial)."""
        if not isinstance(entries, (list, tuple)):
            entries = [entries]
        v = {}
        sh = self.pshift
        for pos, f in enumerate(entries):
            base = pos << sh
            for e, c in f._d.items():
                t = base
                for i, a in enumerate(e):
                    if a:
                        t |= a << (EXP_BITS * i)
                v[t] = c
        return v

    def to_polys(self, v, rank):
        from .polycore import Polynomial

        parts = [{} for _ in range(rank)]
        for t, c in v.items():
            pos, exp = self.unpack(t)
            parts[pos][exp] = c
        return [Polynomial(self.ring, d) for d in parts]

    def to_poly(self, v):
        return self.to_polys(v, 1)[0]

    # --- arithmetic ------------------------------------------------------
    def monic(self, f):
        if not f:
            return f
        c = f[self.lead(f)]
        if c == 1:
            return f
        p = self.p
        if p:
            ci = pow(c, -1, p)
            return {t: v * ci % p for t, v in f.items()}
        ci = 1 / c
        return {t: v * ci for t, v in f.items()}

    def shift(self, f, m, c=1):
        p = self.p
        if c == 1:
            return {t + m: v for t, v in f.items()}
        if p:
            return {t + m: v * c % p for t, v in f.items()}
        return {t + m: v * c for t, v in f.items()}

    def sub_mul(self, f, c, m, g):
        """In place ``f -= c * x^m * g``."""
        p = self.p
        get = f.get
        if p:
            for t, v in g.items():
                u = t + m
                w = (get(u, 0) - c * v) % p
                if w:
                    f[u] = w
                else:
                    del f[u]
        else:
            for t, v in g.items():
                u = t + m
                w = get(u, 0) - c * v
                if w:
                    f[u] = w
                else:
                    f.pop(u, None)

    def add(self, f, g, c=1):
        h = dict(f)
        self.sub_mul(h, (-c) % self.p if self.p else -c, 0, g)
        return h

    # --- reduction -------------------------------------------------------
    def reducers(self, basis):
        return _Reducers(self, basis)

    def nf(self, f, red, full=True):
        """Remainder of ``f`` modulo a monic :class:`_Reducers` set."""
        f = dict(f)
        r = {}
        key = self.keys.__getitem__
        find = red.find
        sub_mul = self.sub_mul
        while f:
            t = max(f, key=key)
            g = find(t)
            if g is None:
                c = f.pop(t)
                r[t] = c
                if not full:
                    r.update(f)
                    break
            else:
                lt, gp = g
                sub_mul(f, f[t], t - lt, gp)
        return r

    # --- Buchberger ------------------------------------------------------
    def gb(self, vecs):
        """Reduced, monic Gröbner basis, sorted by descending leading term."""
        G = []
        LT = []
        single = []
        red = _Reducers(self, [])
        live = set()
        heap = []
        key = self.keys.__getitem__
        pshift = self.pshift

        def is_single(h):
            ps = {t >> pshift for t in h}
            return len(ps) == 1

        def add_element(h):
            h = self.monic(h)
            idx = len(G)
            lt = self.lead(h)
            G.append(h)
            LT.append(lt)
            single.append(is_single(h))
            self._update(idx, G, LT, single, live, heap)
            red.add(lt, h)

        start = [self.monic(dict(v)) for v in vecs if v]
        start.sort(key=lambda f: (self.degree(self.lead(f)), key(self.lead(f))))
        for f in start:
            h = self.nf(f, red)
            if h:
                add_element(h)

        while heap:
            _, _, i, j, L = heapq.heappop(heap)
            if (i, j) not in live:
                continue
            live.discard((i, j))
            s = self.shift(G[i], L - LT[i])
            self.sub_mul(s, 1, L - LT[j], G[j])
            h = self.nf(s, red)
            if h:
                add_element(h)

        return self._reduce(G, LT)

    def _update(self, h, G, LT, single, live, heap):
        lth = LT[h]
        pos_h = lth >> self.pshift
        posbits = pos_h << self.pshift
        cand = []
        for i in range(h):
            if LT[i] >> self.pshift != pos_h:
                continue
            L = self.lcm(LT[i], lth)
            coprime = single[i] and single[h] and L == LT[i] + lth - posbits
            cand.append((i, L, coprime))
        # chain criterion among new pairs
        keep = []
        for a in cand:
            La = a[1]
            dominated = False
            for b in cand:
                Lb = b[1]
                if Lb != La and self.divides(Lb, La):
                    dominated = True
                    break
            if not dominated:
                keep.append(a)
        groups = {}
        for a in keep:
            groups.setdefault(a[1], []).append(a)
        new = []
        for L, grp in groups.items():
            if any(g[2] for g in grp):
                continue
            new.append((grp[0][0], L))
        # old pairs made redundant by h
        dead = []
        for (i, j) in live:
            Lij = self.lcm(LT[i], LT[j])
            if self.divides(lth, Lij) and self.lcm(LT[i], lth) != Lij and self.lcm(LT[j], lth) != Lij:
                dead.append((i, j))
        for d in dead:
            live.discard(d)
        for i, L in new:
            live.add((i, h))
            heapq.heappush(heap, (self.degree(L), self.keys[L], i, h, L))

    def _reduce(self, G, LT):
        n = len(G)
        order = sorted(range(n), key=lambda i: self.keys[LT[i]])
        minimal = []
        for i in order:
            if any(self.divides(LT[j], LT[i]) for j in minimal):
                continue
            minimal.append(i)
        # a later (larger) lead can't divide an earlier one, but equal leads were dropped above
        red = _Reducers(self, [(LT[i], G[i]) for i in minimal])
        out = []
        for i in minimal:
            g = G[i]
            lt = LT[i]
            tail = {t: c for t, c in g.items() if t != lt}
            r = self.nf(tail, red)
            r[lt] = 1
            out.append(r)
        out.sort(key=lambda f: self.keys[self.lead(f)], reverse=True)
        return out

    # --- derived constructions ---------------------------------------------
    def syzygies(self, vecs, rank):
        """Generators of the syzygy module of ``vecs`` (vectors in a rank-``rank`` free module)."""
        m = len(vecs)
        if m == 0:
            return []
        aug = []
        sh = self.pshift
        for k, v in enumerate(vecs):
            w = dict(v)
            w[(rank + k) << sh] = 1
            aug.append(w)
        out = []
        off = rank << sh
        for g in self.gb(aug):
            if self.lead(g) >> sh >= rank:
                out.append({t - off: c for t, c in g.items()})
        return out


class _Reducers:
    """Monic reducers bucketed by position."""

    __slots__ = ("engine", "by_pos", "guard", "pshift")

    def __init__(self, engine, basis):
        self.engine = engine
        self.by_pos = {}
        self.guard = engine.guard
        self.pshift = engine.pshift
        for lt, g in basis:
            self.add(lt, g)

    def add(self, lt, g):
        self.by_pos.setdefault(lt >> self.pshift, []).append((lt, g))

    def find(self, t):
        lst = self.by_pos.get(t >> self.pshift)
        if not lst:
            return None
        G = self.guard
        tg = t | G
        for item in lst:
            if (tg - item[0]) & G == G:
                return item
        return None


def engine_for(ring):
    eng = ring._cache.get("engine")
    if eng is None:
        eng = Engine(ring)
        ring._cache["engine"] = eng
    return eng


assert EXP_LIMIT == 1 << (EXP_BITS - 1)
