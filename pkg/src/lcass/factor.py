"""Polynomial factorization over prime fields.

Univariate: squarefree decomposition, distinct-degree factorization and
Cantor-Zassenhaus equal-degree splitting on dense numpy coefficient arrays
(lowest degree first).  Multivariate: a random affine change of
coordinates makes f monic in one variable x, the specialization f(x, a) is
factored and Hensel-lifted in the remaining variables, and lifted factors
are recombined by exact division.  Kronecker substitution is the fallback
when no good specialization is found (tiny fields).
"""

from __future__ import annotations

import random
from itertools import combinations

import numpy as np

from .errors import MalformedInput, UnsupportedField
from .polycore import Polynomial, exact_quotient


def _dtype(p):
    return np.int64 if p < (1 << 24) else object


def _trim(a):
    nz = np.flatnonzero(a)
    if nz.size == 0:
        return a[:0]
    return a[: nz[-1] + 1]


def _deg(a):
    return len(a) - 1


def _monic(a, p):
    if len(a) == 0:
        return a
    inv = pow(int(a[-1]), -1, p)
    return a * inv % p


def _mul(a, b, p):
    if len(a) == 0 or len(b) == 0:
        return a[:0]
    return _trim(np.convolve(a, b) % p)


def _sub(a, b, p):
    n = max(len(a), len(b))
    out = np.zeros(n, dtype=a.dtype)
    out[: len(a)] += a
    out[: len(b)] -= b
    return _trim(out % p)


def _divmod(a, b, p):
    if len(b) == 0:
        raise ZeroDivisionError("polynomial division by zero")
    a = a.copy()
    db = _deg(b)
    if len(a) - 1 < db:
        return a[:0], a
    inv = pow(int(b[-1]), -1, p)
    q = np.zeros(len(a) - db, dtype=a.dtype)
    for k in range(len(a) - 1, db - 1, -1):
        c = a[k] % p
        if c:
            c = c * inv % p
            q[k - db] = c
            a[k - db: k + 1] = (a[k - db: k + 1] - c * b) % p
    return _trim(q), _trim(a[:db] % p)


def _rem(a, b, p):
    return _divmod(a, b, p)[1]


def _gcd(a, b, p):
    while len(b):
        a, b = b, _rem(a, b, p)
    return _monic(a, p)


def _powmod(base, e, f, p):
    result = np.ones(1, dtype=f.dtype)
    base = _rem(base, f, p)
    while e:
        if e & 1:
            result = _rem(_mul(result, base, p), f, p)
        e >>= 1
        if e:
            base = _rem(_mul(base, base, p), f, p)
    return result


def _deriv(a, p):
    if len(a) <= 1:
        return a[:0]
    return _trim(a[1:] * np.arange(1, len(a), dtype=a.dtype) % p)


def _pth_root(a, p):
    return _trim(a[::p].copy())


def _sqf(f, p):
    """Yun's algorithm adapted to characteristic p: [(squarefree factor, multiplicity)]."""
    out = []
    f = _monic(f, p)
    mult = 1
    while _deg(f) > 0:
        df = _deriv(f, p)
        if len(df) == 0:
            f = _pth_root(f, p)
            mult *= p
            continue
        c = _gcd(f, df, p)
        w = _divmod(f, c, p)[0]
        i = 1
        while _deg(w) > 0:
            y = _gcd(w, c, p)
            z = _divmod(w, y, p)[0]
            if _deg(z) > 0:
                out.append((_monic(z, p), i * mult))
            i += 1
            w = y
            c = _divmod(c, y, p)[0]
        if _deg(c) > 0:
            f = _pth_root(c, p)
            mult *= p
        else:
            break
    return out


def _ddf(f, p):
    x = np.array([0, 1], dtype=f.dtype)
    h = x.copy()
    out = []
    i = 1
    while _deg(f) >= 2 * i:
        h = _powmod(h, p, f, p)
        g = _gcd(f, _sub(h, x, p), p)
        if _deg(g) > 0:
            out.append((g, i))
            f = _divmod(f, g, p)[0]
            h = _rem(h, f, p)
        i += 1
    if _deg(f) > 0:
        out.append((_monic(f, p), _deg(f)))
    return out


def _edf(f, d, p, rng):
    n = _deg(f)
    if n == d:
        return [f]
    e = (p ** d - 1) // 2
    while True:
        a = np.array([rng.randrange(p) for _ in range(n)], dtype=f.dtype)
        a = _trim(a)
        if _deg(a) < 1:
            continue
        b = _powmod(a, e, f, p)
        b = _sub(b, np.ones(1, dtype=f.dtype), p)
        g = _gcd(f, b, p)
        if 0 < _deg(g) < n:
            h = _divmod(f, g, p)[0]
            return _edf(g, d, p, rng) + _edf(_monic(h, p), d, p, rng)


def factor_dense(coeffs, p, seed=0):
    """Monic irreducible factors of a dense coefficient list (low degree first)."""
    if p == 2:
        raise UnsupportedField("equal-degree splitting needs an odd characteristic")
    f = _trim(np.array([c % p for c in coeffs], dtype=_dtype(p)))
    if len(f) == 0:
        raise MalformedInput("cannot factor the zero polynomial")
    rng = random.Random(seed)
    out = []
    for g, m in _sqf(f, p):
        for h, d in _ddf(g, p):
            for q in _edf(h, d, p, rng):
                out.append((tuple(int(c) for c in q), m))
    out.sort()
    return out


def _univariate_index(f):
    vs = f.support_vars()
    if len(vs) > 1:
        raise MalformedInput(f"{f} is not univariate")
    return vs[0] if vs else 0


def univar_factor(f, seed=0):
    """Monic irreducible factors of a univariate polynomial with multiplicities.

    The product of the factors (with multiplicity) times ``f.lc()`` is ``f``.
    """
    if f.is_zero():
        raise MalformedInput("cannot factor the zero polynomial")
    p = f.ring.field.p
    if p == 0:
        raise UnsupportedField("univariate factorization is only implemented over prime fields")
    i = _univariate_index(f)
    deg = f.degree(i)
    coeffs = [0] * (deg + 1)
    for e, c in f.items():
        coeffs[e[i]] = c
    out = []
    for q, m in factor_dense(coeffs, p, seed):
        d = {}
        for k, c in enumerate(q):
            if c:
                e = [0] * f.ring.nvars
                e[i] = k
                d[tuple(e)] = c
        out.append((Polynomial(f.ring, d), m))
    return out


def is_irreducible_univariate(f, seed=0):
    fs = univar_factor(f, seed)
    return len(fs) == 1 and fs[0][1] == 1


# --- multivariate --------------------------------------------------------------------

def _kronecker(f, vars_, radix):
    """Dense univariate coefficients of f(X, X^r1, X^r1r2, ...)."""
    weights = [1]
    for r in radix[:-1]:
        weights.append(weights[-1] * r)
    top = sum(w * (r - 1) for w, r in zip(weights, radix))
    coeffs = [0] * (top + 1)
    p = f.ring.field.p
    for e, c in f.items():
        k = sum(e[v] * w for v, w in zip(vars_, weights))
        coeffs[k] = (coeffs[k] + c) % p
    return coeffs, weights


def _inverse_kronecker(ring, coeffs, vars_, radix):
    d = {}
    n = ring.nvars
    for k, c in enumerate(coeffs):
        if not c:
            continue
        e = [0] * n
        r = k
        for v, b in zip(vars_, radix):
            e[v] = r % b
            r //= b
        if r:
            return None
        d[tuple(e)] = int(c)
    return Polynomial(ring, d)


def factor_poly(f, seed=0):
    """Irreducible factors (monic in the ring order) with multiplicities, over F_p.

    Constants are dropped; the product of the factors equals ``f`` up to a unit.
    """
    if f.is_zero():
        raise MalformedInput("cannot factor the zero polynomial")
    R = f.ring
    p = R.field.p
    if p == 0:
        raise UnsupportedField("multivariate factorization is only implemented over prime fields")
    cache = R._cache.setdefault("factor", {})
    hit = cache.get(f)
    if hit is not None:
        return hit
    orig = f
    out = {}
    # monomial content
    n = R.nvars
    content = [min(e[i] for e, _ in f.items()) for i in range(n)]
    for i, a in enumerate(content):
        if a:
            out[R.var(i)] = a
    if any(content):
        f = Polynomial(R, {tuple(x - y for x, y in zip(e, content)): c for e, c in f.items()})
    vs = f.support_vars()
    if len(vs) == 1:
        for g, m in univar_factor(f, seed):
            out[g] = out.get(g, 0) + m
    elif len(vs) > 1:
        _factor_multi(f, vs, seed, out)
    res = sorted(out.items(), key=lambda t: (t[0].total_degree(), str(t[0])))
    cache[orig] = res
    return res


def _factor_multi(f, vs, seed, out):
    """Factor the squarefree part, then recover multiplicities by division."""
    g = f
    for v in vs:
        d = f.derivative(v)
        if not d.is_zero():
            g = poly_gcd(g, d)
    rad = exact_quotient(f, g) if not g.is_constant() else f
    rest = f
    pieces = _hensel_factor(rad, rad.support_vars(), seed)
    if pieces is None:
        pieces = _kronecker_factor(rad, rad.support_vars(), seed)
    for h in pieces:
        h = h.monic()
        m = 0
        while True:
            q = exact_quotient(rest, h)
            if q is None:
                break
            rest = q
            m += 1
        out[h] = out.get(h, 0) + m
    if not rest.is_constant():
        # factors whose multiplicity is a multiple of the characteristic
        for h, m in factor_poly(rest, seed):
            out[h] = out.get(h, 0) + m


def poly_gcd(f, g):
    """Monic gcd of two nonzero polynomials, via the generator of (f) ∩ (g)."""
    from .groebner import Ideal, intersect

    R = f.ring
    if f.is_constant() or g.is_constant():
        return R.one()
    L = intersect(Ideal(R, [f]), Ideal(R, [g])).gb()[0]
    return exact_quotient(f * g, L).monic()


def _digits(k, radix):
    out = []
    for b in radix:
        out.append(k % b)
        k //= b
    return out if not k else None


def _fits(k, bound, radix):
    """k in mixed radix has every digit at most the matching digit of ``bound``."""
    d = _digits(k, radix)
    return d is not None and all(a <= b for a, b in zip(d, bound))


def _xgcd_inverse(a, m, p):
    """a^{-1} mod m for coprime dense polynomials."""
    r0, r1 = m, _rem(a, m, p)
    s0, s1 = np.zeros(0, dtype=m.dtype), np.ones(1, dtype=m.dtype)
    while len(r1):
        q, r = _divmod(r0, r1, p)
        r0, r1 = r1, r
        s0, s1 = s1, _sub(s0, _mul(q, s1, p), p)
    if _deg(r0) != 0:
        raise ArithmeticError("not invertible")
    return _rem(s0 * pow(int(r0[0]), -1, p) % p, m, p)


def _split_x(F, xi):
    """{y-exponent: dense x-coefficients} with x at position xi zeroed in the key."""
    out = {}
    for e, c in F.items():
        k = e[:xi] + (0,) + e[xi + 1:]
        arr = out.setdefault(k, {})
        arr[e[xi]] = c
    p = F.ring.field.p
    dense = {}
    for k, d in out.items():
        a = np.zeros(max(d) + 1, dtype=_dtype(p))
        for i, c in d.items():
            a[i] = c
        dense[k] = _trim(a)
    return dense


def _join_x(A, R, xi):
    d = {}
    for k, a in A.items():
        for i, c in enumerate(a):
            if c:
                e = list(k)
                e[xi] = i
                d[tuple(e)] = int(c)
    return Polynomial(R, d)


def _add_into(A, k, a, p):
    if k in A:
        n = max(len(A[k]), len(a))
        out = np.zeros(n, dtype=a.dtype)
        out[: len(A[k])] += A[k]
        out[: len(a)] += a
        a = _trim(out % p)
    if len(a):
        A[k] = a
    else:
        A.pop(k, None)


def _mul_trunc(A, B, top, p):
    """Product keeping y-monomials of total degree ≤ top."""
    out = {}
    for ka, a in A.items():
        da = sum(ka)
        for kb, b in B.items():
            if da + sum(kb) > top:
                continue
            _add_into(out, tuple(x + y for x, y in zip(ka, kb)), _mul(a, b, p), p)
    return out


def _hensel_factor(f, vs, seed):
    """Irreducible factors of a squarefree f with >= 2 variables, or None if no
    usable specialization turned up."""
    R = f.ring
    p = R.field.p
    n = R.nvars
    rng = random.Random(seed)
    d = f.total_degree()
    # prefer a variable whose leading coefficient is already constant
    xi = None
    for v in vs:
        top = f.degree(v)
        if all(e[v] < top or sum(e) == top for e, _ in f.items()):
            xi = v
            break
    shear = xi is None
    if shear:
        xi = vs[0]
    ys = [v for v in vs if v != xi]
    x = R.var(xi)
    for _ in range(8):
        cs = {v: (rng.randrange(p) if shear else 0) for v in ys}
        a = {v: rng.randrange(p) for v in ys}
        fwd = [R.var(i) for i in range(n)]
        back = [R.var(i) for i in range(n)]
        for v in ys:
            fwd[v] = R.var(v) + x * R.const(cs[v]) + R.const(a[v])
            back[v] = R.var(v) - x * R.const(cs[v]) - R.const(a[v])
        F = f.compose(fwd)
        if F.degree(xi) != (d if shear else f.degree(xi)):
            continue
        A = _split_x(F, xi)
        zero = tuple([0] * n)
        base = A.get(zero)
        if base is None or _deg(base) != F.degree(xi):
            continue
        base = _monic(base, p)
        if _deg(_gcd(base, _deriv(base, p), p)) != 0:
            continue
        lc = int(A[zero][-1])
        inv = pow(lc, -1, p)
        A = {k: v * inv % p for k, v in A.items()}
        us = [np.array(q, dtype=_dtype(p)) for q, _ in factor_dense(base, p, seed)]
        if len(us) == 1:
            return [f]
        found = _lift_and_combine(A, us, R, xi, p)
        return [g.compose(back).monic() for g in found]
    return None


def _lift_and_combine(A, us, R, xi, p):
    n = R.nvars
    zero = tuple([0] * n)
    top = max(sum(k) for k in A)
    r = len(us)
    total = np.ones(1, dtype=us[0].dtype)
    for u in us:
        total = _mul(total, u, p)
    cof = []
    for u in us:
        v = _divmod(total, u, p)[0]
        cof.append(_xgcd_inverse(v, u, p))
    Fs = [{zero: u} for u in us]
    for k in range(1, top + 1):
        P = Fs[0]
        for G in Fs[1:]:
            P = _mul_trunc(P, G, k, p)
        keys = {m for m in A if sum(m) == k} | {m for m in P if sum(m) == k}
        for m in keys:
            e = _sub(A.get(m, np.zeros(0, dtype=us[0].dtype)), P.get(m, np.zeros(0, dtype=us[0].dtype)), p)
            if not len(e):
                continue
            for i in range(r):
                delta = _rem(_mul(e, cof[i], p), us[i], p)
                if len(delta):
                    Fs[i][m] = delta
    remaining = _join_x(A, R, xi)
    idx = list(range(r))
    found = []
    size = 1
    while 2 * size <= len(idx):
        hit = None
        for S in combinations(idx, size):
            G = Fs[S[0]]
            for i in S[1:]:
                G = _mul_trunc(G, Fs[i], top, p)
            g = _join_x(G, R, xi)
            q = exact_quotient(remaining, g)
            if q is not None:
                hit = (S, g, q)
                break
        if hit is None:
            size += 1
            continue
        S, g, q = hit
        found.append(g)
        remaining = q
        idx = [i for i in idx if i not in S]
    if not remaining.is_constant():
        found.append(remaining)
    return found


def _kronecker_factor(f, vs, seed):
    """Factors of f from subsets of the factors of its Kronecker image.

    The image of a true factor g has top degree encoding the lex-leading
    exponent of g and bottom degree encoding the lex-trailing one, and those
    divide the matching exponents of f.  Subsets failing that digit test are
    skipped before any multiplication.
    """
    R = f.ring
    p = R.field.p
    radix = [f.degree(v) + 1 for v in vs]
    coeffs, _ = _kronecker(f, vs, radix)
    pieces = []
    for q, m in factor_dense(coeffs, p, seed):
        pieces.extend([np.array(q, dtype=_dtype(p))] * m)
    top = [_deg(q) for q in pieces]
    low = [int(np.flatnonzero(q)[0]) for q in pieces]
    remaining = f
    idx = list(range(len(pieces)))
    found = []
    size = 1
    while 2 * size <= len(idx):
        rc, _ = _kronecker(remaining, vs, radix)
        nz = [k for k, c in enumerate(rc) if c]
        lead, trail = _digits(nz[-1], radix), _digits(nz[0], radix)
        hit = None
        for S in combinations(idx, size):
            if not (_fits(sum(top[s] for s in S), lead, radix)
                    and _fits(sum(low[s] for s in S), trail, radix)):
                continue
            prod = np.ones(1, dtype=_dtype(p))
            for s in S:
                prod = _mul(prod, pieces[s], p)
            g = _inverse_kronecker(R, prod, vs, radix)
            if g is None or g.is_constant():
                continue
            q = exact_quotient(remaining, g)
            if q is not None:
                hit = (S, g, q)
                break
        if hit is None:
            size += 1
            continue
        S, g, q = hit
        found.append(g)
        remaining = q
        idx = [i for i in idx if i not in S]
    if not remaining.is_constant():
        found.append(remaining)
    return found
