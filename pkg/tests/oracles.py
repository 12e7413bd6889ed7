"""Reference computations that share no code with the package.

Gröbner bases and ideal membership go through sympy; monomial ideals have a
pure-Python irreducible decomposition.  Tests compare package output with
these and freeze small values derived from them.
"""

from __future__ import annotations

from functools import reduce
from itertools import product

import sympy as sp

P = 32003


def symbols(names):
    return sp.symbols(" ".join(names)) if len(names) > 1 else (sp.Symbol(names[0]),)


def to_expr(text):
    return sp.sympify(text.replace("^", "**"))


def gb(gens, names, p=P, order="grevlex"):
    """Reduced Gröbner basis as a set of canonical sympy polys (monic)."""
    xs = symbols(names)
    exprs = [to_expr(g) for g in gens if g != "0"]
    if not exprs:
        return set()
    G = sp.groebner(exprs, *xs, order=order, modulus=p)
    return {sp.Poly(g, *xs, modulus=p).monic() for g in G.exprs}


def as_polys(gens, names, p=P):
    xs = symbols(names)
    return {sp.Poly(to_expr(g), *xs, modulus=p).monic() for g in gens if g != "0"}


def contains(gens, f, names, p=P):
    xs = symbols(names)
    exprs = [to_expr(g) for g in gens if g != "0"]
    if not exprs:
        return sp.expand(to_expr(f)) == 0
    G = sp.groebner(exprs, *xs, order="grevlex", modulus=p)
    return G.contains(to_expr(f))


def radical_contains(gens, f, names, p=P):
    """f ∈ √(gens) via 1 ∈ (gens, 1 - t f)."""
    xs = symbols(names)
    t = sp.Symbol("_t")
    exprs = [to_expr(g) for g in gens if g != "0"] + [1 - t * to_expr(f)]
    G = sp.groebner(exprs, t, *xs, order="grevlex", modulus=p)
    return G.exprs == [1]


def same_radical_as_intersection(gens, primes, names, p=P):
    """Each prime contains I, and the product of the primes lies in √I."""
    for q in primes:
        if not all(contains(q, g, names, p) for g in gens):
            return False
    for combo in product(*primes):
        prod_text = "*".join(f"({c})" for c in combo) if combo else "1"
        if not radical_contains(gens, prod_text, names, p):
            return False
    return True


# --- monomial ideals ----------------------------------------------------------------------

def _divides(a, b):
    return all(i <= j for i, j in zip(a, b))


def _minimalize(gens):
    gens = sorted(set(gens))
    return [g for g in gens if not any(h != g and _divides(h, g) for h in gens)]


def _irreducible_components(gens):
    """Irreducible monomial ideals (as generator exponent tuples) intersecting to (gens)."""
    gens = _minimalize(gens)
    for g in gens:
        support = [i for i, e in enumerate(g) if e]
        if len(support) > 1:
            i = support[0]
            a = tuple(g[i] if j == i else 0 for j in range(len(g)))
            b = tuple(0 if j == i else g[j] for j in range(len(g)))
            return _irreducible_components(gens + [a]) + _irreducible_components(gens + [b])
    return [tuple(gens)]


def _contains_ideal(big, small):
    """Monomial ideal ``big`` ⊇ ``small``."""
    return all(any(_divides(h, g) for h in big) for g in small)


def _lcm(a, b):
    return tuple(max(i, j) for i, j in zip(a, b))


def _intersection(ideals):
    def meet(A, B):
        return _minimalize([_lcm(a, b) for a in A for b in B])
    return reduce(meet, ideals)


def monomial_ass(exps):
    """Ass(S/I) for a monomial ideal, as a set of frozensets of variable indices.

    The irredundant irreducible decomposition is unique; its radicals are the
    associated primes.
    """
    comps = list(dict.fromkeys(_irreducible_components(list(exps))))
    changed = True
    while changed:
        changed = False
        for i, c in enumerate(comps):
            rest = comps[:i] + comps[i + 1:]
            if rest and _contains_ideal(c, _intersection(rest)):
                comps = rest
                changed = True
                break
    return {frozenset(j for g in c for j, e in enumerate(g) if e) for c in comps}


def monomial_min_primes(exps):
    A = monomial_ass(exps)
    return {p for p in A if not any(q < p for q in A)}


def univariate_irreducible(text, var, p):
    x = sp.Symbol(var)
    return sp.Poly(to_expr(text), x, modulus=p).is_irreducible
