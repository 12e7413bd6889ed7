from hypothesis import given
from hypothesis import strategies as st

from lcass.decomp import (AssSet, PrimeIdeal, associated_primes, is_associated_oracle,
                          minimal_primes, oracle_candidates)
from lcass.fgmod import ModulePresentation
from lcass.groebner import Ideal
from lcass.polycore import Ring

import oracles
from conftest import monomials, poly_texts


def ideal(R, *gens):
    return Ideal(R, [R(g) for g in gens])


def keys(S):
    return {p.key() for p in S}


def prime(R, *gens):
    return PrimeIdeal(ideal(R, *gens))


def test_minimal_primes_examples(R2):
    assert keys(minimal_primes(ideal(R2, "x^2", "x*y"))) == {("x",)}
    assert keys(minimal_primes(ideal(R2, "x*y"))) == {("x",), ("y",)}
    R13 = Ring(13, "x,y")
    assert keys(minimal_primes(ideal(R13, "x^2 + y^2"))) == {("x + 5*y",), ("x - 5*y",)}


def test_associated_primes_examples(R2):
    N = ModulePresentation.cyclic(ideal(R2, "x^2", "x*y"))
    A = associated_primes(N)
    assert [p.key() for p in A] == [("x",), ("x", "y")]
    assert [p.dim for p in A] == [1, 0]
    p = ideal(R2, "x^2 + y^3 - x*y")
    assert keys(associated_primes(ModulePresentation.cyclic(p))) == {p.key()}
    D = ModulePresentation.cyclic(ideal(R2, "x")) + ModulePresentation.cyclic(ideal(R2, "x", "y"))
    assert keys(associated_primes(D)) == {("x",), ("x", "y")}


def test_definition_level_oracle(R2):
    N = ModulePresentation.cyclic(ideal(R2, "x^2", "x*y"))
    assert is_associated_oracle(prime(R2, "x"), N)
    assert not is_associated_oracle(prime(R2, "y"), N)
    assert not is_associated_oracle(prime(R2, "x", "y"), ModulePresentation.free(R2, 1))


def test_ass_set_is_sorted_and_deduplicated(R2):
    a, b = prime(R2, "x", "y"), prime(R2, "x")
    S = AssSet((a, b, prime(R2, "y", "x")))
    assert len(S) == 2
    assert S.to_json() == [{"gens": ["x"], "dim": 1}, {"gens": ["x", "y"], "dim": 0}]
    assert S.at_least(1).keys() == (("x",),)


monomial_ideal3 = st.lists(monomials(3, 4).filter(any), min_size=1, max_size=4)


def _mono_text(e):
    return "*".join(f"{v}^{a}" for v, a in zip("xyz", e) if a)


@given(monomial_ideal3)
def test_monomial_ass_matches_irreducible_decomposition(exps):
    R = Ring(32003, "x,y,z")
    J = Ideal(R, [R(_mono_text(e)) for e in exps])
    got = {frozenset(R.variables.index(str(g)) for g in p.gens)
           for p in associated_primes(ModulePresentation.cyclic(J))}
    assert got == oracles.monomial_ass(exps)


@given(monomial_ideal3)
def test_monomial_minimal_primes(exps):
    R = Ring(32003, "x,y,z")
    J = Ideal(R, [R(_mono_text(e)) for e in exps])
    got = {frozenset(R.variables.index(str(g)) for g in p.gens) for p in minimal_primes(J)}
    assert got == oracles.monomial_min_primes(exps)


ideals2 = st.lists(poly_texts(("x", "y"), max_deg=3, max_terms=3), min_size=1, max_size=2)
ideals3 = st.lists(poly_texts(("x", "y", "z"), max_deg=2, max_terms=3), min_size=1, max_size=2)


def _check_min_primes(gens, names):
    R = Ring(32003, names)
    J = Ideal(R, [R(g) for g in gens])
    if J.is_unit() or J.is_zero():
        return
    mins = minimal_primes(J)
    primes = [list(p.key()) for p in mins]
    assert oracles.same_radical_as_intersection(gens, primes, names)
    # pairwise incomparable
    for p in mins:
        for q in mins:
            if p is not q:
                assert not p.ideal.issubset(q.ideal)
    # another seed finds the same primes
    assert mins == minimal_primes(J, seed=7)


@given(ideals2)
def test_minimal_primes_radical_two_variables(gens):
    _check_min_primes(gens, ("x", "y"))


@given(ideals3)
def test_minimal_primes_radical_three_variables(gens):
    _check_min_primes(gens, ("x", "y", "z"))


@given(ideals2)
def test_ehv_agrees_with_definition_oracle(gens):
    R = Ring(32003, "x,y")
    M = ModulePresentation.cyclic(Ideal(R, [R(g) for g in gens]))
    ass = associated_primes(M)
    for p in oracle_candidates(M):
        assert is_associated_oracle(p, M) == (p in ass)
