import math

import pytest
from hypothesis import given
from hypothesis import strategies as st

from lcass.cli import depth_check
from lcass.decomp import AssSet, PrimeIdeal
from lcass.dimdepth import (DepthValue, FilterSpec, avoid_primes, depth_k, filter_primes,
                            ideal_IM, is_sequence_in_dim_gt_k, local_ass)
from lcass.errors import NoAvoider, NotInMaximalIdeal, NotLocal
from lcass.fgmod import ModulePresentation, quotient_by_sequence
from lcass.groebner import Ideal
from lcass.polycore import Ring

from conftest import poly_texts


def ideal(R, *gens):
    return Ideal(R, [R(g) for g in gens])


def cyc(R, *gens):
    return ModulePresentation.cyclic(ideal(R, *gens))


def prime(R, *gens):
    return PrimeIdeal(ideal(R, *gens))


def test_filters(R2):
    S = AssSet((prime(R2, "x"), prime(R2, "x", "y")))
    assert filter_primes(S, FilterSpec(1)).keys() == (("x",),)
    assert filter_primes(S, FilterSpec(-1)) == S
    assert len(filter_primes(AssSet((prime(R2, "x", "y"),)), FilterSpec(0, strict=True))) == 0


def test_sequence_predicate(R2):
    S = ModulePresentation.free(R2, 1)
    assert is_sequence_in_dim_gt_k(["x", "y"], S, -1)
    chk = is_sequence_in_dim_gt_k(["x", "x"], S, -1)
    assert not chk and chk.failed_at == 2
    N = cyc(R2, "x^2", "x*y")
    assert is_sequence_in_dim_gt_k(["x"], N, 1)
    with pytest.raises(NotInMaximalIdeal):
        is_sequence_in_dim_gt_k(["x + 1"], S, -1)


def test_prime_avoidance(R2):
    x = avoid_primes(ideal(R2, "x", "y"), [prime(R2, "x"), prime(R2, "y")])
    assert not prime(R2, "x").ideal.contains(x) and not prime(R2, "y").ideal.contains(x)
    assert avoid_primes(ideal(R2, "x"), [prime(R2, "y")]) == R2("x")
    with pytest.raises(NoAvoider):
        avoid_primes(ideal(R2, "x"), [prime(R2, "x")])


def test_depth_examples(R2):
    S = ModulePresentation.free(R2, 1)
    d = depth_k(ideal(R2, "x", "y"), S, -1)
    assert d.value == 2 and is_sequence_in_dim_gt_k(list(d.witness), S, -1)
    assert depth_k(ideal(R2, "x"), S, 0).value == 1
    assert depth_k(ideal(R2, "x"), S, 1).infinite
    with pytest.raises(NotLocal):
        depth_k(ideal(R2, "x + 1"), S, -1)


def test_depth_serialization():
    assert DepthValue(math.inf).to_json() == {"value": "infinity", "witness": []}
    assert str(DepthValue(math.inf)) == "∞"


def test_ideal_IM(R2):
    S = ModulePresentation.free(R2, 1)
    J = ideal(R2, "x^2", "x*y + y^2")
    assert ideal_IM(J, S) == J
    assert ideal_IM(ideal(R2, "y"), cyc(R2, "x")) == ideal(R2, "x", "y")
    assert ideal_IM(ideal(R2, "x"), cyc(R2, "x")) == ideal(R2, "x")


small = st.lists(poly_texts(("x", "y", "z"), max_deg=2, max_terms=2), min_size=1, max_size=2)


def _local_setup(gens, igens):
    R = Ring(32003, "x,y,z")
    N = ModulePresentation.cyclic(Ideal(R, [R(g) for g in gens]))
    I = Ideal(R, [R(g) - R(g).constant_term() for g in igens])
    return R, N, I


@given(small, small)
def test_witness_is_a_maximal_sequence(gens, igens):
    R, N, I = _local_setup(gens, igens)
    if I.is_zero():
        return
    for k in (-1, 0, 1):
        d = depth_k(I, N, k)
        if d.infinite:
            continue
        xs = list(d.witness)
        assert all(I.contains(x) for x in xs)
        assert is_sequence_in_dim_gt_k(xs, N, k)
        top = filter_primes(local_ass(quotient_by_sequence(N, xs)), FilterSpec(k, strict=True))
        assert any(I.issubset(p.ideal) for p in top)


@given(small, small)
def test_depth_grows_with_k(gens, igens):
    R, N, I = _local_setup(gens, igens)
    if I.is_zero():
        return
    vals = [depth_k(I, N, k).value for k in (-1, 0, 1)]
    assert vals[0] <= vals[1] <= vals[2]


@given(small, small)
def test_depth_matches_ext_values(gens, igens):
    R, N, I = _local_setup(gens, igens)
    if I.is_zero():
        return
    for k in (-1, 0, 1):
        assert depth_check(I, N, k)["equal"]


@given(small, st.integers(0, 1000))
def test_depth_value_is_seed_independent(gens, seed):
    R = Ring(32003, "x,y,z")
    N = ModulePresentation.cyclic(Ideal(R, [R(g) for g in gens]))
    I = ideal(R, "x", "y", "z")
    assert depth_k(I, N, -1, seed).value == depth_k(I, N, -1, 42).value
