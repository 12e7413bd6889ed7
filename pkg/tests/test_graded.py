import pytest
from hypothesis import given
from hypothesis import strategies as st

from lcass.decomp import associated_primes
from lcass.errors import Inconclusive, MalformedInput
from lcass.fgmod import ModulePresentation, annihilator, quotient_by_ideal
from lcass.graded import (GradedAlgebraSpec, GradedModulePresentation, common_sequence,
                          graded_component, make_family, power_component, stabilize_ass,
                          stabilize_depth_k, stabilize_theorem_sets)
from lcass.groebner import Ideal
from lcass.polycore import Ring

from conftest import corpus_files, load_env, poly_texts


def ideal(R, *gens):
    return Ideal(R, [R(g) for g in gens])


def free_family(R, ynames=("u",)):
    return GradedModulePresentation.make(GradedAlgebraSpec.make(R, ynames), [0])


def same_module(A, B):
    return annihilator(A) == annihilator(B) and associated_primes(A) == associated_primes(B)


def test_components_of_free_families(R2):
    C = graded_component(free_family(R2), 2).pruned()
    assert C.rank == 1 and not C.relations
    C = graded_component(free_family(R2, ("u", "v")), 1).pruned()
    assert C.rank == 2 and not C.relations


def test_component_of_a_koszul_cokernel(R2):
    A = GradedAlgebraSpec.make(R2, ("u", "v"))
    G = GradedModulePresentation.make(A, [0], [("x*u + y*v",)])
    C = graded_component(G, 1)
    assert C.rank == 2
    target = ModulePresentation(R2, 2, [(R2("x"), R2("y"))])
    assert C.key() == target.key()


def test_rees_families(R2):
    S = ModulePresentation.free(R2, 1)
    G = make_family("rees", ideal(R2, "x"), S)
    assert G.algebra.relations == ()
    assert same_module(graded_component(G, 3), S)
    I = ideal(R2, "x^2", "x*y")
    G = make_family("rees", I, S, ynames=("u", "v"))
    RY = G.algebra.ring
    assert Ideal(RY, list(G.algebra.relations)) == Ideal(RY, [RY("y*u - x*v")])
    for n in range(4):
        assert same_module(graded_component(G, n), power_component(I, S, n))
    B = ModulePresentation.cyclic(ideal(R2, "x^2"))
    G = make_family("rees", ideal(R2, "y"), B)
    for n in range(4):
        assert same_module(graded_component(G, n), B)


def test_custom_family_validation(R2):
    with pytest.raises(MalformedInput):
        make_family("custom", None, R2, ynames=["x"])
    with pytest.raises(MalformedInput):
        make_family("custom", None, R2, ynames=["u"], columns=[["u + x"]])


def test_stability_examples(R2):
    rep = stabilize_ass(free_family(R2), (0, 6))
    assert rep.stable and rep.onset == 0 and rep.stable_value == [{"gens": [], "dim": 2}]
    G = make_family("rees", ideal(R2, "y"), ModulePresentation.cyclic(ideal(R2, "x^2")))
    rep = stabilize_ass(G, (0, 6))
    assert rep.stable and rep.stable_value == [{"gens": ["x"], "dim": 1}]
    G2 = make_family("rees", ideal(R2, "x^2", "x*y"), ModulePresentation.free(R2, 1))
    assert stabilize_ass(G2, (0, 6)).stable_value == [{"gens": [], "dim": 2}]


def test_depth_stability_examples(R2):
    rep = stabilize_depth_k(free_family(R2), ideal(R2, "x", "y"), -1, (0, 6))
    assert rep.stable_value == 2 and rep.onset == 0
    G = make_family("rees", ideal(R2, "y"), ModulePresentation.cyclic(ideal(R2, "x^2")))
    assert stabilize_depth_k(G, ideal(R2, "y"), -1, (0, 6)).stable_value == 1
    assert stabilize_depth_k(G, ideal(R2, "y"), 0, (0, 6)).stable_value == "infinity"


def test_common_sequences(R2):
    rep = common_sequence(free_family(R2), ideal(R2, "x", "y"), -1, (0, 6))
    assert rep.valid_past_onset() and all(ok for _, ok in rep.table)
    G = make_family("rees", ideal(R2, "y"), ModulePresentation.cyclic(ideal(R2, "x^2")))
    rep = common_sequence(G, ideal(R2, "y"), -1, (0, 6))
    assert [str(x) for x in rep.sequence] == ["y"] and all(ok for _, ok in rep.table)
    with pytest.raises(Inconclusive):
        common_sequence(free_family(R2), ideal(R2, "x", "y"), 1, (0, 6))


def test_transient_embedded_component():
    path = [f for f in corpus_files("g11")][0]
    env = load_env(path)
    rep = common_sequence(env.objects["G"], env.objects["I"], -1)
    assert rep.onset == 1
    assert dict(rep.table)[0] is False
    assert rep.valid_past_onset()


def test_theorem_set_stability_examples(R2):
    S = ModulePresentation.free(R2, 1)
    rep = stabilize_theorem_sets(free_family(R2), ideal(R2, "x"), S, -1, 1, (0, 6))
    assert rep.stable and rep.stable_value == [{"gens": ["x"], "dim": 1}]
    G = make_family("rees", ideal(R2, "y"), ModulePresentation.cyclic(ideal(R2, "x^2")))
    rep = stabilize_theorem_sets(G, ideal(R2, "y"), S, -1, 1, (0, 6))
    assert rep.stable and rep.stable_value == [{"gens": ["x", "y"], "dim": 0}]
    assert all(ok for _, ok in rep.extra["oracle_t1"])
    rep = stabilize_theorem_sets(G, ideal(R2, "y"), S, 1, 0, (0, 4))
    assert {r for _, r in rep.extra["regime"]} == {"unproven regime"}


def test_window_verdicts(R2):
    rep = stabilize_ass(free_family(R2), (0, 1), window=3)
    assert not rep.stable and rep.verdict == "not-stable-in-window"
    with pytest.raises(MalformedInput):
        stabilize_ass(free_family(R2), (0, 4), window=1)


small = st.lists(poly_texts(("x", "y"), max_deg=2, max_terms=2), min_size=1, max_size=2)


@given(small, st.sampled_from([None, ["x"], ["x", "y"], ["x^2 - y"]]))
def test_rees_components_match_powers(gens, mgens):
    R = Ring(32003, "x,y")
    I = Ideal(R, [R(g) for g in gens])
    if I.is_zero():
        return
    M = ModulePresentation.free(R, 1) if mgens is None else ModulePresentation.cyclic(ideal(R, *mgens))
    G = make_family("rees", I, M)
    for n in range(3):
        assert same_module(graded_component(G, n), power_component(I, M, n))


@given(small)
def test_associated_graded_components(gens):
    R = Ring(32003, "x,y")
    I = Ideal(R, [R(g) for g in gens])
    if I.is_zero():
        return
    S = ModulePresentation.free(R, 1)
    G = make_family("assoc-graded-pullback", I, S)
    for n in range(3):
        C = graded_component(G, n)
        assert I.issubset(annihilator(C))
        assert same_module(C, quotient_by_ideal(power_component(I, S, n), I))
