from hypothesis import given
from hypothesis import strategies as st

from lcass.decomp import associated_primes
from lcass.fgmod import (ModulePresentation, annihilator, compose_is_zero, ext, free_resolution,
                         hom, hom_direct, is_I_torsion, quotient_by_sequence, support_dim,
                         syzygies)
from lcass.groebner import Ideal, colon
from lcass.polycore import Ring

from conftest import poly_texts


def cyc(R, *gens):
    return ModulePresentation.cyclic(Ideal(R, [R(g) for g in gens]))


def span(R, *vecs):
    return ModulePresentation(R, len(vecs[0]), [tuple(R(e) for e in v) for v in vecs])


def test_module_normal_forms(R2):
    x, y = R2.gens()
    M = span(R2, (x, 0), (0, y))
    assert M.nf([x * (y + 1), R2.zero()]) == [0, 0]
    assert span(R2, (x, 0)).nf([y, R2.zero()]) == [y, 0]
    assert span(R2, (x, 0), (y, 0)).nf([x + y, R2.zero()]) == [0, 0]


def test_syzygies(R2):
    x, y = R2.gens()
    for gens in ([(x,), (y,)], [(x ** 2,), (x * y,)]):
        syz = syzygies(gens)
        koszul = span(R2, (y, -x))
        assert all(koszul.nf(list(s)) == [0, 0] for s in syz)
        assert ModulePresentation(R2, 2, syz).nf([y, -x]) == [0, 0]
    assert syzygies([(R2.one(),)]) == []


def test_resolution_ranks(R2):
    assert free_resolution(cyc(R2, "x", "y"), 3).ranks[:3] == [1, 2, 1]
    assert free_resolution(ModulePresentation.free(R2, 1), 2).ranks[:2] == [1, 0]
    res = free_resolution(cyc(R2, "x^2", "x*y"), 3)
    assert res.ranks[:3] == [1, 2, 1]
    assert compose_is_zero(res)


def test_annihilators(R2):
    J = Ideal(R2, [R2("x^2 + y"), R2("x*y")])
    assert annihilator(ModulePresentation.cyclic(J)) == J
    assert annihilator(span(R2, ("x", 0), (0, "y"))).key() == ("x*y",)
    assert annihilator(ModulePresentation.free(R2, 2)).is_zero()


def test_quotients_and_dimension(R2):
    N = cyc(R2, "x^2", "x*y")
    assert quotient_by_sequence(N, []).key() == N.key()
    Q = quotient_by_sequence(N, [R2("y")])
    assert annihilator(Q) == Ideal(R2, [R2("x^2"), R2("y")])
    assert support_dim(cyc(R2, "x", "y")) == 0
    assert support_dim(N) == 1
    assert span(R2, (1, 0), (0, 1)).is_zero()


def test_torsion(R2):
    assert is_I_torsion(cyc(R2, "x^2"), Ideal(R2, [R2("x")]))
    assert not is_I_torsion(ModulePresentation.free(R2, 1), Ideal(R2, [R2("x")]))
    assert is_I_torsion(cyc(R2, "x^2", "y"), Ideal(R2, [R2("x"), R2("y")]))


def test_known_ext_modules(R2):
    S = ModulePresentation.free(R2, 1)
    E1 = ext(1, cyc(R2, "x"), S)
    assert annihilator(E1).key() == ("x",) and E1.rank == 1
    assert annihilator(ext(1, cyc(R2, "x^2"), S)).key() == ("x^2",)
    m = cyc(R2, "x", "y")
    assert ext(0, m, S).is_zero() and ext(1, m, S).is_zero()
    assert annihilator(ext(2, m, S)) == Ideal(R2, R2.gens())


def test_hom_of_cyclics_is_a_colon(R2):
    # Hom(S/J, S/I) ≅ (I : J)/I, whose annihilator is I : (I : J)
    I = Ideal(R2, [R2("x^2"), R2("x*y")])
    J = Ideal(R2, [R2("x")])
    H = hom(ModulePresentation.cyclic(J), ModulePresentation.cyclic(I))
    assert annihilator(H) == colon(I, colon(I, J))


small_ideal = st.lists(poly_texts(("x", "y"), max_deg=2, max_terms=2), min_size=1, max_size=2)


@given(small_ideal, small_ideal)
def test_ext_zero_agrees_with_direct_hom(a, b):
    R = Ring(32003, "x,y")
    M = ModulePresentation.cyclic(Ideal(R, [R(g) for g in a]))
    N = ModulePresentation.cyclic(Ideal(R, [R(g) for g in b]))
    h0, hd = ext(0, M, N), hom_direct(M, N)
    assert annihilator(h0) == annihilator(hd)
    assert associated_primes(h0) == associated_primes(hd)


@given(small_ideal, small_ideal)
def test_resolution_is_a_complex_and_ext_vanishes_above_dimension(a, b):
    R = Ring(32003, "x,y")
    M = ModulePresentation.cyclic(Ideal(R, [R(g) for g in a]))
    N = ModulePresentation.cyclic(Ideal(R, [R(g) for g in b]))
    res = free_resolution(M, 3)
    assert compose_is_zero(res)
    assert res.ranks[3] == 0
    assert ext(3, M, N).is_zero()


@given(small_ideal)
def test_ext_is_killed_by_both_annihilators(a):
    R = Ring(32003, "x,y")
    J = Ideal(R, [R(g) for g in a])
    M = ModulePresentation.cyclic(J)
    N = span(R, ("x", "y", 0), (0, "x", "y^2"))
    for j in range(3):
        A = annihilator(ext(j, M, N))
        assert J.issubset(A)
        assert annihilator(N).issubset(A)
