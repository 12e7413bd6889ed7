"""Associated primes of generalized local cohomology through finite formulas.

For an N-sequence x_1, ..., x_r in dimension > k inside I_M (r = depth_k),

    ⋃_{j≤l} Ass H^j_I(M, N)_{≥k} = ⋃_{j≤l} Ass(N/(x_1..x_j)N)_{≥k} ∩ V(I_M)   (l ≤ r)

and the same union equals ⋃_{j≤l} Ass Ext^j(S/J^t, N)_{≥k} for J = I_M, or
for S/(a_1^{t_1}, ..., a_s^{t_s}) built from any generators of J.  The left
side is never computed as a limit; the right sides are computed directly
and compared.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import permutations

from .decomp import DEFAULT_SEED, AssSet, PrimeIdeal
from .dimdepth import (FilterSpec, as_module, depth_k, extend_sequence, filter_primes,
                       ideal_IM, is_sequence_in_dim_gt_k, local_ass)
from .errors import ExceedsDepth, MalformedInput, NotASequence, NoTop, TooManyPermutations
from .fgmod import ModulePresentation, ext, quotient_by_sequence
from .groebner import Ideal, maximal_ideal

THEOREM = "theorem"
UNPROVEN = "unproven regime"


@dataclass
class TheoremSetResult:
    k: int
    l: int
    sets_by_j: tuple
    union: AssSet
    witness: tuple
    depth: object
    ideal: Ideal
    regime: str = THEOREM

    def to_json(self):
        return {
            "k": self.k,
            "l": self.l,
            "r": self.depth.to_json()["value"],
            "I_M": list(self.ideal.key()),
            "witness": [str(x) for x in self.witness],
            "sets_by_j": [s.to_json() for s in self.sets_by_j],
            "union": self.union.to_json(),
            "regime": self.regime,
        }


def _union(sets):
    out = AssSet()
    for s in sets:
        out = out | s
    return out


def _geq(S, k):
    return filter_primes(S, FilterSpec(k))


def quotient_sets(N, xs, k, upto, seed=DEFAULT_SEED):
    """[Ass(N/(x_1..x_j)N)_{≥k} for j = 0..upto] (local primes)."""
    N = as_module(N)
    return [_geq(local_ass(quotient_by_sequence(N, xs[:j]), seed), k) for j in range(upto + 1)]


def ass_lch_formula(I, M, N, k, l, seed=DEFAULT_SEED, witness=None):
    """⋃_{j≤l} Ass(N/(x_1..x_j)N)_{≥k} ∩ V(I_M) for an N-sequence in dimension > k in I_M.

    When depth_k(I_M, N) is infinite the right side is still computed from a
    greedily built sequence of length l, but the result is tagged
    ``"unproven regime"``.
    """
    M, N = as_module(M), as_module(N)
    if l < 0:
        raise MalformedInput("l must be non-negative")
    IM = ideal_IM(I, M)
    dv = depth_k(IM, N, k, seed)
    if not dv.infinite and l > dv.value:
        raise ExceedsDepth(f"l = {l} exceeds depth_{k}(I_M, N) = {dv}")
    if witness is not None:
        xs = [N.ring(x) for x in witness][:l]
        if len(xs) < l or not all(IM.contains(x) for x in xs):
            raise NotASequence("witness must contain l elements of I_M")
        if not is_sequence_in_dim_gt_k(xs, N, k, seed):
            raise NotASequence("witness is not an N-sequence in dimension > k")
    elif dv.infinite:
        xs = extend_sequence(IM, N, k, length=l, seed=seed)
        if len(xs) < l:
            raise ExceedsDepth("could not build a sequence of length l")
    else:
        xs = list(dv.witness[:l])
    sets = tuple(S.in_variety(IM) for S in quotient_sets(N, xs, k, l, seed))
    return TheoremSetResult(k, l, sets, _union(sets), tuple(xs), dv, IM,
                            UNPROVEN if dv.infinite else THEOREM)


def ass_top_lch(I, M, N, seed=DEFAULT_SEED):
    """Ass of the first nonvanishing H^r_I(M, N): Ass(N/(x_1..x_r)N) ∩ V(I_M), r = depth(I_M, N)."""
    M, N = as_module(M), as_module(N)
    IM = ideal_IM(I, M)
    dv = depth_k(IM, N, -1, seed)
    if dv.infinite:
        raise NoTop("N/I_M N vanishes locally, so no local cohomology module is nonzero")
    return local_ass(quotient_by_sequence(N, list(dv.witness)), seed).in_variety(IM)


def power_ideal(I, t=1, powers=None):
    """I^t, or (a_1^{t_1}, ..., a_s^{t_s}) for the listed generators of I."""
    if powers is None:
        if t < 1:
            raise MalformedInput("t must be positive")
        return I ** t
    gens = I.gens
    if len(powers) != len(gens) or any(e < 1 for e in powers):
        raise MalformedInput("need one positive exponent per generator")
    return Ideal(I.ring, [g ** e for g, e in zip(gens, powers)])


def ext_ass_sets(I, N, k, l, t=1, powers=None, seed=DEFAULT_SEED, check_depth=True):
    """⋃_{j≤l} Ass Ext^j(S/J, N)_{≥k} with J = I^t or the generator powers."""
    N = as_module(N)
    if check_depth:
        dv = depth_k(I, N, k, seed)
        if not dv.infinite and l > dv.value:
            raise ExceedsDepth(f"l = {l} exceeds depth_{k}(I, N) = {dv}")
    J = power_ideal(I, t, powers)
    C = ModulePresentation.cyclic(J)
    return _union(_geq(local_ass(ext(j, C, N), seed), k) for j in range(l + 1))


@dataclass
class PowerInvarianceReport:
    k: int
    exponents: tuple
    powered: AssSet
    plain: AssSet
    equal: bool
    with_max_ideal: tuple = field(default=None)

    def to_json(self):
        out = {
            "k": self.k,
            "exponents": list(self.exponents),
            "powered": self.powered.to_json(),
            "plain": self.plain.to_json(),
            "equal": self.equal,
        }
        if self.with_max_ideal is not None:
            a, b = self.with_max_ideal
            out["with_max_ideal"] = {"powered": a.to_json(), "plain": b.to_json(), "equal": a == b}
        return out


def power_invariance_check(xs, N, k, exponents, seed=DEFAULT_SEED):
    """Compare ⋃_{j≤r} Ass(N/(x_1^{n_1}..x_j^{n_j})N)_{≥k} with the unpowered union.

    For k = 1 the unfiltered unions with m adjoined are compared as well.
    """
    N = as_module(N)
    xs = [N.ring(x) for x in xs]
    exponents = tuple(exponents)
    if len(exponents) != len(xs):
        raise MalformedInput("one exponent per sequence element")
    check = is_sequence_in_dim_gt_k(xs, N, k, seed)
    if not check:
        raise NotASequence(f"not an N-sequence in dimension > {k} (fails at {check.failed_at})")
    r = len(xs)
    ys = [x ** e for x, e in zip(xs, exponents)]
    powered = _union(quotient_sets(N, ys, k, r, seed))
    plain = _union(quotient_sets(N, xs, k, r, seed))
    extra = None
    if k == 1:
        R = N.ring
        m = AssSet((PrimeIdeal(maximal_ideal(R), True, 0),))
        a = _union(quotient_sets(N, ys, -1, r, seed)) | m
        b = _union(quotient_sets(N, xs, -1, r, seed)) | m
        extra = (a, b)
    return PowerInvarianceReport(k, exponents, powered, plain, powered == plain, extra)


@dataclass
class StarSetResult:
    j: int
    k: int
    star: AssSet
    ext_sets: dict
    contained: bool
    permutable: bool

    def to_json(self):
        return {
            "j": self.j,
            "k": self.k,
            "star": self.star.to_json(),
            "ext_sets": {str(t): s.to_json() for t, s in sorted(self.ext_sets.items())},
            "contained": self.contained,
            "permutable": self.permutable,
        }


def is_permutable(xs, N, k, seed=DEFAULT_SEED):
    """Every ordering of xs is an N-sequence in dimension > k (brute force, len ≤ 4)."""
    if len(xs) > 4:
        raise TooManyPermutations(f"{len(xs)}! orderings is more than this check will try")
    return all(is_sequence_in_dim_gt_k(list(p), N, k, seed) for p in permutations(xs))


def bn_star_set(xs, N, I, k, j, seed=DEFAULT_SEED, ts=(1, 2, 3)):
    """The comparison set Ass(N/(x_1..x_j)N)_{≥k+1} ∪ ⋃_{i≤j} Ass(N/(x_1..x_i)N)_k,
    and whether ⋃_t Ass Ext^j(S/I^t, N)_{≥k} lies inside it.
    """
    N = as_module(N)
    xs = [N.ring(x) for x in xs]
    if j > len(xs) or j < 0:
        raise MalformedInput("j must be between 0 and the sequence length")
    permutable = is_permutable(xs[:j], N, k, seed)
    per_i = [local_ass(quotient_by_sequence(N, xs[:i]), seed) for i in range(j + 1)]
    star = _geq(per_i[j], k + 1)
    for S in per_i:
        star = star | AssSet(tuple(p for p in S if p.dim == k))
    ext_sets = {}
    for t in ts:
        C = ModulePresentation.cyclic(power_ideal(I, t))
        ext_sets[t] = _geq(local_ass(ext(j, C, N), seed), k)
    contained = all(S <= star for S in ext_sets.values())
    return StarSetResult(j, k, star, ext_sets, contained, permutable)
