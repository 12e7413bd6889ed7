"""Dimension filters, N-sequences in dimension > k, prime avoidance and depth_k.

All prime sets here are local: only primes inside m = (all variables) are
kept, and for those dim R/p is the same in the local ring and in the
polynomial ring.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass
from itertools import product
from typing import NamedTuple

from .decomp import DEFAULT_SEED, AssSet, associated_primes, minimal_primes
from .errors import (FieldTooSmall, MalformedInput, NoAvoider, NotInMaximalIdeal,
                     NotLocal)
from .fgmod import ModulePresentation, annihilator, quotient_by_ideal, quotient_by_sequence
from .groebner import Ideal

INFINITY = math.inf
LADDER = tuple(range(1, 17))
_RANDOM_DRAWS = 64


@dataclass(frozen=True)
class FilterSpec:
    """Keep primes with dim R/p ≥ k, or > k when ``strict``."""

    k: int
    strict: bool = False

    def __post_init__(self):
        if self.k < -1:
            raise MalformedInput("filter index must be at least -1")

    def keeps(self, d):
        return d > self.k if self.strict else d >= self.k


def filter_primes(S, spec):
    return AssSet(tuple(p for p in S if spec.keeps(p.dim)))


@dataclass(frozen=True)
class DepthValue:
    value: float
    witness: tuple = ()

    @property
    def infinite(self):
        return self.value == INFINITY

    def to_json(self):
        return {
            "value": "infinity" if self.infinite else int(self.value),
            "witness": [str(x) for x in self.witness],
        }

    def __str__(self):
        return "∞" if self.infinite else str(int(self.value))


class SequenceCheck(NamedTuple):
    ok: bool
    failed_at: int | None = None

    def __bool__(self):
        return self.ok


# --- local helpers ------------------------------------------------------------------------

def as_module(N):
    return ModulePresentation.cyclic(N) if isinstance(N, Ideal) else N


def local_ass(N, seed=DEFAULT_SEED):
    """Ass(N_m) as primes of the polynomial ring contained in m."""
    return associated_primes(as_module(N), seed).local()


def local_dim(N, seed=DEFAULT_SEED):
    """dim N_m; -1 when N_m = 0."""
    A = annihilator(as_module(N))
    if A.is_unit():
        return -1
    mins = minimal_primes(A, seed).local()
    return max((p.dim for p in mins), default=-1)


def _require_in_m(x, i=None):
    if x.constant_term() != 0:
        where = f" (position {i})" if i is not None else ""
        raise NotInMaximalIdeal(f"{x} is not in the maximal ideal{where}")


# --- the sequence predicate -------------------------------------------------------------

def is_sequence_in_dim_gt_k(xs, N, k, seed=DEFAULT_SEED):
    """Literal check: x_i avoids every p in Ass(N/(x_1..x_{i-1})N) with dim R/p > k.

    The failing position is reported 1-based.
    """
    N = as_module(N)
    xs = [N.ring(x) for x in xs]
    for i, x in enumerate(xs, 1):
        _require_in_m(x, i)
    spec = FilterSpec(k, strict=True)
    for i, x in enumerate(xs, 1):
        Q = quotient_by_sequence(N, xs[: i - 1])
        for p in filter_primes(local_ass(Q, seed), spec):
            if p.ideal.contains(x):
                return SequenceCheck(False, i)
    return SequenceCheck(True)


# --- prime avoidance ----------------------------------------------------------------------

def avoid_primes(I, primes, seed=DEFAULT_SEED):
    """An element of I ∩ m outside every prime in ``primes``.

    Search order: single generators (in a seed-dependent order), then
    combinations Σ c_i g_i with coefficients from 0..16, then random
    combinations, then random combinations with monomial multipliers.
    """
    R = I.ring
    primes = list(primes)
    for p in primes:
        if I.issubset(p.ideal):
            raise NoAvoider(f"{I!r} is contained in {p}", prime=p)
    gens = [g for g in I.gens if not g.is_zero()]
    for g in gens:
        _require_in_m(g)
    rng = random.Random(seed)
    order = list(range(len(gens)))
    rng.shuffle(order)
    gens = [gens[i] for i in order]

    def good(x):
        return not x.is_zero() and all(not p.ideal.contains(x) for p in primes)

    for g in gens:
        if good(g):
            return g
    s = len(gens)
    for top in LADDER:
        for cs in product(range(top + 1), repeat=s):
            if max(cs) != top:
                continue
            x = sum((R.const(c) * g for c, g in zip(cs, gens) if c), R.zero())
            if good(x):
                return x
    p = R.field.p
    draw = (lambda: rng.randrange(1, p)) if p else (lambda: rng.randrange(1, 1 << 20))
    for _ in range(_RANDOM_DRAWS):
        x = sum((R.const(draw()) * g for g in gens), R.zero())
        if good(x):
            return x
    variables = [R.one()] + R.gens()
    for _ in range(_RANDOM_DRAWS):
        x = sum((R.const(draw()) * rng.choice(variables) * rng.choice(variables) * g for g in gens),
                R.zero())
        if good(x):
            return x
    raise FieldTooSmall("prime avoidance search exhausted; the coefficient field is too small")


# --- depth_k ---------------------------------------------------------------------------------

def extend_sequence(I, N, k, length=None, start=(), seed=DEFAULT_SEED):
    """Greedily extend ``start`` to an N-sequence in dimension > k inside I.

    Stops after ``length`` elements, or as soon as I lies in an associated
    prime of dimension > k of the current quotient.
    """
    N = as_module(N)
    if not I.in_maximal():
        raise NotLocal(f"{I!r} is not contained in the maximal ideal")
    seq = list(start)
    spec = FilterSpec(k, strict=True)
    bound = N.ring.nvars + len(seq) + 1
    step = 0
    while length is None or len(seq) < length:
        Q = quotient_by_sequence(N, seq)
        A = filter_primes(local_ass(Q, seed), spec)
        if any(I.issubset(p.ideal) for p in A):
            break
        seq.append(avoid_primes(I, A, seed + step))
        step += 1
        if length is None and len(seq) > bound:
            raise AssertionError("greedy sequence longer than dim N")
    return seq


def depth_k(I, N, k, seed=DEFAULT_SEED):
    """depth_k(I, N) with a witness sequence; ∞ when dim N/IN ≤ k."""
    N = as_module(N)
    if not I.in_maximal():
        raise NotLocal(f"{I!r} is not contained in the maximal ideal")
    if local_dim(quotient_by_ideal(N, I), seed) <= k:
        return DepthValue(INFINITY)
    seq = extend_sequence(I, N, k, seed=seed)
    return DepthValue(len(seq), tuple(seq))


def ideal_IM(I, M):
    """I_M = Ann(M/IM)."""
    return annihilator(quotient_by_ideal(as_module(M), I))
