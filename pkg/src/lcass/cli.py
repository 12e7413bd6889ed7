"""Run ``.lch`` sessions and emit canonical reports.

    lcass run session.lch [--seed 42] [--format json|text] [--out PATH]
                          [--window 3] [--range 0..12] [--t-range 1..3]
                          [--timeout-secs N]
    lcass print session.lch      # canonical form of the session

Every flag can also be set through an environment variable named
``LCASS_<FLAG>`` (for example ``LCASS_SEED``); an explicit flag wins.
Options written on a command inside the session (``range``, ``window``,
``t``, ``seeds``) win over both.

Exit codes: 0 success, 2 parse error, 3 math-domain error or timeout,
4 unsupported field.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import os
import signal
import sys
from itertools import product

from . import __version__
from .decomp import (DEFAULT_SEED, AssSet, associated_primes, is_associated_oracle,
                     minimal_primes, oracle_candidates)
from .dimdepth import (INFINITY, as_module, depth_k, ideal_IM, is_sequence_in_dim_gt_k,
                       local_ass, local_dim)
from .errors import ContextMismatch, LcassError, MalformedInput, UnsupportedField
from .fgmod import (ModulePresentation, annihilator, compose_is_zero, ext, free_resolution,
                    hom, hom_direct, support_dim)
from .graded import (DEFAULT_RANGE, DEFAULT_WINDOW, GradedModulePresentation, common_sequence,
                     graded_component, make_family, stabilize_ass, stabilize_depth_k,
                     stabilize_theorem_sets)
from .groebner import Ideal
from .polycore import Ring
from .session import (Call, GradedDecl, IdealDecl, IntDecl, ListArg, ModuleDecl, Num, Poly,
                      Ref, RingDecl, SessionError, _call_refs, make_ring, parse_session)
from .theorems import (ass_lch_formula, ass_top_lch, bn_star_set, ext_ass_sets,
                       power_invariance_check)

EXIT_OK, EXIT_PARSE, EXIT_MATH, EXIT_FIELD = 0, 2, 3, 4
DEFAULT_T_RANGE = (1, 3)


class Timeout(LcassError):
    code = "timeout"


# --- environment ---------------------------------------------------------------------------

class Environment:
    """Declared objects of a session plus run settings."""

    def __init__(self, seed=DEFAULT_SEED, window=DEFAULT_WINDOW, nrange=DEFAULT_RANGE,
                 t_range=DEFAULT_T_RANGE):
        self.seed = seed
        self.window = window
        self.nrange = tuple(nrange)
        self.t_range = tuple(t_range)
        self.objects = {}
        self.decls = {}

    def declare(self, node):
        self.decls[node.name] = node
        if isinstance(node, RingDecl):
            obj = make_ring(node.field, node.variables)
        elif isinstance(node, IdealDecl):
            R = self.objects[node.ring]
            obj = Ideal(R, [R(g) for g in node.gens])
        elif isinstance(node, ModuleDecl):
            obj = self._module(node)
        elif isinstance(node, GradedDecl):
            obj = self._graded(node)
        else:
            obj = node.value
        self.objects[node.name] = obj

    def _module(self, node):
        R = self.objects[node.ring]
        if node.kind == "coker":
            return ModulePresentation.from_rows(R, node.data)
        if node.kind == "quotient":
            return ModulePresentation.cyclic(self.objects[node.data[1]])
        return ModulePresentation.free(R, node.data[1])

    def _graded(self, node):
        c = node.call
        if node.kind in ("rees", "assocgraded"):
            I = self.objects[c.args[0].name]
            M = self.module(self.objects[c.args[1].name])
            kind = "rees" if node.kind == "rees" else "assoc-graded-pullback"
            return make_family(kind, I, M)
        R = self.objects[node.ring]
        ys = [a.name for a in c.kw("vars").items]
        degrees = [a.value for a in c.kw("degrees", ListArg((Num(0),))).items]
        rels = [p.text for p in c.kw("relations", ListArg(())).items]
        cols = [[p.text for p in col.items] for col in c.kw("columns", ListArg(())).items]
        return make_family("custom", None, R, ynames=ys, relations=rels, degrees=degrees,
                           columns=cols)

    # argument coercion
    def value(self, a):
        if isinstance(a, Ref):
            return self.objects[a.name]
        if isinstance(a, Num):
            return a.value
        if isinstance(a, Poly):
            return a.text
        if isinstance(a, ListArg):
            return [self.value(x) for x in a.items]
        if isinstance(a, Call):
            R = self.objects[a.args[0].name]
            if a.name == "free":
                return ModulePresentation.free(R, self.value(a.args[1]) if len(a.args) > 1 else 1)
            return ModulePresentation.cyclic(self.objects[a.args[1].name])
        raise MalformedInput(f"cannot evaluate {a!r}")

    @staticmethod
    def module(x):
        if isinstance(x, Ring):
            return ModulePresentation.free(x, 1)
        if isinstance(x, (Ideal, ModulePresentation)):
            return as_module(x)
        raise MalformedInput(f"expected a module, got {type(x).__name__}")

    def input_hashes(self, call):
        """sha256 of the canonical declaration text of every name the call depends on."""
        seen = {}
        pending = _call_refs(call)
        while pending:
            n = pending.pop()
            if n in seen or n not in self.decls:
                continue
            d = self.decls[n]
            seen[n] = hashlib.sha256(d.show().encode()).hexdigest()
            pending += _decl_refs(d)
        return dict(sorted(seen.items()))


def _decl_refs(d):
    if isinstance(d, (IdealDecl, ModuleDecl)):
        out = [d.ring]
        if isinstance(d, ModuleDecl) and d.kind == "quotient":
            out.append(d.data[1])
        return out
    if isinstance(d, GradedDecl):
        return [d.ring] + _call_refs(d.call)
    return []


# --- argument binding -------------------------------------------------------------------------

_MISSING = object()


def bind(call, params, env):
    """Match positional and keyword arguments of ``call`` against ``params``.

    ``params`` is a list of names; a name ending in ``?`` is optional.
    """
    names = [p.rstrip("?") for p in params]
    out = {n: _MISSING for n in names}
    if len(call.args) > len(names):
        raise MalformedInput(f"{call.name} takes at most {len(names)} arguments")
    for n, a in zip(names, call.args):
        out[n] = env.value(a)
    for k, a in call.kwargs:
        if k not in out:
            raise MalformedInput(f"{call.name} has no argument {k!r}")
        if out[k] is not _MISSING:
            raise MalformedInput(f"{call.name} got {k!r} twice")
        out[k] = env.value(a)
    for p, n in zip(params, names):
        if out[n] is _MISSING:
            if not p.endswith("?"):
                raise MalformedInput(f"{call.name} is missing argument {n!r}")
            out[n] = None
    return out


def _int(x, what):
    if not isinstance(x, int):
        raise MalformedInput(f"{what} must be an integer")
    return x


def _ideal(x, what="ideal"):
    if not isinstance(x, Ideal):
        raise MalformedInput(f"{what} must be an ideal")
    return x


def _graded(x):
    if not isinstance(x, GradedModulePresentation):
        raise MalformedInput("expected a graded family")
    return x


def _polys(R, xs):
    if not isinstance(xs, list):
        xs = [xs]
    return [R(x) for x in xs]


def _same_ring(*objs):
    rings = {id(o if isinstance(o, Ring) else o.ring) for o in objs}
    if len(rings) > 1:
        raise ContextMismatch("arguments live in different rings")


def _depth_json(v):
    return "infinity" if v == INFINITY else int(v)


# --- compute commands ---------------------------------------------------------------------------

def c_assprimes(call, env, opts):
    a = bind(call, ["M"], env)
    M = env.module(a["M"])
    return {"ass": associated_primes(M, env.seed).to_json(), "local": local_ass(M, env.seed).to_json()}


def c_minprimes(call, env, opts):
    I = _ideal(bind(call, ["I"], env)["I"])
    return {"min": minimal_primes(I, env.seed).to_json()}


def c_annihilator(call, env, opts):
    M = env.module(bind(call, ["M"], env)["M"])
    return {"ann": list(annihilator(M).key())}


def c_dim(call, env, opts):
    M = env.module(bind(call, ["M"], env)["M"])
    return {"dim": support_dim(M), "local_dim": local_dim(M, env.seed)}


def _module_json(P):
    P = P.pruned()
    return {"rank": P.rank, "presentation": P.matrix_text(), "zero": P.is_zero(),
            "ann": list(annihilator(P).key())}


def c_hom(call, env, opts):
    a = bind(call, ["M", "N"], env)
    M, N = env.module(a["M"]), env.module(a["N"])
    _same_ring(M, N)
    return _module_json(hom(M, N))


def c_extmodule(call, env, opts):
    a = bind(call, ["j", "M", "N"], env)
    M, N = env.module(a["M"]), env.module(a["N"])
    _same_ring(M, N)
    return _module_json(ext(_int(a["j"], "j"), M, N))


def c_resolution(call, env, opts):
    a = bind(call, ["M", "length?"], env)
    M = env.module(a["M"])
    L = a["length"] if a["length"] is not None else M.ring.nvars + 1
    res = free_resolution(M, _int(L, "length"))
    return {"ranks": res.ranks, "composes_to_zero": compose_is_zero(res)}


def c_depthk(call, env, opts):
    a = bind(call, ["I", "N", "k"], env)
    I, N = _ideal(a["I"]), env.module(a["N"])
    _same_ring(I, N)
    return depth_k(I, N, _int(a["k"], "k"), env.seed).to_json()


def c_issequence(call, env, opts):
    a = bind(call, ["xs", "N", "k"], env)
    N = env.module(a["N"])
    xs = _polys(N.ring, a["xs"])
    chk = is_sequence_in_dim_gt_k(xs, N, _int(a["k"], "k"), env.seed)
    return {"sequence": [str(x) for x in xs], "ok": chk.ok, "failed_at": chk.failed_at}


def c_asslch(call, env, opts):
    a = bind(call, ["I", "M", "N", "k", "l", "witness?"], env)
    I, M, N = _ideal(a["I"]), env.module(a["M"]), env.module(a["N"])
    _same_ring(I, M, N)
    w = _polys(N.ring, a["witness"]) if a["witness"] is not None else None
    return ass_lch_formula(I, M, N, _int(a["k"], "k"), _int(a["l"], "l"), env.seed, w).to_json()


def c_asstop(call, env, opts):
    a = bind(call, ["I", "M", "N"], env)
    I, M, N = _ideal(a["I"]), env.module(a["M"]), env.module(a["N"])
    _same_ring(I, M, N)
    return {"ass_top": ass_top_lch(I, M, N, env.seed).to_json()}


def c_extass(call, env, opts):
    a = bind(call, ["I", "N", "k", "l", "t?", "powers?"], env)
    I, N = _ideal(a["I"]), env.module(a["N"])
    _same_ring(I, N)
    t = a["t"] if a["t"] is not None else 1
    S = ext_ass_sets(I, N, _int(a["k"], "k"), _int(a["l"], "l"), t, a["powers"], env.seed)
    return {"union": S.to_json()}


def c_powerinv(call, env, opts):
    a = bind(call, ["xs", "N", "k", "exponents"], env)
    N = env.module(a["N"])
    xs = _polys(N.ring, a["xs"])
    return power_invariance_check(xs, N, _int(a["k"], "k"), a["exponents"], env.seed).to_json()


def c_starset(call, env, opts):
    a = bind(call, ["xs", "N", "I", "k", "j"], env)
    N, I = env.module(a["N"]), _ideal(a["I"])
    _same_ring(N, I)
    lo, hi = opts.get("t", env.t_range)
    res = bn_star_set(_polys(N.ring, a["xs"]), N, I, _int(a["k"], "k"), _int(a["j"], "j"),
                      env.seed, tuple(range(lo, hi + 1)))
    return res.to_json()


def c_component(call, env, opts):
    a = bind(call, ["G", "n"], env)
    return _module_json(graded_component(_graded(a["G"]), _int(a["n"], "n")))


def _window(env, opts):
    return opts.get("range", env.nrange), opts.get("window", env.window)


def c_commonseq(call, env, opts):
    a = bind(call, ["G", "I", "k"], env)
    nrange, w = _window(env, opts)
    rep = common_sequence(_graded(a["G"]), _ideal(a["I"]), _int(a["k"], "k"), nrange, w, env.seed)
    out = rep.to_json()
    out["valid_past_onset"] = rep.valid_past_onset()
    return out


def s_ass(call, env, opts):
    a = bind(call, ["G"], env)
    nrange, w = _window(env, opts)
    return stabilize_ass(_graded(a["G"]), nrange, w, env.seed).to_json()


def s_depthk(call, env, opts):
    a = bind(call, ["G", "I", "k"], env)
    nrange, w = _window(env, opts)
    return stabilize_depth_k(_graded(a["G"]), _ideal(a["I"]), _int(a["k"], "k"), nrange, w,
                             env.seed).to_json()


def s_asslch(call, env, opts):
    a = bind(call, ["I", "M", "G", "k", "l"], env)
    nrange, w = _window(env, opts)
    I = _ideal(a["I"])
    return stabilize_theorem_sets(_graded(a["G"]), I, env.module(a["M"]), _int(a["k"], "k"),
                                  _int(a["l"], "l"), nrange, w, env.seed).to_json()


COMPUTE = {
    "assprimes": c_assprimes, "minprimes": c_minprimes, "annihilator": c_annihilator,
    "dim": c_dim, "hom": c_hom, "ext": c_extmodule, "resolution": c_resolution,
    "depthk": c_depthk, "issequence": c_issequence, "asslch": c_asslch, "asstop": c_asstop,
    "extass": c_extass, "powerinv": c_powerinv, "starset": c_starset,
    "component": c_component, "commonseq": c_commonseq,
}
STABILIZE = {"ass": s_ass, "depthk": s_depthk, "asslch": s_asslch}


# --- check commands -------------------------------------------------------------------------------

def oracle_asslch(I, M, N, k, l, t_range, seed):
    """Formula union against Ext unions for J = I_M^t and for generator-power tuples in {1,2}^s."""
    res = ass_lch_formula(I, M, N, k, l, seed)
    IM = res.ideal
    by_t = {}
    for t in range(t_range[0], t_range[1] + 1):
        by_t[str(t)] = ext_ass_sets(IM, N, k, l, t, seed=seed, check_depth=False)
    by_powers = {}
    for pw in product((1, 2), repeat=len(IM.gens)):
        by_powers[",".join(map(str, pw))] = ext_ass_sets(IM, N, k, l, powers=pw, seed=seed,
                                                         check_depth=False)
    equal = all(S == res.union for S in list(by_t.values()) + list(by_powers.values()))
    return {
        "formula": res.to_json(),
        "ext_by_t": {t: S.to_json() for t, S in by_t.items()},
        "ext_by_powers": {p: S.to_json() for p, S in by_powers.items()},
        "equal": equal,
    }


def k_oracle(cmd, env, opts):
    c, v = cmd.call, cmd.versus
    if c.name == "ass":
        M = env.module(bind(c, ["M"], env)["M"])
        return oracle_ass(M, env.seed)
    if c.name == "asslch" and v is not None and v.name == "ext":
        params = ["I", "M", "N", "k", "l"] if len(v.args) + len(v.kwargs) >= 5 else ["I", "N", "k", "l"]
        a = bind(v, params, env)
        I, N = _ideal(a["I"]), env.module(a["N"])
        M = env.module(a["M"]) if "M" in a else ModulePresentation.free(N.ring, 1)
        _same_ring(I, M, N)
        return oracle_asslch(I, M, N, _int(a["k"], "k"), _int(a["l"], "l"),
                             opts.get("t", env.t_range), env.seed)
    raise MalformedInput("check oracle supports: ass(M); asslch vs ext(I, [M,] N, k, l)")


def oracle_ass(M, seed):
    ehv = associated_primes(M, seed)
    cands = oracle_candidates(M, seed)
    verdicts = {p.key(): is_associated_oracle(p, M) for p in cands}
    found = AssSet(tuple(p for p in cands if verdicts[p.key()]))
    return {"ehv": ehv.to_json(), "oracle": found.to_json(), "candidates": len(cands),
            "equal": found == ehv}


def k_witness(cmd, env, opts):
    a = bind(cmd.call, ["I", "M", "N", "k", "l"], env)
    I, M, N = _ideal(a["I"]), env.module(a["M"]), env.module(a["N"])
    _same_ring(I, M, N)
    s1, s2 = opts.get("seeds", (DEFAULT_SEED, 4242))
    return witness_check(I, M, N, _int(a["k"], "k"), _int(a["l"], "l"), (s1, s2))


def witness_check(I, M, N, k, l, seeds):
    runs = [ass_lch_formula(I, M, N, k, l, s) for s in seeds]
    return {
        "seeds": list(seeds),
        "witnesses": [[str(x) for x in r.witness] for r in runs],
        "unions": [r.union.to_json() for r in runs],
        "witness_differs": runs[0].witness != runs[1].witness,
        "unions_equal": runs[0].union == runs[1].union,
    }


def k_kernel(cmd, env, opts):
    a = bind(cmd.call, ["M", "N"], env)
    M, N = env.module(a["M"]), env.module(a["N"])
    _same_ring(M, N)
    return kernel_check(M, N, env.seed)


def kernel_check(M, N, seed=DEFAULT_SEED):
    """d∘d = 0, Ext^{n+1}(M, N) = 0 and Ext^0(M, N) matching a resolution-free Hom."""
    n = M.ring.nvars
    res = free_resolution(M, n + 1)
    h0, hd = ext(0, M, N), hom_direct(M, N)
    hom_agrees = (annihilator(h0).key() == annihilator(hd).key()
                  and associated_primes(h0, seed) == associated_primes(hd, seed))
    vanish = ext(n + 1, M, N).is_zero()
    return {"ranks": res.ranks, "composes_to_zero": compose_is_zero(res),
            "ext_above_n_vanishes": vanish, "ext0_equals_hom": hom_agrees,
            "ok": compose_is_zero(res) and vanish and hom_agrees}


def k_depth(cmd, env, opts):
    a = bind(cmd.call, ["I", "N", "k?"], env)
    I, N = _ideal(a["I"]), env.module(a["N"])
    _same_ring(I, N)
    k = a["k"] if a["k"] is not None else -1
    return depth_check(I, N, _int(k, "k"), env.seed)


def depth_check(I, N, k=-1, seed=DEFAULT_SEED):
    """Greedy depth_k against the Ext-based values.

    For k = -1 this is inf{j : Ext^j(S/I, N)_m ≠ 0}; in general it is
    inf{j : dim Ext^j(S/I, N)_m ≥ k + 1}.
    """
    C = ModulePresentation.cyclic(I)
    n = I.ring.nvars
    dims = [local_dim(ext(j, C, N), seed) for j in range(n + 1)]
    ext_depth = next((j for j, d in enumerate(dims) if d >= k + 1), INFINITY)
    greedy = depth_k(I, N, k, seed)
    return {"k": k, "greedy": greedy.to_json(), "ext_dims": dims,
            "from_ext": _depth_json(ext_depth), "equal": greedy.value == ext_depth}


CHECK = {"oracle": k_oracle, "witness": k_witness, "kernel": k_kernel, "depth": k_depth}


# --- running ----------------------------------------------------------------------------------------

def run_command(cmd, env):
    opts = dict(cmd.options)
    if cmd.verb == "compute":
        table = STABILIZE if cmd.stabilize else COMPUTE
        fn = table.get(cmd.call.name)
        if fn is None:
            raise MalformedInput(f"unknown command {cmd.call.name!r}")
        return fn(cmd.call, env, opts)
    kind = cmd.check_kind or cmd.call.name
    fn = CHECK.get(kind)
    if fn is None:
        raise MalformedInput(f"unknown check {kind!r}")
    return fn(cmd, env, opts)


def _error_payload(e):
    return {"code": getattr(e, "code", "error"), "message": str(e)}


def run_session(session, env):
    """Evaluate a parsed session.  Returns (report dict, exit code).

    A failing command records its error and the remaining commands still run.
    """
    reports = []
    codes = set()
    timed_out = False
    for node in session.nodes:
        if not hasattr(node, "verb"):
            try:
                env.declare(node)
            except LcassError as e:
                codes.add(EXIT_FIELD if isinstance(e, UnsupportedField) else EXIT_MATH)
                reports.append({"declaration": node.show(), "status": "error",
                                "error": _error_payload(e)})
            continue
        entry = {"command": node.show(), "inputs": env.input_hashes(node.call)}
        if node.versus is not None:
            entry["inputs"].update(env.input_hashes(node.versus))
            entry["inputs"] = dict(sorted(entry["inputs"].items()))
        if timed_out:
            entry.update(status="skipped", error={"code": "timeout", "message": "session timed out"})
            reports.append(entry)
            continue
        try:
            entry["result"] = run_command(node, env)
            entry["status"] = "ok"
        except KeyError as e:
            entry.update(status="error", error={"code": "undeclared-name", "message": str(e)})
            codes.add(EXIT_MATH)
        except LcassError as e:
            entry.update(status="error", error=_error_payload(e))
            codes.add(EXIT_FIELD if isinstance(e, UnsupportedField) else EXIT_MATH)
            timed_out = isinstance(e, Timeout)
        reports.append(entry)
    doc = {
        "lcass_version": __version__,
        "seed": env.seed,
        "settings": {"window": env.window, "range": list(env.nrange), "t_range": list(env.t_range)},
        "session_sha256": hashlib.sha256(session.show().encode()).hexdigest(),
        "session": session.show(),
        "reports": reports,
    }
    return doc, max(codes, default=EXIT_OK)


def emit_report(doc, fmt="json"):
    if fmt == "json":
        return json.dumps(doc, sort_keys=True, indent=2, ensure_ascii=False) + "\n"
    if "parse_error" in doc:
        pe = doc["parse_error"]
        return f"parse error ({pe['code']}) at line {pe['line']}, column {pe['column']}: {pe['message']}\n"
    lines = [f"lcass {doc['lcass_version']}  seed={doc['seed']}  session={doc['session_sha256'][:12]}"]
    for r in doc["reports"]:
        head = r.get("command") or r.get("declaration")
        lines.append("")
        lines.append(f"> {head}  [{r['status']}]")
        if r["status"] != "ok":
            lines.append(f"  {r['error']['code']}: {r['error']['message']}")
            continue
        lines += _text_rows(r["result"], "  ")
    return "\n".join(lines) + "\n"


def _fmt(v):
    if isinstance(v, list) and v and all(isinstance(p, dict) and "gens" in p for p in v):
        return "{" + ", ".join("(" + ", ".join(p["gens"]) + ")" for p in v) + "}"
    if isinstance(v, dict) and "gens" in v:
        return "(" + ", ".join(v["gens"]) + ")"
    return json.dumps(v, sort_keys=True, ensure_ascii=False) if isinstance(v, (list, dict)) else str(v)


def _text_rows(obj, indent):
    rows = []
    if not isinstance(obj, dict):
        return [indent + _fmt(obj)]
    width = max((len(k) for k in obj), default=0)
    for key in sorted(obj):
        v = obj[key]
        if key == "values" and isinstance(v, list):
            rows.append(f"{indent}{'n':>4} | value")
            rows += [f"{indent}{n:>4} | {_fmt(x)}" for n, x in v]
        elif isinstance(v, dict) and "gens" not in v:
            rows.append(f"{indent}{key}:")
            rows += _text_rows(v, indent + "  ")
        else:
            rows.append(f"{indent}{key:<{width}} : {_fmt(v)}")
    return rows


# --- argument parsing ---------------------------------------------------------------------------------

def _pair(text):
    try:
        a, b = text.split("..")
        return int(a), int(b)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected LO..HI, got {text!r}") from None


def _env_default(name, conv, fallback):
    raw = os.environ.get("LCASS_" + name)
    if raw is None:
        return fallback
    try:
        return conv(raw)
    except (ValueError, argparse.ArgumentTypeError):
        raise SystemExit(f"lcass: bad value for LCASS_{name}: {raw!r}") from None


def build_parser():
    ap = argparse.ArgumentParser(prog="lcass", description="Run .lch session files.")
    sub = ap.add_subparsers(dest="action", required=True)
    run = sub.add_parser("run", help="evaluate a session and emit a report")
    run.add_argument("file", help="session file, or - for stdin")
    run.add_argument("--seed", type=int, default=_env_default("SEED", int, DEFAULT_SEED))
    run.add_argument("--format", choices=("json", "text"),
                     default=_env_default("FORMAT", str, "json"))
    run.add_argument("--out", default=_env_default("OUT", str, None))
    run.add_argument("--window", type=int, default=_env_default("WINDOW", int, DEFAULT_WINDOW))
    run.add_argument("--range", type=_pair, dest="nrange",
                     default=_env_default("RANGE", _pair, DEFAULT_RANGE))
    run.add_argument("--t-range", type=_pair, dest="t_range",
                     default=_env_default("T_RANGE", _pair, DEFAULT_T_RANGE))
    run.add_argument("--timeout-secs", type=int, dest="timeout",
                     default=_env_default("TIMEOUT_SECS", int, 0))
    pr = sub.add_parser("print", help="print the canonical form of a session")
    pr.add_argument("file")
    gd = sub.add_parser("golden", help="check every corpus session against its golden report")
    gd.add_argument("directory")
    gd.add_argument("--update", action="store_true", help="rewrite the golden files")
    return ap


def _read(path):
    if path == "-":
        return sys.stdin.read()
    with open(path, encoding="utf-8") as fh:
        return fh.read()


def _on_alarm(signum, frame):
    raise Timeout("time limit reached")


def run_text(text, seed=DEFAULT_SEED, window=DEFAULT_WINDOW, nrange=DEFAULT_RANGE,
             t_range=DEFAULT_T_RANGE, fmt="json", timeout=0):
    """Parse and run session text.  Returns (rendered report, exit code).

    Parse failures are reported in the same document shape, with the error
    location and no command reports.
    """
    try:
        session = parse_session(text)
    except SessionError as e:
        doc = {
            "lcass_version": __version__,
            "seed": seed,
            "parse_error": {"code": e.code, "line": e.line, "column": e.col, "message": e.msg},
            "reports": [],
        }
        return emit_report(doc, fmt), EXIT_FIELD if e.code == "unsupported-field" else EXIT_PARSE
    env = Environment(seed, window, nrange, t_range)
    alarm = timeout > 0 and hasattr(signal, "SIGALRM")
    if alarm:
        old = signal.signal(signal.SIGALRM, _on_alarm)
        signal.alarm(timeout)
    try:
        doc, code = run_session(session, env)
    finally:
        if alarm:
            signal.alarm(0)
            signal.signal(signal.SIGALRM, old)
    return emit_report(doc, fmt), code


def golden_pairs(directory):
    """(session path, golden path) for every ``*.lch`` file in a directory."""
    out = []
    for name in sorted(os.listdir(directory)):
        if name.endswith(".lch"):
            base = os.path.join(directory, name[:-4])
            out.append((base + ".lch", base + ".golden.json"))
    return out


def run_golden(directory, update=False, stream=sys.stdout):
    """Compare each session's JSON report with its golden file; returns the failure count."""
    failures = 0
    for lch, gold in golden_pairs(directory):
        out, code = run_text(_read(lch))
        if update:
            with open(gold, "w", encoding="utf-8") as fh:
                fh.write(out)
            status = "written"
        elif not os.path.exists(gold):
            status, failures = "missing golden", failures + 1
        else:
            same = _read(gold) == out
            status = "ok" if same else "MISMATCH"
            failures += not same
        print(f"{os.path.basename(lch)}: exit {code}, {status}", file=stream)
    return failures


def main(argv=None):
    args = build_parser().parse_args(argv)
    if args.action == "golden":
        return EXIT_OK if run_golden(args.directory, args.update) == 0 else 1
    try:
        text = _read(args.file)
    except OSError as e:
        print(f"lcass: {e}", file=sys.stderr)
        return EXIT_PARSE
    if args.action == "print":
        try:
            sys.stdout.write(parse_session(text).show())
        except SessionError as e:
            print(f"lcass: {e.code}: {e}", file=sys.stderr)
            return EXIT_FIELD if e.code == "unsupported-field" else EXIT_PARSE
        return EXIT_OK
    out, code = run_text(text, args.seed, args.window, args.nrange, args.t_range, args.format,
                         args.timeout)
    if code == EXIT_PARSE or (code == EXIT_FIELD and '"parse_error"' in out):
        print("lcass: parse error (see report)", file=sys.stderr)
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(out)
    else:
        sys.stdout.write(out)
    return code


if __name__ == "__main__":
    sys.exit(main())
