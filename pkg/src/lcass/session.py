"""Parser and printer for ``.lch`` session files.

Grammar (whitespace and ``#`` comments ignored)::

    session  := (decl | command)*
    decl     := "ring" NAME "=" field "[" names "]" ";"
              | "ideal" NAME "=" polylist ";"
              | "module" NAME "=" ( "coker" matrix
                                  | "quotient" "(" NAME "," NAME ")"
                                  | "free" "(" NAME "," INT ")" ) ";"
              | "graded" NAME "=" ( "rees" "(" NAME "," NAME ")"
                                  | "assocgraded" "(" NAME "," NAME ")"
                                  | "custom" "(" kwargs ")" ) ";"
              | "int" NAME "=" INT ";"
    field    := "zp" "(" INT ")" | "qq"
    command  := "compute" ["stabilize"] call options ";"
              | "check" NAME call ["vs" call] options ";"
    call     := NAME ( "(" args ")" | arg )
    options  := ( "range" INT ".." INT | "window" INT | "t" INT ".." INT | "seeds" INT "," INT )*

Polynomials are parsed in the ring declared most recently and stored in
canonical form, so ``parse(print(s)) == s``.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field

from .errors import LcassError
from .polycore import CoeffField, Ring, format_poly, parse_poly


class SessionError(LcassError):
    """Parse-phase failure with a 1-based source location."""

    code = "syntax-error"

    def __init__(self, msg, line=0, col=0, code=None):
        super().__init__(f"{line}:{col}: {msg}")
        self.msg = msg
        self.line, self.col = line, col
        if code:
            self.code = code


_TOKEN = re.compile(r"""
    (?P<ws>\s+|\#[^\n]*)
  | (?P<dots>\.\.)
  | (?P<name>[A-Za-z_][A-Za-z_0-9]*)
  | (?P<int>\d+)
  | (?P<sym>[;=,()\[\]+\-*^/])
""", re.VERBOSE)


@dataclass(frozen=True)
class Tok:
    kind: str
    text: str
    line: int
    col: int


def tokenize(text):
    out = []
    pos, line, lstart = 0, 1, 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m:
            raise SessionError(f"unexpected character {text[pos]!r}", line, pos - lstart + 1)
        kind = m.lastgroup
        s = m.group()
        if kind != "ws":
            out.append(Tok(kind, s, line, pos - lstart + 1))
        nl = s.count("\n")
        if nl:
            line += nl
            lstart = pos + s.rfind("\n") + 1
        pos = m.end()
    out.append(Tok("eof", "", line, pos - lstart + 1))
    return out


# --- AST --------------------------------------------------------------------------------

@dataclass(frozen=True)
class Ref:
    name: str

    def show(self):
        return self.name


@dataclass(frozen=True)
class Num:
    value: int

    def show(self):
        return str(self.value)


@dataclass(frozen=True)
class Poly:
    text: str

    def show(self):
        return self.text


@dataclass(frozen=True)
class ListArg:
    items: tuple

    def show(self):
        return "[" + ", ".join(a.show() for a in self.items) + "]"


@dataclass(frozen=True)
class Call:
    name: str
    args: tuple = ()
    kwargs: tuple = ()  # sorted (key, Arg) pairs

    def show(self):
        parts = [a.show() for a in self.args] + [f"{k} = {v.show()}" for k, v in self.kwargs]
        return f"{self.name}(" + ", ".join(parts) + ")" if parts else self.name

    def kw(self, key, default=None):
        for k, v in self.kwargs:
            if k == key:
                return v
        return default


@dataclass(frozen=True)
class RingDecl:
    name: str
    field: str
    variables: tuple

    def show(self):
        return f"ring {self.name} = {self.field}[{', '.join(self.variables)}];"


@dataclass(frozen=True)
class IdealDecl:
    name: str
    ring: str
    gens: tuple

    def show(self):
        return f"ideal {self.name} = {', '.join(self.gens) if self.gens else '0'};"


@dataclass(frozen=True)
class ModuleDecl:
    name: str
    ring: str
    kind: str
    data: tuple

    def show(self):
        if self.kind == "coker":
            rows = ", ".join("[" + ", ".join(r) + "]" for r in self.data)
            return f"module {self.name} = coker [{rows}];"
        return f"module {self.name} = {self.kind}({', '.join(map(str, self.data))});"


@dataclass(frozen=True)
class GradedDecl:
    name: str
    ring: str
    kind: str
    call: Call

    def show(self):
        return f"graded {self.name} = {self.call.show()};"


@dataclass(frozen=True)
class IntDecl:
    name: str
    value: int

    def show(self):
        return f"int {self.name} = {self.value};"


@dataclass(frozen=True)
class Command:
    verb: str  # "compute" | "check"
    call: Call
    stabilize: bool = False
    check_kind: str = ""
    versus: Call | None = None
    options: tuple = ()  # sorted (key, value) pairs
    line: int = field(default=0, compare=False)

    def show(self):
        out = [self.verb]
        if self.stabilize:
            out.append("stabilize")
        if self.check_kind:
            out.append(self.check_kind)
        out.append(self.call.show())
        if self.versus is not None:
            out += ["vs", self.versus.show()]
        for k, v in self.options:
            if k in ("range", "t"):
                out += [k, f"{v[0]}..{v[1]}"]
            elif k == "seeds":
                out += [k, f"{v[0]}, {v[1]}"]
            else:
                out += [k, str(v)]
        return " ".join(out) + ";"

    def option(self, key, default=None):
        for k, v in self.options:
            if k == key:
                return v
        return default


@dataclass(frozen=True)
class Session:
    nodes: tuple

    def show(self):
        return "\n".join(n.show() for n in self.nodes) + "\n"

    @property
    def commands(self):
        return [n for n in self.nodes if isinstance(n, Command)]


# --- parser -----------------------------------------------------------------------------

_KINDS = {"ring", "ideal", "module", "graded", "int"}


class _Parser:
    def __init__(self, text):
        self.toks = tokenize(text)
        self.i = 0
        self.names = {}  # name -> (kind, ring name or None)
        self.rings = {}
        self.current_ring = None

    # token helpers
    def peek(self, k=0):
        return self.toks[min(self.i + k, len(self.toks) - 1)]

    def take(self):
        t = self.toks[self.i]
        self.i += 1
        return t

    def fail(self, msg, tok=None, code=None):
        tok = tok or self.peek()
        raise SessionError(msg, tok.line, tok.col, code)

    def expect(self, text):
        t = self.peek()
        if t.text != text:
            self.fail(f"expected {text!r}, found {t.text or 'end of input'!r}")
        return self.take()

    def name(self):
        t = self.peek()
        if t.kind != "name":
            self.fail(f"expected a name, found {t.text or 'end of input'!r}")
        return self.take().text

    def integer(self):
        t = self.peek()
        neg = False
        if t.text == "-":
            neg = True
            self.take()
            t = self.peek()
        if t.kind != "int":
            self.fail(f"expected an integer, found {t.text or 'end of input'!r}")
        self.take()
        return -int(t.text) if neg else int(t.text)

    def lookup(self, name, tok, kinds=None):
        if name not in self.names:
            self.fail(f"undeclared name {name!r}", tok, "undeclared-name")
        kind, ring = self.names[name]
        if kinds and kind not in kinds:
            self.fail(f"{name!r} is a {kind}, expected {' or '.join(sorted(kinds))}", tok)
        return kind, ring

    def declare(self, name, kind, ring, tok):
        if name in self.names:
            self.fail(f"{name!r} is already declared", tok)
        self.names[name] = (kind, ring)

    def need_ring(self, tok):
        if self.current_ring is None:
            self.fail("no ring declared yet", tok, "undeclared-name")
        return self.current_ring

    # polynomial capture: tokens up to a depth-0 delimiter
    def poly_text(self, ring_name):
        start = self.peek()
        depth = 0
        parts = []
        prev = None
        while True:
            t = self.peek()
            if t.kind == "eof":
                break
            if depth == 0 and t.text in (",", ";", "]", ")"):
                break
            if t.text == "(":
                depth += 1
            elif t.text == ")":
                depth -= 1
            if prev is not None and (prev.kind in ("name", "int") or prev.text == ")") \
                    and (t.kind in ("name", "int") or t.text == "("):
                self.fail(f"expected an operator or ';' before {t.text!r}", t)
            parts.append(t.text)
            self.take()
            prev = t
            if t.kind == "name" and t.text not in self.rings[ring_name].variables:
                self.fail(f"{t.text!r} is not a variable of this ring", t, "undeclared-name")
        if not parts:
            self.fail("expected a polynomial", start)
        text = " ".join(parts)
        try:
            return format_poly(parse_poly(self.rings[ring_name], text))
        except LcassError as e:
            self.fail(f"bad polynomial {text!r}: {e}", start)

    # --- declarations ---
    def parse(self):
        nodes = []
        while self.peek().kind != "eof":
            t = self.peek()
            if t.text in _KINDS:
                nodes.append(getattr(self, "decl_" + t.text)())
            elif t.text in ("compute", "check"):
                nodes.append(self.command())
            else:
                self.fail(f"expected a declaration or command, found {t.text!r}")
        return Session(tuple(nodes))

    def decl_ring(self):
        self.take()
        tok = self.peek()
        name = self.name()
        self.expect("=")
        ft = self.peek()
        f = self.name()
        if f == "zp":
            self.expect("(")
            p = self.integer()
            self.expect(")")
            try:
                CoeffField(p)
            except LcassError as e:
                self.fail(str(e), ft, "unsupported-field")
            field_text = f"zp({p})"
        elif f == "qq":
            field_text = "qq"
        else:
            self.fail(f"unknown field {f!r} (use zp(p) or qq)", ft, "unsupported-field")
        self.expect("[")
        vs = [self.name()]
        while self.peek().text == ",":
            self.take()
            vs.append(self.name())
        self.expect("]")
        self.expect(";")
        if len(set(vs)) != len(vs):
            self.fail("repeated variable name", tok)
        self.declare(name, "ring", name, tok)
        self.rings[name] = make_ring(field_text, vs)
        self.current_ring = name
        return RingDecl(name, field_text, tuple(vs))

    def polylist(self, ring):
        gens = [self.poly_text(ring)]
        while self.peek().text == ",":
            self.take()
            gens.append(self.poly_text(ring))
        return tuple(g for g in gens if g != "0")

    def decl_ideal(self):
        kw = self.take()
        tok = self.peek()
        name = self.name()
        ring = self.need_ring(kw)
        self.expect("=")
        gens = self.polylist(ring)
        self.expect(";")
        self.declare(name, "ideal", ring, tok)
        return IdealDecl(name, ring, gens)

    def decl_module(self):
        kw = self.take()
        tok = self.peek()
        name = self.name()
        self.expect("=")
        kt = self.peek()
        kind = self.name()
        if kind == "coker":
            ring = self.need_ring(kw)
            self.expect("[")
            rows = [self.row(ring)]
            while self.peek().text == ",":
                self.take()
                rows.append(self.row(ring))
            self.expect("]")
            if len({len(r) for r in rows}) > 1:
                self.fail("ragged matrix", kt)
            data = tuple(rows)
        elif kind == "quotient":
            self.expect("(")
            rt = self.peek()
            rname = self.name()
            self.lookup(rname, rt, {"ring"})
            self.expect(",")
            it = self.peek()
            iname = self.name()
            _, iring = self.lookup(iname, it, {"ideal"})
            if iring != rname:
                self.fail(f"ideal {iname!r} lives in {iring!r}, not {rname!r}", it, "context-mismatch")
            self.expect(")")
            ring, data = rname, (rname, iname)
        elif kind == "free":
            self.expect("(")
            rt = self.peek()
            rname = self.name()
            self.lookup(rname, rt, {"ring"})
            self.expect(",")
            n = self.integer()
            if n < 0:
                self.fail("rank must be non-negative", rt)
            self.expect(")")
            ring, data = rname, (rname, n)
        else:
            self.fail(f"unknown module constructor {kind!r}", kt)
        self.expect(";")
        self.declare(name, "module", ring, tok)
        return ModuleDecl(name, ring, kind, data)

    def row(self, ring):
        self.expect("[")
        r = [self.poly_text(ring)]
        while self.peek().text == ",":
            self.take()
            r.append(self.poly_text(ring))
        self.expect("]")
        return tuple(r)

    def decl_graded(self):
        kw = self.take()
        tok = self.peek()
        name = self.name()
        self.expect("=")
        kt = self.peek()
        kind = self.name()
        if kind in ("rees", "assocgraded"):
            self.expect("(")
            it = self.peek()
            iname = self.name()
            _, ring = self.lookup(iname, it, {"ideal"})
            self.expect(",")
            mt = self.peek()
            mname = self.name()
            _, mring = self.lookup(mname, mt, {"module", "ring"})
            if mring != ring:
                self.fail(f"{mname!r} lives in {mring!r}, not {ring!r}", mt, "context-mismatch")
            self.expect(")")
            call = Call(kind, (Ref(iname), Ref(mname)))
        elif kind == "custom":
            ring = self.need_ring(kw)
            call = self.custom_spec(ring)
        else:
            self.fail(f"unknown graded constructor {kind!r}", kt)
        self.expect(";")
        self.declare(name, "graded", ring, tok)
        return GradedDecl(name, ring, kind, call)

    def custom_spec(self, ring):
        """custom(vars = [u, v], degrees = [0], relations = [...], columns = [[...]])"""
        self.expect("(")
        kw = {}
        base = self.rings[ring]
        ynames = None
        while self.peek().text != ")":
            kt = self.peek()
            key = self.name()
            self.expect("=")
            if key == "vars":
                self.expect("[")
                ys = [self.name()]
                while self.peek().text == ",":
                    self.take()
                    ys.append(self.name())
                self.expect("]")
                clash = set(ys) & set(base.variables)
                if clash:
                    self.fail(f"graded variables clash with ring variables: {sorted(clash)}", kt)
                ynames = tuple(ys)
                kw[key] = ListArg(tuple(Ref(y) for y in ys))
                self.rings[(ring, ynames)] = Ring(base.field, base.variables + ynames)
            elif key == "degrees":
                self.expect("[")
                ds = [self.integer()]
                while self.peek().text == ",":
                    self.take()
                    ds.append(self.integer())
                self.expect("]")
                kw[key] = ListArg(tuple(Num(d) for d in ds))
            elif key in ("relations", "columns"):
                if ynames is None:
                    self.fail("declare vars before relations/columns", kt)
                rk = (ring, ynames)
                self.expect("[")
                items = []
                if self.peek().text != "]":
                    while True:
                        if key == "columns":
                            items.append(ListArg(tuple(Poly(p) for p in self.row(rk))))
                        else:
                            items.append(Poly(self.poly_text(rk)))
                        if self.peek().text != ",":
                            break
                        self.take()
                self.expect("]")
                kw[key] = ListArg(tuple(items))
            else:
                self.fail(f"unknown custom field {key!r}", kt)
            if self.peek().text == ",":
                self.take()
        self.expect(")")
        if ynames is None:
            self.fail("custom graded module needs vars")
        order = ("vars", "degrees", "relations", "columns")
        return Call("custom", (), tuple((k, kw[k]) for k in order if k in kw))

    def decl_int(self):
        self.take()
        tok = self.peek()
        name = self.name()
        self.expect("=")
        v = self.integer()
        self.expect(";")
        self.declare(name, "int", None, tok)
        return IntDecl(name, v)

    # --- commands ---
    def command(self):
        vt = self.take()
        verb = vt.text
        stabilize = False
        check_kind = ""
        if verb == "compute" and self.peek().text == "stabilize":
            self.take()
            stabilize = True
        if verb == "check" and self.peek(1).text != "(":
            check_kind = self.name()
        call = self.call()
        versus = None
        if self.peek().text == "vs":
            self.take()
            versus = self.call()
        opts = {}
        while self.peek().text in ("range", "window", "t", "seeds"):
            key = self.take().text
            if key in ("range", "t"):
                a = self.integer()
                self.expect("..")
                b = self.integer()
                opts[key] = (a, b)
            elif key == "seeds":
                a = self.integer()
                self.expect(",")
                b = self.integer()
                opts[key] = (a, b)
            else:
                opts[key] = self.integer()
        self.expect(";")
        for c in (call, versus):
            if c is not None:
                self._check_rings(c, vt)
        return Command(verb, call, stabilize, check_kind, versus, tuple(sorted(opts.items())), vt.line)

    def _check_rings(self, call, tok):
        rings = {self.names[n][1] for n in _call_refs(call) if self.names[n][1] is not None}
        if len(rings) > 1:
            self.fail(f"{call.name} mixes objects from rings {', '.join(sorted(rings))}", tok,
                      "context-mismatch")

    def call(self):
        nt = self.peek()
        name = self.name()
        if self.peek().text != "(":
            if self.peek().text in (";", "vs", "range", "window", "t", "seeds"):
                return Call(name)
            return Call(name, (self.arg(),))
        self.take()
        args, kwargs = [], {}
        while self.peek().text != ")":
            if self.peek().kind == "name" and self.peek(1).text == "=":
                key = self.take().text
                self.take()
                kwargs[key] = self.arg()
            else:
                if kwargs:
                    self.fail("positional argument after keyword argument")
                args.append(self.arg())
            if self.peek().text == ",":
                self.take()
            elif self.peek().text != ")":
                self.fail(f"expected ',' or ')', found {self.peek().text!r}")
        self.take()
        del nt
        return Call(name, tuple(args), tuple(sorted(kwargs.items())))

    def _delim(self, k):
        return self.peek(k).text in (",", ")", "]", ";") or self.peek(k).kind == "eof"

    def arg(self):
        t = self.peek()
        if t.text == "[":
            self.take()
            items = []
            while self.peek().text != "]":
                items.append(self.arg())
                if self.peek().text == ",":
                    self.take()
                elif self.peek().text != "]":
                    self.fail(f"expected ',' or ']', found {self.peek().text!r}")
            self.take()
            return ListArg(tuple(items))
        if t.kind == "int" and self._delim(1):
            self.take()
            return Num(int(t.text))
        if t.text == "-" and self.peek(1).kind == "int" and self._delim(2):
            self.take()
            self.take()
            return Num(-int(self.peek(-1).text))
        if t.kind == "name" and self.peek(1).text == "(" and t.text in ("quotient", "free"):
            c = self.call()
            self._check_ctor(c, t)
            return c
        if t.kind == "name" and self._delim(1):
            if t.text in self.names:
                self.take()
                return Ref(t.text)
            if self.current_ring is None or t.text not in self.rings[self.current_ring].variables:
                self.fail(f"undeclared name {t.text!r}", t, "undeclared-name")
        if self.current_ring is None:
            self.fail("no ring declared yet", t, "undeclared-name")
        return Poly(self.poly_text(self.current_ring))

    def _check_ctor(self, c, tok):
        if not c.args or not isinstance(c.args[0], Ref):
            self.fail(f"{c.name} needs a ring as first argument", tok)
        self.lookup(c.args[0].name, tok, {"ring"})
        if c.name == "quotient":
            if len(c.args) != 2 or not isinstance(c.args[1], Ref):
                self.fail("quotient(ring, ideal)", tok)
            _, r = self.lookup(c.args[1].name, tok, {"ideal"})
            if r != c.args[0].name:
                self.fail(f"ideal {c.args[1].name!r} lives in {r!r}", tok, "context-mismatch")


def _call_refs(a):
    if isinstance(a, Ref):
        return [a.name]
    if isinstance(a, ListArg):
        return [n for x in a.items for n in _call_refs(x)]
    if isinstance(a, Call):
        return [n for x in a.args for n in _call_refs(x)] + [n for _, x in a.kwargs for n in _call_refs(x)]
    return []


def make_ring(field_text, variables):
    F = CoeffField(0) if field_text == "qq" else CoeffField(int(field_text[3:-1]))
    return Ring(F, tuple(variables))


def parse_session(text):
    return _Parser(text).parse()
