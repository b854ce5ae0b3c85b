"""Line-oriented model file format.

Example::

    automaton conveyor
    role spec
    inputs ship1, ship2
    outputs waste, past
    internals tau
    restart zeta
    clocks x
    initial Start
    location Start { x <= 2 }
    edge Start -- x <= 2 / tau / {x} -> Sort
    accept Sort

Guards are disjunctions (``||``) of conjunctions (``&&``) of atoms
``x ~ n``, ``x - y ~ n`` or chains ``n ~ x ~ m`` with ``~`` one of
``< <= = >= >``; ``true`` and ``false`` are accepted.  Actions on edges may
carry their ``?``/``!`` mark, which is then checked against the
declaration.  ``#`` starts a comment.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from pathlib import Path

from ..clockspace import ClockSet, Federation, Zone, atom
from .automaton import ROLES, ActionDecl, Automaton, Edge, ModelError

_TOKEN = re.compile(
    r"\s*(?:(?P<num>\d+)|(?P<name>[A-Za-z_][A-Za-z0-9_.']*)|(?P<op><=|>=|==|&&|\|\||--|->|[<>=(){},/?!\-]))"
)
_FLIP = {"<": ">", "<=": ">=", "=": "=", ">=": "<=", ">": "<"}
_RELS = ("<", "<=", "=", ">=", ">")


class ModelSyntaxError(ValueError):
    def __init__(self, msg: str, line: int, col: int, path: str | None = None):
        self.msg = msg
        self.line = line
        self.col = col
        self.path = path
        where = f"{path}:" if path else ""
        super().__init__(f"{where}{line}:{col}: {msg}")


@dataclass
class _Tok:
    kind: str
    text: str
    col: int


def _tokenize(text: str, lineno: int, offset: int) -> list:
    out = []
    pos = 0
    n = len(text)
    while pos < n:
        if text[pos:].strip() == "":
            break
        m = _TOKEN.match(text, pos)
        if not m or m.end() == pos:
            col = pos + 1 + len(text[pos:]) - len(text[pos:].lstrip())
            raise ModelSyntaxError(f"unexpected character {text[col - 1]!r}", lineno, col + offset)
        kind = m.lastgroup
        out.append(_Tok(kind, m.group(kind), m.start(kind) + 1 + offset))
        pos = m.end()
    return out


class _Cursor:
    def __init__(self, toks, lineno, end_col):
        self.toks = toks
        self.i = 0
        self.lineno = lineno
        self.end_col = end_col

    def peek(self, k=0):
        j = self.i + k
        return self.toks[j] if j < len(self.toks) else None

    def error(self, msg, tok=None):
        tok = tok or self.peek()
        col = tok.col if tok else self.end_col
        return ModelSyntaxError(msg, self.lineno, col)

    def next(self, what="token"):
        t = self.peek()
        if t is None:
            raise self.error(f"expected {what}, found end of line")
        self.i += 1
        return t

    def expect(self, text):
        t = self.peek()
        if t is None or t.text != text:
            found = t.text if t else "end of line"
            raise self.error(f"expected {text!r}, found {found!r}")
        self.i += 1
        return t

    def name(self, what="name"):
        t = self.next(what)
        if t.kind != "name":
            raise self.error(f"expected {what}, found {t.text!r}", t)
        return t

    def at(self, text):
        t = self.peek()
        return t is not None and t.text == text

    def done(self):
        if self.peek() is not None:
            raise self.error(f"unexpected {self.peek().text!r}")


# guard AST: list of disjuncts; disjunct = list of (lhs, rhs, op, value, tok)
def _parse_guard(cur: _Cursor, stop: tuple) -> list:
    disjuncts = [_parse_conj(cur, stop)]
    while cur.at("||"):
        cur.next()
        disjuncts.append(_parse_conj(cur, stop))
    return disjuncts


def _parse_conj(cur: _Cursor, stop: tuple) -> list | None:
    if cur.at("("):
        cur.next()
        conj = _parse_conj(cur, (")",))
        cur.expect(")")
        return conj
    t = cur.peek()
    if t is not None and t.kind == "name" and t.text in ("true", "false"):
        cur.next()
        return [] if t.text == "true" else None
    atoms = _parse_chain(cur)
    while cur.at("&&"):
        cur.next()
        atoms += _parse_chain(cur)
    return atoms


def _parse_term(cur: _Cursor):
    t = cur.next("clock or constant")
    if t.text == "-":
        n = cur.next("constant")
        if n.kind != "num":
            raise cur.error("expected constant after '-'", n)
        return ("num", -int(n.text), t)
    if t.kind == "num":
        return ("num", int(t.text), t)
    if t.kind == "name" and t.text not in ("true", "false"):
        if cur.at("-") and cur.peek(1) is not None and cur.peek(1).kind == "name":
            cur.next()
            r = cur.name("clock")
            return ("clk", (t.text, r.text), t)
        return ("clk", (t.text, None), t)
    raise cur.error(f"expected clock or constant, found {t.text!r}", t)


def _rel(cur: _Cursor):
    t = cur.next("relation")
    if t.text == "==":
        return "=", t
    if t.text not in _RELS:
        raise cur.error(f"expected relation, found {t.text!r}", t)
    nxt = cur.peek()
    if nxt is not None and nxt.text in ("=", "<", ">") and nxt.col == t.col + len(t.text):
        raise cur.error(f"malformed relation {t.text + nxt.text!r}", t)
    return t.text, t


def _parse_chain(cur: _Cursor) -> list:
    terms = [_parse_term(cur)]
    ops = []
    while cur.peek() is not None and cur.peek().text in _RELS + ("==",):
        ops.append(_rel(cur))
        terms.append(_parse_term(cur))
    if not ops:
        raise cur.error("expected a relation", terms[0][2])
    atoms = []
    for (op, optok), a, b in zip(ops, terms, terms[1:]):
        if a[0] == "clk" and b[0] == "num":
            atoms.append((a[1][0], a[1][1], op, b[1], a[2]))
        elif a[0] == "num" and b[0] == "clk":
            atoms.append((b[1][0], b[1][1], _FLIP[op], a[1], b[2]))
        else:
            raise cur.error("each relation must compare a clock expression with a constant", optok)
    return atoms


def _build_guard(ast, clocks: ClockSet, lineno: int, path) -> Federation:
    zones = []
    for conj in ast:
        if conj is None:
            continue
        triples = []
        for lhs, rhs, op, value, tok in conj:
            for c in (lhs, rhs):
                if c is not None and c not in clocks:
                    raise ModelSyntaxError(f"unknown clock {c!r}", lineno, tok.col, path)
            triples += atom(clocks, lhs, op, value, rhs=rhs)
        z = Zone.from_constraints(clocks, triples)
        if z is not None:
            zones.append(z)
    return Federation.of(clocks, zones)


def parse_guard(text: str, clocks: ClockSet) -> Federation:
    """Parse a standalone guard expression over ``clocks``."""
    cur = _Cursor(_tokenize(text, 1, 0), 1, len(text) + 1)
    ast = _parse_guard(cur, ())
    cur.done()
    return _build_guard(ast, clocks, 1, None)


_KIND_OF = {"inputs": "input", "outputs": "output", "internals": "internal", "restart": "restart"}


def parse_model(text: str, path: str | None = None) -> Automaton:
    """Parse a model file; raise :class:`ModelSyntaxError` with line and column."""
    header = {}
    actions = []
    proper, observed = [], []
    locs = []  # (name, guard_ast, lineno)
    edges = []  # (src, ast, action, mark, resets, dst, lineno, toks)
    accept, fail = [], None
    initial = None
    try:
        for lineno, raw in enumerate(text.splitlines(), start=1):
            body = raw.split("#", 1)[0]
            if not body.strip():
                continue
            cur = _Cursor(_tokenize(body, lineno, 0), lineno, len(body.rstrip()) + 1)
            kw = cur.name("keyword")
            k = kw.text
            if k in ("automaton", "role", "initial", "fail"):
                val = cur.name(k)
                cur.done()
                if k == "role" and val.text not in ROLES:
                    raise cur.error(f"unknown role {val.text!r}", val)
                if k == "initial":
                    initial = (val.text, val)
                elif k == "fail":
                    fail = (val.text, val)
                else:
                    header[k] = val.text
            elif k in _KIND_OF or k in ("clocks", "observed", "accept"):
                names = []
                if cur.peek() is not None:
                    names.append(cur.name())
                    while cur.at(","):
                        cur.next()
                        names.append(cur.name())
                cur.done()
                if k in _KIND_OF:
                    if k == "restart" and len(names) != 1:
                        raise ModelSyntaxError("exactly one restart action", lineno, kw.col, path)
                    actions += [(t.text, _KIND_OF[k], t) for t in names]
                elif k == "clocks":
                    proper += [t.text for t in names]
                elif k == "observed":
                    observed += [t.text for t in names]
                else:
                    accept += [(t.text, t) for t in names]
            elif k == "location":
                name = cur.name("location name")
                ast = [[]]
                if cur.at("{"):
                    cur.next()
                    ast = _parse_guard(cur, ("}",))
                    cur.expect("}")
                cur.done()
                locs.append((name.text, ast, lineno, name))
            elif k == "edge":
                src = cur.name("source location")
                cur.expect("--")
                ast = _parse_guard(cur, ("/",))
                cur.expect("/")
                act = cur.name("action")
                mark = None
                if cur.at("?") or cur.at("!"):
                    mark = cur.next().text
                cur.expect("/")
                cur.expect("{")
                resets = []
                if not cur.at("}"):
                    resets.append(cur.name("clock"))
                    while cur.at(","):
                        cur.next()
                        resets.append(cur.name("clock"))
                cur.expect("}")
                cur.expect("->")
                dst = cur.name("target location")
                cur.done()
                edges.append((src, ast, act, mark, resets, dst, lineno))
            else:
                raise cur.error(f"unknown keyword {k!r}", kw)

        clocks = ClockSet(proper + observed)
        loc_index = {}
        for name, _, lineno, tok in locs:
            if name in loc_index:
                raise ModelSyntaxError(f"duplicate location {name!r}", lineno, tok.col, path)
            loc_index[name] = len(loc_index)

        def resolve(tok, lineno):
            if tok.text not in loc_index:
                raise ModelSyntaxError(f"undeclared location {tok.text!r}", lineno, tok.col, path)
            return loc_index[tok.text]

        decl = {}
        for name, kind, tok in actions:
            if name in decl:
                raise ModelSyntaxError(f"duplicate action {name!r}", 1, tok.col, path)
            decl[name] = kind
        invariants = [_build_guard(ast, clocks, lineno, path) for _, ast, lineno, _ in locs]
        edge_objs = []
        for k, (src, ast, act, mark, resets, dst, lineno) in enumerate(edges):
            if act.text not in decl:
                raise ModelSyntaxError(f"undeclared action {act.text!r}", lineno, act.col, path)
            want = {"input": "?", "output": "!"}.get(decl[act.text])
            if mark is not None and mark != want:
                raise ModelSyntaxError(f"action {act.text!r} is {decl[act.text]}, not {mark!r}", lineno, act.col, path)
            for r in resets:
                if r.text not in proper:
                    raise ModelSyntaxError(f"{r.text!r} is not a proper clock", lineno, r.col, path)
            edge_objs.append(
                Edge(k, resolve(src, lineno), _build_guard(ast, clocks, lineno, path), act.text,
                     frozenset(r.text for r in resets), resolve(dst, lineno))
            )
        if not locs:
            raise ModelSyntaxError("no locations declared", 1, 1, path)
        if initial is None:
            init = 0
        else:
            init = resolve(initial[1], _line_of(text, "initial"))
        acc = frozenset(resolve(t, _line_of(text, "accept")) for _, t in accept)
        fl = resolve(fail[1], _line_of(text, "fail")) if fail else None
        return Automaton(
            name=header.get("automaton", "model"),
            role=header.get("role", "otaio"),
            locations=[n for n, *_ in locs],
            initial=init,
            actions=[ActionDecl(n, k) for n, k, _ in actions],
            proper=proper,
            observed=observed,
            invariants=invariants,
            edges=edge_objs,
            accept=acc,
            fail=fl,
        )
    except ModelSyntaxError as exc:
        if exc.path is None and path is not None:
            raise ModelSyntaxError(exc.msg, exc.line, exc.col, path) from None
        raise
    except (ModelError, ValueError) as exc:
        raise ModelSyntaxError(str(exc), 1, 1, path) from None


def _line_of(text: str, keyword: str) -> int:
    for lineno, raw in enumerate(text.splitlines(), start=1):
        if raw.split("#", 1)[0].split()[:1] == [keyword]:
            return lineno
    return 1


def load_model(path) -> Automaton:
    p = Path(path)
    return parse_model(p.read_text(), str(p))


def format_guard(f: Federation) -> str:
    return f.to_text()


def to_text(a: Automaton) -> str:
    """Serialize ``a``; parsing the result yields an isomorphic automaton."""
    lines = [f"automaton {a.name}", f"role {a.role}"]
    for kw, kind in (("inputs", "input"), ("outputs", "output"), ("internals", "internal"), ("restart", "restart")):
        names = [x.name for x in a.actions if x.kind == kind]
        if names:
            lines.append(f"{kw} {', '.join(names)}")
    if a.proper:
        lines.append(f"clocks {', '.join(a.proper)}")
    if a.observed:
        lines.append(f"observed {', '.join(a.observed)}")
    lines.append(f"initial {a.locations[a.initial]}")
    for l, name in enumerate(a.locations):
        inv = a.invariants[l]
        lines.append(f"location {name}" if inv.is_universe() else f"location {name} {{ {format_guard(inv)} }}")
    for e in a.edges:
        resets = ", ".join(c for c in a.clocks.names if c in e.resets)
        lines.append(
            f"edge {a.locations[e.src]} -- {format_guard(e.guard)} / {a.label(e)} / {{{resets}}} -> {a.locations[e.dst]}"
        )
    if a.accept:
        lines.append("accept " + ", ".join(a.locations[l] for l in sorted(a.accept)))
    if a.fail is not None:
        lines.append(f"fail {a.locations[a.fail]}")
    return "\n".join(lines) + "\n"
