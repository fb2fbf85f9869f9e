"""Text formats: graph documents, polynomials and ideal expressions.

Graph documents::

    graph EX4 {
      vertices u, v, w, z;
      edge u -> u;
      edge u -> v [2];
      edge w -> z [inf];   # an infinite bundle
    }

Ideal expressions combine literals and bound names with ``+`` (sum),
``&`` (intersection), ``*`` (product), ``^n`` (power), ``rad(...)`` and
``gr(...)``; ``^`` binds tightest and ``+`` loosest.  Literals are ``0``,
``1``, ``<a, b>``, ``<H: a, b; S: c>`` and ``cycle(u, v): x^2 - 1``.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction

from .graph import OMEGA, Graph, GraphError, make_cycle
from .poly import QQ, Field, Poly


class DSLError(ValueError):
    def __init__(self, msg: str, line: int = 0, col: int = 0):
        self.msg = msg
        self.line = line
        self.col = col
        where = f"{line}:{col}: " if line else ""
        super().__init__(f"{where}{msg}")


@dataclass(frozen=True)
class Token:
    kind: str  # NAME, INT, SYM, EOF
    text: str
    line: int
    col: int


_TOKEN = re.compile(r"\s+|#[^\n]*|(?P<name>[A-Za-z_][A-Za-z0-9_]*'*)|(?P<int>\d+)|(?P<sym>->|[{}\[\](),;:<>+\-*^&/#])")


def tokenize(text: str, comments: bool = True) -> list:
    out = []
    pos = 0
    line, line_start = 1, 0
    while pos < len(text):
        if text[pos] == "#" and not comments:
            m = None
        else:
            m = _TOKEN.match(text, pos)
        col = pos - line_start + 1
        if m is None or m.end() == pos:
            if text[pos] == "#":
                out.append(Token("SYM", "#", line, col))
                pos += 1
                continue
            raise DSLError(f"unexpected character {text[pos]!r}", line, col)
        chunk = m.group(0)
        if m.lastgroup == "name":
            out.append(Token("NAME", chunk, line, col))
        elif m.lastgroup == "int":
            out.append(Token("INT", chunk, line, col))
        elif m.lastgroup == "sym":
            out.append(Token("SYM", chunk, line, col))
        nl = chunk.count("\n")
        if nl:
            line += nl
            line_start = pos + chunk.rindex("\n") + 1
        pos = m.end()
    col = pos - line_start + 1
    out.append(Token("EOF", "", line, col))
    return out


class _Stream:
    def __init__(self, tokens):
        self.toks = tokens
        self.i = 0

    @property
    def peek(self) -> Token:
        return self.toks[self.i]

    def ahead(self, k: int = 1) -> Token:
        return self.toks[min(self.i + k, len(self.toks) - 1)]

    def next(self) -> Token:
        t = self.toks[self.i]
        if t.kind != "EOF":
            self.i += 1
        return t

    def at(self, text: str) -> bool:
        t = self.peek
        return t.kind in ("SYM", "NAME") and t.text == text

    def expect(self, text: str) -> Token:
        t = self.peek
        if not self.at(text):
            shown = t.text or "end of input"
            raise DSLError(f"expected {text!r}, found {shown!r}", t.line, t.col)
        return self.next()

    def name(self, what: str = "identifier") -> Token:
        t = self.peek
        if t.kind != "NAME":
            shown = t.text or "end of input"
            raise DSLError(f"expected {what}, found {shown!r}", t.line, t.col)
        return self.next()

    def fail(self, msg: str, tok: Token | None = None):
        tok = tok or self.peek
        raise DSLError(msg, tok.line, tok.col)


# -- graphs -----------------------------------------------------------------

def parse_graph(text: str) -> Graph:
    s = _Stream(tokenize(text))
    s.expect("graph")
    name = s.name("graph name").text
    s.expect("{")
    vertices: list = []
    seen = set()
    edges = []
    while not s.at("}"):
        head = s.peek
        if s.at("vertices"):
            s.next()
            if s.at(";"):
                s.fail("empty vertex list")
            while True:
                t = s.name("vertex name")
                if t.text in seen:
                    s.fail(f"duplicate vertex {t.text!r}", t)
                seen.add(t.text)
                vertices.append(t.text)
                if not s.at(","):
                    break
                s.next()
            s.expect(";")
        elif s.at("edge"):
            s.next()
            a = s.name("source vertex")
            s.expect("->")
            b = s.name("target vertex")
            mult = 1
            if s.at("["):
                s.next()
                t = s.next()
                if t.kind == "NAME" and t.text in ("inf", "omega"):
                    mult = OMEGA
                elif t.kind == "INT" and int(t.text) >= 1:
                    mult = int(t.text)
                else:
                    s.fail("multiplicity must be a positive integer or inf", t)
                s.expect("]")
            s.expect(";")
            for t in (a, b):
                if t.text not in seen:
                    s.fail(f"unknown endpoint {t.text!r}", t)
            edges.append((a.text, b.text, mult))
        else:
            shown = head.text or "end of input"
            s.fail(f"expected 'vertices', 'edge' or '}}', found {shown!r}")
    s.expect("}")
    if s.peek.kind != "EOF":
        s.fail(f"unexpected {s.peek.text!r} after the graph")
    if not vertices:
        s.fail("a graph needs a non-empty vertex list")
    try:
        return Graph.build(vertices, edges, name)
    except GraphError as e:
        raise DSLError(str(e)) from None


def print_graph(g: Graph) -> str:
    lines = [f"graph {g.name or 'G'} {{", f"  vertices {', '.join(g.vertices)};"]
    for s, t, m in g.bundles:
        suffix = "" if m == 1 else (" [inf]" if m == OMEGA else f" [{m}]")
        lines.append(f"  edge {s} -> {t}{suffix};")
    lines.append("}")
    return "\n".join(lines) + "\n"


# -- polynomials ------------------------------------------------------------

def _starts_poly_atom(t: Token) -> bool:
    return t.kind == "INT" or (t.kind == "NAME" and t.text == "x") or (t.kind == "SYM" and t.text in "(-")


class _PolyParser:
    """poly := term (('+'|'-') term)*, term := factor ('*'? factor)*, factor := unary ('^' INT)?

    A '+', '-' or '*' is only taken when a polynomial atom follows, which
    lets a polynomial sit inside an ideal sum without brackets.
    """

    def __init__(self, s: _Stream, field: Field):
        self.s = s
        self.f = field

    def poly(self) -> Poly:
        s = self.s
        acc = self.term()
        while s.peek.kind == "SYM" and s.peek.text in "+-" and _starts_poly_atom(s.ahead()):
            op = s.next().text
            rhs = self.term()
            acc = acc + rhs if op == "+" else acc - rhs
        return acc

    def term(self) -> Poly:
        s = self.s
        acc = self.unary()
        while True:
            if s.at("*") and _starts_poly_atom(s.ahead()):
                s.next()
                acc = acc * self.unary()
            elif (s.peek.kind == "NAME" and s.peek.text == "x") or s.at("("):
                # juxtaposition: 2x, 3(x+1), (x-1)(x+1)
                acc = acc * self.factor()
            elif s.at("/") and s.ahead().kind == "INT":
                s.next()
                d = int(s.next().text)
                if d == 0:
                    s.fail("division by zero")
                try:
                    acc = acc * Poly.const(Fraction(1, d), self.f)
                except (ZeroDivisionError, ValueError):
                    s.fail(f"{d} is not invertible in {self.f}")
            else:
                return acc

    def unary(self) -> Poly:
        if self.s.at("-"):
            self.s.next()
            return -self.unary()
        return self.factor()

    def factor(self) -> Poly:
        base = self.atom()
        if self.s.at("^"):
            self.s.next()
            t = self.s.next()
            if t.kind != "INT":
                self.s.fail("exponent must be a non-negative integer", t)
            base = base ** int(t.text)
        return base

    def atom(self) -> Poly:
        s = self.s
        t = s.peek
        if t.kind == "INT":
            s.next()
            return Poly.const(int(t.text), self.f)
        if t.kind == "NAME" and t.text == "x":
            s.next()
            return Poly.x(self.f)
        if s.at("("):
            s.next()
            p = self.poly()
            s.expect(")")
            return p
        shown = t.text or "end of input"
        s.fail(f"expected a polynomial, found {shown!r}")


def parse_poly_text(text: str, field: Field = QQ) -> Poly:
    s = _Stream(tokenize(text, comments=False))
    p = _PolyParser(s, field).poly()
    if s.peek.kind != "EOF":
        s.fail(f"unexpected {s.peek.text!r} in polynomial")
    return p


# -- ideal expressions ------------------------------------------------------

@dataclass(frozen=True)
class Node:
    op: str  # lit, name, sum, meet, prod, pow, rad, gr
    args: tuple = ()
    value: object = None


class _ExprParser:
    def __init__(self, s: _Stream, field: Field):
        self.s = s
        self.field = field

    def expr(self) -> Node:
        return self._binary("+", "sum", self.meet)

    def meet(self) -> Node:
        return self._binary("&", "meet", self.prod)

    def prod(self) -> Node:
        return self._binary("*", "prod", self.power)

    def _binary(self, sym, op, sub):
        left = sub()
        while self.s.at(sym):
            self.s.next()
            left = Node(op, (left, sub()))
        return left

    def power(self) -> Node:
        base = self.atom()
        while self.s.at("^"):
            self.s.next()
            t = self.s.next()
            if t.kind != "INT" or int(t.text) < 1:
                self.s.fail("ideal exponent must be a positive integer", t)
            base = Node("pow", (base,), int(t.text))
        return base

    def atom(self) -> Node:
        s = self.s
        t = s.peek
        if t.kind == "INT" and t.text in ("0", "1"):
            s.next()
            return Node("lit", value=("const", int(t.text)))
        if s.at("("):
            s.next()
            e = self.expr()
            s.expect(")")
            return e
        if s.at("<"):
            return self.angle()
        if t.kind == "NAME" and t.text in ("rad", "gr") and s.ahead().text == "(":
            s.next()
            s.next()
            e = self.expr()
            s.expect(")")
            return Node(t.text, (e,))
        if t.kind == "NAME" and t.text == "cycle" and s.ahead().text == "(":
            return self.cycle()
        if t.kind == "NAME":
            s.next()
            return Node("name", value=(t.text, t.line, t.col))
        shown = t.text or "end of input"
        s.fail(f"expected an ideal, found {shown!r}")

    def _names(self, stop) -> list:
        out = []
        s = self.s
        if s.at(stop):
            return out
        while True:
            out.append(s.name("vertex name").text)
            if not s.at(","):
                return out
            s.next()

    def angle(self) -> Node:
        s = self.s
        start = s.expect("<")
        if s.at("H") and s.ahead().text == ":":
            s.next()
            s.next()
            H = self._names(";")
            s.expect(";")
            S = []
            if s.at("S"):
                s.next()
                s.expect(":")
                S = self._names(">")
            s.expect(">")
            return Node("lit", value=("pair", tuple(H), tuple(S), start.line, start.col))
        H = self._names(">")
        s.expect(">")
        return Node("lit", value=("pair", tuple(H), (), start.line, start.col))

    def cycle(self) -> Node:
        s = self.s
        start = s.next()
        s.expect("(")
        verts, labels = [], []
        while True:
            verts.append(s.name("vertex name").text)
            lab = 0
            if s.at("#"):
                s.next()
                t = s.next()
                if t.kind != "INT":
                    s.fail("edge label must be an integer", t)
                lab = int(t.text)
            labels.append(lab)
            if not s.at(","):
                break
            s.next()
        s.expect(")")
        s.expect(":")
        f = _PolyParser(s, self.field).poly()
        return Node("lit", value=("cycle", tuple(verts), tuple(labels), f, start.line, start.col))


def parse_expr(text: str, field: Field = QQ) -> Node:
    s = _Stream(tokenize(text, comments=False))
    e = _ExprParser(s, field).expr()
    if s.peek.kind != "EOF":
        s.fail(f"unexpected {s.peek.text!r}")
    return e


def _literal(g: Graph, value, field: Field):
    from .ideals import IdealError, normalize, whole_ideal, zero_ideal

    kind = value[0]
    if kind == "const":
        return whole_ideal(g, field) if value[1] else zero_ideal(g, field)
    line, col = value[-2], value[-1]
    try:
        if kind == "pair":
            return normalize(g, value[1], value[2], (), field)
        _, verts, labels, f, _, _ = value
        c = make_cycle(g, verts, labels)
        return normalize(g, (), (), [(c, f)], field)
    except (GraphError, IdealError) as e:
        raise DSLError(str(e), line, col) from None


def eval_node(g: Graph, node: Node, bindings: dict | None = None, field: Field = QQ):
    from . import ideals as I

    bindings = bindings or {}
    op = node.op
    if op == "lit":
        return _literal(g, node.value, field)
    if op == "name":
        name, line, col = node.value
        if name not in bindings:
            raise DSLError(f"unbound name {name!r}", line, col)
        return bindings[name]
    if op in ("rad", "gr", "pow"):
        a = eval_node(g, node.args[0], bindings, field)
        if op == "rad":
            return I.radical(a)
        if op == "gr":
            return I.gr(a)
        return I.power(a, node.value)
    a = eval_node(g, node.args[0], bindings, field)
    b = eval_node(g, node.args[1], bindings, field)
    return {"sum": I.ideal_sum, "meet": I.intersect, "prod": I.product}[op](a, b)


def eval_expr(g: Graph, text: str, bindings: dict | None = None, field: Field = QQ):
    return eval_node(g, parse_expr(text, field), bindings, field)


def parse_ideal(g: Graph, text: str, field: Field = QQ):
    """An ideal literal (or any closed expression) over g."""
    return eval_expr(g, text, None, field)
