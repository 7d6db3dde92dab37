"""Text syntax for elements.

    element  := ['+'|'-'] term (('+'|'-') term)*
    term     := [scalar '*'] factor ('*' factor)*  |  '0'
    factor   := pathexpr | '(' element ')' ['^']
    pathexpr := atom ('.' atom)*
    atom     := ident ['^']

``e^`` is the ghost edge e*, ``(x)^`` the involution of x, and ``.`` joins
symbols that must be composable. ``e1.e2.f2^.f1^`` is (e1 e2)(f1 f2)*,
which is also how monomials are printed.
"""

from __future__ import annotations

import re

from .algebra import Element, Monomial
from .errors import GraphError, ParseError
from .fields import Field
from .graph import Graph

_TOKEN = re.compile(
    r"\s*(?:(?P<num>\d+(?:\s*/\s*\d+)?)|(?P<ident>[A-Za-z_][A-Za-z0-9_]*)|(?P<op>[-+*.^()]))"
)


def _tokenize(text: str):
    tokens = []
    pos = 0
    while pos < len(text):
        if text[pos:].strip() == "":
            break
        m = _TOKEN.match(text, pos)
        if not m:
            bad = len(text) - len(text[pos:].lstrip())
            raise ParseError(f"unexpected character {text[bad]!r}", pos=bad)
        kind = m.lastgroup
        start = m.start(kind)
        tokens.append((kind, m.group(kind), start))
        pos = m.end()
    tokens.append(("end", "", len(text)))
    return tokens


class _Parser:
    def __init__(self, text: str, g: Graph, field: Field):
        self.text = text
        self.g = g
        self.field = field
        self.toks = _tokenize(text)
        self.i = 0

    def peek(self):
        return self.toks[self.i]

    def take(self):
        tok = self.toks[self.i]
        self.i += 1
        return tok

    def expect(self, value):
        kind, val, pos = self.take()
        if val != value:
            found = "end of input" if kind == "end" else repr(val)
            raise ParseError(f"expected {value!r}, found {found}", pos=pos)

    def fail(self, msg, tok=None):
        tok = tok or self.peek()
        raise ParseError(msg, pos=tok[2])

    def parse(self) -> Element:
        x = self.element()
        if self.peek()[0] != "end":
            self.fail(f"unexpected {self.peek()[1]!r}")
        return x

    def element(self) -> Element:
        sign = 1
        if self.peek()[1] in "+-" and self.peek()[0] == "op":
            sign = -1 if self.take()[1] == "-" else 1
        x = self.term().scale(sign)
        while self.peek()[0] == "op" and self.peek()[1] in ("+", "-"):
            op = self.take()[1]
            t = self.term()
            x = x + t if op == "+" else x - t
        return x

    def term(self) -> Element:
        kind, val, pos = self.peek()
        coeff = self.field.one
        if kind == "num":
            self.take()
            coeff = self.field.parse(val.replace(" ", ""))
            if self.peek()[1] != "*":
                if not coeff:
                    return Element.zero(self.g, self.field)
                raise ParseError("a scalar must multiply a factor", pos=pos)
            self.take()
        x = self.factor()
        while self.peek()[0] == "op" and self.peek()[1] == "*":
            self.take()
            x = x * self.factor()
        return x.scale(coeff)

    def factor(self) -> Element:
        kind, val, pos = self.peek()
        if kind == "op" and val == "(":
            self.take()
            x = self.element()
            self.expect(")")
            if self.peek()[1] == "^":
                self.take()
                x = x.star()
            return x
        if kind == "ident":
            return self.pathexpr()
        found = "end of input" if kind == "end" else repr(val)
        raise ParseError(f"expected a path or '(' but found {found}", pos=pos)

    def atom(self):
        kind, name, pos = self.take()
        if kind != "ident":
            raise ParseError(f"expected an identifier, found {name!r}", pos=pos)
        ghost = False
        if self.peek()[1] == "^":
            self.take()
            ghost = True
        g = self.g
        try:
            if g.has_edge(name):
                e = g.edge(name)
                if ghost:
                    return Monomial((), (name,), e.dst), e.dst, e.src, True, pos
                return Monomial((name,), (), e.dst), e.src, e.dst, False, pos
            if g.has_vertex(name):
                return Monomial((), (), name), name, name, False, pos
        except GraphError:
            pass
        raise ParseError(f"unknown vertex or edge {name!r}", code="UNKNOWN_SYMBOL", pos=pos)

    def pathexpr(self) -> Element:
        mono, _, rng, ghost, _ = self.atom()
        x = Element(self.g, self.field, {mono: 1})
        while self.peek()[0] == "op" and self.peek()[1] == ".":
            self.take()
            nxt, s, r, nghost, pos = self.atom()
            if s != rng:
                if nghost and not ghost:
                    raise ParseError(
                        f"range {rng} of the real part differs from the range {s} of the ghost part",
                        code="RANGE_MISMATCH", pos=pos,
                    )
                raise ParseError(f"symbol does not start at {rng}", code="NON_COMPOSABLE", pos=pos)
            x = x * Element(self.g, self.field, {nxt: 1})
            rng, ghost = r, nghost
        return x


def parse_element(text: str, g: Graph, field: Field) -> Element:
    return _Parser(text, g, field).parse()


def format_monomial(m: Monomial) -> str:
    atoms = list(m.p) + [e + "^" for e in reversed(m.q)]
    return ".".join(atoms) if atoms else m.end


def format_element(x: Element) -> str:
    F = x.field
    parts = []
    for m, c in x:
        body = format_monomial(m)
        neg = False
        if F.characteristic == 0 and c < 0:
            neg, c = True, -c
        coef = "" if c == 1 else F.format(c) + "*"
        if not parts:
            parts.append(("-" if neg else "") + coef + body)
        else:
            parts.append((" - " if neg else " + ") + coef + body)
    return "".join(parts) if parts else "0"
