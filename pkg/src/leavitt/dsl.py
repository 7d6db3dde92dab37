"""Graph description language.

    graph name {
        vertex v1 v2 v3;
        edge e1: v1 -> v2;
        edge*3 f: v2 -> v3;     # f1, f2, f3
        edge*2: v1 -> v3;       # v1_v3_1, v1_v3_2
        edge v1 -> v3;          # v1_v3
    }

A source may instead be a single ``family name(key=value, ...)`` line.
``#`` starts a comment. Statements end with ``;`` or a newline.
"""

from __future__ import annotations

import os
import re

from .errors import GraphError, ParseError
from .families import parse_family
from .graph import Edge, FiniteGraph, Graph

_TOKEN = re.compile(r"(?P<ws>[ \t\r]+)|(?P<comment>#[^\n]*)|(?P<nl>\n)|(?P<arrow>->)"
                    r"|(?P<ident>[A-Za-z_][A-Za-z0-9_]*)|(?P<num>\d+)|(?P<sym>[{};:*])")


def _tokenize(text: str):
    tokens = []
    pos, line, col = 0, 1, 1
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m:
            raise ParseError(f"unexpected character {text[pos]!r}", line=line, column=col)
        kind = m.lastgroup
        val = m.group()
        if kind == "nl":
            tokens.append(("sep", "\n", line, col))
            line, col = line + 1, 1
        else:
            if kind not in ("ws", "comment"):
                tokens.append(("sym" if kind == "arrow" else kind, val, line, col))
            col += len(val)
        pos = m.end()
    tokens.append(("end", "", line, col))
    return tokens


class _GraphParser:
    def __init__(self, text: str):
        self.toks = _tokenize(text)
        self.i = 0

    def peek(self):
        return self.toks[self.i]

    def take(self):
        tok = self.toks[self.i]
        self.i += 1
        return tok

    def error(self, msg, tok=None, code=None):
        tok = tok or self.peek()
        raise ParseError(msg, code=code, line=tok[2], column=tok[3])

    def describe(self, tok):
        if tok[0] == "end":
            return "end of input"
        if tok[0] == "sep":
            return "end of line"
        return repr(tok[1])

    def expect(self, value):
        tok = self.take()
        if tok[1] != value:
            self.error(f"expected {value!r}, found {self.describe(tok)}", tok)
        return tok

    def ident(self, what):
        tok = self.take()
        if tok[0] != "ident":
            self.error(f"expected {what}, found {self.describe(tok)}", tok)
        return tok

    def skip_separators(self):
        while self.peek()[0] == "sep" or self.peek()[1] == ";":
            self.take()

    def end_statement(self):
        tok = self.peek()
        if tok[0] == "sep" or tok[1] in (";", "}"):
            return
        self.error(f"expected ';' or a new line, found {self.describe(tok)}")

    def parse(self) -> FiniteGraph:
        self.skip_separators()
        kw = self.ident("'graph'")
        if kw[1] != "graph":
            self.error(f"expected 'graph', found {kw[1]!r}", kw)
        name = self.ident("a graph name")[1]
        self.skip_newlines()
        self.expect("{")
        vertices: dict[str, tuple] = {}
        edges: list[tuple[Edge, tuple]] = []
        while True:
            self.skip_separators()
            tok = self.peek()
            if tok[1] == "}":
                self.take()
                break
            if tok[0] == "end":
                self.error("missing '}'")
            kw = self.ident("'vertex' or 'edge'")
            if kw[1] in ("vertex", "vertices"):
                self.vertex_statement(vertices)
            elif kw[1] == "edge":
                self.edge_statement(edges)
            else:
                self.error(f"unknown statement {kw[1]!r}", kw)
            self.end_statement()
        self.skip_separators()
        if self.peek()[0] != "end":
            self.error(f"unexpected {self.describe(self.peek())} after the graph")
        return self.build(name, vertices, edges)

    def skip_newlines(self):
        while self.peek()[0] == "sep" and self.peek()[1] == "\n":
            self.take()

    def vertex_statement(self, vertices):
        if self.peek()[0] != "ident":
            self.error("'vertex' needs at least one name")
        while self.peek()[0] == "ident":
            tok = self.take()
            if tok[1] in vertices:
                self.error(f"vertex {tok[1]!r} declared twice", tok, code="DUPLICATE")
            vertices[tok[1]] = tok

    def edge_statement(self, edges):
        count = None
        if self.peek()[1] == "*":
            self.take()
            tok = self.take()
            if tok[0] != "num" or int(tok[1]) < 1:
                self.error("'edge*' needs a positive count", tok)
            count = int(tok[1])
        name = None
        unnamed = self.peek()[0] == "ident" and self.toks[self.i + 1][1] == "->"
        if self.peek()[1] == ":":
            self.take()
        elif not unnamed:
            name = self.ident("an edge name")
            self.expect(":")
        src = self.ident("a source vertex")
        self.expect("->")
        dst = self.ident("a target vertex")
        if count is None:
            ids = [name[1]] if name else [f"{src[1]}_{dst[1]}"]
        elif name:
            ids = [f"{name[1]}{i}" for i in range(1, count + 1)]
        else:
            ids = [f"{src[1]}_{dst[1]}_{i}" for i in range(1, count + 1)]
        for eid in ids:
            edges.append((Edge(eid, src[1], dst[1]), (name or src, src, dst)))

    def build(self, name, vertices, edges) -> FiniteGraph:
        seen = {}
        for e, (id_tok, src_tok, dst_tok) in edges:
            for v, tok in ((e.src, src_tok), (e.dst, dst_tok)):
                if v not in vertices:
                    self.error(f"undeclared vertex {v!r}", tok, code="UNKNOWN_VERTEX")
            if e.id in seen or e.id in vertices:
                self.error(f"edge id {e.id!r} is already used", id_tok, code="DUPLICATE")
            seen[e.id] = e
        try:
            return FiniteGraph(vertices, [e for e, _ in edges], name=name)
        except GraphError as exc:
            raise ParseError(str(exc), code=exc.code) from None


def parse_graph(text: str) -> FiniteGraph:
    return _GraphParser(text).parse()


def load_source(source: str) -> Graph:
    """Build a graph from DSL text, a ``family ...`` line, or a path to a file holding either."""
    text = source
    if "\n" not in source and "{" not in source and os.path.isfile(source):
        with open(source, encoding="utf-8") as fh:
            text = fh.read()
    body = "\n".join(line.split("#", 1)[0] for line in text.splitlines()).strip()
    if body.startswith("family"):
        return parse_family(body).build()
    return parse_graph(text)
