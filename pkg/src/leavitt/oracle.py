"""Matrix representation of L_K(E) for finite acyclic graphs.

For such graphs L_K(E) is a direct sum of full matrix algebras, one block
per sink v, of size the number of paths ending at v. A monomial p q* with
r(p) a sink is the matrix unit at (p, q) in that block; other monomials are
first CK2-expanded until their range is a sink. The trace-zero test on each
block then gives an independent membership check for [L, L].
"""

from __future__ import annotations

from dataclasses import dataclass

from .algebra import Element, Monomial
from .errors import GraphError
from .fields import Field
from .graph import Graph, find_cycle


@dataclass
class SinkIndex:
    paths: dict[str, list[tuple[str, ...]]]
    position: dict[str, dict[tuple[str, ...], int]]

    @property
    def sinks(self) -> list[str]:
        return sorted(self.paths)

    def size(self, sink: str) -> int:
        return len(self.paths[sink])


def _require_finite_acyclic(g: Graph):
    if not g.is_finite:
        raise GraphError("the matrix oracle needs a finite graph", code="NOT_FINITE")
    if find_cycle(g, g.vertices) is not None:
        raise GraphError("the matrix oracle needs an acyclic graph", code="NOT_ACYCLIC")


def sink_index(g: Graph) -> SinkIndex:
    _require_finite_acyclic(g)
    incoming: dict[str, list] = {v: [] for v in g.vertices}
    for e in g.edges:
        incoming[e.dst].append(e)
    paths = {}
    for sink in g.sinks():
        found = []
        # walk backwards from the sink; every reversed walk is a path into it
        stack = [()]
        while stack:
            suffix = stack.pop()
            found.append(suffix)
            head = g.edge(suffix[0]).src if suffix else sink
            for e in incoming[head]:
                stack.append((e.id,) + suffix)
        found.sort()
        paths[sink] = found
    position = {s: {p: i for i, p in enumerate(ps)} for s, ps in paths.items()}
    return SinkIndex(paths, position)


class BlockMatrix:
    """One dense square matrix per sink, with exact field entries."""

    def __init__(self, index: SinkIndex, field: Field, blocks=None):
        self.index = index
        self.field = field
        if blocks is None:
            z = field.zero
            blocks = {s: [[z] * index.size(s) for _ in range(index.size(s))] for s in index.sinks}
        self.blocks: dict[str, list[list]] = blocks

    def _new(self, blocks):
        return BlockMatrix(self.index, self.field, blocks)

    def __add__(self, other):
        return self._new({
            s: [[a + b for a, b in zip(ra, rb)] for ra, rb in zip(self.blocks[s], other.blocks[s])]
            for s in self.blocks
        })

    def __mul__(self, other):
        out = {}
        for s, A in self.blocks.items():
            B = other.blocks[s]
            n = len(A)
            cols = list(zip(*B)) if n else []
            out[s] = [[sum((a * b for a, b in zip(row, col)), self.field.zero) for col in cols] for row in A]
        return self._new(out)

    def transpose(self):
        return self._new({s: [list(r) for r in zip(*A)] for s, A in self.blocks.items()})

    def traces(self) -> dict[str, object]:
        return {s: sum((A[i][i] for i in range(len(A))), self.field.zero) for s, A in self.blocks.items()}

    def is_zero(self) -> bool:
        return not any(x for A in self.blocks.values() for row in A for x in row)

    def __eq__(self, other):
        return isinstance(other, BlockMatrix) and self.blocks == other.blocks

    def to_dict(self) -> dict:
        fmt = self.field.format
        out = {}
        for s in self.index.sinks:
            labels = [".".join(p) if p else s for p in self.index.paths[s]]
            out[s] = {"labels": labels, "rows": [[fmt(x) for x in row] for row in self.blocks[s]]}
        return out

    def render(self) -> str:
        lines = []
        fmt = self.field.format
        for s in self.index.sinks:
            labels = [".".join(p) if p else s for p in self.index.paths[s]]
            A = self.blocks[s]
            cells = [[fmt(x) for x in row] for row in A]
            width = max([len(l) for l in labels] + [len(c) for row in cells for c in row] + [1])
            lines.append(f"block {s} ({len(labels)}x{len(labels)}):")
            lines.append(" " * (width + 1) + " ".join(l.rjust(width) for l in labels))
            for lab, row in zip(labels, cells):
                lines.append(lab.rjust(width) + " " + " ".join(c.rjust(width) for c in row))
        return "\n".join(lines)


def to_matrix(x: Element, index: SinkIndex | None = None) -> BlockMatrix:
    g = x.graph
    if index is None:
        index = sink_index(g)
    M = BlockMatrix(index, x.field)
    work = list(x.terms.items())
    while work:
        m, c = work.pop()
        out = g.out_edges(m.end)
        if out:
            for e in out:
                work.append((Monomial(m.p + (e.id,), m.q + (e.id,), e.dst), c))
            continue
        pos = index.position[m.end]
        i, j = pos[m.p], pos[m.q]
        row = M.blocks[m.end][i]
        row[j] = row[j] + c
    return M


def oracle_membership(x: Element) -> bool:
    """Trace zero in every block."""
    return not any(to_matrix(x).traces().values())
