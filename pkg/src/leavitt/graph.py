"""Directed multigraphs, both explicit finite ones and lazily generated
row-finite ones, together with the metric and hereditary/saturated-set
machinery that the algebra layers need.
"""

from __future__ import annotations

import enum
import itertools
import math
from collections import deque
from dataclasses import dataclass, field
from typing import Callable, Iterable, NamedTuple

from .errors import GraphContractError, GraphError

INFINITY = math.inf

DEFAULT_LAZY_CAP = 64
DEFAULT_DISCOVERY_BUDGET = 20000


class Edge(NamedTuple):
    id: str
    src: str
    dst: str


class Acyclicity(str, enum.Enum):
    TRUE = "true"
    FALSE = "false"
    DECLARED = "declared"
    UNKNOWN = "unknown"


class Graph:
    """Common interface of :class:`FiniteGraph` and :class:`LazyGraph`."""

    is_finite = False
    name = None

    def out_edges(self, v: str) -> tuple[Edge, ...]:
        raise NotImplementedError

    def edge(self, eid: str) -> Edge:
        raise NotImplementedError

    def has_vertex(self, v: str) -> bool:
        raise NotImplementedError

    def has_edge(self, eid: str) -> bool:
        raise NotImplementedError

    def is_sink(self, v: str) -> bool:
        return not self.out_edges(v)

    def is_regular(self, v: str) -> bool:
        # out-degree is always finite: every graph here is row-finite
        return bool(self.out_edges(v))

    def special_edge(self, v: str) -> Edge | None:
        """The lexicographically least out-edge, used to orient CK2 rewriting."""
        out = self.out_edges(v)
        return out[0] if out else None

    def multiplicities(self, v: str) -> dict[str, int]:
        counts: dict[str, int] = {}
        for e in self.out_edges(v):
            counts[e.dst] = counts.get(e.dst, 0) + 1
        return counts

    def out_neighbors(self, v: str) -> list[str]:
        return sorted(self.multiplicities(v))

    def src(self, eid: str) -> str:
        return self.edge(eid).src

    def dst(self, eid: str) -> str:
        return self.edge(eid).dst

    def path_source(self, edges: tuple[str, ...], end: str) -> str:
        return self.edge(edges[0]).src if edges else end


class FiniteGraph(Graph):
    is_finite = True

    def __init__(self, vertices: Iterable[str], edges: Iterable[Edge | tuple], name: str | None = None):
        self.name = name
        verts = list(vertices)
        if len(set(verts)) != len(verts):
            raise GraphError("duplicate vertex id")
        self.vertices: tuple[str, ...] = tuple(sorted(verts))
        vset = set(verts)
        self._edges: dict[str, Edge] = {}
        out: dict[str, list[Edge]] = {v: [] for v in self.vertices}
        for e in edges:
            e = Edge(*e)
            if e.id in self._edges:
                raise GraphError(f"duplicate edge id {e.id!r}")
            if e.id in vset:
                raise GraphError(f"{e.id!r} names both a vertex and an edge")
            for end in (e.src, e.dst):
                if end not in vset:
                    raise GraphError(f"edge {e.id!r} uses unknown vertex {end!r}", code="UNKNOWN_VERTEX")
            self._edges[e.id] = e
            out[e.src].append(e)
        self._out = {v: tuple(sorted(es)) for v, es in out.items()}
        self.edges: tuple[Edge, ...] = tuple(sorted(self._edges.values()))
        self._nf_cache: dict = {}

    def __repr__(self):
        return f"FiniteGraph({self.name!r}, {len(self.vertices)} vertices, {len(self.edges)} edges)"

    def out_edges(self, v):
        try:
            return self._out[v]
        except KeyError:
            raise GraphError(f"no such vertex: {v!r}", code="UNKNOWN_VERTEX") from None

    def edge(self, eid):
        try:
            return self._edges[eid]
        except KeyError:
            raise GraphError(f"no such edge: {eid!r}", code="UNKNOWN_EDGE") from None

    def has_vertex(self, v):
        return v in self._out

    def has_edge(self, eid):
        return eid in self._edges

    def sinks(self) -> list[str]:
        return [v for v in self.vertices if not self._out[v]]


class LazyGraph(Graph):
    """A row-finite graph given by an out-edge generator.

    ``generator(v)`` must return a finite list of edges (as :class:`Edge`
    or ``(id, src, dst)`` tuples) and be deterministic. Vertices are
    those reachable from ``roots``. ``representatives``, when given, is a
    finite list of vertices such that the forward subgraph of every vertex
    is isomorphic to that of some representative; it acts as a
    periodicity declaration for global questions.
    """

    def __init__(
        self,
        generator: Callable[[str], list],
        roots: Iterable[str],
        *,
        declared_acyclic: bool = False,
        declared_all_regular: bool = False,
        representatives: Iterable[str] | None = None,
        region_depth: int = 8,
        name: str | None = None,
    ):
        self.name = name
        self._gen = generator
        self.roots = tuple(roots)
        if not self.roots:
            raise GraphError("a lazy graph needs at least one root")
        self.declared_acyclic = declared_acyclic
        self.declared_all_regular = declared_all_regular
        self.representatives = tuple(representatives) if representatives is not None else None
        self.region_depth = region_depth
        self._out: dict[str, tuple[Edge, ...]] = {}
        self._edges: dict[str, Edge] = {}
        self._known: set[str] = set(self.roots)
        self._frontier = deque((r, 0) for r in self.roots)
        self._visited = set(self.roots)
        self._nf_cache: dict = {}

    def __repr__(self):
        return f"LazyGraph({self.name!r}, roots={list(self.roots)})"

    def _expand(self, v: str) -> tuple[Edge, ...]:
        raw = self._gen(v)
        if raw is None:
            raise GraphError(f"generator returned nothing for {v!r}")
        edges = []
        for e in raw:
            e = Edge(*e)
            if e.src != v:
                raise GraphError(f"generator for {v!r} produced edge {e.id!r} with source {e.src!r}")
            old = self._edges.get(e.id)
            if old is not None and old != e:
                raise GraphError(f"edge id {e.id!r} generated twice with different endpoints")
            edges.append(e)
        if len({e.id for e in edges}) != len(edges):
            raise GraphError(f"duplicate edge ids out of {v!r}")
        if not edges and self.declared_all_regular:
            raise GraphContractError(f"vertex {v!r} is a sink but the graph declares all vertices regular")
        out = tuple(sorted(edges))
        for e in out:
            self._edges[e.id] = e
            self._known.add(e.dst)
        self._out[v] = out
        return out

    def _discover(self, predicate, budget=DEFAULT_DISCOVERY_BUDGET) -> bool:
        """Continue the background BFS from the roots until ``predicate()``."""
        while not predicate():
            if not self._frontier or len(self._visited) > budget:
                return False
            v, d = self._frontier.popleft()
            for e in self.out_edges(v):
                if e.dst not in self._visited:
                    self._visited.add(e.dst)
                    self._frontier.append((e.dst, d + 1))
        return True

    def out_edges(self, v):
        out = self._out.get(v)
        if out is not None:
            return out
        if v not in self._known and not self._discover(lambda: v in self._known):
            raise GraphError(f"no such vertex: {v!r}", code="UNKNOWN_VERTEX")
        return self._expand(v)

    def edge(self, eid):
        e = self._edges.get(eid)
        if e is None and self._discover(lambda: eid in self._edges):
            e = self._edges[eid]
        if e is None:
            raise GraphError(f"no such edge: {eid!r}", code="UNKNOWN_EDGE")
        return e

    def has_vertex(self, v):
        return v in self._known or self._discover(lambda: v in self._known)

    def has_edge(self, eid):
        return eid in self._edges or self._discover(lambda: eid in self._edges)


# --------------------------------------------------------------------------
# metric

def _bfs_levels(g: Graph, u: str, depth: int | None):
    """Yield (vertex, distance) in BFS order from u, up to ``depth``."""
    g.out_edges(u)
    seen = {u}
    queue = deque([(u, 0)])
    while queue:
        v, d = queue.popleft()
        yield v, d
        if depth is not None and d >= depth:
            continue
        for e in g.out_edges(v):
            if e.dst not in seen:
                seen.add(e.dst)
                queue.append((e.dst, d + 1))


def search_distance(g: Graph, u: str, v: str, cap: int | None = None) -> tuple[float, bool]:
    """Return ``(d(u, v), capped)``.

    ``capped`` is True when a lazy search stopped at depth ``cap`` without
    finding ``v``; the reported distance is then INFINITY but not proven.
    """
    if cap is None and not g.is_finite:
        cap = DEFAULT_LAZY_CAP
    if not g.has_vertex(v):
        raise GraphError(f"no such vertex: {v!r}", code="UNKNOWN_VERTEX")
    hit_cap = False
    for w, d in _bfs_levels(g, u, cap):
        if w == v:
            return d, False
        if cap is not None and d >= cap and g.out_edges(w):
            hit_cap = True
    return INFINITY, hit_cap and not g.is_finite


def distance(g: Graph, u: str, v: str, cap: int | None = None) -> float:
    return search_distance(g, u, v, cap)[0]


def ball(g: Graph, u: str, m: int) -> set[str]:
    """D(u, m): the vertices at distance at most m from u."""
    return {w for w, _ in _bfs_levels(g, u, m)}


def ball_layers(g: Graph, u: str, m: int) -> dict[str, int]:
    return dict(_bfs_levels(g, u, m))


def explore(g: Graph, depth: int | None = None) -> list[str]:
    """Vertices reachable from the roots (lazy) within ``depth`` steps, or all vertices."""
    if g.is_finite:
        return list(g.vertices)
    if depth is None:
        depth = g.region_depth
    seen: dict[str, int] = {}
    for r in g.roots:
        for w, d in _bfs_levels(g, r, depth):
            if w not in seen or seen[w] > d:
                seen[w] = d
    return sorted(seen)


def find_cycle(g: Graph, vertices: Iterable[str]) -> list[str] | None:
    """Return the edge ids of a cycle inside the subgraph on ``vertices``, if any."""
    vset = set(vertices)
    WHITE, GREY, BLACK = 0, 1, 2
    color = dict.fromkeys(vset, WHITE)
    for start in sorted(vset):
        if color[start] != WHITE:
            continue
        color[start] = GREY
        stack = [(start, iter(g.out_edges(start)))]
        via: list[Edge] = []
        while stack:
            v, it = stack[-1]
            for e in it:
                if e.dst not in vset:
                    continue
                if color[e.dst] == GREY:
                    # via[k] joins stack[k] to stack[k+1]
                    k = next(i for i, (w, _) in enumerate(stack) if w == e.dst)
                    return [f.id for f in via[k:]] + [e.id]
                if color[e.dst] == WHITE:
                    color[e.dst] = GREY
                    via.append(e)
                    stack.append((e.dst, iter(g.out_edges(e.dst))))
                    break
            else:
                color[v] = BLACK
                stack.pop()
                if via:
                    via.pop()
    return None


def topological_order(g: Graph, vertices: Iterable[str]) -> list[str] | None:
    """Kahn's algorithm on the induced subgraph; None when it has a cycle."""
    vset = set(vertices)
    indeg = dict.fromkeys(vset, 0)
    for v in vset:
        for e in g.out_edges(v):
            if e.dst in vset:
                indeg[e.dst] += 1
    ready = sorted(v for v, d in indeg.items() if d == 0)
    order = []
    queue = deque(ready)
    while queue:
        v = queue.popleft()
        order.append(v)
        for e in g.out_edges(v):
            if e.dst in vset:
                indeg[e.dst] -= 1
                if indeg[e.dst] == 0:
                    queue.append(e.dst)
    return order if len(order) == len(vset) else None


def is_acyclic(g: Graph, cap: int | None = None) -> Acyclicity:
    if g.is_finite:
        return Acyclicity.TRUE if find_cycle(g, g.vertices) is None else Acyclicity.FALSE
    region = explore(g, cap)
    cycle = find_cycle(g, region)
    if cycle is not None:
        if g.declared_acyclic:
            raise GraphContractError(f"declared acyclic but contains the cycle {'.'.join(cycle)}")
        return Acyclicity.FALSE
    return Acyclicity.DECLARED if g.declared_acyclic else Acyclicity.UNKNOWN


def b_vector(g: Graph, v: str) -> dict[str, int]:
    """B_v: edge multiplicities out of v minus the unit vector at v (zero if v is not regular)."""
    if not g.is_regular(v):
        return {}
    vec = g.multiplicities(v)
    vec[v] = vec.get(v, 0) - 1
    return {u: c for u, c in vec.items() if c != 0}


# --------------------------------------------------------------------------
# hereditary saturated sets

def _require_finite(g: Graph, what: str):
    if not g.is_finite:
        raise GraphError(f"{what} needs a finite graph", code="NOT_FINITE")


def is_hereditary(g: Graph, H) -> bool:
    return all(e.dst in H for v in H for e in g.out_edges(v))


def is_saturated(g: Graph, H) -> bool:
    for v in g.vertices:
        if v not in H and g.is_regular(v) and all(e.dst in H for e in g.out_edges(v)):
            return False
    return True


def hs_closure(g: Graph, H: Iterable[str]) -> frozenset[str]:
    """Smallest hereditary and saturated set containing H."""
    _require_finite(g, "hs_closure")
    H = set(H)
    for v in H:
        g.out_edges(v)
    while True:
        stack = list(H)
        while stack:
            v = stack.pop()
            for e in g.out_edges(v):
                if e.dst not in H:
                    H.add(e.dst)
                    stack.append(e.dst)
        added = [
            v for v in g.vertices
            if v not in H and g.is_regular(v) and all(e.dst in H for e in g.out_edges(v))
        ]
        if not added:
            return frozenset(H)
        H.update(added)


def _subset_key(s):
    return (len(s), sorted(s))


@dataclass
class HSLattice:
    subsets: list[frozenset[str]]
    meet: list[list[int]] = field(repr=False)
    join: list[list[int]] = field(repr=False)
    is_chain: bool = False

    def __len__(self):
        return len(self.subsets)

    def leq(self, i: int, j: int) -> bool:
        return self.subsets[i] <= self.subsets[j]

    def index(self, s) -> int:
        return self.subsets.index(frozenset(s))


def enumerate_hs(g: Graph, limit: int = 20) -> HSLattice:
    """All hereditary saturated subsets of a finite graph, as a lattice.

    Every such set is reached from the empty set by repeatedly adding one
    vertex and closing, so the search only visits lattice members.
    """
    _require_finite(g, "enumerate_hs")
    if len(g.vertices) > limit:
        raise GraphError(
            f"graph too large for exact lattice ({len(g.vertices)} > {limit} vertices)",
            code="TOO_LARGE",
        )
    bottom = hs_closure(g, ())
    found = {bottom}
    queue = deque([bottom])
    while queue:
        H = queue.popleft()
        for v in g.vertices:
            if v in H:
                continue
            C = hs_closure(g, H | {v})
            if C not in found:
                found.add(C)
                queue.append(C)
    subsets = sorted(found, key=_subset_key)
    pos = {s: i for i, s in enumerate(subsets)}
    n = len(subsets)
    meet = [[0] * n for _ in range(n)]
    join = [[0] * n for _ in range(n)]
    for i, j in itertools.product(range(n), repeat=2):
        meet[i][j] = pos[subsets[i] & subsets[j]]
        join[i][j] = pos[hs_closure(g, subsets[i] | subsets[j])]
    chain = all(a <= b or b <= a for a, b in itertools.combinations(subsets, 2))
    return HSLattice(subsets, meet, join, chain)
