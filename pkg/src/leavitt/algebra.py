"""Elements of the Cohn path algebra C_K(E) and the Leavitt path algebra L_K(E).

A basis monomial ``p q*`` is stored as ``Monomial(p, q, end)`` where ``p``
and ``q`` are tuples of edge ids and ``end = r(p) = r(q)``; a length-zero
path is the empty tuple, so the vertex ``v`` is ``Monomial((), (), v)``.
Products follow the Cohn relations only. Equality in L_K(E) is decided by
the CK2 normal form: with the special edge ``g(v)`` the least out-edge of
``v``, the rule

    (p g)(q g)*  ->  p q* - sum over e != g with s(e) = s(g) of (p e)(q e)*

is applied until no monomial has both paths ending in the same special
edge. Those monomials form a basis of L_K(E), so the normal form is unique.
"""

from __future__ import annotations

import random as _random
from typing import Iterable, NamedTuple

from .errors import GraphError, LeavittError
from .fields import Field
from .graph import Graph


class Path(NamedTuple):
    """A path given by its source vertex and edge ids (empty for a vertex)."""

    source: str
    edges: tuple[str, ...] = ()

    def __len__(self):
        return len(self.edges)

    def range(self, g: Graph) -> str:
        return g.edge(self.edges[-1]).dst if self.edges else self.source

    def is_closed(self, g: Graph) -> bool:
        return self.range(g) == self.source


class Monomial(NamedTuple):
    p: tuple[str, ...]
    q: tuple[str, ...]
    end: str

    def star(self) -> "Monomial":
        return Monomial(self.q, self.p, self.end)


def make_path(g: Graph, edges: Iterable[str], source: str | None = None) -> Path:
    edges = tuple(edges)
    if not edges:
        if source is None or not g.has_vertex(source):
            raise GraphError(f"no such vertex: {source!r}", code="UNKNOWN_VERTEX")
        return Path(source, ())
    first = g.edge(edges[0])
    if source is not None and source != first.src:
        raise LeavittError(f"path {'.'.join(edges)} does not start at {source}", code="NON_COMPOSABLE")
    for a, b in zip(edges, edges[1:]):
        if g.edge(a).dst != g.edge(b).src:
            raise LeavittError(f"edges {a} and {b} are not composable", code="NON_COMPOSABLE")
    return Path(first.src, edges)


def _strip_prefix(g: Graph, a: tuple, a_end: str, b: tuple, b_end: str):
    """If path a (ending at a_end) is a prefix of path b, return the rest of b."""
    if not a:
        return b if g.path_source(b, b_end) == a_end else None
    if len(a) <= len(b) and b[: len(a)] == a:
        return b[len(a):]
    return None


def mono_mul(g: Graph, m1: Monomial, m2: Monomial) -> Monomial | None:
    """Product of two basis monomials in C_K(E); None stands for zero."""
    rest = _strip_prefix(g, m1.q, m1.end, m2.p, m2.end)
    if rest is not None:
        return Monomial(m1.p + rest, m2.q, m2.end)
    rest = _strip_prefix(g, m2.p, m2.end, m1.q, m1.end)
    if rest is not None:
        return Monomial(m1.p, m2.q + rest, m1.end)
    return None


def _mono_key(m: Monomial):
    return (m.p, m.q, m.end)


class Element:
    """A finite K-linear combination of monomials over a fixed graph.

    Elements are immutable; arithmetic happens in C_K(E) and
    :func:`ck2_normalize` passes to L_K(E).
    """

    __slots__ = ("graph", "field", "terms")

    def __init__(self, graph: Graph, field: Field, terms=None):
        self.graph = graph
        self.field = field
        clean = {}
        if terms:
            for m, c in terms.items():
                c = field(c)
                if c:
                    clean[m] = c
        self.terms: dict[Monomial, object] = clean

    # constructors ---------------------------------------------------------
    @classmethod
    def zero(cls, g, field):
        return cls(g, field)

    @classmethod
    def vertex(cls, g, field, v, coeff=1):
        if not g.has_vertex(v):
            raise GraphError(f"no such vertex: {v!r}", code="UNKNOWN_VERTEX")
        return cls(g, field, {Monomial((), (), v): coeff})

    @classmethod
    def monomial(cls, g, field, p=(), q=(), end=None, coeff=1):
        """p q* for edge sequences p, q; ``end`` names the vertex when both are empty."""
        p, q = tuple(p), tuple(q)
        rp = make_path(g, p).range(g) if p else end
        rq = make_path(g, q).range(g) if q else end
        rp = rp if rp is not None else rq
        rq = rq if rq is not None else rp
        if rp is None:
            raise LeavittError("a monomial of two vertex paths needs its vertex", code="SYNTAX")
        if rp != rq or (end is not None and end != rp):
            raise LeavittError(f"r(p) = {rp} differs from r(q) = {rq}", code="RANGE_MISMATCH")
        if not g.has_vertex(rp):
            raise GraphError(f"no such vertex: {rp!r}", code="UNKNOWN_VERTEX")
        return cls(g, field, {Monomial(p, q, rp): coeff})

    @classmethod
    def path(cls, g, field, path, coeff=1):
        if isinstance(path, Path):
            make_path(g, path.edges, path.source)
            return cls(g, field, {Monomial(path.edges, (), path.range(g)): coeff})
        return cls.monomial(g, field, tuple(path), (), coeff=coeff)

    @classmethod
    def ghost(cls, g, field, path, coeff=1):
        return cls.path(g, field, path, coeff).star()

    # helpers ----------------------------------------------------------------
    def _check(self, other: "Element"):
        if not isinstance(other, Element):
            raise TypeError(f"expected Element, got {type(other).__name__}")
        if other.graph is not self.graph:
            raise LeavittError("elements live over different graphs")
        if other.field != self.field:
            raise LeavittError("elements live over different fields")

    def _new(self, terms):
        return Element(self.graph, self.field, terms)

    def __iter__(self):
        return iter(sorted(self.terms.items(), key=lambda kv: _mono_key(kv[0])))

    def __len__(self):
        return len(self.terms)

    def __bool__(self):
        return bool(self.terms)

    def coefficient(self, m: Monomial):
        return self.terms.get(m, self.field.zero)

    # arithmetic -----------------------------------------------------------
    def __add__(self, other):
        self._check(other)
        out = dict(self.terms)
        for m, c in other.terms.items():
            out[m] = out.get(m, 0) + c
        return self._new(out)

    def __neg__(self):
        return self._new({m: -c for m, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def scale(self, k):
        k = self.field(k)
        return self._new({m: k * c for m, c in self.terms.items()})

    def __mul__(self, other):
        if not isinstance(other, Element):
            return self.scale(other)
        self._check(other)
        g = self.graph
        out: dict = {}
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                m = mono_mul(g, m1, m2)
                if m is not None:
                    out[m] = out.get(m, 0) + c1 * c2
        return self._new(out)

    def __rmul__(self, k):
        return self.scale(k)

    def star(self) -> "Element":
        return self._new({m.star(): c for m, c in self.terms.items()})

    def __eq__(self, other):
        """Equality of representatives in C_K(E); see :func:`equals_in_L`."""
        if not isinstance(other, Element):
            return NotImplemented
        return (
            other.graph is self.graph and other.field == self.field and other.terms == self.terms
        )

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def __repr__(self):
        from .expr import format_element

        return f"Element({format_element(self)!r})"

    def __str__(self):
        from .expr import format_element

        return format_element(self)


def commutator(x: Element, y: Element) -> Element:
    return x * y - y * x


# --------------------------------------------------------------------------
# CK2 normal form

def _redex(g: Graph, m: Monomial) -> str | None:
    """Source vertex of the shared special tail edge of m, if m is reducible."""
    if m.p and m.q and m.p[-1] == m.q[-1]:
        e = g.edge(m.p[-1])
        if g.special_edge(e.src).id == e.id:
            return e.src
    return None


def _rewrite(g: Graph, m: Monomial, v: str):
    """One rule application; yields (monomial, +1/-1) pairs replacing m."""
    p, q = m.p[:-1], m.q[:-1]
    out = g.out_edges(v)
    yield Monomial(p, q, v), 1
    for e in out[1:]:
        yield Monomial(p + (e.id,), q + (e.id,), e.dst), -1


def monomial_normal_form(g: Graph, m: Monomial) -> dict[Monomial, int]:
    """Normal form of a single monomial; integer coefficients, cached per graph."""
    cache = g._nf_cache
    hit = cache.get(m)
    if hit is not None:
        return hit
    v = _redex(g, m)
    if v is None:
        nf = {m: 1}
    else:
        nf = {}
        for mm, sign in _rewrite(g, m, v):
            sub = monomial_normal_form(g, mm) if sign == 1 else {mm: 1}
            for k, c in sub.items():
                nf[k] = nf.get(k, 0) + sign * c
        nf = {k: c for k, c in nf.items() if c}
    cache[m] = nf
    return nf


def ck2_normalize(x: Element) -> Element:
    g = x.graph
    out: dict = {}
    for m, c in x.terms.items():
        for mm, k in monomial_normal_form(g, m).items():
            out[mm] = out.get(mm, 0) + c * k
    return x._new(out)


def is_normal(x: Element) -> bool:
    return all(_redex(x.graph, m) is None for m in x.terms)


def rewrite_normalize(x: Element, rng: _random.Random | None = None) -> tuple[Element, int]:
    """Normalize by explicit rule applications, returning the step count.

    Independent of :func:`ck2_normalize` and its cache. With ``rng`` the
    redex to rewrite is chosen at random, which gives different rewrite
    orders for confluence checks.
    """
    g = x.graph
    terms = dict(x.terms)
    pending = {m for m in terms if _redex(g, m) is not None}
    steps = 0
    while pending:
        if rng is None:
            m = min(pending, key=_mono_key)
        else:
            m = rng.choice(sorted(pending, key=_mono_key))
        pending.discard(m)
        c = terms.pop(m)
        for mm, sign in _rewrite(g, m, _redex(g, m)):
            nc = terms.get(mm, 0) + sign * c
            if nc:
                terms[mm] = nc
                if _redex(g, mm) is not None:
                    pending.add(mm)
            else:
                terms.pop(mm, None)
                pending.discard(mm)
        steps += 1
    return x._new(terms), steps


def rewrite_bound(x: Element) -> int:
    """Upper bound on rule applications: each term can lose at most min(|p|, |q|) tail pairs."""
    return sum(min(len(m.p), len(m.q)) for m in x.terms)


def is_zero_in_L(x: Element) -> bool:
    return not ck2_normalize(x).terms


def equals_in_L(x: Element, y: Element) -> bool:
    return is_zero_in_L(x - y)


def ck2_generator(g: Graph, field: Field, v: str) -> Element:
    """v - sum of e e* over the out-edges of a regular vertex v (a generator of N)."""
    if not g.is_regular(v):
        raise LeavittError(f"{v} is not a regular vertex", code="NOT_REGULAR")
    terms = {Monomial((), (), v): 1}
    for e in g.out_edges(v):
        terms[Monomial((e.id,), (e.id,), e.dst)] = -1
    return Element(g, field, terms)


def expand_at_vertex(x: Element, v: str) -> Element:
    """Replace every monomial p q* with r(p) = v by its CK2 expansion at v."""
    g = x.graph
    if not g.has_vertex(v) or not g.is_regular(v):
        raise LeavittError(f"{v} is not a regular vertex", code="NOT_REGULAR")
    out: dict = {}
    for m, c in x.terms.items():
        if m.end != v:
            out[m] = out.get(m, 0) + c
            continue
        for e in g.out_edges(v):
            mm = Monomial(m.p + (e.id,), m.q + (e.id,), e.dst)
            out[mm] = out.get(mm, 0) + c
    return x._new(out)
