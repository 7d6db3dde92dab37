"""Random graphs and elements for cross-checks and property tests."""

from __future__ import annotations

import random

from .algebra import Element, Monomial, ck2_generator
from .fields import Field
from .graph import Edge, FiniteGraph, Graph


def random_graph(rng: random.Random, max_vertices: int = 8, max_parallel: int = 3,
                 acyclic: bool = True, density: float = 0.35) -> FiniteGraph:
    """A random finite multigraph; with ``acyclic`` edges only go from lower to higher index."""
    n = rng.randint(1, max_vertices)
    vs = [f"v{i}" for i in range(1, n + 1)]
    edges = []
    for i in range(n):
        for j in range(n):
            if acyclic and j <= i:
                continue
            if rng.random() < density:
                for k in range(1, rng.randint(1, max_parallel) + 1):
                    edges.append(Edge(f"e{i + 1}_{j + 1}_{k}", vs[i], vs[j]))
    return FiniteGraph(vs, edges, name="random")


def random_path_into(rng: random.Random, g: Graph, v: str, max_len: int = 4,
                     incoming: dict | None = None) -> tuple[str, ...]:
    """A random path ending at v, built by walking edges backwards."""
    if incoming is None:
        incoming = _incoming(g)
    edges: tuple[str, ...] = ()
    head = v
    for _ in range(rng.randint(0, max_len)):
        back = incoming.get(head)
        if not back:
            break
        e = rng.choice(back)
        edges = (e.id,) + edges
        head = e.src
    return edges


def _incoming(g: FiniteGraph) -> dict[str, list[Edge]]:
    inc: dict[str, list[Edge]] = {v: [] for v in g.vertices}
    for e in g.edges:
        inc[e.dst].append(e)
    return inc


def random_monomial(rng: random.Random, g: FiniteGraph, max_len: int = 4, incoming=None) -> Monomial:
    incoming = incoming or _incoming(g)
    v = rng.choice(g.vertices)
    return Monomial(random_path_into(rng, g, v, max_len, incoming),
                    random_path_into(rng, g, v, max_len, incoming), v)


def random_scalar(rng: random.Random, field: Field):
    if field.characteristic:
        return field(rng.randrange(field.characteristic))
    return field(rng.choice([-3, -2, -1, 1, 1, 2, 3]))


def random_element(rng: random.Random, g: FiniteGraph, field: Field,
                   max_terms: int = 6, max_len: int = 4) -> Element:
    incoming = _incoming(g)
    terms: dict = {}
    for _ in range(rng.randint(1, max_terms)):
        m = random_monomial(rng, g, max_len, incoming)
        terms[m] = terms.get(m, field.zero) + random_scalar(rng, field)
    return Element(g, field, terms)


def random_n_element(rng: random.Random, g: FiniteGraph, field: Field,
                     max_terms: int = 3, max_len: int = 3) -> Element:
    """A random element of N: a combination of products p (v - sum ee*) q*.

    Any other outer factor either gives one of these or kills the generator.
    """
    regular = [v for v in g.vertices if g.is_regular(v)]
    total = Element.zero(g, field)
    if not regular:
        return total
    incoming = _incoming(g)
    for _ in range(rng.randint(1, max_terms)):
        v = rng.choice(regular)
        p = random_path_into(rng, g, v, max_len, incoming)
        q = random_path_into(rng, g, v, max_len, incoming)
        k = random_scalar(rng, field) or field.one
        left = Element(g, field, {Monomial(p, (), v): k})
        right = Element(g, field, {Monomial((), q, v): field.one})
        total = total + left * ck2_generator(g, field, v) * right
    return total
    incoming = _incoming(g)
    for _ in range(rng.randint(1, max_terms)):
        v = rng.choice(regular)
        gen = ck2_generator(g, field, v)
        q, w = random_path_from(rng, g, v, max_len)
        a = Monomial(random_path_into(rng, g, w, max_len, incoming), q, w)
        p, w = random_path_from(rng, g, v, max_len)
        b = Monomial(p, random_path_into(rng, g, w, max_len, incoming), w)
        k = random_scalar(rng, field) or field.one
        total = total + Element(g, field, {a: k}) * gen * Element(g, field, {b: field.one})
    return total


def random_commutator_sum(rng: random.Random, g: FiniteGraph, field: Field,
                          count: int = 3, max_len: int = 3) -> Element:
    total = Element.zero(g, field)
    for _ in range(rng.randint(1, count)):
        x = random_element(rng, g, field, 3, max_len)
        y = random_element(rng, g, field, 3, max_len)
        total = total + x * y - y * x
    return total
