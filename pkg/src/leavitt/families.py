"""Generators for named graph families.

Infinite families are returned as :class:`LazyGraph` objects that declare
acyclicity, regularity and a finite set of orbit representatives (every
vertex has a forward subgraph isomorphic to that of a representative).
Passing ``truncate=true`` cuts the family at its region size instead and
returns a finite graph, whose cut vertices become sinks.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field

from .errors import ParseError
from .graph import Edge, FiniteGraph, Graph, LazyGraph


def line(d: int = 3) -> FiniteGraph:
    """v1 -> v2 -> ... -> vd; its Leavitt path algebra is the d x d matrices."""
    if d < 1:
        raise ValueError("line needs d >= 1")
    vs = [f"v{i}" for i in range(1, d + 1)]
    es = [Edge(f"e{i}", f"v{i}", f"v{i + 1}") for i in range(1, d)]
    return FiniteGraph(vs, es, name=f"line(d={d})")


def rose(n: int = 2) -> FiniteGraph:
    return FiniteGraph(["v"], [Edge(f"e{i}", "v", "v") for i in range(1, n + 1)], name=f"rose(n={n})")


def loop() -> FiniteGraph:
    """One vertex with one loop x (Laurent polynomials)."""
    return FiniteGraph(["v"], [Edge("x", "v", "v")], name="loop")


def _parallel(prefix: str, src: str, dst: str, k: int) -> list[Edge]:
    return [Edge(f"{prefix}_{i}", src, dst) for i in range(1, k + 1)]


def _finite_from_lazy(lazy: LazyGraph, keep, name: str) -> FiniteGraph:
    """Restrict a lazy family to the vertex predicate ``keep``; cut edges are dropped."""
    seen = set()
    stack = [r for r in lazy.roots if keep(r)]
    seen.update(stack)
    edges = []
    while stack:
        v = stack.pop()
        for e in lazy.out_edges(v):
            if keep(e.dst):
                edges.append(e)
                if e.dst not in seen:
                    seen.add(e.dst)
                    stack.append(e.dst)
    return FiniteGraph(sorted(seen), edges, name=name)


def p_line(p: int = 2, mults=None, length: int = 10, truncate: bool = False) -> Graph:
    """v1 -> v2 -> ... with mults[i] parallel edges out of v(i+1), the pattern repeating."""
    mults = list(mults) if mults else [p]
    if any(k < 1 for k in mults):
        raise ValueError("multiplicities must be positive")
    L = len(mults)

    def gen(v):
        i = int(v[1:])
        k = mults[(i - 1) % L]
        return _parallel(f"e{i}", v, f"v{i + 1}", k)

    name = f"p_line(p={p}, mults={mults}, len={length})"
    lazy = LazyGraph(
        gen, ["v1"], declared_acyclic=True, declared_all_regular=True,
        representatives=[f"v{i}" for i in range(1, L + 1)], region_depth=length, name=name,
    )
    if truncate:
        return _finite_from_lazy(lazy, lambda v: int(v[1:]) <= length, name + " truncated")
    return lazy


def p_tree(p: int = 2, mults=None, depth: int = 6, truncate: bool = False) -> Graph:
    """Triangular lattice: t{k}_{j} -> t{k+1}_{j} and t{k+1}_{j+1} with mults[0], mults[1] edges."""
    a, b = list(mults) if mults else [p, p]
    name = f"p_tree(p={p}, mults={[a, b]}, depth={depth})"

    def gen(v):
        k, j = (int(s) for s in v[1:].split("_"))
        return (_parallel(f"a{k}_{j}", v, f"t{k + 1}_{j}", a)
                + _parallel(f"b{k}_{j}", v, f"t{k + 1}_{j + 1}", b))

    lazy = LazyGraph(
        gen, ["t0_0"], declared_acyclic=True, declared_all_regular=True,
        representatives=["t0_0"], region_depth=depth, name=name,
    )
    if truncate:
        return _finite_from_lazy(lazy, lambda v: int(v[1:].split("_")[0]) <= depth, name + " truncated")
    return lazy


def _alt_name(i: int) -> str:
    return f"v{i}" if i >= 0 else f"vm{-i}"


def _alt_index(v: str) -> int:
    return -int(v[2:]) if v.startswith("vm") else int(v[1:])


def alt_line(p: int = 2, a: int = 1, b: int = 1, length: int = 6, truncate: bool = False) -> Graph:
    """Two-sided line whose edge multiplicities alternate a*p and b."""
    name = f"alt_line(p={p}, a={a}, b={b}, len={length})"

    def gen(v):
        i = _alt_index(v)
        k = a * p if i % 2 == 0 else b
        return _parallel("e" + _alt_name(i)[1:], v, _alt_name(i + 1), k)

    lazy = LazyGraph(
        gen, [_alt_name(-length)], declared_acyclic=True, declared_all_regular=True,
        representatives=["v0", "v1"], region_depth=2 * length, name=name,
    )
    if truncate:
        return _finite_from_lazy(lazy, lambda v: _alt_index(v) <= length, name + " truncated")
    return lazy


def stair(p: int = 2, length: int = 3, truncate: bool = False) -> Graph:
    """Periodic staircase of 5-vertex blocks a,b,c,d,e; c and e feed the next a with p edges each."""
    name = f"stair(p={p}, len={length})"

    def gen(v):
        kind, k = v[0], int(v[1:])
        nxt = f"a{k + 1}"
        if kind == "a":
            return [Edge(f"ab{k}", v, f"b{k}"), Edge(f"ad{k}", v, f"d{k}")]
        if kind == "b":
            return [Edge(f"bc{k}", v, f"c{k}"), Edge(f"be{k}", v, f"e{k}")]
        if kind == "c":
            return _parallel(f"ca{k}", v, nxt, p)
        if kind == "d":
            return [Edge(f"db{k}", v, f"b{k}")]
        return _parallel(f"ea{k}", v, nxt, p)

    lazy = LazyGraph(
        gen, ["a0"], declared_acyclic=True, declared_all_regular=True,
        representatives=["a0", "b0", "c0", "d0", "e0"], region_depth=4 * length, name=name,
    )
    if truncate:
        return _finite_from_lazy(lazy, lambda v: int(v[1:]) < length or v == f"a{length}", name + " truncated")
    return lazy


def _grid_pos(v: str):
    i, j = v[1:].split("_")
    return int(i), int(j)


def grid_En(n: int = 2, p: int = 2, cols: int = 8, truncate: bool = False) -> Graph:
    """n rows, infinitely many columns; p edges right and p edges down (except the last row)."""
    name = f"grid_En(n={n}, p={p}, cols={cols})"

    def gen(v):
        i, j = _grid_pos(v)
        out = _parallel(f"r{i}_{j}", v, f"v{i}_{j + 1}", p)
        if i < n:
            out += _parallel(f"d{i}_{j}", v, f"v{i + 1}_{j}", p)
        return out

    lazy = LazyGraph(
        gen, ["v1_1"], declared_acyclic=True, declared_all_regular=True,
        representatives=[f"v{i}_1" for i in range(1, n + 1)], region_depth=n + cols, name=name,
    )
    if truncate:
        return _finite_from_lazy(lazy, lambda v: _grid_pos(v)[1] <= cols, name + " truncated")
    return lazy


def grid_Einf(p: int = 2, rows: int = 4, cols: int = 4, truncate: bool = False) -> Graph:
    name = f"grid_Einf(p={p}, rows={rows}, cols={cols})"

    def gen(v):
        i, j = _grid_pos(v)
        return _parallel(f"r{i}_{j}", v, f"v{i}_{j + 1}", p) + _parallel(f"d{i}_{j}", v, f"v{i + 1}_{j}", p)

    lazy = LazyGraph(
        gen, ["v1_1"], declared_acyclic=True, declared_all_regular=True,
        representatives=["v1_1"], region_depth=rows + cols, name=name,
    )
    if truncate:
        keep = lambda v: _grid_pos(v)[0] <= rows and _grid_pos(v)[1] <= cols  # noqa: E731
        return _finite_from_lazy(lazy, keep, name + " truncated")
    return lazy


def fan_kappa(count: int = 3, p: int = 2, length: int = 8, truncate: bool = False) -> Graph:
    """u1..u_count each send p edges to v1, followed by a line with p edges per step."""
    name = f"fan_kappa(count={count}, p={p}, len={length})"

    def gen(v):
        if v.startswith("u"):
            return _parallel(f"a{v[1:]}", v, "v1", p)
        i = int(v[1:])
        return _parallel(f"e{i}", v, f"v{i + 1}", p)

    roots = [f"u{i}" for i in range(1, count + 1)]
    lazy = LazyGraph(
        gen, roots, declared_acyclic=True, declared_all_regular=True,
        representatives=["u1", "v1"], region_depth=length, name=name,
    )
    if truncate:
        return _finite_from_lazy(lazy, lambda v: v.startswith("u") or int(v[1:]) <= length, name + " truncated")
    return lazy


FAMILIES = {
    "line": line,
    "rose": rose,
    "loop": loop,
    "p_line": p_line,
    "ptree": p_tree,
    "p_tree": p_tree,
    "alt_line": alt_line,
    "stair": stair,
    "grid_En": grid_En,
    "grid_Einf": grid_Einf,
    "fan_kappa": fan_kappa,
}


@dataclass
class FamilySpec:
    name: str
    params: dict = field(default_factory=dict)

    def build(self) -> Graph:
        try:
            fn = FAMILIES[self.name]
        except KeyError:
            raise ParseError(f"unknown family {self.name!r}", code="UNKNOWN_FAMILY") from None
        params = dict(self.params)
        if "len" in params:
            params["length"] = params.pop("len")
        try:
            return fn(**params)
        except TypeError as exc:
            raise ParseError(f"bad parameters for {self.name}: {exc}", code="BAD_PARAMETER") from None
        except ValueError as exc:
            raise ParseError(str(exc), code="BAD_PARAMETER") from None


_FAMILY_RE = re.compile(r"^\s*(?:family\s+)?([A-Za-z_]\w*)\s*(?:\((.*)\))?\s*;?\s*$", re.S)


def _split_args(text: str) -> list[str]:
    parts, depth, cur = [], 0, []
    for ch in text:
        if ch == "[":
            depth += 1
        elif ch == "]":
            depth -= 1
        if ch == "," and depth == 0:
            parts.append("".join(cur))
            cur = []
        else:
            cur.append(ch)
    if "".join(cur).strip():
        parts.append("".join(cur))
    return [p.strip() for p in parts if p.strip()]


def _parse_value(text: str):
    text = text.strip()
    if text.lower() in ("true", "false"):
        return text.lower() == "true"
    if text.startswith("[") and text.endswith("]"):
        # a trailing "..." only says the pattern repeats
        items = [t.strip() for t in text[1:-1].split(",")]
        return [int(t) for t in items if t and t != "..."]
    return int(text)


def parse_family(text: str) -> FamilySpec:
    """Parse ``family name(k=v, ...)`` (the ``family`` keyword is optional)."""
    m = _FAMILY_RE.match(text)
    if not m:
        raise ParseError(f"bad family expression {text.strip()!r}")
    name, args = m.group(1), m.group(2) or ""
    params = {}
    for part in _split_args(args):
        if "=" not in part:
            raise ParseError(f"family parameter {part!r} must look like key=value")
        key, val = part.split("=", 1)
        try:
            params[key.strip()] = _parse_value(val)
        except ValueError:
            raise ParseError(f"bad value for {key.strip()}: {val.strip()!r}", code="BAD_PARAMETER") from None
    return FamilySpec(name, params)


def family(text: str) -> Graph:
    return parse_family(text).build()
