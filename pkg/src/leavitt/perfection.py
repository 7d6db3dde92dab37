"""Deciding whether L_K(E) = [L_K(E), L_K(E)].

That holds exactly when E is acyclic, every vertex is regular, K has
prime characteristic p, and every vertex u has some radius m for which
each vertex w at distance m + 1 from u is reached by a multiple of p paths
that stay inside the ball D(u, m) until their last edge.
"""

from __future__ import annotations

import json
import dataclasses
from dataclasses import dataclass

from .algebra import Path
from .commutators import DEFAULT_M_MAX, Decision
from .errors import GraphContractError, GraphError, LeavittError
from .fields import Field
from .graph import Graph, ball_layers, explore, find_cycle, topological_order


def count_boundary_paths(g: Graph, u: str, m: int) -> dict[str, int]:
    """For each w with d(u, w) = m + 1, the number of paths from u to w through D(u, m)."""
    layers = ball_layers(g, u, m + 1)
    inner = [v for v, d in layers.items() if d <= m]
    order = topological_order(g, inner)
    if order is None:
        raise GraphError(f"the ball D({u}, {m}) contains a cycle", code="NOT_ACYCLIC")
    inside = set(inner)
    count = dict.fromkeys(inner, 0)
    count[u] = 1
    boundary: dict[str, int] = {}
    for v in order:
        c = count[v]
        if not c:
            continue
        for e in g.out_edges(v):
            if e.dst in inside:
                count[e.dst] += c
            elif layers.get(e.dst) == m + 1:
                boundary[e.dst] = boundary.get(e.dst, 0) + c
    return dict(sorted(boundary.items()))


def vertex_sum_decomposition(g: Graph, u: str, m: int | None = None) -> list[Path]:
    """Paths q_1..q_l with u = sum of q_i q_i* in L_K(E).

    Without ``m``: all paths from u to a sink (finite acyclic graph, u not a
    sink). With ``m``: all paths from u that stay in D(u, m) until they
    reach distance m + 1; every vertex of D(u, m) must be regular.
    """
    if m is None:
        if not g.is_finite:
            raise LeavittError("the sink variant needs a finite graph", code="NOT_FINITE")
        if find_cycle(g, g.vertices) is not None:
            raise LeavittError("the sink variant needs an acyclic graph", code="NOT_ACYCLIC")
        if g.is_sink(u):
            raise LeavittError(f"{u} is a sink", code="SINK")
        stop = g.is_sink
    else:
        layers = ball_layers(g, u, m + 1)
        inner = {v for v, d in layers.items() if d <= m}
        bad = sorted(v for v in inner if not g.is_regular(v))
        if bad:
            raise LeavittError(f"D({u}, {m}) contains the non-regular vertex {bad[0]}", code="NOT_REGULAR")
        if topological_order(g, inner) is None:
            raise LeavittError(f"D({u}, {m}) contains a cycle", code="NOT_ACYCLIC")
        stop = lambda v: v not in inner  # noqa: E731

    paths = []
    stack = [((), u)]
    while stack:
        edges, v = stack.pop()
        if edges and stop(v):
            paths.append(Path(u, edges))
            continue
        for e in g.out_edges(v):
            stack.append((edges + (e.id,), e.dst))
    paths.sort(key=lambda p: p.edges)
    return paths


@dataclass
class PerfectReport:
    verdict: Decision
    failing_condition: int | None = None
    evidence: dict = dataclasses.field(default_factory=dict)
    m_assignments: dict[str, int] = dataclasses.field(default_factory=dict)
    scope: str = ""

    def to_dict(self) -> dict:
        return {
            "verdict": self.verdict.value,
            "failing_condition": self.failing_condition,
            "evidence": self.evidence,
            "m_assignments": dict(sorted(self.m_assignments.items())),
            "scope": self.scope,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2, sort_keys=True)


def find_m(g: Graph, u: str, p: int, m_max: int = DEFAULT_M_MAX):
    """Least m <= m_max whose boundary counts are all multiples of p, else (None, last counts)."""
    counts = {}
    for m in range(m_max + 1):
        counts = count_boundary_paths(g, u, m)
        if all(c % p == 0 for c in counts.values()):
            return m, counts
    return None, counts


def check_perfect(g: Graph, field: Field, m_max: int = DEFAULT_M_MAX, region_depth: int | None = None) -> PerfectReport:
    p = field.characteristic
    if g.is_finite:
        scope = f"whole graph ({len(g.vertices)} vertices)"
        region = list(g.vertices)
    else:
        region = explore(g, region_depth)
        depth = g.region_depth if region_depth is None else region_depth
        scope = f"region of {len(region)} vertices within depth {depth} of the roots"

    if p == 0:
        return PerfectReport(Decision.NO, 3, {"characteristic": 0}, scope=scope)

    cycle = find_cycle(g, region)
    if cycle is not None:
        if not g.is_finite and g.declared_acyclic:
            raise GraphContractError(f"declared acyclic but contains the cycle {'.'.join(cycle)}")
        return PerfectReport(Decision.NO, 1, {"cycle": cycle}, scope=scope)

    sinks = [v for v in region if g.is_sink(v)]
    if sinks:
        return PerfectReport(Decision.NO, 2, {"non_regular": sinks[:10], "count": len(sinks)}, scope=scope)

    reps = getattr(g, "representatives", None)
    if reps is not None:
        checked = list(reps)
        scope = f"global, via {len(reps)} orbit representatives; " + scope
    else:
        checked = region

    m_assign = {}
    for u in checked:
        m, counts = find_m(g, u, p, m_max)
        if m is None:
            bad = {w: c for w, c in counts.items() if c % p}
            return PerfectReport(
                Decision.UNKNOWN, 4,
                {"vertex": u, "m_max": m_max, "counts_at_m_max": bad},
                m_assignments=m_assign, scope=scope,
            )
        m_assign[u] = m
    return PerfectReport(Decision.YES, None, {}, m_assignments=m_assign, scope=scope)
