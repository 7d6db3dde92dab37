"""Deciding membership in the commutator subspace [L, L] and producing
explicit commutator certificates.

Every basis monomial p q* falls in one of four shapes:

* Diagonal      p = q
* RealClosed    p = x y with x = q and y a nontrivial closed path
* GhostClosed   q = z w with z = p and w a nontrivial closed path
* Free          neither path is a prefix of the other

An element is a sum of commutators exactly when (1) its diagonal part,
pushed to the vertices, lies in the span of the B_v vectors, and (2), (3)
the coefficients of the real (resp. ghost) closed parts sum to zero inside
each rotation class of closed paths. Free monomials are always commutators.
"""

from __future__ import annotations

import enum
import json
from collections import defaultdict
from dataclasses import dataclass, field
from typing import Iterable

from .algebra import Element, Monomial, ck2_normalize, commutator, is_zero_in_L
from .errors import LeavittError
from .expr import format_element, format_monomial
from .fields import Field, solve_exact
from .graph import Graph, b_vector, ball

DEFAULT_M_MAX = 16


class Decision(str, enum.Enum):
    YES = "YES"
    NO = "NO"
    UNKNOWN = "UNKNOWN"


# --------------------------------------------------------------------------
# rotation classes

def least_rotation(seq) -> int:
    """Booth's algorithm: start index of the lexicographically least rotation."""
    s = list(seq) * 2
    n = len(s)
    f = [-1] * n
    k = 0
    for j in range(1, n):
        sj = s[j]
        i = f[j - k - 1]
        while i != -1 and sj != s[k + i + 1]:
            if sj < s[k + i + 1]:
                k = j - i - 1
            i = f[i]
        if sj != s[k + i + 1]:
            # here i == -1
            if sj < s[k]:
                k = j
            f[j - k] = -1
        else:
            f[j - k] = i + 1
    return k


def canonical_rotation(g: Graph, edges: Iterable[str]) -> tuple[str, ...]:
    """Class key of a nontrivial closed path: its least rotation."""
    edges = tuple(edges)
    if not edges:
        raise LeavittError("a class key needs a path of length at least 1", code="NOT_CLOSED")
    for a, b in zip(edges, edges[1:] + edges[:1]):
        if g.edge(a).dst != g.edge(b).src:
            raise LeavittError(f"{'.'.join(edges)} is not a closed path", code="NOT_CLOSED")
    k = least_rotation(edges)
    return edges[k:] + edges[:k]


def format_class(key: tuple[str, ...]) -> str:
    return "[" + ".".join(key) + "]"


# --------------------------------------------------------------------------
# shapes

@dataclass(frozen=True)
class Diagonal:
    p: tuple[str, ...]


@dataclass(frozen=True)
class Free:
    q: tuple[str, ...]
    t: tuple[str, ...]


@dataclass(frozen=True)
class RealClosed:
    x: tuple[str, ...]
    y: tuple[str, ...]


@dataclass(frozen=True)
class GhostClosed:
    z: tuple[str, ...]
    w: tuple[str, ...]


def _prefix_rest(g: Graph, a, b, end):
    """Remainder of b after a when path a is a prefix of b (both ending at ``end``)."""
    if not a:
        return b if g.path_source(b, end) == end else None
    if len(a) <= len(b) and b[: len(a)] == a:
        return b[len(a):]
    return None


def classify(g: Graph, m: Monomial):
    if m.p == m.q:
        return Diagonal(m.p)
    rest = _prefix_rest(g, m.q, m.p, m.end)
    if rest is not None:
        return RealClosed(m.q, rest)
    rest = _prefix_rest(g, m.p, m.q, m.end)
    if rest is not None:
        return GhostClosed(m.p, rest)
    return Free(m.p, m.q)


# --------------------------------------------------------------------------
# trace maps

def _add(vec, key, c):
    v = vec.get(key, 0) + c
    if v:
        vec[key] = v
    else:
        vec.pop(key, None)


def trace_T(x: Element) -> dict:
    """T: p q* maps to the unit vector at r(p) when p = q, else to 0."""
    out: dict = {}
    for m, c in x.terms.items():
        if m.p == m.q:
            _add(out, m.end, c)
    return out


def trace_TS(x: Element) -> dict:
    """T_S: p q* with p = q y (y closed, nontrivial) maps to the unit vector at [y]."""
    out: dict = {}
    g = x.graph
    for m, c in x.terms.items():
        if len(m.p) > len(m.q):
            rest = _prefix_rest(g, m.q, m.p, m.end)
            if rest is not None:
                _add(out, canonical_rotation(g, rest), c)
    return out


def trace_TS_star(x: Element) -> dict:
    """T_S*: p q* with q = p w (w closed, nontrivial) maps to the unit vector at [w]."""
    return trace_TS(x.star())


# --------------------------------------------------------------------------
# span membership

@dataclass
class SpanResult:
    decision: Decision
    witness: dict | None
    depth_used: int | None = None


def span_membership(t: dict, g: Graph, field: Field, m_max: int = DEFAULT_M_MAX) -> SpanResult:
    """Is the vertex vector t in the span of the B_v?

    Finite graphs are decided exactly. On lazy graphs the candidate
    support grows ball by ball around supp(t); failure up to ``m_max``
    gives UNKNOWN, never NO.
    """
    t = {v: field(c) for v, c in t.items() if field(c)}
    if not t:
        return SpanResult(Decision.YES, {}, 0)
    if g.is_finite:
        regular = [v for v in g.vertices if g.is_regular(v)]
        sol = solve_exact([b_vector(g, v) for v in regular], t, field)
        if sol is None:
            return SpanResult(Decision.NO, None)
        return SpanResult(Decision.YES, {v: c for v, c in zip(regular, sol) if c})
    previous = None
    for m in range(m_max + 1):
        region = set()
        for u in t:
            region |= ball(g, u, m)
        if region == previous:
            continue
        previous = region
        regular = sorted(v for v in region if g.is_regular(v))
        sol = solve_exact([b_vector(g, v) for v in regular], t, field)
        if sol is not None:
            return SpanResult(Decision.YES, {v: c for v, c in zip(regular, sol) if c}, m)
    return SpanResult(Decision.UNKNOWN, None, m_max)


# --------------------------------------------------------------------------
# membership decision

@dataclass
class MembershipReport:
    decision: Decision
    failed_conditions: list[int] = field(default_factory=list)
    span_witness: dict | None = None
    depth_used: int | None = None
    trace_vector: dict = field(default_factory=dict)
    real_class_sums: dict = field(default_factory=dict)
    ghost_class_sums: dict = field(default_factory=dict)
    condition1: Decision = Decision.YES
    field: Field | None = None

    def to_dict(self) -> dict:
        F = self.field or Field(0)
        fmt = F.format
        out = {
            "decision": self.decision.value,
            "failed_conditions": list(self.failed_conditions),
            "condition1": self.condition1.value,
            "trace_vector": {v: fmt(c) for v, c in sorted(self.trace_vector.items())},
            "span_witness": None if self.span_witness is None
            else {v: fmt(c) for v, c in sorted(self.span_witness.items())},
            "depth_used": self.depth_used,
            "offending_real_classes": {
                format_class(k): fmt(c) for k, c in sorted(self.real_class_sums.items()) if c
            },
            "offending_ghost_classes": {
                format_class(k): fmt(c) for k, c in sorted(self.ghost_class_sums.items()) if c
            },
        }
        return out

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2, sort_keys=True)


def _class_sums(g: Graph, x: Element):
    diag: dict = {}
    real: dict = defaultdict(lambda: x.field.zero)
    ghost: dict = defaultdict(lambda: x.field.zero)
    for m, c in x.terms.items():
        s = classify(g, m)
        if isinstance(s, Diagonal):
            _add(diag, m.end, c)
        elif isinstance(s, RealClosed):
            real[canonical_rotation(g, s.y)] += c
        elif isinstance(s, GhostClosed):
            ghost[canonical_rotation(g, s.w)] += c
    return diag, dict(real), dict(ghost)


def decide_membership(x: Element, m_max: int = DEFAULT_M_MAX, normalize: bool = True) -> MembershipReport:
    """Decide whether x lies in [L_K(E), L_K(E)].

    The conditions are read off the CK2 normal form by default; with
    ``normalize=False`` they are read off the given representative, which
    must give the same answer.
    """
    g = x.graph
    if normalize:
        x = ck2_normalize(x)
    diag, real, ghost = _class_sums(g, x)
    span = span_membership(diag, g, x.field, m_max)
    failed = []
    if span.decision is Decision.NO:
        failed.append(1)
    if any(real.values()):
        failed.append(2)
    if any(ghost.values()):
        failed.append(3)
    if failed:
        decision = Decision.NO
    elif span.decision is Decision.UNKNOWN:
        decision = Decision.UNKNOWN
    else:
        decision = Decision.YES
    return MembershipReport(
        decision=decision,
        failed_conditions=failed,
        span_witness=span.witness,
        depth_used=span.depth_used,
        trace_vector=diag,
        real_class_sums=real,
        ghost_class_sums=ghost,
        condition1=span.decision,
        field=x.field,
    )


# --------------------------------------------------------------------------
# certificates

@dataclass
class Certificate:
    """A list of (k, x, y) with sum of k [x, y] equal to the certified element."""

    pairs: list[tuple[object, Element, Element]]

    def __len__(self):
        return len(self.pairs)

    def total(self, g: Graph, field: Field) -> Element:
        acc = Element.zero(g, field)
        for k, a, b in self.pairs:
            acc = acc + commutator(a, b).scale(k)
        return acc

    def to_list(self, field: Field) -> list:
        return [[field.format(k), format_element(a), format_element(b)] for k, a, b in self.pairs]


def _rotation_split(y: tuple, target: tuple) -> int:
    """Offset k with target == y[k:] + y[:k]."""
    for k in range(len(y)):
        if y[k:] + y[:k] == target:
            return k
    raise AssertionError("paths are not rotations of each other")


def build_certificate(x: Element, report: MembershipReport | None = None) -> Certificate:
    """Explicit commutators summing to x; requires a YES decision.

    The pairs are read off x as written, not off its normal form, so
    ``p p* - r(p)`` certifies as the single commutator [p, p*].
    """
    if report is None:
        report = decide_membership(x)
    if report.decision is not Decision.YES:
        raise LeavittError(f"cannot certify a {report.decision.value} element", code="NOT_A_MEMBER")
    g, F = x.graph, x.field

    def mono(p=(), q=(), end=None):
        return Element(g, F, {Monomial(tuple(p), tuple(q), end): 1})

    def real_path(edges, end):
        return mono(edges, (), end)

    def ghost_path(edges, end):
        return mono((), edges, end)

    pairs = []
    vertex_part: dict = {}
    real_groups: dict = defaultdict(list)
    ghost_groups: dict = defaultdict(list)
    for m, c in x:
        s = classify(g, m)
        if isinstance(s, Free):
            # q* p = 0, so [p, q*] = p q*
            pairs.append((c, real_path(m.p, m.end), ghost_path(m.q, m.end)))
        elif isinstance(s, Diagonal):
            # p p* = [p, p*] + r(p)
            if m.p:
                pairs.append((c, real_path(m.p, m.end), ghost_path(m.p, m.end)))
            _add(vertex_part, m.end, c)
        elif isinstance(s, RealClosed):
            # x y x* = [x y, x*] + y
            if s.x:
                pairs.append((c, real_path(m.p, m.end), ghost_path(s.x, m.end)))
            real_groups[canonical_rotation(g, s.y)].append((c, s.y))
        else:
            # z w* z* = [z w*, z*] + w*
            if s.z:
                pairs.append((c, mono(s.z, s.w, m.end), ghost_path(s.z, m.end)))
            ghost_groups[canonical_rotation(g, s.w)].append((c, s.w))

    # coefficients sum to zero per class: y_j - y_last = u v - v u
    for group in real_groups.values():
        _, last = group[-1]
        for c, y in group[:-1]:
            k = _rotation_split(y, last)
            if k:
                u, v = y[:k], y[k:]
                pairs.append((c, real_path(u, g.edge(u[-1]).dst), real_path(v, g.edge(v[-1]).dst)))
    for group in ghost_groups.values():
        _, last = group[-1]
        for c, w in group[:-1]:
            k = _rotation_split(w, last)
            if k:
                a, b = w[:k], w[k:]
                # w* - last* = b* a* - a* b* = [b*, a*]
                pairs.append((c, ghost_path(b, g.edge(b[-1]).dst), ghost_path(a, g.edge(a[-1]).dst)))

    # sum of k_v v = sum c_v phi(B_v) and phi(B_v) = -sum_{s(e)=v} [e, e*]
    if vertex_part:
        witness = report.span_witness
        if report.trace_vector != vertex_part or witness is None:
            witness = span_membership(vertex_part, g, F).witness
        for v in sorted(witness):
            cv = witness[v]
            for e in g.out_edges(v):
                pairs.append((-cv, real_path((e.id,), e.dst), ghost_path((e.id,), e.dst)))
    return Certificate(pairs)


def verify_certificate(cert: Certificate, x: Element) -> bool:
    return is_zero_in_L(cert.total(x.graph, x.field) - x)
