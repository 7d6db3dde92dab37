"""Randomized cross-checks between the independent parts of the engine."""

from __future__ import annotations

import random
from dataclasses import dataclass, field

from .algebra import ck2_normalize, is_zero_in_L, rewrite_normalize
from .commutators import (
    Decision,
    build_certificate,
    decide_membership,
    span_membership,
    trace_T,
    trace_TS,
    trace_TS_star,
    verify_certificate,
)
from .fields import Field
from .oracle import oracle_membership, sink_index, to_matrix
from .randgen import random_element, random_graph, random_n_element

FIELDS = (0, 2, 3)


@dataclass
class CheckResult:
    name: str
    cases: int = 0
    failures: int = 0
    example: str | None = field(default=None)

    @property
    def passed(self) -> bool:
        return self.failures == 0

    def record(self, ok: bool, detail=None):
        self.cases += 1
        if not ok:
            self.failures += 1
            if self.example is None:
                self.example = detail() if callable(detail) else detail

    def to_dict(self) -> dict:
        return {"name": self.name, "cases": self.cases, "failures": self.failures,
                "passed": self.passed, "example": self.example}


def _graphs(rng, count, acyclic=True):
    """Random graphs cycling through the test fields; ``acyclic=None`` mixes both kinds."""
    for i in range(count):
        kind = rng.random() < 0.5 if acyclic is None else acyclic
        yield random_graph(rng, acyclic=kind), Field(FIELDS[i % len(FIELDS)])


def check_oracle_agreement(rng, graphs=30, per_graph=10) -> tuple[CheckResult, CheckResult]:
    agree = CheckResult("membership agrees with the matrix oracle")
    certs = CheckResult("certificates of members verify")
    for g, F in _graphs(rng, graphs):
        for _ in range(per_graph):
            x = random_element(rng, g, F)
            rep = decide_membership(x)
            yes = rep.decision is Decision.YES
            agree.record(yes == oracle_membership(x), lambda: f"{x} over {F.name}")
            if yes:
                certs.record(verify_certificate(build_certificate(x, rep), x), lambda: f"{x} over {F.name}")
    return agree, certs


def check_normal_form(rng, graphs=30, per_graph=10) -> tuple[CheckResult, CheckResult, CheckResult]:
    confluence = CheckResult("random rewrite orders reach the same normal form")
    quotient = CheckResult("membership is unchanged by adding elements of N")
    faithful = CheckResult("zero in L exactly when the block matrix is zero")
    for g, F in _graphs(rng, graphs, acyclic=None):
        for _ in range(per_graph):
            x = random_element(rng, g, F)
            a, _ = rewrite_normalize(x, random.Random(rng.random()))
            b, _ = rewrite_normalize(x, random.Random(rng.random()))
            confluence.record(a == b == ck2_normalize(x), lambda: str(x))
            n = random_n_element(rng, g, F)
            d1 = decide_membership(x).decision
            d2 = decide_membership(x + n).decision
            quotient.record(d1 == d2, lambda: f"{x} plus {n}")
    for g, F in _graphs(rng, graphs):
        idx = sink_index(g)
        for _ in range(per_graph):
            x = random_element(rng, g, F) + random_n_element(rng, g, F)
            if rng.random() < 0.5:
                x = random_n_element(rng, g, F)
            faithful.record(is_zero_in_L(x) == to_matrix(x, idx).is_zero(), lambda: str(x))
    return confluence, quotient, faithful


def check_traces(rng, graphs=30, per_graph=10) -> tuple[CheckResult, CheckResult]:
    invariance = CheckResult("traces agree on xy and yx")
    vanishing = CheckResult("class traces vanish on N and the vertex trace lies in the span")
    for g, F in _graphs(rng, graphs, acyclic=False):
        for _ in range(per_graph):
            x = random_element(rng, g, F, 3, 3)
            y = random_element(rng, g, F, 3, 3)
            xy, yx = x * y, y * x
            ok = all(f(xy) == f(yx) for f in (trace_T, trace_TS, trace_TS_star))
            invariance.record(ok, lambda: f"x = {x}, y = {y}")
            n = random_n_element(rng, g, F)
            ok = (not any(trace_TS(n).values()) and not any(trace_TS_star(n).values())
                  and span_membership(trace_T(n), g, F).decision is Decision.YES)
            vanishing.record(ok, lambda: str(n))
    return invariance, vanishing


def check_matrix_homomorphism(rng, graphs=30, per_graph=5) -> CheckResult:
    hom = CheckResult("the matrix map respects sums, products and star")
    for g, F in _graphs(rng, graphs):
        idx = sink_index(g)
        for _ in range(per_graph):
            x = random_element(rng, g, F, 3, 3)
            y = random_element(rng, g, F, 3, 3)
            X, Y = to_matrix(x, idx), to_matrix(y, idx)
            ok = (to_matrix(x * y, idx) == X * Y and to_matrix(x + y, idx) == X + Y
                  and to_matrix(x.star(), idx) == X.transpose())
            hom.record(ok, lambda: f"x = {x}, y = {y}")
    return hom


def run_selftest(seed: int = 0, scale: int = 1) -> list[CheckResult]:
    rng = random.Random(seed)
    n = 10 * scale
    results = []
    results.extend(check_oracle_agreement(rng, 3 * n, 10))
    results.extend(check_normal_form(rng, 2 * n, 5))
    results.extend(check_traces(rng, 2 * n, 5))
    results.append(check_matrix_homomorphism(rng, n, 5))
    return results
