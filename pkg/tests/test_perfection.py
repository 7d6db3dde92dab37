import pytest
from hypothesis import given
from hypothesis import strategies as st

from helpers import F2, F3, QQ, el, graph_from_seed
from leavitt import (
    Decision,
    Element,
    Field,
    GraphContractError,
    LazyGraph,
    LeavittError,
    check_perfect,
    ck2_normalize,
    count_boundary_paths,
    family,
    vertex_sum_decomposition,
)
from oracles import brute_boundary_counts

seeds = st.integers(0, 10**9)


def _sum_of_projections(g, field, paths):
    total = Element.zero(g, field)
    for q in paths:
        total = total + Element.path(g, field, q) * Element.ghost(g, field, q)
    return total


def test_boundary_counts_examples(line3):
    assert count_boundary_paths(line3, "v1", 0) == {"v2": 1}
    assert count_boundary_paths(family("p_line(p=2)"), "v1", 0) == {"v2": 2}


def test_boundary_counts_stair():
    g = family("stair(p=2)")
    counts = count_boundary_paths(g, "a0", 2)
    assert counts == {"a1": 8}
    assert all(c % 2 == 0 for c in counts.values())


def test_boundary_counts_match_brute_force_on_family_regions():
    for text in ("stair(p=3, len=2)", "alt_line(p=2)", "ptree(p=2, mults=[1,2])", "grid_En(n=2, p=2)"):
        g = family(text)
        for u in g.representatives:
            for m in range(3):
                assert count_boundary_paths(g, u, m) == brute_boundary_counts(g, u, m), (text, u, m)


@given(seeds, st.integers(0, 3))
def test_boundary_counts_match_brute_force(seed, m):
    g = graph_from_seed(seed, True, max_vertices=6)
    for u in g.vertices:
        assert count_boundary_paths(g, u, m) == brute_boundary_counts(g, u, m)


def test_decomposition_examples(line2, line3):
    assert [q.edges for q in vertex_sum_decomposition(line3, "v1")] == [("e1", "e2")]
    assert [q.edges for q in vertex_sum_decomposition(line2, "v1")] == [("e1",)]
    g = family("p_line(p=2)")
    qs = vertex_sum_decomposition(g, "v1", 0)
    assert [q.edges for q in qs] == [("e1_1",), ("e1_2",)]
    assert ck2_normalize(_sum_of_projections(g, QQ, qs)) == el(g, "v1")


def test_decomposition_preconditions(line3, loop):
    with pytest.raises(LeavittError):
        vertex_sum_decomposition(line3, "v3")
    with pytest.raises(LeavittError):
        vertex_sum_decomposition(loop, "v")
    with pytest.raises(LeavittError):
        vertex_sum_decomposition(line3, "v1", 2)
    with pytest.raises(LeavittError):
        vertex_sum_decomposition(family("p_line(p=2)"), "v1")


@given(seeds)
def test_decomposition_sums_to_vertex(seed):
    g = graph_from_seed(seed, True)
    for u in g.vertices:
        if g.is_sink(u):
            continue
        qs = vertex_sum_decomposition(g, u)
        assert ck2_normalize(_sum_of_projections(g, QQ, qs)) == el(g, u)


def test_perfect_examples():
    assert check_perfect(family("line(d=3)"), F2).verdict is Decision.NO
    rep = check_perfect(family("p_line(p=2)"), F2)
    assert rep.verdict is Decision.YES and set(rep.m_assignments.values()) == {0}
    assert rep.scope.startswith("global")
    assert check_perfect(family("grid_En(n=1, p=3)"), F3).verdict is Decision.YES
    rep = check_perfect(family("p_line(p=2)"), QQ)
    assert rep.verdict is Decision.NO and rep.failing_condition == 3


def test_finite_graphs_fail_on_sinks_or_cycles(line3, loop, rose2):
    for F in (F2, F3):
        rep = check_perfect(line3, F)
        assert (rep.verdict, rep.failing_condition) == (Decision.NO, 2)
        assert rep.evidence["non_regular"] == ["v3"]
        rep = check_perfect(rose2, F)
        assert (rep.verdict, rep.failing_condition) == (Decision.NO, 1)
        assert rep.evidence["cycle"] == ["e1"]


def test_wrong_characteristic_is_unknown_not_yes():
    rep = check_perfect(family("p_line(p=2)"), F3, m_max=6)
    assert rep.verdict is Decision.UNKNOWN and rep.failing_condition == 4
    assert rep.evidence["vertex"] == "v1"


def test_lazy_graph_without_representatives_is_region_scoped():
    g = LazyGraph(lambda v: [(f"{v}_{i}", v, f"v{int(v[1:]) + 1}") for i in (1, 2)], ["v1"],
                  declared_acyclic=True, declared_all_regular=True, region_depth=5)
    rep = check_perfect(g, F2)
    assert rep.verdict is Decision.YES and rep.scope.startswith("region")
    assert len(rep.m_assignments) == 6


def test_lazy_cyclic_graph():
    cyc = LazyGraph(lambda v: [("x" + v, v, "b" if v == "a" else "a")], ["a"])
    assert check_perfect(cyc, F2).failing_condition == 1
    bad = LazyGraph(lambda v: [("x" + v, v, "b" if v == "a" else "a")], ["a"], declared_acyclic=True)
    with pytest.raises(GraphContractError):
        check_perfect(bad, F2)


def test_truncated_grid_is_not_perfect_but_lattice_is_computable():
    from leavitt import enumerate_hs
    g = family("grid_En(n=2, p=2, cols=3, truncate=true)")
    rep = check_perfect(g, F2)
    assert (rep.verdict, rep.failing_condition) == (Decision.NO, 2)
    assert len(enumerate_hs(g)) >= 2


def test_report_json():
    rep = check_perfect(family("stair(p=2)"), F2)
    d = rep.to_dict()
    assert d["verdict"] == "YES" and d["m_assignments"] == {"a0": 1, "b0": 1, "c0": 0, "d0": 2, "e0": 0}


@pytest.mark.parametrize("text,p", [("p_line(p=2)", 2), ("stair(p=3)", 3), ("alt_line(p=2)", 2),
                                    ("ptree(p=3)", 3), ("grid_Einf(p=2)", 2), ("fan_kappa(p=3)", 3)])
def test_monotone_in_m_max(text, p):
    g = family(text)
    seen_yes = False
    for m_max in range(0, 5):
        v = check_perfect(g, Field(p), m_max=m_max).verdict
        assert v in (Decision.YES, Decision.UNKNOWN)
        if seen_yes:
            assert v is Decision.YES
        seen_yes |= v is Decision.YES
    assert seen_yes


@pytest.mark.parametrize("text,p", [("p_line(p=2)", 2), ("stair(p=2)", 2), ("alt_line(p=3, a=1, b=2)", 3),
                                    ("grid_En(n=3, p=2)", 2), ("fan_kappa(count=2, p=2)", 2)])
def test_perfect_families_have_member_vertices(text, p):
    g = family(text)
    F = Field(p)
    from leavitt import build_certificate, decide_membership, verify_certificate
    for u in g.representatives:
        x = el(g, u, F)
        rep = decide_membership(x)
        assert rep.decision is Decision.YES
        assert verify_certificate(build_certificate(x, rep), x)
