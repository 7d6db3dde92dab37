import pytest

from leavitt import Acyclicity, FamilySpec, FiniteGraph, LazyGraph, ParseError, family, is_acyclic, parse_family
from leavitt.graph import explore


def test_parse_family_forms():
    assert parse_family("family line(d=4)") == FamilySpec("line", {"d": 4})
    assert parse_family("rose(n=3)") == FamilySpec("rose", {"n": 3})
    assert parse_family("loop") == FamilySpec("loop", {})
    spec = parse_family("family p_line(p=2, mults=[2,2,2,...], len=10)")
    assert spec.params == {"p": 2, "mults": [2, 2, 2], "len": 10}
    assert parse_family("ptree(p=2, depth=6, truncate=true)").params["truncate"] is True


@pytest.mark.parametrize("text,code", [("nosuch(d=1)", "UNKNOWN_FAMILY"), ("line(q=1)", "BAD_PARAMETER"),
                                       ("line(d=x)", "BAD_PARAMETER"), ("line(d=0)", "BAD_PARAMETER"),
                                       ("line(3)", "SYNTAX"), ("line(d=3", "SYNTAX")])
def test_bad_family_expressions(text, code):
    with pytest.raises(ParseError) as exc:
        family(text)
    assert exc.value.code == code


def test_finite_families():
    g = family("line(d=4)")
    assert isinstance(g, FiniteGraph) and len(g.vertices) == 4 and len(g.edges) == 3
    assert [e.id for e in family("rose(n=3)").edges] == ["e1", "e2", "e3"]
    assert family("loop").edges[0].id == "x"


LAZY = ["p_line(p=2)", "p_line(p=3, mults=[3,1], len=6)", "ptree(p=2, depth=4)", "alt_line(p=2, a=1, b=3)",
        "stair(p=2)", "grid_En(n=3, p=2, cols=4)", "grid_Einf(p=2, rows=3, cols=3)", "fan_kappa(count=4, p=2)"]


@pytest.mark.parametrize("text", LAZY)
def test_lazy_families_honor_declarations(text):
    g = family(text)
    assert isinstance(g, LazyGraph)
    region = explore(g)
    assert region
    assert is_acyclic(g) is Acyclicity.DECLARED
    assert all(g.is_regular(v) for v in region)
    assert all(g.has_vertex(r) for r in g.representatives)


@pytest.mark.parametrize("text", LAZY)
def test_generators_are_deterministic(text):
    a, b = family(text), family(text)
    for v in explore(a):
        assert a.out_edges(v) == b.out_edges(v)


@pytest.mark.parametrize("text", LAZY)
def test_truncations_are_finite_acyclic_with_sinks(text):
    g = family(text.replace(")", ", truncate=true)"))
    assert isinstance(g, FiniteGraph)
    assert is_acyclic(g) is Acyclicity.TRUE
    assert g.sinks()


def test_p_line_multiplicities_repeat():
    g = family("p_line(p=2, mults=[2,3])")
    assert [len(g.out_edges(f"v{i}")) for i in range(1, 6)] == [2, 3, 2, 3, 2]


def test_alt_line_alternates():
    g = family("alt_line(p=3, a=2, b=1)")
    assert len(g.out_edges("v0")) == 6 and len(g.out_edges("v1")) == 1 and len(g.out_edges("vm1")) == 1


def test_grid_shape():
    g = family("grid_En(n=2, p=3)")
    assert sorted(e.dst for e in g.out_edges("v1_1")) == ["v1_2"] * 3 + ["v2_1"] * 3
    assert sorted(e.dst for e in g.out_edges("v2_5")) == ["v2_6"] * 3
