import random

import pytest
from hypothesis import given
from hypothesis import strategies as st

from helpers import F2, F3, QQ, el, graph_from_seed
from leavitt import (
    Decision,
    FiniteGraph,
    GraphError,
    decide_membership,
    family,
    is_zero_in_L,
    oracle_membership,
    sink_index,
    to_matrix,
)
from leavitt.randgen import random_element, random_n_element
from oracles import count_paths_into, normal_basis_size

seeds = st.integers(0, 10**9)
fields = st.sampled_from([QQ, F2, F3])


def test_sink_index_line(line3):
    idx = sink_index(line3)
    assert idx.sinks == ["v3"]
    assert idx.paths["v3"] == [(), ("e1", "e2"), ("e2",)]
    assert idx.size("v3") == 3


def test_sink_index_single_and_disjoint():
    assert sink_index(FiniteGraph(["v"], [])).size("v") == 1
    idx = sink_index(FiniteGraph(["a", "b"], []))
    assert idx.sinks == ["a", "b"] and idx.size("a") == idx.size("b") == 1


def test_sink_index_rejects_cycles_and_lazy(loop):
    with pytest.raises(GraphError) as exc:
        sink_index(loop)
    assert exc.value.code == "NOT_ACYCLIC"
    with pytest.raises(GraphError) as exc:
        sink_index(family("p_line(p=2)"))
    assert exc.value.code == "NOT_FINITE"


def test_matrix_of_first_vertex(line2):
    M = to_matrix(el(line2, "v1"))
    # rows and columns are v2 (the empty path) then e1
    assert M.blocks["v2"] == [[0, 0], [0, 1]]


def test_matrix_of_edge(line2):
    M = to_matrix(el(line2, "e1"))
    assert M.blocks["v2"] == [[0, 0], [1, 0]]


def test_matrix_of_lone_vertex():
    g = FiniteGraph(["v"], [])
    assert to_matrix(el(g, "v")).blocks == {"v": [[1]]}


def test_oracle_examples(line2):
    assert not oracle_membership(el(line2, "v1"))
    assert to_matrix(el(line2, "v1")).traces() == {"v2": 1}
    assert oracle_membership(el(line2, "e1"))
    assert oracle_membership(el(line2, "v1 + v2", F2))
    assert not oracle_membership(el(line2, "v1 + v2", QQ))


def test_render_and_dict(line2):
    M = to_matrix(el(line2, "2*e1 + v2"))
    assert M.to_dict() == {"v2": {"labels": ["v2", "e1"], "rows": [["1", "0"], ["2", "0"]]}}
    assert M.render().splitlines()[0] == "block v2 (2x2):"


@pytest.mark.parametrize("d", range(1, 7))
def test_line_graph_is_a_full_matrix_algebra(d):
    g = family(f"line(d={d})")
    idx = sink_index(g)
    assert idx.sinks == [f"v{d}"] and idx.size(f"v{d}") == d


def test_vertices_map_to_diagonal_projections():
    g = family("ptree(p=2, depth=2, truncate=true)")
    idx = sink_index(g)
    for v in g.vertices:
        M = to_matrix(el(g, v), idx)
        for s, A in M.blocks.items():
            for i, row in enumerate(A):
                for j, x in enumerate(row):
                    assert x == (x if i == j else 0) and x in (0, 1)


# properties ------------------------------------------------------------------

def _setup(seed, field, terms=4):
    g = graph_from_seed(seed, True)
    rng = random.Random(seed ^ 0xA11CE)
    return g, sink_index(g), rng, random_element(rng, g, field, terms, 3), random_element(rng, g, field, terms, 3)


@given(seeds, fields)
def test_homomorphism(seed, field):
    g, idx, _, x, y = _setup(seed, field)
    X, Y = to_matrix(x, idx), to_matrix(y, idx)
    assert to_matrix(x * y, idx) == X * Y
    assert to_matrix(x + y, idx) == X + Y


@given(seeds, fields)
def test_star_is_transpose(seed, field):
    g, idx, _, x, _ = _setup(seed, field)
    assert to_matrix(x.star(), idx) == to_matrix(x, idx).transpose()


@given(seeds, fields, st.booleans())
def test_faithfulness(seed, field, only_n):
    g, idx, rng, x, _ = _setup(seed, field)
    if only_n:
        x = random_n_element(rng, g, field)
    assert is_zero_in_L(x) == to_matrix(x, idx).is_zero()


@given(seeds)
def test_block_sizes_count_paths(seed):
    g = graph_from_seed(seed, True, max_vertices=5)
    idx = sink_index(g)
    for s in idx.sinks:
        assert idx.size(s) == count_paths_into(g, s)
        assert len(set(idx.paths[s])) == idx.size(s)


@given(seeds)
def test_dimension_matches_normal_basis(seed):
    g = graph_from_seed(seed, True, max_vertices=5)
    idx = sink_index(g)
    assert sum(idx.size(s) ** 2 for s in idx.sinks) == normal_basis_size(g)


@given(seeds, fields)
def test_oracle_agrees_with_decision(seed, field):
    g, idx, _, x, _ = _setup(seed, field, terms=6)
    assert oracle_membership(x) == (decide_membership(x).decision is Decision.YES)
