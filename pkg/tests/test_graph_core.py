import math

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from loopcutset import INF, FormatError, MultiGraph, degree, is_forest, remove_vertex, verify_fvs
from loopcutset.graph_core import format_ugraph, parse_ugraph, set_weight

from conftest import complete, figure1, multigraphs, path


def test_degree_examples():
    g = MultiGraph.from_edges([], vertices=[0])
    assert degree(g, 0) == 0
    assert degree(figure1(), 0) == 6
    h = MultiGraph.from_edges([(0, 0), (0, 1)])
    assert degree(h, 0) == 3


def test_degree_unknown_vertex():
    with pytest.raises(KeyError, match="no such vertex"):
        degree(MultiGraph(), 3)


@pytest.mark.parametrize("g, expected", [
    (MultiGraph(), True),
    (MultiGraph.from_edges([(0, 1, 2)]), False),
    (path(5), True),
    (MultiGraph.from_edges([(0, 0)]), False),
    (complete(3), False),
])
def test_is_forest(g, expected):
    assert is_forest(g) is expected


def test_verify_fvs_examples():
    k3 = complete(3)
    assert all(verify_fvs(k3, {v}) for v in range(3))
    assert not verify_fvs(k3, set())
    assert verify_fvs(figure1(), {0})
    assert not verify_fvs(figure1(), {1})
    with pytest.raises(KeyError):
        verify_fvs(k3, {7})


def test_remove_vertex_examples():
    k3 = complete(3)
    h = remove_vertex(k3, 0)
    assert h.vertices() == [1, 2] and h.multiplicity(1, 2) == 1 and h.edge_count() == 1
    assert k3.edge_count() == 3  # original untouched
    f = remove_vertex(figure1(), 0)
    assert f.vertices() == [1, 2] and f.edge_count() == 0
    assert len(remove_vertex(MultiGraph.from_edges([(0, 0)]), 0)) == 0
    with pytest.raises(KeyError):
        remove_vertex(k3, 9)


def test_weights():
    with pytest.raises(ValueError):
        MultiGraph().add_vertex(0, 0)
    with pytest.raises(ValueError):
        MultiGraph().add_vertex(0, -1.0)
    g = MultiGraph.from_edges([(0, 1)], {0: INF, 1: 2.0})
    assert set_weight({0, 1}, g.weights) == math.inf
    assert set_weight(set(), g.weights) == 0


def _check_invariants(g):
    for v in g:
        for u, m in g.neighbors(v).items():
            assert m >= 1 and g.multiplicity(u, v) == m
        assert g.degree(v) == sum(g.neighbors(v).values()) + 2 * g.self_loops(v)
    half = sum(sum(g.neighbors(v).values()) for v in g)
    assert g.edge_count() == half // 2 + sum(g.self_loops(v) for v in g)


@given(st.lists(st.tuples(st.sampled_from(["add", "edge", "del"]),
                          st.integers(0, 7), st.integers(0, 7)), max_size=60))
def test_invariants_under_edit_scripts(script):
    g = MultiGraph()
    for op, a, b in script:
        if op == "add" and a not in g:
            g.add_vertex(a, 1.0 + b)
        elif op == "edge" and a in g and b in g:
            g.add_edge(a, b)
        elif op == "del" and a in g:
            g.delete_vertex(a)
        _check_invariants(g)


@given(multigraphs())
def test_removing_everything_leaves_forest(g):
    assert verify_fvs(g, set(g))


@given(multigraphs(), st.data())
def test_verify_fvs_monotone(g, data):
    if not len(g):
        return
    f = set(data.draw(st.sets(st.sampled_from(sorted(g)))))
    v = data.draw(st.sampled_from(sorted(g)))
    if verify_fvs(g, f):
        assert verify_fvs(g, f | {v})


@settings(max_examples=50)
@given(multigraphs(weighted=True))
def test_ugraph_round_trip(g):
    assert parse_ugraph(format_ugraph(g)) == g


def test_ugraph_parse():
    text = """# figure one
graph 3
node 0 6
node 1 0.3
node 2 inf
edge 0 1 3
edge 0 2 3
selfloop 2 1
"""
    g = parse_ugraph(text)
    assert g.degree(0) == 6 and g.self_loops(2) == 1 and math.isinf(g.weight(2))


@pytest.mark.parametrize("text", [
    "",
    "node 0 1\n",
    "graph 2\nnode 0 1\n",
    "graph 1\nnode 0 -1\n",
    "graph 2\nnode 0 1\nnode 1 1\nedge 0 5 1\n",
    "graph 1\nnode 0 1\nedge 0 0 1\n",
    "graph 1\nnode x 1\n",
    "graph 1\nnode 0 1\nfoo 1 2\n",
])
def test_ugraph_rejects(text):
    with pytest.raises(FormatError):
        parse_ugraph(text)
