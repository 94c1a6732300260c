from __future__ import annotations

import json
import random

import networkx as nx
import pytest

from zdg.dsl import compile_spec
from zdg.errors import EmptyGraphError, GraphFormatError
from zdg.graph import (
    INF,
    LoopGraph,
    build_zdg,
    diameter,
    girth,
    is_connected,
    read_graph,
    to_dot,
    to_json,
    universal_vertex,
)
from zdg.harness import catalog_default, Bounds

from oracles import random_loop_graph


def labelled_edges(g):
    return {frozenset((g.labels[u], g.labels[v])) for u, v in g.edges()}


def test_build_z6():
    g = build_zdg(compile_spec("Z6"))
    assert g.labels == ["2", "3", "4"]
    assert labelled_edges(g) == {frozenset({"2", "3"}), frozenset({"3", "4"})}
    assert g.loop_list() == []


def test_build_z8():
    g = build_zdg(compile_spec("Z8"))
    assert g.labels == ["2", "4", "6"]
    assert labelled_edges(g) == {frozenset({"2", "4"}), frozenset({"4", "6"})}
    assert [g.labels[v] for v in g.loop_list()] == ["4"]


def test_build_z3_z3_is_four_cycle():
    g = build_zdg(compile_spec("Z3 x Z3"))
    assert sorted(g.labels) == ["(0,1)", "(0,2)", "(1,0)", "(2,0)"]
    cycle = ["(1,0)", "(0,1)", "(2,0)", "(0,2)"]
    expected = {frozenset((cycle[i], cycle[(i + 1) % 4])) for i in range(4)}
    assert labelled_edges(g) == expected
    assert g.loops == 0


def test_build_rejects_fields():
    with pytest.raises(EmptyGraphError):
        build_zdg(compile_spec("Z7"))


SPECS = catalog_default(Bounds(max_zn=60, max_product_factor=8)).specs


@pytest.mark.parametrize("spec", [s for s in SPECS if s not in {"Z2", "Z3", "Z5", "Z7"}][:120])
def test_zdg_matches_brute_force_and_networkx(spec):
    r = compile_spec(spec)
    zs = [a for a in range(1, r.order) if any(r.mul(a, b) == 0 for b in range(1, r.order))]
    if not zs:
        pytest.skip("domain")
    g = build_zdg(r)
    assert g.elements == zs
    pairs = {(u, v) for i, u in enumerate(zs) for v in zs[i + 1 :] if r.mul(u, v) == 0}
    assert len(g.edges()) == len(pairs)
    assert {(g.elements[u], g.elements[v]) for u, v in g.edges()} == pairs
    assert {g.elements[v] for v in g.loop_list()} == {a for a in zs if r.mul(a, a) == 0}

    h = nx.Graph()
    h.add_nodes_from(range(g.n))
    h.add_edges_from(g.edges())
    assert is_connected(g)
    assert diameter(g) == nx.diameter(h) <= 3
    assert girth(g) == nx.girth(h)
    assert girth(g) in (3, 4, INF)


def test_connectivity_examples():
    assert is_connected(build_zdg(compile_spec("Z6")))
    assert is_connected(build_zdg(compile_spec("Z3 x Z3")))
    assert not is_connected(LoopGraph.from_edges(2, []))


def test_diameter_examples():
    assert diameter(build_zdg(compile_spec("Z6"))) == 2
    assert diameter(build_zdg(compile_spec("Z4"))) == 0
    assert diameter(build_zdg(compile_spec("Z3 x Z3"))) == 2
    assert diameter(LoopGraph.from_edges(2, [])) == INF


def test_girth_examples():
    assert girth(build_zdg(compile_spec("Z3 x Z3"))) == 4
    assert girth(build_zdg(compile_spec("Z8"))) == INF
    assert girth(build_zdg(compile_spec("Z2 x Z2 x Z2"))) == 3
    five = LoopGraph.from_edges(5, [(i, (i + 1) % 5) for i in range(5)])
    assert girth(five) == 5


def test_girth_and_diameter_on_random_graphs():
    rng = random.Random(7)
    for _ in range(200):
        n = rng.randint(1, 12)
        g, edges = random_loop_graph(rng, n)
        h = nx.Graph()
        h.add_nodes_from(range(n))
        h.add_edges_from((u, v) for u, v in edges if u != v)
        assert girth(g) == nx.girth(h)
        assert is_connected(g) == nx.is_connected(h)
        if nx.is_connected(h):
            assert diameter(g) == nx.diameter(h)
        else:
            assert diameter(g) == INF


def test_universal_vertex():
    g = build_zdg(compile_spec("Z6"))
    assert g.labels[universal_vertex(g)] == "3"
    g = build_zdg(compile_spec("Z8"))
    assert g.labels[universal_vertex(g)] == "4"
    assert universal_vertex(build_zdg(compile_spec("Z3 x Z3"))) is None
    assert universal_vertex(LoopGraph.from_edges(1, [])) == 0


def test_loopgraph_rejects_bad_adjacency():
    with pytest.raises(ValueError):
        LoopGraph(2, [0b10, 0])
    with pytest.raises(ValueError):
        LoopGraph(1, [0b1])


# -- formats -----------------------------------------------------------------


def test_dot_z8_exact():
    assert to_dot(build_zdg(compile_spec("Z8"))) == (
        "graph G {\n  2;\n  4;\n  6;\n  2 -- 4;\n  4 -- 4;\n  4 -- 6;\n}\n"
    )


def test_dot_z6_has_two_edges():
    text = to_dot(build_zdg(compile_spec("Z6")))
    assert text.count(" -- ") == 2


def test_dot_quotes_tuple_labels():
    text = to_dot(build_zdg(compile_spec("Z3 x Z3")))
    assert '"(0,1)" -- "(1,0)";' in text


def test_json_z3_z3():
    data = json.loads(to_json(build_zdg(compile_spec("Z3 x Z3"))))
    assert data["n"] == 4
    assert len(data["edges"]) == 4
    assert data["loops"] == []
    assert data["edges"] == sorted(data["edges"])
    assert data["labels"] == ["(0,1)", "(0,2)", "(1,0)", "(2,0)"]


def test_read_graph():
    g = read_graph("# path\nn 4\n\n0 1\n1 2  # middle\n2 3\n3 3\n")
    assert g.n == 4
    assert g.edges() == [(0, 1), (1, 2), (2, 3)]
    assert g.loop_list() == [3]


@pytest.mark.parametrize(
    "text,line",
    [("", 1), ("4\n", 1), ("n 0\n", 1), ("n 3\n0 1\n0\n", 3), ("n 3\n0 3\n", 2), ("n 2\n# c\n0 -1\n", 3)],
)
def test_read_graph_errors(text, line):
    with pytest.raises(GraphFormatError) as info:
        read_graph(text)
    assert info.value.line == line
