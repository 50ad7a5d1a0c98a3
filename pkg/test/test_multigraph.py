"""
Tests for multigraph parsing, connectivity, connected-subgraph enumeration
and spanning tree packing.
"""

import itertools
import json

import networkx as nx
import pytest

import multigraph as mg
from errors import GraphError, ResourceLimitError


def test_parse_json_keeps_declaration_order():
    doc = {"vertices": ["b", "a"], "edges": [{"id": "y", "ends": ["a", "b"]}, {"id": "x", "ends": ["b", "a"]}]}
    g = mg.parse_graph(json.dumps(doc))
    assert g.vertices == ("b", "a")
    assert g.edges == ("y", "x")
    assert g.endpoints("x") == ("b", "a")
    assert mg.graph_from_json(mg.graph_to_json(g)) == g


def test_parse_text_format():
    text = "# a triangle\nv a\nv b\nv c\ne ab a b\ne bc b c\ne ca c a  # closing edge\n"
    g = mg.parse_graph(text)
    assert g.order == 3 and g.size == 3
    assert g.incident_edges("a") == ("ab", "ca")


def test_parse_rejects_bad_graphs():
    with pytest.raises(GraphError, match="loop"):
        mg.parse_graph('{"vertices": ["a"], "edges": [{"id": "e", "ends": ["a", "a"]}]}')
    with pytest.raises(GraphError, match="duplicate"):
        mg.parse_graph('{"vertices": ["a", "a"]}')
    with pytest.raises(GraphError, match="unknown vertex"):
        mg.parse_graph('{"vertices": ["a"], "edges": [{"id": "e", "ends": ["a", "z"]}]}')
    with pytest.raises(GraphError, match="both a vertex and an edge"):
        mg.Multigraph(("a", "b"), ("a",), (("a", "b"),))
    with pytest.raises(GraphError, match="malformed"):
        mg.parse_graph("{not json")
    with pytest.raises(GraphError, match="line 1"):
        mg.parse_graph("edge a b")


def test_constructors():
    assert mg.path_graph(3).ends == (("v1", "v2"), ("v2", "v3"))
    assert mg.cycle_graph(4).ends[-1] == ("v4", "v1")
    assert mg.complete_graph(4).size == 6
    b3 = mg.banana_graph(3)
    assert b3.order == 2 and b3.size == 3 and not mg.is_simple(b3)
    k23 = mg.complete_bipartite_graph(2, 3)
    assert k23.vertices == ("v1", "v2", "w1", "w2", "w3")
    assert k23.ends[:3] == (("v1", "w1"), ("v1", "w2"), ("v1", "w3"))
    with pytest.raises(GraphError):
        mg.cycle_graph(2)


def test_degrees_and_shape(b2, p3):
    assert mg.degrees(mg.banana_graph(3)) == (3, 3)
    assert mg.degree(p3, "v2") == 2
    assert mg.max_degree(p3) == 2 and mg.min_degree(p3) == 1
    assert mg.max_degree(mg.Multigraph(())) == 0
    g = mg.disjoint_union(p3, mg.Multigraph(("u",)))
    assert mg.isolated_vertices(g) == ("u",)
    with pytest.raises(GraphError):
        mg.degree(p3, "nope")


def test_connectivity(p3, c4):
    g = mg.disjoint_union(p3, mg.Multigraph(("u", "w"), ("f",), (("u", "w"),)))
    assert not mg.is_connected(g)
    comps = mg.connected_components(g)
    assert [c.vertices for c in comps] == [("v1", "v2", "v3"), ("u", "w")]
    assert [c.edges for c in comps] == [("e1", "e2"), ("f",)]
    assert mg.is_connected(c4)
    assert not mg.is_connected(mg.Multigraph(()))


def test_acyclic():
    assert mg.is_acyclic(mg.path_graph(4))
    assert mg.is_acyclic(mg.Multigraph(("a", "b")))
    assert not mg.is_acyclic(mg.banana_graph(2))
    assert not mg.is_acyclic(mg.cycle_graph(3))


def test_subgraph_validation(c3):
    s = mg.Subgraph(c3, ("v3", "v1"), ("e3",))
    assert s.vertices == ("v1", "v3")
    with pytest.raises(GraphError, match="endpoint outside"):
        mg.Subgraph(c3, ("v1",), ("e1",))
    assert mg.induced_subgraph(c3, ["v1", "v2"]).edges == ("e1",)


def test_connected_subgraph_counts(p2, c3):
    assert len(mg.enumerate_connected_subgraphs(p2)) == 3
    assert len(mg.enumerate_connected_subgraphs(c3)) == 10
    assert len(mg.enumerate_connected_subgraphs(mg.banana_graph(2))) == 2 + 2 + 1
    assert mg.enumerate_connected_subgraphs(mg.Multigraph(())) == []


def _count_with_networkx(g):
    count = 0
    for r in range(1, g.order + 1):
        for vs in itertools.combinations(g.vertices, r):
            chosen = set(vs)
            inner = [j for j, (u, w) in enumerate(g.ends) if u in chosen and w in chosen]
            for k in range(len(inner) + 1):
                for es in itertools.combinations(inner, k):
                    h = nx.MultiGraph()
                    h.add_nodes_from(vs)
                    h.add_edges_from(g.ends[j] for j in es)
                    if nx.is_connected(h):
                        count += 1
    return count


def test_connected_subgraphs_match_networkx(random_graph):
    for seed in range(20):
        g = random_graph(seed, max_vertices=4, max_edges=5, connected=seed % 3 != 0)
        found = mg.enumerate_connected_subgraphs(g)
        assert len(found) == _count_with_networkx(g)
        assert [s.sort_key for s in found] == sorted(s.sort_key for s in found)


def test_spanning_trees(c3, p2):
    assert len(mg.spanning_trees(c3)) == 3
    assert len(mg.spanning_trees(mg.banana_graph(3))) == 3
    assert len(mg.spanning_trees(p2)) == 1
    assert len(mg.spanning_trees(mg.complete_graph(4))) == 16
    with pytest.raises(GraphError):
        mg.spanning_trees(mg.Multigraph(("a", "b")))
    with pytest.raises(GraphError):
        mg.spanning_trees(mg.Multigraph(()))


def test_disjoint_spanning_trees(k4, c4):
    trees = mg.disjoint_spanning_trees(k4, 2)
    assert len(trees) == 2
    assert not set(trees[0].edges) & set(trees[1].edges)
    assert all(t.size == 3 for t in trees)
    assert mg.disjoint_spanning_trees(c4, 2) is None


def test_tree_packing_number(k4):
    assert mg.tree_packing_number(mg.banana_graph(4)) == 4
    assert mg.tree_packing_number(mg.cycle_graph(5)) == 1
    assert mg.tree_packing_number(k4) == 2
    assert mg.tree_packing_number(mg.complete_graph(5)) == 2
    assert mg.tree_packing_number(mg.path_graph(3)) == 1


def test_tree_packing_errors():
    with pytest.raises(GraphError, match="trivial"):
        mg.tree_packing_number(mg.Multigraph(("a",)))
    with pytest.raises(GraphError, match="connected"):
        mg.tree_packing_number(mg.Multigraph(("a", "b")))
    with pytest.raises(ResourceLimitError):
        mg.tree_packing_number(mg.path_graph(11))


def test_tree_packing_partition_formula_agrees(random_graph):
    for seed in range(30):
        g = random_graph(seed, max_vertices=5, max_edges=8)
        assert mg.tree_packing_number(g) == mg.tree_packing_number_exhaustive(g)


def test_partition_bound_past_the_crosscheck_size():
    # two copies of K4 glued at v1: 7 vertices, 12 edges
    left = [("v1", "v2"), ("v1", "v3"), ("v1", "v4"), ("v2", "v3"), ("v2", "v4"), ("v3", "v4")]
    right = [("v1", "v5"), ("v1", "v6"), ("v1", "v7"), ("v5", "v6"), ("v5", "v7"), ("v6", "v7")]
    g = mg.from_edge_list(tuple("v%d" % i for i in range(1, 8)), left + right)
    assert mg.tree_packing_number(g) == 2
    assert mg.tree_packing_number_exhaustive(g) == 2
    assert mg.tree_packing_number(mg.banana_graph(3)) == 3
    # a bridge caps the packing at 1
    bridged = mg.from_edge_list(("a", "b", "c", "d"), [("a", "b"), ("a", "b"), ("b", "c"), ("c", "d"), ("c", "d")])
    assert mg.tree_packing_number(bridged) == 1


def test_same_labelled_graph():
    g = mg.Multigraph(("a", "b"), ("e",), (("a", "b"),))
    h = mg.Multigraph(("b", "a"), ("e",), (("b", "a"),))
    assert mg.same_labelled_graph(g, h)
    assert g != h
    assert not mg.same_labelled_graph(g, mg.Multigraph(("a", "b")))


def test_subgraph_to_graph_keeps_identifiers(c4):
    s = mg.Subgraph(c4, ("v1", "v2", "v3"), ("e1", "e2"))
    h = mg.subgraph_to_graph(s)
    assert h.vertices == ("v1", "v2", "v3")
    assert h.edges == ("e1", "e2")
    assert h.endpoints("e2") == c4.endpoints("e2")
    assert mg.is_connected(h) and mg.is_acyclic(h)


def test_parse_graph_text_directly():
    g = mg.parse_graph_text("v x\nv y\ne p x y\ne q y x\n")
    assert g.size == 2 and not mg.is_simple(g)
    with pytest.raises(GraphError):
        mg.parse_graph_text("v x\ne p x\n")
