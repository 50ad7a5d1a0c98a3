"""
Tests for the embedding phi of A(G) into the free monoid on edges, incidences
and isolated vertices, and for the class group rank.
"""

import itertools

import pytest

import agglomeration as agg
import divisor_theory as dt
import factorization as fz
import multigraph as mg
from errors import AgglomerationError, GraphError


def test_coordinates(p2, c3):
    assert dt.coordinates(p2) == ("e1", "e1|v1", "e1|v2")
    g = mg.disjoint_union(c3, mg.Multigraph(("u",)))
    keys = dt.coordinates(g)
    assert len(keys) == 3 * g.size + 1
    assert keys[-1] == "u"


def test_phi_values(p2, c3):
    assert not any(dt.phi(p2, agg.zero(p2)).values)
    image = dt.phi(p2, agg.from_mapping(p2, {"v1": 2, "v2": 1, "e1": 1}))
    assert image.as_dict() == {"e1": 1, "e1|v1": 1, "e1|v2": 0}
    whole = dt.phi(c3, agg.all_ones(c3)).as_dict()
    assert all(whole[e] == 1 for e in c3.edges)
    assert all(v == 0 for k, v in whole.items() if "|" in k)
    single = mg.Multigraph(("u",))
    assert dt.phi(single, agg.scale(agg.all_ones(single), 3))["u"] == 3
    with pytest.raises(GraphError):
        image["nope"]


def test_phi_is_a_divisor_homomorphism():
    for g in (mg.path_graph(3), mg.banana_graph(2), mg.disjoint_union(mg.path_graph(2), mg.Multigraph(("u",)))):
        box = list(agg.agglomerations_in_box(g, 2))
        images = {a: dt.phi(g, a) for a in box}
        for a, b in itertools.product(box, repeat=2):
            assert (images[a] <= images[b]) == agg.divides(a, b)
            assert dt.phi(g, a + b).values == tuple(x + y for x, y in zip(images[a].values, images[b].values))


def test_phi_is_injective_and_reconstructs(c3):
    seen = {}
    for a in agg.agglomerations_in_box(c3, 3):
        image = dt.phi(c3, a)
        assert dt.satisfies_image_equations(image)
        assert dt.reconstruct(c3, image) == a
        assert image.values not in seen
        seen[image.values] = a


def test_reconstruct_rejects_vectors_outside_the_image(p3):
    bad = dt.from_dict(p3, {"e1": 1, "e1|v2": 1})
    assert not dt.satisfies_image_equations(bad)
    with pytest.raises(AgglomerationError):
        dt.reconstruct(p3, bad)
    with pytest.raises(GraphError):
        dt.from_dict(p3, {"e9": 1})


def test_basis_witnesses(p2, c3):
    single = mg.disjoint_union(c3, mg.Multigraph(("u",)))
    for g in (p2, c3, single):
        for coord in dt.coordinates(g):
            a, b = dt.basis_witnesses(g, coord)
            low = dt.pointwise_min(dt.phi(g, a), dt.phi(g, b))
            assert low.as_dict() == {k: int(k == coord) for k in dt.coordinates(g)}
    with pytest.raises(GraphError):
        dt.basis_witnesses(p2, "e1|v9")


def test_basis_witnesses_on_disconnected_graphs(p2):
    path = mg.Multigraph(("a", "b", "c"), ("f1", "f2"), (("a", "b"), ("b", "c")))
    split = mg.disjoint_union(mg.disjoint_union(p2, path), mg.Multigraph(("u",)))
    assert not mg.is_connected(split)
    for coord in dt.coordinates(split):
        a, b = dt.basis_witnesses(split, coord)
        low = dt.pointwise_min(dt.phi(split, a), dt.phi(split, b))
        assert [k for k, v in low.as_dict().items() if v] == [coord]
        assert max(low.values) == 1
    edgeless = mg.Multigraph(("u", "w"))
    assert dt.coordinates(edgeless) == ("u", "w")
    for bad in ("e1", "e1|u", "x"):
        with pytest.raises(GraphError, match="unknown divisor coordinate"):
            dt.basis_witnesses(edgeless, bad)


def test_class_group_rank(p2, c3, b2):
    assert dt.class_group_rank(c3) == 3
    assert dt.class_group_rank(p2) == 0
    assert dt.class_group_rank(b2) == 2
    assert dt.class_group_rank(mg.Multigraph(("u",))) == 0
    assert dt.class_group_rank(mg.path_graph(3)) == 1


def test_class_group_rank_matches_smith_form(random_graph, k4):
    graphs = [random_graph(seed, max_vertices=5, max_edges=6, connected=seed % 2 == 0) for seed in range(25)]
    graphs += [k4, mg.banana_graph(3), mg.disjoint_union(mg.path_graph(2), mg.Multigraph(("u",)))]
    for g in graphs:
        assert dt.class_group_rank_smith(g) == dt.class_group_rank(g)
        assert (dt.class_group_rank(g) == 0) == fz.is_factorial(g)


def test_class_group_is_free(c3, b2):
    assert dt.class_group_invariants(c3) == (3, ())
    assert dt.class_group_invariants(b2) == (2, ())


def test_prime_divisor_classes(c3):
    classes = dt.prime_divisor_classes(c3)
    assert set(classes) == set(dt.coordinates(c3))
    assert all(len(v) == len(dt.relation_matrix(c3)) for v in classes.values())
