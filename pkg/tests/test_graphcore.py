from fractions import Fraction

import networkx as nx
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from bunkbed_lab.data.graph_families import bridged_triangles, complete_graph, path_graph
from bunkbed_lab.exceptions import MalformedEdge, NotAnEdge
from bunkbed_lab.graphcore import (
    HORIZONTAL,
    VERTICAL,
    BaseGraph,
    CapacitatedNetwork,
    OrientedEdge,
    WeightRole,
    build_base_graph,
    build_bunkbed,
    is_cut_edge,
)


@pytest.fixture
def triangle():
    return build_base_graph(3, [(0, 1), (2, 1), (0, 2)])


@st.composite
def base_graphs(draw, max_vertices=6):
    n = draw(st.integers(min_value=1, max_value=max_vertices))
    pairs = [(u, v) for u in range(n) for v in range(u + 1, n)]
    edges = draw(st.lists(st.sampled_from(pairs), unique=True)) if pairs else []
    return BaseGraph(n, edges)


def test_base_graph_normalizes_edges(triangle):
    assert triangle.edge_list == ((0, 1), (1, 2), (0, 2))
    assert triangle.edge_id(2, 1) == 1
    assert triangle.edges[0, 2]["idx"] == 2
    assert triangle.sorted_neighbors(2) == (0, 1)
    assert triangle.other_endpoint(1, 2) == 1
    assert triangle.is_connected


def test_base_graph_is_frozen(triangle):
    assert nx.is_frozen(triangle)
    with pytest.raises(nx.NetworkXError):
        triangle.add_edge(0, 3)


@pytest.mark.parametrize("edges", [[(0, 0)], [(0, 3)], [(0, 1), (1, 0)], [(0, 1, 2)]])
def test_malformed_edges(edges):
    with pytest.raises(MalformedEdge):
        build_base_graph(3, edges)


def test_graph_needs_a_vertex():
    with pytest.raises(ValueError):
        build_base_graph(0, [])


def test_edge_id_of_non_edge():
    graph = path_graph(2)
    with pytest.raises(NotAnEdge):
        graph.edge_id(0, 2)


def test_oriented_edges(triangle):
    oriented = list(triangle.oriented_edges())
    assert len(oriented) == 2 * triangle.edge_count
    assert oriented[0] == OrientedEdge(0, 0, 0, 1)
    assert oriented[1] == oriented[0].reversed()
    assert oriented[1].tail == 1 and oriented[1].head == 0


def test_dict_round_trip(triangle):
    copy = BaseGraph.from_dict(triangle.to_dict())
    assert copy.edge_list == triangle.edge_list
    assert copy.vertex_count == triangle.vertex_count


def test_bunkbed_id_scheme(triangle):
    bunkbed = build_bunkbed(triangle)
    assert bunkbed.vertex_count == 6
    assert bunkbed.edge_count == 9
    assert bunkbed.vertex(1, 1) == 4
    assert bunkbed.split(4) == (1, 1)
    assert bunkbed.reflect_vertex(4) == 1
    assert bunkbed.horizontal_edge(2, 1) == 5
    assert bunkbed.edge_list[5] == (3, 5)
    assert bunkbed.vertical_edge(2) == 8
    assert bunkbed.edge_list[8] == (2, 5)
    assert bunkbed.reflect_edge(0) == 3
    assert bunkbed.reflect_edge(3) == 0
    assert bunkbed.reflect_edge(7) == 7
    assert bunkbed.is_vertical(8) and bunkbed.is_horizontal(5)
    assert bunkbed.edges[2, 5]["kind"] == VERTICAL
    assert bunkbed.edges[3, 4]["kind"] == HORIZONTAL
    assert bunkbed.edges[3, 4]["layer"] == 1
    assert bunkbed.nodes[5]["base"] == 2 and bunkbed.nodes[5]["layer"] == 1
    assert list(bunkbed.horizontal_pairs()) == [(0, 3), (1, 4), (2, 5)]


def test_bunkbed_reflection_is_an_automorphism():
    bunkbed = build_bunkbed(bridged_triangles())
    for idx, (a, b) in enumerate(bunkbed.edge_list):
        image = bunkbed.edge_list[bunkbed.reflect_edge(idx)]
        assert set(image) == {bunkbed.reflect_vertex(a), bunkbed.reflect_vertex(b)}


@settings(max_examples=50, deadline=None)
@given(base_graphs())
def test_bunkbed_sizes(base):
    bunkbed = build_bunkbed(base)
    assert bunkbed.vertex_count == 2 * base.vertex_count
    assert bunkbed.edge_count == 2 * base.edge_count + base.vertex_count
    for u in range(base.vertex_count):
        assert bunkbed.degree(bunkbed.vertex(u, 0)) == base.degree(u) + 1


def test_rearrange_layers():
    bunkbed = build_bunkbed(path_graph(1))
    h = bunkbed.rearrange_layers([Fraction(1, 3), 1, Fraction(1, 2), 0])
    assert h == [Fraction(1, 2), 1, Fraction(1, 3), 0]
    with pytest.raises(ValueError):
        bunkbed.rearrange_layers([0, 1])


def test_symmetric_weights(triangle):
    bunkbed = build_bunkbed(triangle)
    weights = bunkbed.symmetric_weights([1, "1/2", Fraction(3)], [2, 2, 0.5])
    assert weights == [1, Fraction(1, 2), 3, 1, Fraction(1, 2), 3, 2, 2, Fraction(1, 2)]
    with pytest.raises(ValueError):
        bunkbed.symmetric_weights([1], [1, 1, 1])


def test_capacitated_network(triangle):
    bunkbed = build_bunkbed(triangle)
    weights = bunkbed.symmetric_weights([1, 2, 3], [4, 5, 6])
    network = CapacitatedNetwork(bunkbed, weights)
    assert network.is_bunkbed
    assert network.is_reflection_symmetric()
    assert network.weight(5, 3) == 3
    assert network.reflected().weights == network.weights
    assert network.as_array().tolist() == [1.0, 2.0, 3.0, 1.0, 2.0, 3.0, 4.0, 5.0, 6.0]

    skewed = list(weights)
    skewed[0] = Fraction(7, 2)
    asymmetric = CapacitatedNetwork(bunkbed, skewed)
    assert not asymmetric.is_reflection_symmetric()
    assert asymmetric.reflected().weights[3] == Fraction(7, 2)


def test_network_weight_validation(triangle):
    with pytest.raises(ValueError):
        CapacitatedNetwork(triangle, (1, -1, 1))
    with pytest.raises(ValueError):
        CapacitatedNetwork(triangle, (1, 0, 1), WeightRole.RESISTANCE)
    with pytest.raises(ValueError):
        CapacitatedNetwork(triangle, (1, 1))
    with pytest.raises(TypeError):
        CapacitatedNetwork(triangle, (1, 1, 1)).is_reflection_symmetric()
    assert CapacitatedNetwork(triangle, (0.25, "1/3", 0)).weights == (Fraction(1, 4), Fraction(1, 3), 0)


def test_is_cut_edge():
    graph = bridged_triangles()
    assert is_cut_edge(graph, 2, 3)
    assert is_cut_edge(graph, 3, 2)
    assert not is_cut_edge(graph, 0, 1)
    assert all(is_cut_edge(path_graph(4), u, v) for u, v in path_graph(4).edge_list)
    assert not any(is_cut_edge(complete_graph(4), u, v) for u, v in complete_graph(4).edge_list)
    with pytest.raises(NotAnEdge):
        is_cut_edge(graph, 0, 3)


@settings(max_examples=50, deadline=None)
@given(base_graphs())
def test_cut_edges_are_bridges(base):
    bridges = {tuple(sorted(e)) for e in nx.bridges(nx.Graph(base))}
    for u, v in base.edge_list:
        assert is_cut_edge(base, u, v) == ((u, v) in bridges)
