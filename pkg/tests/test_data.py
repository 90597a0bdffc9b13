from fractions import Fraction
from pathlib import Path

import pytest

from bunkbed_lab.data.graph_families import (
    bridged_triangles,
    complete_graph,
    cycle_graph,
    exhaustive_connected_graphs,
    ladder,
    path_graph,
    star_graph,
)
from bunkbed_lab.data.graph_files import format_graph_text, parse_graph_text, read_graph_file, write_graph_file
from bunkbed_lab.data.random_graphs import random_connected_graph, random_rationals, random_symmetric_weights
from bunkbed_lab.exceptions import GenerationExhausted, MalformedEdge
from bunkbed_lab.graphcore import CapacitatedNetwork, build_bunkbed
from bunkbed_lab.utils import make_rng

DATASETS = Path(__file__).parent.parent / "datasets"


def test_named_families():
    assert path_graph(3).edge_list == ((0, 1), (1, 2), (2, 3))
    assert cycle_graph(5).edge_count == 5
    assert complete_graph(5).edge_count == 10
    assert star_graph(3).edge_list == ((0, 1), (0, 2), (0, 3))
    assert bridged_triangles().edge_count == 7
    assert ladder(2).vertex_count == 6 and ladder(2).edge_count == 7
    with pytest.raises(ValueError):
        cycle_graph(2)


def test_exhaustive_connected_graphs():
    # connected graphs up to isomorphism on 2, 3, 4 and 5 vertices
    counts = {}
    for graph in exhaustive_connected_graphs(5):
        assert graph.is_connected
        counts[graph.vertex_count] = counts.get(graph.vertex_count, 0) + 1
    assert counts == {2: 1, 3: 2, 4: 6, 5: 21}
    assert sum(1 for _ in exhaustive_connected_graphs(4, n_min=4)) == 6
    with pytest.raises(ValueError):
        next(exhaustive_connected_graphs(8))


def test_random_connected_graph_is_reproducible():
    first = random_connected_graph(7, 0.4, seed=11)
    second = random_connected_graph(7, 0.4, seed=11)
    assert first.edge_list == second.edge_list
    assert first.is_connected
    assert first.vertex_count == 7


def test_random_connected_graph_gives_up():
    with pytest.raises(GenerationExhausted):
        random_connected_graph(6, 1e-9, seed=0, max_retries=3)
    with pytest.raises(ValueError):
        random_connected_graph(1, 0.5, seed=0)
    with pytest.raises(ValueError):
        random_connected_graph(4, 0.0, seed=0)


def test_random_weights():
    rng = make_rng(3)
    values = random_rationals(rng, 50, max_numerator=4, max_denominator=3)
    assert all(Fraction(1, 3) <= w <= 4 for w in values)

    bunkbed = build_bunkbed(complete_graph(4))
    weights = random_symmetric_weights(make_rng(5), bunkbed)
    assert CapacitatedNetwork(bunkbed, weights).is_reflection_symmetric()
    assert weights == random_symmetric_weights(make_rng(5), bunkbed)


def test_parse_graph_text():
    text = """
    # a triangle
    3 3
    0 1 1/2
    1 2       # default weight
    0 2 3
    %vertical
    1 2/3
    """
    graph_file = parse_graph_text(text)
    assert graph_file.graph.edge_list == ((0, 1), (1, 2), (0, 2))
    assert graph_file.edge_weights == (Fraction(1, 2), 1, 3)
    assert graph_file.vertical_weights == (1, Fraction(2, 3), 1)
    weights = graph_file.bunkbed_weights()
    assert weights[-3:] == [1, Fraction(2, 3), 1]
    assert weights[:3] == weights[3:6]


def test_parse_bare_vertical_weights():
    graph_file = parse_graph_text("3 2\n0 1\n1 2 2\n%vertical\n1/2\n0\n3  # post at 2\n")
    assert graph_file.vertical_weights == (Fraction(1, 2), 0, 3)
    assert graph_file.bunkbed_weights()[-3:] == [Fraction(1, 2), 0, 3]


def test_vertical_weights_are_written_bare():
    text = format_graph_text(path_graph(1), [2], [Fraction(1, 2), 1])
    assert text == "2 1\n0 1 2\n%vertical\n1/2\n1\n"
    assert parse_graph_text(text).vertical_weights == (Fraction(1, 2), 1)


@pytest.mark.parametrize(
    "text, match",
    [
        ("", "Empty"),
        ("3\n", "Line 1"),
        ("3 2\n0 1\n", "announces"),
        ("3 1\n0 x\n", "Line 2"),
        ("3 1\n0 1 0.5\n", "Line 2"),
        ("3 1\n0 1\n%vertical\n5 1\n", "Line 4"),
        ("3 1\n0 1\n%vertical\n2\n1 1\n", "do not mix"),
        ("3 1\n0 1\n%vertical\n2\n3\n", "lists 2 weights for 3"),
        ("3 1\n0 1\n%vertical\n2\n3\n4\n5\n", "Line 7"),
        ("3 1\n0 1\n%vertical\n1 2 3\n", "Line 4"),
    ],
)
def test_parse_graph_text_errors(text, match):
    with pytest.raises(ValueError, match=match):
        parse_graph_text(text)


def test_parse_graph_text_bad_edge():
    with pytest.raises(MalformedEdge):
        parse_graph_text("2 1\n0 0\n")


def test_graph_file_round_trip(tmp_path):
    graph = bridged_triangles()
    weights = [Fraction(i + 1, 2) for i in range(graph.edge_count)]
    vertical = [Fraction(u, 3) for u in range(graph.vertex_count)]
    path = tmp_path / "graph.txt"
    write_graph_file(path, graph, weights, vertical)
    assert b"\r\n" not in path.read_bytes()
    graph_file = read_graph_file(path)
    assert graph_file.graph.edge_list == graph.edge_list
    assert list(graph_file.edge_weights) == weights
    assert list(graph_file.vertical_weights) == vertical
    assert format_graph_text(graph).startswith("6 7\n0 1\n")


@pytest.mark.parametrize("name", sorted(p.name for p in (DATASETS / "graphs").glob("*.txt")))
def test_dataset_graphs_parse(name):
    graph_file = read_graph_file(DATASETS / "graphs" / name)
    assert graph_file.graph.is_connected
