import pytest

from bunkbed_lab.closedform import closed_form_A, closed_form_B
from bunkbed_lab.data.graph_families import (
    bridged_triangles,
    complete_graph,
    cycle_graph,
    ladder,
    path_graph,
    star_graph,
)
from bunkbed_lab.exceptions import (
    OutOfRange,
    SameSourceSink,
    TimeBudgetExceeded,
    WalkLimitExceeded,
    WrongClass,
    WrongEndpoints,
)
from bunkbed_lab.graphcore import build_bunkbed
from bunkbed_lab.saw import (
    SawClass,
    SawLabel,
    SawWalk,
    bijection_map,
    census,
    classify_walk,
    count_saw,
    inverse_bijection_map,
    ladder_pair_report,
    ladder_prediction,
    ladder_s5_adjacent,
    ladder_s5_distant,
    ladder_s5_formula,
    ladder_side_walks,
    reflect_walk,
    remark_prediction,
    verify_bijections,
    verify_ladder_proposition,
)


@pytest.fixture
def k4_bunkbed():
    return build_bunkbed(complete_graph(4))


@pytest.mark.parametrize(
    "graph, a, b, expected",
    [(complete_graph(4), 0, 1, 5), (cycle_graph(5), 0, 2, 2), (path_graph(4), 0, 4, 1), (star_graph(3), 1, 2, 1)],
)
def test_count_saw(graph, a, b, expected):
    assert count_saw(graph, a, b).count == expected
    assert count_saw(graph, b, a).count == expected


def test_stored_walks_are_in_enumeration_order():
    result = count_saw(complete_graph(4), 0, 1, store_walks=True)
    assert [w.vertices for w in result.walks] == [(0, 1), (0, 2, 1), (0, 2, 3, 1), (0, 3, 1), (0, 3, 2, 1)]
    assert result.walks[2].edges == (1, 5, 4)


def test_count_saw_with_workers():
    graph = build_bunkbed(complete_graph(4))
    serial = count_saw(graph, 0, 5, store_walks=True)
    parallel = count_saw(graph, 0, 5, store_walks=True, workers=2)
    assert serial == parallel


def test_count_saw_limits():
    with pytest.raises(WalkLimitExceeded):
        count_saw(complete_graph(4), 0, 1, store_walks=True, max_walks=2)
    assert count_saw(complete_graph(4), 0, 1, max_walks=2).count == 5
    with pytest.raises(TimeBudgetExceeded):
        count_saw(complete_graph(9), 0, 1, time_limit=1e-9)
    with pytest.raises(SameSourceSink):
        count_saw(complete_graph(4), 2, 2)


@pytest.mark.parametrize("workers", [1, 2])
def test_storage_limit_stops_the_enumeration(workers):
    # K12 has about 10^7 walks between two vertices; only an early stop beats the deadline
    with pytest.raises(WalkLimitExceeded):
        count_saw(complete_graph(12), 0, 1, store_walks=True, max_walks=1, workers=workers, time_limit=5.0)
    with pytest.raises(WalkLimitExceeded):
        census(complete_graph(8), 0, 1, store_walks=True, max_walks=3, workers=workers, time_limit=5.0)


def test_storage_limit_is_shared_across_branches():
    # the branches out of 0 hold 1, 2 and 2 walks
    assert len(count_saw(complete_graph(4), 0, 1, store_walks=True, max_walks=5).walks) == 5
    with pytest.raises(WalkLimitExceeded):
        count_saw(complete_graph(4), 0, 1, store_walks=True, max_walks=4)


def test_saw_walk_validation():
    graph = path_graph(3)
    walk = SawWalk.from_vertices(graph, [0, 1, 2])
    assert walk.start == 0 and walk.end == 2 and walk.length == 2
    assert walk.reversed().vertices == (2, 1, 0)
    assert walk.to_dict() == {"vertices": [0, 1, 2], "edges": [0, 1]}
    with pytest.raises(ValueError):
        SawWalk((0,), ())
    with pytest.raises(ValueError):
        SawWalk((0, 1, 0), (0, 0))


@pytest.mark.parametrize(
    "vertices, label, parity",
    [
        ((0, 1), SawLabel.S1, 0),
        ((0, 4, 5, 1), SawLabel.S2, 0),
        ((0, 2, 6, 5, 7, 3, 1), SawLabel.S3, 0),
        ((0, 4, 5, 7, 3, 1), SawLabel.S4, 0),
        ((0, 2, 6, 4, 5, 7, 3, 1), SawLabel.S5, 0),
        ((0, 1, 5), SawLabel.S1, 1),
        ((0, 4, 5), SawLabel.S2, 1),
        ((0, 4, 6, 2, 1, 3, 7, 5), SawLabel.S3, 1),
        ((0, 2, 1, 3, 7, 5), SawLabel.S4, 1),
        ((0, 2, 1, 3, 7, 4, 5), SawLabel.S5, 1),
    ],
)
def test_classify_walk(k4_bunkbed, vertices, label, parity):
    walk = SawWalk.from_vertices(k4_bunkbed, vertices)
    assert classify_walk(walk, 0, 1, k4_bunkbed) == SawClass(label, parity)


def test_classify_walk_endpoints(k4_bunkbed):
    with pytest.raises(WrongEndpoints):
        classify_walk(SawWalk.from_vertices(k4_bunkbed, (1, 0)), 0, 1, k4_bunkbed)
    with pytest.raises(WrongEndpoints):
        classify_walk(SawWalk.from_vertices(k4_bunkbed, (0, 2)), 0, 1, k4_bunkbed)


@pytest.mark.parametrize("n", [3, 4, 5])
def test_census_of_complete_graphs(n):
    result = census(complete_graph(n), 0, 1)
    assert result.paired_classes_agree()
    assert result.s5 == (closed_form_A(n), closed_form_B(n))
    assert result.total_v1 - result.total_v0 == closed_form_B(n) - closed_form_A(n)
    assert result.total_v0 < result.total_v1


@pytest.mark.slow
def test_census_of_k6():
    result = census(complete_graph(6), 0, 1, workers=2)
    assert result.paired_classes_agree()
    assert result.s5 == (5160, 11140)


def test_census_of_single_edge():
    result = census(path_graph(1), 0, 1)
    assert result.to_v0 == (1, 1, 0, 0, 0)
    assert result.to_v1 == (1, 1, 0, 0, 0)
    assert result.count(SawLabel.S2, 1) == 1
    assert result.to_dict()["total_v0"] == "2"


def test_census_with_stored_walks():
    bunkbed = build_bunkbed(complete_graph(4))
    result = census(complete_graph(4), 0, 1, store_walks=True)
    for key, walks in result.walks.items():
        assert len(walks) == result.count(key.label, key.parity)
        assert all(classify_walk(w, 0, 1, bunkbed) == key for w in walks)
    with pytest.raises(WalkLimitExceeded):
        census(complete_graph(4), 0, 1, store_walks=True, max_walks=10)
    with pytest.raises(SameSourceSink):
        census(complete_graph(4), 1, 1)


def test_census_with_workers():
    assert census(complete_graph(4), 0, 2) == census(complete_graph(4), 0, 2, workers=2)


@pytest.mark.parametrize(
    "base, u, v",
    [
        (complete_graph(4), 0, 1),
        (cycle_graph(5), 0, 2),
        (star_graph(3), 0, 1),
        (star_graph(3), 1, 2),
        (path_graph(3), 0, 3),
        (path_graph(3), 1, 2),
        (bridged_triangles(), 2, 3),
        (bridged_triangles(), 0, 5),
    ],
)
def test_bijections(base, u, v):
    bunkbed = build_bunkbed(base)
    result = census(base, u, v, store_walks=True)
    checks = verify_bijections(result, bunkbed)
    assert all(check.ok for check in checks.values())


def test_bijection_maps_on_examples(k4_bunkbed):
    def walk(*vertices):
        return SawWalk.from_vertices(k4_bunkbed, vertices)

    assert bijection_map(1, walk(0, 1), 0, 1, k4_bunkbed) == walk(0, 1, 5)
    assert bijection_map(2, walk(0, 4, 5, 1), 0, 1, k4_bunkbed) == walk(0, 4, 5)
    assert bijection_map(3, walk(0, 2, 6, 5, 7, 3, 1), 0, 1, k4_bunkbed) == walk(0, 4, 6, 2, 1, 3, 7, 5)
    assert bijection_map(4, walk(0, 4, 5, 7, 3, 1), 0, 1, k4_bunkbed) == walk(0, 1, 3, 7, 5)
    assert inverse_bijection_map(4, walk(0, 1, 3, 7, 5), 0, 1, k4_bunkbed) == walk(0, 4, 5, 7, 3, 1)


def test_bijection_map_errors(k4_bunkbed):
    s1 = SawWalk.from_vertices(k4_bunkbed, (0, 1))
    with pytest.raises(WrongClass):
        bijection_map(2, s1, 0, 1, k4_bunkbed)
    with pytest.raises(WrongClass):
        inverse_bijection_map(1, s1, 0, 1, k4_bunkbed)
    with pytest.raises(WrongClass):
        bijection_map(1, SawWalk.from_vertices(k4_bunkbed, (2, 1)), 0, 1, k4_bunkbed)
    with pytest.raises(OutOfRange):
        bijection_map(5, s1, 0, 1, k4_bunkbed)
    with pytest.raises(ValueError):
        verify_bijections(census(complete_graph(3), 0, 1), build_bunkbed(complete_graph(3)))


def test_reflect_walk(k4_bunkbed):
    walk = SawWalk.from_vertices(k4_bunkbed, (0, 4, 6, 2))
    image = reflect_walk(k4_bunkbed, walk)
    assert image.vertices == (4, 0, 2, 6)
    assert reflect_walk(k4_bunkbed, image) == walk


def test_remark_prediction():
    assert remark_prediction(star_graph(3), 0, 1) == "="
    assert remark_prediction(bridged_triangles(), 2, 3) == ">"
    assert remark_prediction(complete_graph(3), 0, 1) is None
    assert remark_prediction(bridged_triangles(), 0, 5) is None


def test_remark_predictions_match_census():
    star = census(star_graph(3), 0, 1)
    assert star.total_v0 == star.total_v1
    bridged = census(bridged_triangles(), 2, 3)
    assert bridged.total_v0 > bridged.total_v1
    assert bridged.s5[1] == 0


def test_ladder_formulas():
    assert ladder_side_walks(3, 0) == ladder_side_walks(3, 1) == 2
    assert ladder_s5_adjacent(6, 1) == 4
    assert ladder_s5_adjacent(4, 1) == 2
    assert ladder_s5_adjacent(3, 1) == 1
    assert ladder_s5_distant(6, 1, 2) == (3, 3)
    assert ladder_s5_distant(6, 1, 3) == (4, 4)
    assert ladder_s5_formula(4, 2, 3) == ladder_s5_formula(4, 2, 1) == (2, 0)
    assert ladder_s5_formula(4, 0, 1) == (0, 0)
    assert ladder_s5_formula(4, 3, 4) == (0, 0)


def test_ladder_formula_ranges():
    with pytest.raises(OutOfRange):
        ladder_side_walks(2, 0)
    with pytest.raises(OutOfRange):
        ladder_side_walks(4, 2)
    with pytest.raises(OutOfRange):
        ladder_s5_adjacent(4, 3)
    with pytest.raises(OutOfRange):
        ladder_s5_distant(6, 1, 1)
    with pytest.raises(OutOfRange):
        ladder_s5_distant(6, 3, 3)


def test_ladder_pair_report():
    report = ladder_pair_report(3, 1, 2)
    assert report.predicted == report.observed == ">"
    assert (report.s5_v0, report.s5_v1) == report.formula == (1, 0)
    assert report.total_v0 - report.total_v1 == 1
    assert ladder_pair_report(3, 2, 1).agrees
    with pytest.raises(OutOfRange):
        ladder_pair_report(1, 0, 1)
    with pytest.raises(OutOfRange):
        ladder_pair_report(3, 0, 4)
    assert [ladder_prediction(4, u, u + 1) for u in range(4)] == ["=", ">", ">", "="]
    assert ladder_prediction(4, 1, 3) == "="


@pytest.mark.parametrize("n", [2, 3, 4, 5, 6])
def test_verify_ladder_proposition(n):
    reports = verify_ladder_proposition(n)
    assert len(reports) == (n + 1) * n
    assert all(report.agrees for report in reports)
    strict = {(r.u, r.v) for r in reports if r.observed == ">"}
    assert strict == {(k, k + 1) for k in range(1, n - 1)} | {(k + 1, k) for k in range(1, n - 1)}


@pytest.mark.slow
@pytest.mark.parametrize("n", [7, 8])
def test_verify_ladder_proposition_large(n):
    assert all(report.agrees for report in verify_ladder_proposition(n, workers=2))


def test_ladder_is_a_bunkbed():
    graph = ladder(3)
    assert graph.base.edge_list == path_graph(3).edge_list
    assert count_saw(graph, graph.vertex(0, 0), graph.vertex(3, 0)).count == ladder_side_walks(5, 0)
