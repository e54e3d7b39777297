# 请求图测试
"""满足比例、最佳比例、请求互换小工具、克隆与细分"""

from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from src.generators import random_request_graph
from src.models import Coloring
from src.plane_graph import PlaneGraph, cycle_graph, path_graph
from src.request_graph import (
    RequestGraph,
    best_fraction,
    clone_explosion,
    delete_edges,
    gadget_eq_to_neq,
    gadget_neq_to_eq,
    integerize_and_clone,
    max_bicolored_edges,
    satisfied_fraction,
    subdivide_for_tria,
)
from src.utils import ErrorCode, HypothesisViolation

TRIANGLE = PlaneGraph(3, [[1, 2], [2, 0], [0, 1]])


def _coloring(colors: dict[int, int]) -> Coloring:
    return Coloring(assignment=colors, total=True)


def test_satisfied_fraction_for_neq_request():
    rg = RequestGraph.create(path_graph(3), r_neq=[1])
    assert satisfied_fraction(rg, _coloring({0: 1, 1: 3, 2: 2})).fraction == 1
    assert satisfied_fraction(rg, _coloring({0: 1, 1: 2, 2: 1})).fraction == 0


def test_satisfied_fraction_rejects_improper_coloring():
    rg = RequestGraph.create(path_graph(3), r_neq=[1])
    with pytest.raises(HypothesisViolation) as exc:
        satisfied_fraction(rg, _coloring({0: 1, 1: 1, 2: 2}))
    assert exc.value.code == ErrorCode.IMPROPER_COLORING


def test_no_requests_means_full_fraction():
    rg = RequestGraph.create(cycle_graph(4))
    assert best_fraction(rg).fraction == 1


def test_best_fraction_with_conflicting_requests():
    rg = RequestGraph.create(cycle_graph(4), r_eq=[1], r_neq=[3])
    result = best_fraction(rg)
    assert result.fraction == Fraction(1, 2)
    assert result.total_weight == 2

    weighted = RequestGraph.create(
        cycle_graph(4), r_eq=[1], r_neq=[3], weights={1: Fraction(3, 2), 3: Fraction(1, 2)}
    )
    best = best_fraction(weighted)
    assert best.fraction == Fraction(3, 4)
    assert satisfied_fraction(weighted, best.coloring).fraction == Fraction(3, 4)


@pytest.mark.parametrize(
    "kwargs, code",
    [
        ({"graph": PlaneGraph(4, [[1, 2, 3], [0], [0], [0]]), "r_neq": [0]}, ErrorCode.HYPOTHESIS_VIOLATION),
        ({"graph": cycle_graph(4), "r_eq": [1], "r_neq": [1]}, ErrorCode.HYPOTHESIS_VIOLATION),
        ({"graph": cycle_graph(4), "r_eq": [1, 2]}, ErrorCode.HYPOTHESIS_VIOLATION),
        ({"graph": path_graph(3), "r_eq": [1], "weights": {1: 0}}, ErrorCode.HYPOTHESIS_VIOLATION),
        ({"graph": path_graph(3), "r_eq": [9]}, ErrorCode.ID_OUT_OF_RANGE),
    ],
)
def test_invalid_request_graphs(kwargs, code):
    with pytest.raises(HypothesisViolation) as exc:
        RequestGraph.create(**kwargs)
    assert exc.value.code == code


def test_gadget_neq_to_eq_on_path():
    rg = RequestGraph.create(path_graph(3), r_neq=[1])
    converted = gadget_neq_to_eq(rg)
    assert converted.graph.vertex_count == 4
    assert converted.r_eq == frozenset({1})
    assert converted.r_neq == frozenset()
    assert best_fraction(converted).fraction == best_fraction(rg).fraction


def test_gadget_eq_to_neq_on_path():
    rg = RequestGraph.create(path_graph(3), r_eq=[1], weights={1: Fraction(5, 2)})
    converted = gadget_eq_to_neq(rg)
    assert converted.graph.vertex_count == 5
    assert converted.r_neq == frozenset({4})
    assert converted.weights == {4: Fraction(5, 2)}
    assert converted.graph.is_triangle_free()
    assert best_fraction(converted).fraction == 1


def test_gadgets_without_matching_requests_are_identity():
    rg = RequestGraph.create(path_graph(3), r_eq=[1])
    assert gadget_neq_to_eq(rg) is rg
    other = RequestGraph.create(path_graph(3), r_neq=[1])
    assert gadget_eq_to_neq(other) is other


def test_integerize_and_clone():
    rg = RequestGraph.create(
        cycle_graph(4), r_eq=[1, 3], weights={1: Fraction(3, 2), 3: Fraction(1, 2)}
    )
    cloned = integerize_and_clone(rg)
    assert cloned.graph.vertex_count == 6
    assert len(cloned.r_eq) == 4
    assert set(cloned.weights.values()) == {Fraction(1)}
    assert best_fraction(cloned).fraction == best_fraction(rg).fraction


def test_integerize_rejects_neq_requests():
    with pytest.raises(HypothesisViolation):
        integerize_and_clone(RequestGraph.create(path_graph(3), r_neq=[1]))


def test_clone_explosion_on_path():
    rg = RequestGraph.create(path_graph(3), r_eq=[1])
    exploded, rows = clone_explosion(rg, 3)
    assert exploded.vertex_count == 5
    assert len(rows) == 9
    assert sorted(row.expected for row in rows) == [1] * 6 + [8] * 3
    assert all(row.ok for row in rows)


def test_clone_explosion_two_requests():
    rg = RequestGraph.create(cycle_graph(4), r_eq=[1, 3])
    _, rows = clone_explosion(rg, 2)
    both = [row for row in rows if row.satisfied == 2]
    assert both and all(row.expected == 16 and row.ok for row in both)


def test_clone_explosion_needs_positive_count():
    rg = RequestGraph.create(path_graph(3), r_eq=[1])
    with pytest.raises(HypothesisViolation) as exc:
        clone_explosion(rg, 0)
    assert exc.value.code == ErrorCode.BAD_PARAMS


def test_subdivide_triangle():
    rg = subdivide_for_tria(TRIANGLE, [(0, 1)])
    assert rg.graph.vertex_count == 4
    assert rg.r_neq == frozenset({3})
    assert rg.graph.is_triangle_free()
    assert best_fraction(rg).satisfied_weight == max_bicolored_edges(TRIANGLE, [(0, 1)]) == 1


def test_subdivide_must_break_every_triangle():
    with pytest.raises(HypothesisViolation) as exc:
        subdivide_for_tria(TRIANGLE, [])
    assert exc.value.code == ErrorCode.STILL_HAS_TRIANGLE


def test_delete_edges_keeps_vertices():
    graph = delete_edges(cycle_graph(5), [(1, 0)])
    assert graph.vertex_count == 5
    assert graph.edge_count == 4
    with pytest.raises(HypothesisViolation):
        delete_edges(cycle_graph(5), [(0, 2)])


@settings(max_examples=15, deadline=None)
@given(
    seed=st.integers(min_value=0, max_value=10_000),
    n=st.integers(min_value=5, max_value=9),
    k=st.sampled_from([1, 2]),
)
def test_gadgets_preserve_best_fraction(seed, n, k):
    rg = random_request_graph(seed, n, k)
    expected = best_fraction(rg).fraction
    all_eq = gadget_neq_to_eq(rg)
    assert best_fraction(all_eq).fraction == expected
    assert best_fraction(gadget_eq_to_neq(rg)).fraction == expected
    assert best_fraction(integerize_and_clone(all_eq)).fraction == expected
