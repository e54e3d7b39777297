# 列表着色测试
"""求解器、前提检查、外壳与 blocks 关系"""

import pytest

from src.listcolor import (
    blocks,
    build_casing,
    casing_order,
    check_hypotheses,
    solve_list_coloring,
    validate_casing,
)
from src.models import ListAssignment, StatementId
from src.plane_graph import cycle_graph, path_graph
from src.utils import ErrorCode, HypothesisViolation
from tests.conftest import inner_face_id


def _lists(mapping: dict[int, set[int]]) -> ListAssignment:
    return ListAssignment(lists={v: frozenset(colors) for v, colors in mapping.items()})


def test_solver_on_cycles():
    assert solve_list_coloring(cycle_graph(5), _lists({})) is not None
    two = {1, 2}
    coloring = solve_list_coloring(cycle_graph(4), _lists({v: two for v in range(4)}))
    assert coloring is not None
    assert set(coloring.assignment.values()) <= two
    assert solve_list_coloring(cycle_graph(5), _lists({v: two for v in range(5)})) is None


def test_three_choosability_with_precolored_edge(c5):
    report = check_hypotheses(StatementId.THM_3CHOOS, c5, [0, 1], _lists({0: {1}, 1: {2}}))
    assert report.all_hold
    assert report.solver_succeeded
    assert report.middle_vertex is None
    assert report.coloring[0] == 1 and report.coloring[1] == 2


def test_three_small_lists_in_a_row_fail(c5):
    lists = _lists({0: {1, 2}, 1: {1, 2}, 2: {1, 2}})
    report = check_hypotheses(StatementId.THM_DVOKAW, c5, [], lists)
    assert not report.all_hold
    assert report.condition("ii").witness == [0, 1, 2]
    assert report.solver_succeeded is None


def test_same_lemma_with_three_vertex_path(c5):
    lists = _lists({0: {1}, 1: {2}, 2: {3}})
    report = check_hypotheses(StatementId.LEM_SAME, c5, [0, 1, 2], lists)
    assert report.all_hold
    assert report.middle_vertex == 1
    assert report.solver_succeeded


def test_girth_condition_fails_on_square():
    report = check_hypotheses(StatementId.THM_3CHOOS, cycle_graph(4), [], _lists({}))
    assert not report.condition("girth").holds
    assert not report.all_hold


def test_precolored_nine_cycle():
    lists = _lists({v: {v % 3 + 1} for v in range(9)})
    report = check_hypotheses(StatementId.THM_CYCEX, cycle_graph(9), [], lists)
    assert report.all_hold
    assert report.solver_succeeded


def test_nine_cycle_with_tripod_is_the_exception():
    graph = cycle_graph(9)
    graph = graph.insert_vertex_in_face(inner_face_id(graph), [0, 3, 6])
    lists = _lists({v: {v % 3 + 1} for v in range(9)})
    report = check_hypotheses(StatementId.THM_CYCEX, graph, [], lists)
    assert not report.all_hold
    assert report.condition("no_exception").witness == [9]


def test_casing_on_hexagon():
    graph = cycle_graph(6)
    casing = build_casing(graph, [0, 1], [(3, 4)])
    assert casing.outer_cycle == (6, 7, 8, 9)
    assert casing.order == (4, 3, 1, 0)
    assert all(validate_casing(casing, graph, [0, 1], [(3, 4)]).values())
    assert casing_order(casing, 0) == [0, 4, 3, 1]
    assert casing.precedes(4, 0)


def test_casing_rejects_matching_on_path():
    with pytest.raises(HypothesisViolation) as exc:
        build_casing(cycle_graph(6), [0, 1], [(1, 2)])
    assert exc.value.code == ErrorCode.X_MEETS_P


def test_casing_rejects_overlapping_edges():
    with pytest.raises(HypothesisViolation) as exc:
        build_casing(cycle_graph(6), [], [(2, 3), (3, 4)])
    assert exc.value.code == ErrorCode.X_NOT_MATCHING


def test_blocks_relation():
    graph = path_graph(5)
    lists = _lists({0: {1}, 1: {1, 2}, 3: {1, 2}, 4: {2, 3}})
    assert blocks(graph, lists, (3, 4), 0)
    with pytest.raises(HypothesisViolation):
        blocks(graph, lists, (2, 3), 0)
