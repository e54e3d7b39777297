# 齿轮测试
"""合法性、打磨、阻碍模式、Q-分量、需求比例与单顶点请求流程"""

from fractions import Fraction

import pytest

from src.cogs import (
    Cog,
    best_demand_fraction,
    classify_demands,
    combined_cog,
    detect_obstructions,
    is_polished,
    obstruction_cog,
    q_components,
    requests_at_vertex_pipeline,
    vertex_cog,
    validate_cog,
    verify_alpha_lemmas,
    weak_2chords,
)
from src.generators import FORCING_PSI
from src.models import ObstructionKind
from src.plane_graph import cycle_graph, path_graph
from src.request_graph import RequestGraph, subdivide_for_tria
from src.utils import ALPHA_0, ALPHA_1, ErrorCode, HypothesisViolation
from tests.conftest import inner_face_id


@pytest.fixture
def hexagon_cog() -> Cog:
    """C6 内部加一个邻接 0 与 3 的顶点 6"""
    graph = cycle_graph(6)
    graph = graph.insert_vertex_in_face(inner_face_id(graph), [0, 3])
    return Cog.create(graph, path=[1, 2], s=[0], t=[4])


def test_alpha_constants():
    assert ALPHA_1 == Fraction(1, 562)
    assert ALPHA_0 == Fraction(1, 5058)


def test_obstruction_a():
    cog = obstruction_cog(ObstructionKind.A)
    assert validate_cog(cog).valid
    fraction, witness = best_demand_fraction(cog, (1, 2))
    assert fraction == 0
    assert witness[3] == 3
    matches = detect_obstructions(cog)
    assert [m.kind for m in matches] == [ObstructionKind.A]
    assert set(matches[0].vertex_map) == {"p1", "p2", "s1", "t", "s2"}


def test_alpha_lemmas_do_not_apply_to_obstruction():
    report = verify_alpha_lemmas(obstruction_cog(ObstructionKind.A), (1, 2))
    assert not report.alpha1_applies
    assert not report.alpha1_hypotheses["obstruction_free"]
    assert not report.alpha0_applies
    assert not report.alpha0_hypotheses["path_vertex_without_s_neighbor"]
    assert report.fraction == 0
    assert "obstruction" in report.witnesses


@pytest.mark.parametrize("kind", [ObstructionKind.B, ObstructionKind.C, ObstructionKind.D])
def test_forcing_precoloring_zeroes_demands(kind):
    cog = obstruction_cog(kind)
    fraction, _ = best_demand_fraction(cog, FORCING_PSI[kind])
    assert fraction == 0
    assert kind in {m.kind for m in detect_obstructions(cog)}


def test_combined_cog():
    cog = combined_cog()
    assert validate_cog(cog).valid
    assert is_polished(cog)
    assert ObstructionKind.D in {m.kind for m in detect_obstructions(cog)}
    fraction, _ = best_demand_fraction(cog, FORCING_PSI[ObstructionKind.D])
    assert fraction == Fraction(1, 2)
    assert weak_2chords(cog) == []

    classes = classify_demands(cog)
    assert classes.t2 == [5, 9]
    assert classes.t1 == []


def test_q_components_along_chord():
    cog = combined_cog()
    first, second = q_components(cog, [0, 7])
    assert first.graph.vertex_count == 8
    assert second.graph.vertex_count == 5
    assert second.origin == (0, 7, 8, 9, 10)
    assert second.path == (0, 1)
    assert second.t == frozenset({3})
    assert second.s == frozenset({2, 4})
    assert second.original(3) == 9


def test_q_components_rejects_boundary_edge():
    with pytest.raises(HypothesisViolation) as exc:
        q_components(combined_cog(), [1, 2])
    assert exc.value.code == ErrorCode.Q_NOT_SPLITTING


def test_weak_2chord(hexagon_cog):
    assert weak_2chords(hexagon_cog) == [(0, 6, 3)]
    first, second = q_components(hexagon_cog, [0, 6, 3])
    assert second.graph.vertex_count == 5
    assert second.path == (0, 4, 1)
    assert first.role(1) == "P"


def test_invalid_and_unpolished_cogs():
    square = Cog.create(cycle_graph(4), s=[0, 1])
    report = validate_cog(square)
    assert not report.valid
    assert not report.checks["s_independent"]
    with pytest.raises(HypothesisViolation):
        verify_alpha_lemmas(square)

    assert not is_polished(Cog.create(path_graph(3), s=[1], t=[0, 2]))


def test_demand_fraction_edge_cases(c5):
    fraction, _ = best_demand_fraction(Cog.create(c5, path=[0, 1]), (1, 2))
    assert fraction == 1
    with pytest.raises(HypothesisViolation) as exc:
        best_demand_fraction(Cog.create(c5, path=[0, 1], t=[3]), (1, 1))
    assert exc.value.code == ErrorCode.BAD_PRECOLORING


def test_requests_at_one_vertex():
    rg = RequestGraph.create(cycle_graph(4), r_neq=[1, 3])
    assert requests_at_vertex_pipeline(rg, 0).fraction == 1


def test_requests_far_from_vertex():
    rg = RequestGraph.create(path_graph(5), r_neq=[1, 3])
    with pytest.raises(HypothesisViolation) as exc:
        requests_at_vertex_pipeline(rg, 0)
    assert exc.value.code == ErrorCode.REQUEST_NOT_AT_V


def test_pipeline_rejects_eq_requests():
    rg = RequestGraph.create(cycle_graph(4), r_eq=[1])
    with pytest.raises(HypothesisViolation):
        requests_at_vertex_pipeline(rg, 0)


def test_vertex_cog_uses_the_face_around_an_interior_vertex(cube):
    rg = subdivide_for_tria(cube, [(4, 5)])
    assert not cube.is_on_outer_face(4)
    cog = vertex_cog(rg, 4)
    assert cog.origin == (0, 1, 2, 3, 5, 6, 7)
    assert cog.s == frozenset({0, 6})
    assert cog.t == frozenset({4})
    assert cog.original(4) == 5
    assert validate_cog(cog).valid
    assert cog.graph.outer_vertices() == frozenset({0, 1, 3, 4, 5, 6})
    assert requests_at_vertex_pipeline(rg, 4).fraction == 1
