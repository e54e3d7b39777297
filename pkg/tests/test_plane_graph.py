# 平面图测试
"""旋转系统的验证、面追踪、外面与圈区域"""

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from src.generators import grid_graph, random_tfp_graph, theta_graph
from src.plane_graph import (
    PlaneGraph,
    build_plane_graph,
    cycle_graph,
    embed_straight_line,
    find_separating_cycles,
    girth,
    path_graph,
)
from src.utils import ErrorCode, HypothesisViolation
from tests.conftest import inner_face_id


def test_cycle_has_two_faces(c5):
    assert [f.length for f in c5.faces] == [5, 5]
    assert c5.outer_vertices() == frozenset(range(5))
    assert c5.face_length_counts() == {5: 2}


def test_cycle_outer_face_walks_descending(c5):
    assert c5.outer_face.darts[0] == (0, 4)
    inner = c5.face(inner_face_id(c5))
    assert inner.darts[0] == (0, 1)


def test_single_vertex_has_one_face():
    graph = PlaneGraph(1, [[]])
    assert len(graph.faces) == 1
    assert graph.edge_count == 0
    assert graph.girth() is None


@pytest.mark.parametrize(
    "n, rotations, code",
    [
        (2, [[1], []], ErrorCode.ASYMMETRIC_ROTATION),
        (1, [[0]], ErrorCode.LOOP_OR_MULTIEDGE),
        (2, [[1, 1], [0]], ErrorCode.LOOP_OR_MULTIEDGE),
        (2, [[5], []], ErrorCode.ID_OUT_OF_RANGE),
        (2, [[1]], ErrorCode.BAD_PARAMS),
    ],
)
def test_invalid_rotations(n, rotations, code):
    with pytest.raises(HypothesisViolation) as exc:
        PlaneGraph(n, rotations)
    assert exc.value.code == code


def test_k33_rotation_is_not_planar():
    rotations = [[3, 4, 5]] * 3 + [[0, 1, 2]] * 3
    with pytest.raises(HypothesisViolation) as exc:
        PlaneGraph(6, rotations)
    assert exc.value.code == ErrorCode.NON_PLANAR_ROTATION


def test_bad_outer_face_hint():
    with pytest.raises(HypothesisViolation) as exc:
        build_plane_graph(3, [[1], [0, 2], [1]], outer_face_hint=7)
    assert exc.value.code == ErrorCode.BAD_OUTER_FACE
    with pytest.raises(HypothesisViolation):
        build_plane_graph(3, [[1], [0, 2], [1]], outer_face_hint=(0, 2))


def test_cube_faces(cube):
    assert len(cube.faces) == 6
    assert all(f.length == 4 for f in cube.faces)
    assert cube.outer_vertices() == frozenset({0, 1, 2, 3})
    assert girth(cube) == 4
    assert cube.is_triangle_free()
    assert cube.chords() == []


def test_path_and_star():
    p3 = path_graph(3)
    assert [f.length for f in p3.faces] == [4]
    star = PlaneGraph(4, [[1, 2, 3], [0], [0], [0]])
    assert star.girth() is None
    assert star.is_connected()


def test_cycle_graph_too_short():
    with pytest.raises(HypothesisViolation) as exc:
        cycle_graph(2)
    assert exc.value.code == ErrorCode.BAD_PARAMS


def test_theta_graph_chord():
    graph = theta_graph(3, 1, 3)
    assert graph.vertex_count == 6
    assert graph.chords() == [(0, 1)]
    assert graph.girth() == 4
    with pytest.raises(HypothesisViolation):
        theta_graph(1, 1, 3)


def test_grid_graph():
    graph = grid_graph(3, 3)
    assert graph.vertex_count == 9
    assert graph.edge_count == 12
    assert len(graph.faces) == 5
    assert graph.face_length_counts() == {4: 4, 8: 1}


def test_raw_outer_index_round_trip(cube):
    rebuilt = PlaneGraph(cube.vertex_count, cube.rotations, cube.raw_outer_index())
    assert rebuilt == cube


def test_insert_vertex_in_face(c5, c5_plus):
    assert c5_plus.vertex_count == 6
    assert set(c5_plus.neighbors(5)) == {0, 2}
    assert c5_plus.outer_face.vertex_set == c5.outer_face.vertex_set
    assert c5_plus.face_length_counts() == {5: 2, 4: 1}
    assert c5_plus.girth() == 4


def test_insert_vertex_rejects_foreign_anchor(c5_plus):
    face = next(f for f in c5_plus.faces if f.length == 4)
    with pytest.raises(HypothesisViolation) as exc:
        c5_plus.insert_vertex_in_face(face.id, [3])
    assert exc.value.code == ErrorCode.BAD_PARAMS


def test_separating_cycles_need_both_sides(c5_plus):
    assert find_separating_cycles(c5_plus, 5) == []
    ref = c5_plus.cycle_regions((0, 1, 2, 3, 4))
    assert ref.interior == frozenset({5})
    assert not ref.separating


def test_cycle_regions_rejects_non_cycle(c5):
    with pytest.raises(HypothesisViolation):
        c5.cycle_regions((0, 1, 3))


def test_cycles_of_length_canonical(c5_plus):
    assert c5_plus.cycles_of_length(4) == [(0, 1, 2, 5)]
    assert c5_plus.cycles_of_length(5) == [(0, 1, 2, 3, 4), (0, 4, 3, 2, 5)]


def test_induced_subgraph_keeps_order(cube):
    sub, mapping = cube.induced_subgraph([0, 1, 2, 3])
    assert mapping == (0, 1, 2, 3)
    assert sub.edge_count == 4
    assert sub.girth() == 4


def test_embed_straight_line_picks_unbounded_face():
    coords = [(0.0, 0.0), (1.0, 0.0), (1.0, 1.0), (0.0, 1.0)]
    graph = embed_straight_line(4, [(0, 1), (1, 2), (2, 3), (3, 0)], coords)
    assert graph.outer_face.length == 4
    assert graph.to_networkx().number_of_edges() == 4


@settings(max_examples=25, deadline=None)
@given(st.integers(min_value=0, max_value=10_000), st.integers(min_value=1, max_value=10))
def test_random_graphs_satisfy_euler(seed, n):
    graph = random_tfp_graph(seed, n)
    faces = graph.faces
    assert graph.vertex_count - graph.edge_count + len(faces) == 2
    assert sum(f.length for f in faces) == 2 * graph.edge_count
    assert graph.is_triangle_free()
