# 测试共享夹具
"""常用的小平面图"""

import pytest

from src.generators import cube_graph
from src.plane_graph import PlaneGraph, cycle_graph


def inner_face_id(graph: PlaneGraph) -> int:
    """圈图中外面之外的那个面"""
    return next(f.id for f in graph.faces if f.id != graph.outer_face_id)


@pytest.fixture
def c5() -> PlaneGraph:
    return cycle_graph(5)


@pytest.fixture
def c5_plus() -> PlaneGraph:
    """C5 内部加一个邻接 0 与 2 的顶点 5"""
    graph = cycle_graph(5)
    return graph.insert_vertex_in_face(inner_face_id(graph), [0, 2])


@pytest.fixture
def cube() -> PlaneGraph:
    return cube_graph()


@pytest.fixture
def cube_phi() -> dict[int, int]:
    """立方体按二部划分的 2-着色"""
    return {0: 1, 1: 2, 2: 1, 3: 2, 4: 2, 5: 1, 6: 2, 7: 1}
