# Clebsch 图测试
"""GF(16) 运算、强正则参数、同态与距离 3 着色"""

import networkx as nx
import pytest

from src.clebsch import (
    FIELD_SIZE,
    build_clebsch,
    cubes,
    dist3_coloring,
    find_homomorphism,
    gf_mul,
    gf_pow,
    is_homomorphism,
    strongly_regular_parameters,
    verify_dist3,
)
from src.plane_graph import PlaneGraph, path_graph
from src.utils import HypothesisViolation


def test_field_arithmetic():
    assert gf_mul(2, 8) == 3
    assert gf_mul(1, 13) == 13
    assert gf_pow(2, 15) == 1
    assert all(gf_pow(a, 15) == 1 for a in range(1, FIELD_SIZE))


def test_cubes_form_subgroup():
    cube_set = cubes()
    assert len(cube_set) == 5
    assert 1 in cube_set
    assert all(gf_mul(a, b) in cube_set for a in cube_set for b in cube_set)


def test_clebsch_graph_shape():
    clebsch = build_clebsch()
    graph = clebsch.graph
    assert graph.number_of_nodes() == 16
    assert {d for _, d in graph.degree()} == {5}
    assert sum(nx.triangles(graph).values()) == 0
    assert strongly_regular_parameters(clebsch) == (16, 5, 0, 2)


def test_homomorphism_from_five_cycle(c5):
    hom = find_homomorphism(c5)
    assert is_homomorphism(c5, hom.mapping)
    assert not is_homomorphism(c5, {0: 0})


def test_dist3_coloring_on_cube(cube):
    colors = dist3_coloring(cube)
    assert verify_dist3(cube, colors) == {"proper": True, "distance3": True}
    assert set(colors.values()) <= set(range(16))


def test_homomorphism_rejects_triangle():
    with pytest.raises(HypothesisViolation):
        find_homomorphism(PlaneGraph(3, [[1, 2], [2, 0], [0, 1]]))


def test_verify_dist3_catches_repeated_color_at_distance_three():
    checks = verify_dist3(path_graph(4), {0: 1, 1: 2, 2: 3, 3: 1})
    assert checks == {"proper": True, "distance3": False}
