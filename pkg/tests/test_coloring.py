# 3-着色测试
"""枚举、计数、圈预着色扩展、双色面、Kempe 交换与邻域收缩"""

from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from src.coloring import (
    bichromatic_report,
    contract_for_minc,
    count_colorings,
    enumerate_colorings,
    extension_count_from_cycle,
    find_coloring,
    is_proper,
    kempe_components,
    kempe_swap,
    minc_lift_multiplicity,
    proper_colorings_of_cycle,
    verify_manycolor_bound,
)
from src.generators import random_tfp_graph
from src.plane_graph import PlaneGraph, cycle_graph, path_graph
from src.utils import ErrorCode, HypothesisViolation


@pytest.mark.parametrize(
    "graph, expected",
    [
        (path_graph(2), 6),
        (path_graph(3), 12),
        (cycle_graph(4), 18),
        (cycle_graph(5), 30),
        (cycle_graph(7), 126),
    ],
)
def test_count_small_graphs(graph, expected):
    assert count_colorings(graph) == expected
    assert count_colorings(graph, symmetric=True) == expected


def test_enumeration_is_lexicographic():
    colorings = [c.as_tuple(2) for c in enumerate_colorings(path_graph(2))]
    assert colorings == sorted(colorings)
    assert colorings[0] == (1, 2)
    assert len(colorings) == 6


def test_fix_first_reduces_by_three():
    colorings = list(enumerate_colorings(cycle_graph(4), fix_first=True))
    assert len(colorings) == 6
    assert all(c[0] == 1 for c in colorings)


def test_limit_and_precoloring(c5):
    assert len(list(enumerate_colorings(c5, limit=4))) == 4
    assert count_colorings(c5, {0: 1, 1: 2}) == 5
    found = find_coloring(c5, {0: 3})
    assert found is not None and found[0] == 3 and is_proper(c5, found)


def test_improper_precoloring_is_rejected():
    with pytest.raises(HypothesisViolation) as exc:
        count_colorings(cycle_graph(4), {0: 1, 1: 1})
    assert exc.value.code == ErrorCode.IMPROPER_PRECOLORING


def test_cycle_coloring_list():
    assert len(proper_colorings_of_cycle(5)) == 30
    assert (1, 2, 1, 2, 3) in proper_colorings_of_cycle(5)


def test_extension_with_single_extension_has_witness(c5_plus):
    report = extension_count_from_cycle(c5_plus, [0, 1, 2, 3, 4], (1, 2, 3, 1, 3))
    assert report.count == 1
    assert report.witness == 5


def test_extension_with_two_extensions(c5_plus):
    report = extension_count_from_cycle(c5_plus, [0, 1, 2, 3, 4], (1, 2, 1, 2, 3))
    assert report.count == 2
    assert report.witness is None


def test_extension_requires_outer_cycle(c5_plus):
    with pytest.raises(HypothesisViolation):
        extension_count_from_cycle(c5_plus, [0, 1, 2, 5], (1, 2, 1, 2))


def test_extension_rejects_improper_psi(c5_plus):
    with pytest.raises(HypothesisViolation) as exc:
        extension_count_from_cycle(c5_plus, [0, 1, 2, 3, 4], (1, 1, 2, 3, 2))
    assert exc.value.code == ErrorCode.BAD_PRECOLORING


def test_bichromatic_report_on_square():
    report = bichromatic_report(cycle_graph(4), {0: 1, 1: 2, 2: 1, 3: 2})
    assert report.q == 2
    assert report.four_faces == 2
    assert report.s_plus == 0
    assert report.c_pairs == {"12": 1, "13": 2, "23": 2}


def test_bichromatic_report_on_cube(cube, cube_phi):
    report = bichromatic_report(cube, cube_phi)
    assert report.q == 6
    assert report.s_plus == 0
    assert report.bound_exponent == Fraction(7, 3)
    assert report.c_pairs == {"12": 1, "13": 4, "23": 4}


def test_bichromatic_report_needs_total_coloring(c5):
    with pytest.raises(HypothesisViolation) as exc:
        bichromatic_report(c5, {0: 1})
    assert exc.value.code == ErrorCode.IMPROPER_COLORING


def test_manycolor_bound_on_cube(cube, cube_phi):
    report = verify_manycolor_bound(cube, cube_phi)
    assert report.count == 114
    assert report.ok
    assert report.components_ok


def test_manycolor_needs_three_vertices():
    with pytest.raises(HypothesisViolation):
        verify_manycolor_bound(path_graph(2), {0: 1, 1: 2})


def test_kempe_components_and_swap():
    graph = cycle_graph(4)
    phi = {0: 1, 1: 2, 2: 1, 3: 2}
    assert kempe_components(graph, phi, (1, 3)) == [frozenset({0}), frozenset({2})]
    swapped = kempe_swap(graph, phi, (1, 3), 0)
    assert swapped[0] == 3
    assert is_proper(graph, swapped)


def test_kempe_swap_whole_even_cycle():
    graph = cycle_graph(6)
    phi = {v: 1 + v % 2 for v in range(6)}
    swapped = kempe_swap(graph, phi, (1, 2), 0)
    assert all(swapped[v] != phi[v] for v in range(6))


def test_kempe_swap_bad_component():
    graph = cycle_graph(4)
    with pytest.raises(HypothesisViolation) as exc:
        kempe_swap(graph, {0: 1, 1: 2, 2: 1, 3: 2}, (1, 3), 5)
    assert exc.value.code == ErrorCode.BAD_COMPONENT


@settings(max_examples=20, deadline=None)
@given(
    seed=st.integers(min_value=0, max_value=5000),
    n=st.integers(min_value=2, max_value=9),
    pair=st.sampled_from([(1, 2), (1, 3), (2, 3)]),
    data=st.data(),
)
def test_kempe_swap_twice_is_identity(seed, n, pair, data):
    graph = random_tfp_graph(seed, n)
    phi = find_coloring(graph)
    components = kempe_components(graph, phi, pair)
    if not components:
        return
    index = data.draw(st.integers(min_value=0, max_value=len(components) - 1))
    once = kempe_swap(graph, phi, pair, index)
    assert is_proper(graph, once)
    twice = kempe_swap(graph, once, pair, index)
    assert twice.assignment == phi.assignment


def test_minc_on_star():
    star = PlaneGraph(4, [[1, 2, 3], [0], [0], [0]])
    contracted = contract_for_minc(star, 0)
    assert contracted.vertex_count == 1
    assert minc_lift_multiplicity(star, 0) == 2


def test_minc_on_square():
    contracted = contract_for_minc(cycle_graph(4), 0)
    assert contracted.vertex_count == 2
    assert contracted.edge_count == 1
    assert minc_lift_multiplicity(cycle_graph(4), 0) == 2


def test_minc_rejects_vertex_on_five_cycle(c5):
    with pytest.raises(HypothesisViolation) as exc:
        contract_for_minc(c5, 0)
    assert exc.value.code == ErrorCode.V_IN_5CYCLE
