# 5-圈分解测试
"""分解树、捕获顶点、块的丰富度、郊区与可重排顶点对"""

import pytest

from src.coloring import find_coloring, is_proper
from src.decomposition import (
    build_decomposition,
    caught_bound_holds,
    caught_vertices,
    chain_boundary,
    check_laminar,
    check_maximal,
    classify_all,
    find_rearrangeable_pair,
    find_suburbs,
    node_piece_graph,
    rearrange,
    suburb_chain,
    suburb_rearrangeable_pair,
    uncaught_five_cycle_vertices,
)
from src.generators import rhombic_dodecahedron
from src.models import Coloring, ConfigKind, Richness
from src.plane_graph import PlaneGraph, cycle_graph, find_separating_cycles
from src.utils import ErrorCode, HypothesisViolation, StatementViolation


@pytest.fixture
def chain13() -> PlaneGraph:
    return suburb_chain([1, 3])


def _bichromatic(face, colors) -> bool:
    return len({colors[v] for v in face.boundary}) == 2


def test_suburb_chain_adjacency(chain13):
    assert chain13.vertex_count == 7
    assert set(chain13.neighbors(5)) == {1, 4}
    assert set(chain13.neighbors(6)) == {1, 3}
    assert chain_boundary(chain13, [1, 3]) == frozenset({0, 1, 2, 3, 4, 5, 6})


def test_suburb_chain_rejects_bad_position():
    with pytest.raises(HypothesisViolation) as exc:
        suburb_chain([6])
    assert exc.value.code == ErrorCode.BAD_PARAMS


def test_separating_five_cycles_of_chain(chain13):
    found = {ref.vertices: ref.interior for ref in find_separating_cycles(chain13, 5)}
    assert found == {
        (0, 1, 6, 3, 4): frozenset({5}),
        (1, 2, 3, 4, 5): frozenset({6}),
    }


def test_decomposition_of_chain(chain13):
    decomposition = build_decomposition(chain13)
    assert len(decomposition.nodes) == 2
    assert decomposition.root.cycle is None
    node = decomposition.node(1)
    assert node.parent == 0
    assert node.cycle.vertices == (0, 1, 6, 3, 4)
    assert node.cycle.interior == frozenset({5})
    assert caught_vertices(decomposition) == frozenset({0, 1, 3, 4, 6})
    assert check_laminar(decomposition)
    assert check_maximal(decomposition)
    assert caught_bound_holds(decomposition)
    assert uncaught_five_cycle_vertices(decomposition) == frozenset()


def test_piece_vertices(chain13):
    decomposition = build_decomposition(chain13)
    assert decomposition.piece_vertices(0) == frozenset({0, 1, 2, 3, 4, 6})
    assert decomposition.piece_vertices(1) == frozenset({0, 1, 3, 4, 5, 6})
    piece, vertex_map = node_piece_graph(decomposition, 1)
    assert piece.vertex_count == 6
    assert set(vertex_map) == {0, 1, 3, 4, 5, 6}


def test_classify_pieces(chain13):
    pieces = classify_all(build_decomposition(chain13))
    assert [p.richness for p in pieces] == [Richness.RICH, Richness.POOR]


def test_find_suburbs(chain13):
    decomposition = build_decomposition(chain13)
    suburbs = find_suburbs(decomposition, 1)
    assert [s.nodes for s in suburbs] == [(1,)]
    assert not suburbs[0].upwardly_mobile
    assert find_suburbs(decomposition, 2) == []
    with pytest.raises(HypothesisViolation) as exc:
        find_suburbs(decomposition, 0)
    assert exc.value.code == ErrorCode.BAD_PARAMS


def test_suburb_pair_needs_full_length(chain13):
    decomposition = build_decomposition(chain13)
    suburb = find_suburbs(decomposition, 1)[0]
    with pytest.raises(HypothesisViolation):
        suburb_rearrangeable_pair(decomposition, suburb)


def test_decomposition_rejects_triangle():
    with pytest.raises(HypothesisViolation):
        build_decomposition(PlaneGraph(3, [[1, 2], [2, 0], [0, 1]]))


def test_cycle_has_trivial_decomposition(c5):
    decomposition = build_decomposition(c5)
    assert len(decomposition.nodes) == 1
    assert caught_vertices(decomposition) == frozenset()


def test_rearrange_config_one():
    graph = suburb_chain([1, 1])
    pair = find_rearrangeable_pair(graph, chain_boundary(graph, [1, 1]))
    assert pair.config_kind == ConfigKind.I
    assert pair.apex == 5
    assert (pair.x, pair.y) == (1, 4)
    assert pair.u in (0, 6)

    phi = find_coloring(graph, {1: 1, 4: 1, 0: 2, 6: 2, 5: 3})
    result = rearrange(graph, phi, pair)
    assert result[5] == 2
    assert is_proper(graph, result)
    assert _bichromatic(pair.shared_face, result)
    assert all(result[v] == phi[v] for v in graph.vertices() if v != 5)


def test_rearrange_requires_equal_colors_on_pair():
    graph = suburb_chain([1, 1])
    pair = find_rearrangeable_pair(graph, chain_boundary(graph, [1, 1]))
    phi = find_coloring(graph, {1: 1, 4: 2})
    with pytest.raises(HypothesisViolation) as exc:
        rearrange(graph, phi, pair)
    assert exc.value.code == ErrorCode.PRECOLOR_MISMATCH


def test_rearrange_config_two(cube):
    pair = find_rearrangeable_pair(cube, [])
    assert pair.config_kind == ConfigKind.II
    assert (pair.apex, pair.partner) == (0, 1)
    assert (pair.x, pair.y, pair.u) == (3, 4, 7)

    phi = Coloring(assignment={0: 3, 1: 2, 2: 3, 3: 1, 4: 1, 5: 3, 6: 1, 7: 2}, total=True)
    result = rearrange(cube, phi, pair)
    assert is_proper(cube, result)
    assert _bichromatic(pair.shared_face, result)
    changed = {v for v in cube.vertices() if result[v] != phi[v]}
    assert changed == {0, 1}


def test_no_configuration_when_everything_is_fixed(c5):
    with pytest.raises(HypothesisViolation) as exc:
        find_rearrangeable_pair(c5, range(5))
    assert exc.value.code == ErrorCode.NO_CONFIGURATION
    with pytest.raises(StatementViolation):
        find_rearrangeable_pair(c5, range(5), validated=True)


@pytest.fixture
def rhombic():
    graph = rhombic_dodecahedron()
    return graph, find_rearrangeable_pair(graph, [])


def test_config_three_is_found(rhombic):
    graph, pair = rhombic
    assert pair.config_kind == ConfigKind.III
    assert graph.degree(pair.hub) == 4
    assert graph.degree(pair.apex) == graph.degree(pair.partner) == 3
    assert pair.hub in graph.neighbors(pair.apex)
    assert pair.hub in graph.neighbors(pair.partner)
    assert pair.hub not in pair.shared_face.vertex_set


def test_config_three_hub_differs_from_u(rhombic):
    graph, pair = rhombic
    phi = find_coloring(graph, {pair.x: 1, pair.y: 1, pair.u: 2, pair.hub: 1, pair.apex: 3})
    result = rearrange(graph, phi, pair)
    assert is_proper(graph, result)
    assert _bichromatic(pair.shared_face, result)
    changed = {v for v in graph.vertices() if result[v] != phi[v]}
    assert changed == {pair.apex}
    assert result[pair.apex] == 2


def test_config_three_hub_matches_u(rhombic):
    graph, pair = rhombic
    phi = find_coloring(graph, {pair.x: 1, pair.y: 1, pair.u: 2, pair.hub: 2, pair.partner: 1})
    result = rearrange(graph, phi, pair)
    assert is_proper(graph, result)
    assert _bichromatic(pair.shared_face, result)
    changed = {v for v in graph.vertices() if result[v] != phi[v]}
    assert changed == {pair.partner, pair.hub, pair.apex}
    assert (result[pair.partner], result[pair.hub], result[pair.apex]) == (3, 1, 2)
