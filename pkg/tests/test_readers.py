# 交换格式测试
"""planar_code 与 JSON 文档的解析、输出和文件头识别"""

import json
import struct
from fractions import Fraction

import pytest

from src.cogs import obstruction_cog
from src.generators import FORCING_PSI, cog_instance
from src.models import ObstructionKind
from src.plane_graph import cycle_graph, path_graph
from src.readers.base import Instance
from src.readers.json_doc import emit_json, parse_json
from src.readers.planar_code import emit_planar_code, parse_planar_code
from src.request_graph import RequestGraph
from src.router import get_router
from src.utils import (
    PLANAR_CODE_HEADER,
    PLANAR_CODE_HEADER_BE,
    ErrorCode,
    FormatError,
)


def test_planar_code_small_graph_bytes():
    assert emit_planar_code([path_graph(2)]) == PLANAR_CODE_HEADER + bytes([2, 2, 0, 1, 0])


def test_planar_code_round_trip(cube):
    graphs = [cycle_graph(5), cube, path_graph(1)]
    parsed = parse_planar_code(emit_planar_code(graphs))
    assert [g.rotations for g in parsed] == [g.rotations for g in graphs]


def test_planar_code_large_graph_uses_words():
    graph = cycle_graph(300)
    data = emit_planar_code([graph])
    assert data.startswith(PLANAR_CODE_HEADER + b"\x00" + struct.pack("<H", 300))
    assert parse_planar_code(data) == [graph]

    big_endian = emit_planar_code([graph], ">")
    assert big_endian.startswith(PLANAR_CODE_HEADER_BE + b"\x00" + struct.pack(">H", 300))
    assert parse_planar_code(big_endian) == [graph]


@pytest.mark.parametrize(
    "payload, code",
    [
        (b">>graph6<<", ErrorCode.BAD_HEADER),
        (PLANAR_CODE_HEADER + bytes([3, 2]), ErrorCode.TRUNCATED),
        (PLANAR_CODE_HEADER + bytes([2, 5, 0, 1, 0]), ErrorCode.ID_OUT_OF_RANGE),
        (PLANAR_CODE_HEADER + bytes([2, 2, 0, 0]), ErrorCode.ASYMMETRIC_ROTATION),
    ],
)
def test_planar_code_errors(payload, code):
    with pytest.raises(FormatError) as exc:
        parse_planar_code(payload)
    assert exc.value.code == code


def test_json_single_instance_is_an_object():
    text = emit_json(Instance(graph=cycle_graph(5)))
    assert text.endswith("\n")
    raw = json.loads(text)
    assert isinstance(raw, dict)
    assert raw["vertices"] == 5
    assert raw["orientation"] == "clockwise"
    assert parse_json(text)[0].graph == cycle_graph(5)


def test_json_list_is_an_array(cube):
    text = emit_json([Instance(graph=cube), Instance(graph=path_graph(3))])
    assert isinstance(json.loads(text), list)
    assert [i.graph for i in parse_json(text)] == [cube, path_graph(3)]


def test_json_keeps_exact_weights():
    rg = RequestGraph.create(path_graph(3), r_eq=[1], weights={1: Fraction(3, 2)})
    instance = Instance(graph=rg.graph, requests_eq=(1,), weights=dict(rg.weights))
    raw = json.loads(emit_json(instance))
    assert raw["weights"] == [{"vertex": 1, "num": 3, "den": 2}]
    parsed = parse_json(emit_json(instance))[0]
    assert parsed.request_graph().weights == {1: Fraction(3, 2)}


def test_json_keeps_cog_roles():
    kind = ObstructionKind.A
    instance = cog_instance(obstruction_cog(kind), "figure3a", FORCING_PSI[kind])
    parsed = parse_json(emit_json(instance))[0]
    assert parsed.cog_roles == instance.cog_roles
    assert parsed.psi().assignment == {0: 1, 1: 2}
    assert parsed.cog().path == (0, 1)


@pytest.mark.parametrize(
    "text",
    [
        '{"vertices": 2, "rotations": [[1]]}',
        '{"vertices": 1, "rotations": [[]], "colour": 3}',
        "not json at all",
        '{"format_version": 2, "vertices": 1, "rotations": [[]]}',
        '{"vertices": 2, "rotations": [[1], [0]], "weights": [{"vertex": 0, "num": 1, "den": 0}]}',
    ],
)
def test_json_schema_violations(text):
    with pytest.raises(FormatError) as exc:
        parse_json(text)
    assert exc.value.code == ErrorCode.SCHEMA_VIOLATION


def test_json_invalid_rotation_is_a_format_error():
    with pytest.raises(FormatError) as exc:
        parse_json('{"vertices": 2, "rotations": [[1], []]}')
    assert exc.value.code == ErrorCode.ASYMMETRIC_ROTATION


def test_router_sniffs_headers(tmp_path):
    router = get_router()
    assert router.parse(emit_planar_code([cycle_graph(4)]))[0].graph == cycle_graph(4)
    path = tmp_path / "c5.json"
    path.write_text(emit_json(Instance(graph=cycle_graph(5))), encoding="utf-8")
    assert router.load(path)[0].graph == cycle_graph(5)
    assert set(router.format_names) == {"planar_code", "json"}


def test_router_errors(tmp_path):
    router = get_router()
    with pytest.raises(FormatError) as exc:
        router.parse(b"hello")
    assert exc.value.code == ErrorCode.BAD_HEADER
    with pytest.raises(FormatError) as exc:
        router.load(tmp_path / "missing.pc")
    assert exc.value.code == ErrorCode.IO_ERROR
