# JSON 实例读取器
"""JSON 实例文档：模式校验、解析与规范输出（固定键顺序，权重为精确的分子/分母）"""

import json
import logging
from typing import Any, Union

from pydantic import ValidationError

from ..models import InstanceDocument, WeightEntry
from ..plane_graph import PlaneGraph
from ..utils import ErrorCode, FormatError, HypothesisViolation
from .base import Instance, InstanceReader


logger = logging.getLogger(__name__)


def document_to_instance(document: InstanceDocument) -> Instance:
    """由已校验的文档构造实例

    Raises:
        FormatError: 旋转系统或外面不合法
    """
    try:
        graph = PlaneGraph(document.vertices, document.rotations, document.outer_face)
    except HypothesisViolation as e:
        raise FormatError(e.code, str(e)) from e
    return Instance(
        graph=graph,
        requests_eq=tuple(document.requests_eq),
        requests_neq=tuple(document.requests_neq),
        weights=document.weight_map(),
        cog_roles=document.cog,
        metadata=dict(document.metadata),
    )


def instance_to_document(instance: Instance) -> InstanceDocument:
    graph = instance.graph
    return InstanceDocument(
        vertices=graph.vertex_count,
        rotations=[list(r) for r in graph.rotations],
        outer_face=graph.raw_outer_index(),
        requests_eq=sorted(instance.requests_eq),
        requests_neq=sorted(instance.requests_neq),
        weights=[
            WeightEntry(vertex=v, num=w.numerator, den=w.denominator)
            for v, w in sorted(instance.weights.items())
        ],
        cog=instance.cog_roles,
        metadata=dict(sorted(instance.metadata.items())),
    )


def _parse_document(raw: Any) -> InstanceDocument:
    try:
        return InstanceDocument.model_validate(raw)
    except ValidationError as e:
        raise FormatError(ErrorCode.SCHEMA_VIOLATION, f"文档不符合格式定义: {e.errors()[0]['msg']}") from e


def parse_json(text: Union[str, bytes]) -> list[Instance]:
    """解析单个文档或文档数组

    Raises:
        FormatError: 不是合法 JSON 或不符合模式（SCHEMA_VIOLATION）
    """
    try:
        raw = json.loads(text)
    except json.JSONDecodeError as e:
        raise FormatError(ErrorCode.SCHEMA_VIOLATION, f"不是合法的 JSON: {e}") from e
    items = raw if isinstance(raw, list) else [raw]
    instances = [document_to_instance(_parse_document(item)) for item in items]
    logger.debug("JSON: %d 个实例", len(instances))
    return instances


def emit_json(instance: Union[Instance, list[Instance]]) -> str:
    """规范输出：单个实例输出为对象，多个实例输出为数组"""
    if isinstance(instance, list):
        payload: Any = [instance_to_document(item).model_dump(mode="json") for item in instance]
    else:
        payload = instance_to_document(instance).model_dump(mode="json")
    return json.dumps(payload, ensure_ascii=False, indent=2) + "\n"


class JsonReader(InstanceReader):
    """JSON 文档读取器"""

    def sniff(self, data: bytes) -> bool:
        head = data.lstrip()[:1]
        return head in (b"{", b"[")

    def read(self, data: bytes) -> list[Instance]:
        return parse_json(data)

    def emit(self, instances: list[Instance]) -> bytes:
        payload = instances[0] if len(instances) == 1 else instances
        return emit_json(payload).encode("utf-8")

    @property
    def format_name(self) -> str:
        return "json"
