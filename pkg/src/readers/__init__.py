# 实例读取器模块
"""包含各种交换格式的读取器"""

from .base import Instance, InstanceReader
from .json_doc import JsonReader, emit_json, parse_json
from .planar_code import PlanarCodeReader, emit_planar_code, parse_planar_code

__all__ = [
    "Instance",
    "InstanceReader",
    "JsonReader",
    "PlanarCodeReader",
    "emit_json",
    "emit_planar_code",
    "parse_json",
    "parse_planar_code",
]
