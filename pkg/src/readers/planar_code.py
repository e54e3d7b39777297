# planar_code 读取器
"""plantri 的 planar_code 二进制格式：解析与规范输出

每个图先写顶点数 n，再按顶点 1..n 依次写出顺时针邻居（1 起编号），以 0 结尾。
n ≤ 255 时每项占一个字节；否则图以一个 0 字节开头，之后每项为两字节字
（默认头与 le 头为小端，be 头为大端）。
"""

import logging
import struct
from typing import Iterable, Optional

from ..plane_graph import PlaneGraph
from ..utils import (
    ErrorCode,
    FormatError,
    HypothesisViolation,
    PLANAR_CODE_HEADER,
    PLANAR_CODE_HEADER_BE,
    PLANAR_CODE_HEADER_LE,
)
from .base import Instance, InstanceReader


logger = logging.getLogger(__name__)

_HEADERS = (
    (PLANAR_CODE_HEADER_LE, "<"),
    (PLANAR_CODE_HEADER_BE, ">"),
    (PLANAR_CODE_HEADER, "<"),
)


class _Cursor:
    """按字节或两字节字读取，越界时报 TRUNCATED"""

    def __init__(self, data: bytes, offset: int, endian: str) -> None:
        self.data = data
        self.offset = offset
        self.endian = endian

    @property
    def exhausted(self) -> bool:
        return self.offset >= len(self.data)

    def byte(self) -> int:
        if self.offset >= len(self.data):
            raise FormatError(ErrorCode.TRUNCATED, f"第 {self.offset} 字节处数据截断")
        value = self.data[self.offset]
        self.offset += 1
        return value

    def word(self) -> int:
        if self.offset + 2 > len(self.data):
            raise FormatError(ErrorCode.TRUNCATED, f"第 {self.offset} 字节处数据截断")
        (value,) = struct.unpack_from(f"{self.endian}H", self.data, self.offset)
        self.offset += 2
        return value


def _split_header(data: bytes) -> tuple[int, str]:
    for header, endian in _HEADERS:
        if data.startswith(header):
            return len(header), endian
    raise FormatError(ErrorCode.BAD_HEADER, "缺少 >>planar_code<< 文件头")


def parse_planar_code(data: bytes) -> list[PlaneGraph]:
    """解析 planar_code 字节流

    Returns:
        list[PlaneGraph]: 各图按文件顺序排列，外面为顶点 1 第一条有向边所在的面

    Raises:
        FormatError: BAD_HEADER、TRUNCATED、ID_OUT_OF_RANGE 或旋转系统不合法
    """
    offset, endian = _split_header(data)
    cursor = _Cursor(data, offset, endian)
    graphs: list[PlaneGraph] = []
    while not cursor.exhausted:
        n = cursor.byte()
        read = cursor.byte
        if n == 0:
            read = cursor.word
            n = read()
        rotations: list[list[int]] = []
        for v in range(n):
            rotation: list[int] = []
            while True:
                w = read()
                if w == 0:
                    break
                if w > n:
                    raise FormatError(
                        ErrorCode.ID_OUT_OF_RANGE,
                        f"第 {len(graphs) + 1} 个图的顶点 {v + 1} 的邻居 {w} 超出 1-{n}"
                    )
                rotation.append(w - 1)
            rotations.append(rotation)
        try:
            graphs.append(PlaneGraph(n, rotations))
        except HypothesisViolation as e:
            raise FormatError(e.code, f"第 {len(graphs) + 1} 个图: {e}") from e
    logger.debug("planar_code: %d 个图", len(graphs))
    return graphs


def emit_planar_code(graphs: Iterable[PlaneGraph], endian: Optional[str] = None) -> bytes:
    """规范输出；endian 为 None 时使用默认文件头（大图的两字节字为小端）"""
    if endian == ">":
        out = bytearray(PLANAR_CODE_HEADER_BE)
    elif endian == "<":
        out = bytearray(PLANAR_CODE_HEADER_LE)
    else:
        out = bytearray(PLANAR_CODE_HEADER)
    order = endian or "<"
    for graph in graphs:
        n = graph.vertex_count
        if n <= 255:
            out.append(n)
            for rotation in graph.rotations:
                out.extend(w + 1 for w in rotation)
                out.append(0)
        else:
            out.append(0)
            words = [n]
            for rotation in graph.rotations:
                words.extend(w + 1 for w in rotation)
                words.append(0)
            out.extend(struct.pack(f"{order}{len(words)}H", *words))
    return bytes(out)


class PlanarCodeReader(InstanceReader):
    """planar_code 读取器"""

    def sniff(self, data: bytes) -> bool:
        return data.startswith(b">>planar_code")

    def read(self, data: bytes) -> list[Instance]:
        return [Instance(graph=graph) for graph in parse_planar_code(data)]

    def emit(self, instances: list[Instance]) -> bytes:
        return emit_planar_code(instance.graph for instance in instances)

    @property
    def format_name(self) -> str:
        return "planar_code"
