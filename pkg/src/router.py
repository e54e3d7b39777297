# 实例路由器
"""根据文件头选择合适的实例读取器"""

import logging
from pathlib import Path
from typing import Optional, Union

from .readers.base import Instance, InstanceReader
from .utils import ErrorCode, FormatError


logger = logging.getLogger(__name__)


class InstanceRouter:
    """实例读取路由器

    按注册顺序询问各读取器是否识别文件头，交给第一个识别的读取器解析。
    """

    def __init__(self) -> None:
        self._readers: list[InstanceReader] = []

    def register_reader(self, reader: InstanceReader) -> None:
        self._readers.append(reader)

    def get_reader(self, data: bytes) -> InstanceReader:
        """根据内容选择读取器

        Raises:
            FormatError: 没有读取器识别该文件头（BAD_HEADER）
        """
        for reader in self._readers:
            if reader.sniff(data):
                return reader
        raise FormatError(
            ErrorCode.BAD_HEADER,
            f"无法识别的输入格式。支持的格式: {', '.join(self.format_names)}"
        )

    def reader_for(self, format_name: str) -> InstanceReader:
        for reader in self._readers:
            if reader.format_name == format_name:
                return reader
        raise FormatError(ErrorCode.BAD_PARAMS, f"未知格式 '{format_name}'")

    def parse(self, data: bytes) -> list[Instance]:
        reader = self.get_reader(data)
        logger.debug("使用 %s 读取器", reader.format_name)
        return reader.read(data)

    def load(self, path: Union[str, Path]) -> list[Instance]:
        """读取文件并解析

        Raises:
            FormatError: 文件无法读取（IO_ERROR）或格式错误
        """
        try:
            data = Path(path).read_bytes()
        except OSError as e:
            raise FormatError(ErrorCode.IO_ERROR, f"无法读取文件 '{path}': {e.strerror or e}") from e
        return self.parse(data)

    @property
    def format_names(self) -> list[str]:
        return [reader.format_name for reader in self._readers]


# 全局路由器实例（延迟初始化）
_router: Optional[InstanceRouter] = None


def get_router() -> InstanceRouter:
    """获取全局路由器实例"""
    global _router
    if _router is None:
        _router = InstanceRouter()
        # 延迟导入读取器以避免循环导入
        from .readers.planar_code import PlanarCodeReader
        from .readers.json_doc import JsonReader

        _router.register_reader(PlanarCodeReader())
        _router.register_reader(JsonReader())

    return _router
