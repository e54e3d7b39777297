# 实例读取器基类
"""定义实例读取器的抽象基类，以及读取器产出的实例对象"""

from abc import ABC, abstractmethod
from fractions import Fraction
from typing import Any, Optional

from pydantic import BaseModel, ConfigDict, Field

from ..cogs import Cog
from ..models import CogRoles, Coloring
from ..plane_graph import PlaneGraph
from ..request_graph import RequestGraph


class Instance(BaseModel):
    """一个输入实例：嵌入的平面图以及可选的请求与齿轮角色"""
    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    graph: PlaneGraph
    requests_eq: tuple[int, ...] = ()
    requests_neq: tuple[int, ...] = ()
    weights: dict[int, Fraction] = Field(default_factory=dict)
    cog_roles: Optional[CogRoles] = None
    metadata: dict[str, Any] = Field(default_factory=dict)

    @property
    def has_requests(self) -> bool:
        return bool(self.requests_eq or self.requests_neq)

    def request_graph(self) -> RequestGraph:
        return RequestGraph.create(self.graph, self.requests_eq, self.requests_neq, self.weights)

    def cog(self) -> Cog:
        roles = self.cog_roles or CogRoles()
        return Cog.create(self.graph, roles.path, roles.s, roles.t, self.weights)

    def psi(self) -> Optional[Coloring]:
        """齿轮角色中记录的 P 上的预着色"""
        if self.cog_roles is None or not self.cog_roles.precoloring:
            return None
        return Coloring(assignment=dict(zip(self.cog_roles.path, self.cog_roles.precoloring)))


class InstanceReader(ABC):
    """实例读取器抽象基类

    每种交换格式（planar_code、JSON）都继承此类，实现识别、解析与规范输出。
    """

    @abstractmethod
    def sniff(self, data: bytes) -> bool:
        """根据文件头判断是否为本格式

        Args:
            data: 文件内容

        Returns:
            bool: 是否由本读取器处理
        """
        pass

    @abstractmethod
    def read(self, data: bytes) -> list[Instance]:
        """解析文件内容

        Raises:
            FormatError: 文件头错误、内容截断、编号越界或不符合模式
        """
        pass

    @abstractmethod
    def emit(self, instances: list[Instance]) -> bytes:
        """规范输出（再次解析后得到相同的实例）"""
        pass

    @property
    @abstractmethod
    def format_name(self) -> str:
        pass
