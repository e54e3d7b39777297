# Pydantic 数据模型
"""定义与具体图对象无关的输入输出数据模型"""

from enum import Enum
from fractions import Fraction
from typing import Annotated, Any, Literal, Optional

from pydantic import (
    BaseModel,
    ConfigDict,
    Field,
    PlainSerializer,
    field_validator,
    model_validator,
)

from .utils import COLORS, FORMAT_VERSION, format_fraction


# 精确有理数，JSON 中序列化为 "p/q"
Rational = Annotated[
    Fraction,
    PlainSerializer(format_fraction, return_type=str, when_used="json"),
]


class ResponseFormat(str, Enum):
    """响应格式枚举"""
    JSON = "json"
    CSV = "csv"


class Richness(str, Enum):
    """分解树节点的丰富度"""
    RICH = "RICH"
    POOR = "POOR"


class ConfigKind(str, Enum):
    """可重排配置的类型"""
    I = "I"
    II = "II"
    III = "III"


class StatementId(str, Enum):
    """列表着色定理编号"""
    THM_3CHOOS = "THM_3CHOOS"
    THM_DVOKAW = "THM_DVOKAW"
    LEM_SAME = "LEM_SAME"
    LEM_DVOKAW_STRONG = "LEM_DVOKAW_STRONG"
    THM_CYCEX = "THM_CYCEX"


class ObstructionKind(str, Enum):
    """阻碍齿轮的四种模式"""
    A = "A"
    B = "B"
    C = "C"
    D = "D"


# ---------------------------------------------------------------- 平面图


class Face(BaseModel):
    """面模型：边界闭合途径（外面在多连通分支时为多条途径的拼接）"""
    model_config = ConfigDict(frozen=True)

    id: int
    boundary: tuple[int, ...]
    length: int
    darts: tuple[tuple[int, int], ...]

    @property
    def vertex_set(self) -> frozenset[int]:
        return frozenset(self.boundary)

    def is_cycle(self) -> bool:
        """边界是否为简单圈"""
        return self.length >= 3 and len(set(self.boundary)) == self.length


class CycleRef(BaseModel):
    """圈引用：顶点序列及其相对外面的内部区域"""
    model_config = ConfigDict(frozen=True)

    vertices: tuple[int, ...]
    separating: bool
    interior: frozenset[int] = frozenset()
    exterior: frozenset[int] = frozenset()
    interior_faces: frozenset[int] = frozenset()
    # 沿 vertices 顺序行走时内部位于左侧还是右侧
    interior_side: Literal["left", "right"] = "left"

    @property
    def length(self) -> int:
        return len(self.vertices)


# ---------------------------------------------------------------- 着色


class Coloring(BaseModel):
    """3-着色（完全或部分）"""
    model_config = ConfigDict(frozen=True)

    assignment: dict[int, int] = Field(
        default_factory=dict,
        description="顶点编号 -> 颜色 {1,2,3}"
    )
    total: bool = Field(
        default=False,
        description="是否为全图着色"
    )

    @field_validator("assignment")
    @classmethod
    def _colors_in_range(cls, value: dict[int, int]) -> dict[int, int]:
        for v, c in value.items():
            if c not in COLORS:
                raise ValueError(f"顶点 {v} 的颜色 {c} 不在 {{1,2,3}} 中")
        return value

    def __getitem__(self, v: int) -> int:
        return self.assignment[v]

    def get(self, v: int) -> Optional[int]:
        return self.assignment.get(v)

    def as_tuple(self, vertex_count: int) -> tuple[int, ...]:
        return tuple(self.assignment.get(v, 0) for v in range(vertex_count))


class BichromaticReport(BaseModel):
    """双色面统计"""
    model_config = ConfigDict(arbitrary_types_allowed=True)

    q: int = Field(description="双色 4-面个数")
    four_faces: int = Field(description="4-面总数")
    s_plus: int = Field(description="Σ_{i≥5}(i−4)s_i")
    c_pairs: dict[str, int] = Field(description="各颜色对诱导子图的连通分支数, 键为 '12','13','23'")
    bound_exponent: Rational = Field(description="(s⁺+8+q)/6")

    @property
    def exponent_numerator(self) -> int:
        return self.s_plus + 8 + self.q

    @property
    def max_component_count(self) -> int:
        return max(self.c_pairs.values()) if self.c_pairs else 0


class ManyColorReport(BaseModel):
    """多着色下界验证结果"""
    bound: float
    count: int
    ok: bool
    exponent_numerator: int
    max_component_count: int
    components_ok: bool


class ExtensionReport(BaseModel):
    """圈预着色的扩展计数"""
    count: int
    witness: Optional[int] = None


# ---------------------------------------------------------------- 请求


class SatisfactionResult(BaseModel):
    """请求满足情况"""
    model_config = ConfigDict(arbitrary_types_allowed=True)

    coloring: Coloring
    satisfied_weight: Rational
    total_weight: Rational
    fraction: Rational


class CloneRow(BaseModel):
    """克隆爆炸中每个基础着色的扩展计数"""
    base_coloring: Coloring
    satisfied: int
    expected: int
    actual: int

    @property
    def ok(self) -> bool:
        return self.expected == self.actual


# ---------------------------------------------------------------- 分解


class Suburb(BaseModel):
    """k-郊区：分解树中一条全为贫节点的祖先到后代路径"""
    model_config = ConfigDict(frozen=True)

    nodes: tuple[int, ...]
    k: int
    upwardly_mobile: bool


class RearrangeablePair(BaseModel):
    """可重排顶点对及其配置

    apex 为 4-面上同时邻接 x 与 y、需要重新着色的顶点；
    partner 为 II 型的 z′ 或 III 型的 z₂；hub 为 III 型的度 4 顶点 z。
    """
    model_config = ConfigDict(frozen=True)

    x: int
    y: int
    u: int
    apex: int
    partner: Optional[int] = None
    hub: Optional[int] = None
    shared_face: Face
    config_kind: ConfigKind


# ---------------------------------------------------------------- 列表着色


class ListAssignment(BaseModel):
    """列表分配"""
    model_config = ConfigDict(frozen=True)

    lists: dict[int, frozenset[int]]

    @field_validator("lists")
    @classmethod
    def _lists_valid(cls, value: dict[int, frozenset[int]]) -> dict[int, frozenset[int]]:
        for v, colors in value.items():
            if not colors:
                raise ValueError(f"顶点 {v} 的列表为空")
            if not set(colors) <= set(COLORS):
                raise ValueError(f"顶点 {v} 的列表 {sorted(colors)} 不是 {{1,2,3}} 的子集")
        return value

    def __getitem__(self, v: int) -> frozenset[int]:
        return self.lists[v]

    def size(self, v: int) -> int:
        return len(self.lists[v])


class ConditionResult(BaseModel):
    """单个前提条件的检查结果"""
    name: str
    holds: bool
    witness: Optional[list[int]] = None
    detail: str = ""


class HypothesisReport(BaseModel):
    """列表着色定理前提检查报告"""
    statement: StatementId
    conditions: list[ConditionResult]
    all_hold: bool
    solver_succeeded: Optional[bool] = None
    coloring: Optional[Coloring] = None
    middle_vertex: Optional[int] = Field(
        default=None,
        description="P 的中间顶点；|V(P)| ≤ 2 时不存在"
    )

    def condition(self, name: str) -> ConditionResult:
        for item in self.conditions:
            if item.name == name:
                return item
        raise KeyError(name)


# ---------------------------------------------------------------- 齿轮


class ObstructionMatch(BaseModel):
    """阻碍模式在齿轮中的一次嵌入"""
    model_config = ConfigDict(frozen=True)

    kind: ObstructionKind
    vertex_map: dict[str, int] = Field(description="模式顶点标签 -> 齿轮顶点")


class CogReport(BaseModel):
    """齿轮合法性检查报告"""
    checks: dict[str, bool]
    witnesses: dict[str, list[int]] = Field(default_factory=dict)

    @property
    def valid(self) -> bool:
        return all(self.checks.values())


class AlphaReport(BaseModel):
    """α 引理验证报告"""
    model_config = ConfigDict(arbitrary_types_allowed=True)

    alpha1_hypotheses: dict[str, bool]
    alpha0_hypotheses: dict[str, bool]
    witnesses: dict[str, list[int]] = Field(default_factory=dict)
    fraction: Rational
    alpha1_applies: bool
    alpha0_applies: bool
    ok: bool


class DemandClassification(BaseModel):
    """需求顶点的诊断分类（不附带任何保证）"""
    t1: list[int] = Field(default_factory=list, description="G[S∪T] 中长为 1 的路分支里的需求")
    t2: list[int] = Field(default_factory=list, description="G[S∪T] 中长为 2 的路分支里的需求")
    other: list[int] = Field(default_factory=list)
    peripheral: dict[int, int] = Field(default_factory=dict, description="外围需求 -> 连接顶点")


# ---------------------------------------------------------------- 文档


class WeightEntry(BaseModel):
    """权重条目（分子/分母）"""
    model_config = ConfigDict(extra="forbid")

    vertex: int
    num: int
    den: int = 1

    @field_validator("den")
    @classmethod
    def _positive_den(cls, value: int) -> int:
        if value <= 0:
            raise ValueError("分母必须为正")
        return value

    @property
    def value(self) -> Fraction:
        return Fraction(self.num, self.den)


class CogRoles(BaseModel):
    """齿轮角色"""
    model_config = ConfigDict(extra="forbid")

    path: list[int] = Field(default_factory=list, description="预着色路 P（按顺序）")
    s: list[int] = Field(default_factory=list, description="S 顶点")
    t: list[int] = Field(default_factory=list, description="T（需求）顶点")
    precoloring: list[int] = Field(default_factory=list, description="P 上的颜色 ψ")


class InstanceDocument(BaseModel):
    """实例文档（JSON 交换格式）"""
    model_config = ConfigDict(extra="forbid")

    format_version: int = FORMAT_VERSION
    vertices: int = Field(ge=0)
    rotations: list[list[int]]
    outer_face: int = 0
    orientation: Literal["clockwise"] = "clockwise"
    requests_eq: list[int] = Field(default_factory=list)
    requests_neq: list[int] = Field(default_factory=list)
    weights: list[WeightEntry] = Field(default_factory=list)
    cog: Optional[CogRoles] = None
    metadata: dict[str, Any] = Field(default_factory=dict)

    @field_validator("format_version")
    @classmethod
    def _known_version(cls, value: int) -> int:
        if value != FORMAT_VERSION:
            raise ValueError(f"不支持的 format_version={value}，当前版本为 {FORMAT_VERSION}")
        return value

    @model_validator(mode="after")
    def _rotation_count(self) -> "InstanceDocument":
        if len(self.rotations) != self.vertices:
            raise ValueError(
                f"rotations 长度 {len(self.rotations)} 与 vertices={self.vertices} 不一致"
            )
        return self

    def weight_map(self) -> dict[int, Fraction]:
        return {entry.vertex: entry.value for entry in self.weights}


class RunOptions(BaseModel):
    """命令行通用参数"""
    input: Optional[str] = Field(default=None, description="输入文件（planar_code 或 JSON，按文件头识别）")
    output: ResponseFormat = Field(default=ResponseFormat.JSON, description="输出格式: json 或 csv")
    jobs: int = Field(default=1, ge=1, description="并行进程数")


class VerifyInput(BaseModel):
    """目录验证参数"""
    check_id: str = Field(..., description="检查编号")
    input: Optional[str] = Field(default=None, description="外部目录文件（planar_code 或 JSON）；缺省时使用内部穷举目录")
    max_n: int = Field(default=7, ge=1, le=12, description="目录顶点数上限")
    seed: int = Field(default=0, description="随机种子")
    trials: int = Field(default=50, ge=1, description="随机实例个数")
    jobs: int = Field(default=1, ge=1)


class VerifyReport(BaseModel):
    """目录验证结果"""
    check: str
    instances: int
    violations: int
    details: list[str] = Field(default_factory=list)

    @property
    def ok(self) -> bool:
        return self.violations == 0


class CommandResult(BaseModel):
    """命令执行结果：每个实例一条记录"""
    command: str
    records: list[dict[str, Any]] = Field(default_factory=list)
    summary: dict[str, Any] = Field(default_factory=dict)

