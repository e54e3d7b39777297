# 请求图
"""请求图模型、满足比例、两种请求类型互换的小工具、克隆与细分构造"""

import logging
from fractions import Fraction
from typing import Iterable, Mapping, Optional, Sequence

import networkx as nx
from pydantic import BaseModel, ConfigDict, Field

from .coloring import _as_map, count_colorings, enumerate_colorings, is_proper
from .models import CloneRow, Coloring, SatisfactionResult
from .plane_graph import Dart, PlaneGraph
from .utils import (
    COLORS,
    ErrorCode,
    HypothesisViolation,
    StatementViolation,
    lcm_of_denominators,
)


logger = logging.getLogger(__name__)


class RequestGraph(BaseModel):
    """请求图 (G, R₌, R≠, w)

    请使用 RequestGraph.create 构造，它会检查请求顶点的度、独立性与权重。
    """
    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    graph: PlaneGraph
    r_eq: frozenset[int] = Field(default_factory=frozenset, description="相等请求")
    r_neq: frozenset[int] = Field(default_factory=frozenset, description="不等请求")
    weights: dict[int, Fraction] = Field(default_factory=dict, description="请求 -> 正有理权重")

    @classmethod
    def create(
        cls,
        graph: PlaneGraph,
        r_eq: Iterable[int] = (),
        r_neq: Iterable[int] = (),
        weights: Optional[Mapping[int, Fraction]] = None,
    ) -> "RequestGraph":
        """构造并验证请求图

        Args:
            graph: 平面图
            r_eq: 相等请求顶点
            r_neq: 不等请求顶点
            weights: 请求权重，缺省为 1

        Raises:
            HypothesisViolation: 请求集相交、请求度不为 2、请求相邻或权重非正
        """
        eq = frozenset(r_eq)
        neq = frozenset(r_neq)
        if eq & neq:
            raise HypothesisViolation(ErrorCode.HYPOTHESIS_VIOLATION, f"顶点 {sorted(eq & neq)} 同时属于 R₌ 与 R≠")
        requests = eq | neq
        for r in sorted(requests):
            if r < 0 or r >= graph.vertex_count:
                raise HypothesisViolation(ErrorCode.ID_OUT_OF_RANGE, f"请求顶点 {r} 不存在")
            if graph.degree(r) != 2:
                raise HypothesisViolation(
                    ErrorCode.HYPOTHESIS_VIOLATION, f"请求顶点 {r} 的度为 {graph.degree(r)}，应为 2"
                )
            if graph.adjacency(r) & requests:
                raise HypothesisViolation(ErrorCode.HYPOTHESIS_VIOLATION, f"请求顶点 {r} 与另一个请求相邻")

        resolved: dict[int, Fraction] = {}
        given = dict(weights or {})
        for v in given:
            if v not in requests:
                raise HypothesisViolation(ErrorCode.HYPOTHESIS_VIOLATION, f"顶点 {v} 有权重但不是请求")
        for r in requests:
            value = Fraction(given.get(r, 1))
            if value <= 0:
                raise HypothesisViolation(ErrorCode.HYPOTHESIS_VIOLATION, f"请求 {r} 的权重 {value} 不是正数")
            resolved[r] = value
        return cls(graph=graph, r_eq=eq, r_neq=neq, weights=resolved)

    @property
    def requests(self) -> frozenset[int]:
        return self.r_eq | self.r_neq

    @property
    def total_weight(self) -> Fraction:
        return sum(self.weights.values(), Fraction(0))

    def is_satisfied(self, r: int, colors: Mapping[int, int]) -> bool:
        a, b = self.graph.neighbors(r)
        same = colors[a] == colors[b]
        return same if r in self.r_eq else not same


def _outer_hint(graph: PlaneGraph, rotations: Sequence[Sequence[int]]) -> Optional[Dart]:
    """原外面上在新旋转系统中仍存在的第一条有向边"""
    for a, b in graph.outer_face.darts:
        if a < len(rotations) and b in rotations[a]:
            return (a, b)
    return None


def _replace(rotation: list[int], old: int, new: Sequence[int]) -> None:
    i = rotation.index(old)
    rotation[i:i + 1] = list(new)


def satisfied_fraction(rg: RequestGraph, phi: Coloring) -> SatisfactionResult:
    """全图着色满足的请求权重比例；没有请求时比例为 1

    Raises:
        HypothesisViolation: φ 不是全图正常着色
    """
    colors = _as_map(phi)
    if any(v not in colors for v in rg.graph.vertices()) or not is_proper(rg.graph, colors):
        raise HypothesisViolation(ErrorCode.IMPROPER_COLORING, "φ 不是全图正常着色")
    satisfied = sum(
        (rg.weights[r] for r in rg.requests if rg.is_satisfied(r, colors)),
        Fraction(0),
    )
    total = rg.total_weight
    fraction = satisfied / total if total else Fraction(1)
    return SatisfactionResult(
        coloring=phi if isinstance(phi, Coloring) else Coloring(assignment=colors, total=True),
        satisfied_weight=satisfied,
        total_weight=total,
        fraction=fraction,
    )


def best_fraction(rg: RequestGraph) -> SatisfactionResult:
    """所有正常 3-着色中的最大满足比例（穷举 G − R 的着色，请求顶点最后贪心着色）

    Raises:
        StatementViolation: 图不可 3-着色
    """
    base, old_ids = rg.graph.delete_vertices(rg.requests)
    neighbors = {r: rg.graph.neighbors(r) for r in rg.requests}
    best: Optional[tuple[Fraction, dict[int, int]]] = None
    total = rg.total_weight
    for coloring in enumerate_colorings(base, fix_first=True):
        colors = {old_ids[v]: c for v, c in coloring.assignment.items()}
        satisfied = Fraction(0)
        for r, (a, b) in neighbors.items():
            if (colors[a] == colors[b]) == (r in rg.r_eq):
                satisfied += rg.weights[r]
        if best is None or satisfied > best[0]:
            best = (satisfied, colors)
            if satisfied == total:
                break
    if best is None:
        raise StatementViolation(ErrorCode.UNCOLORABLE, "请求图去掉请求后不可 3-着色")

    satisfied, colors = best
    for r, (a, b) in sorted(neighbors.items()):
        colors[r] = next(c for c in COLORS if c != colors[a] and c != colors[b])
    logger.debug("最佳满足比例: %s / %s", satisfied, total)
    return SatisfactionResult(
        coloring=Coloring(assignment=dict(sorted(colors.items())), total=True),
        satisfied_weight=satisfied,
        total_weight=total,
        fraction=satisfied / total if total else Fraction(1),
    )


def gadget_neq_to_eq(rg: RequestGraph) -> RequestGraph:
    """每个不等请求 r（邻居 a,b）换成路 a–x–y–b，x 为同权重的相等请求

    x 沿用 r 的编号，y 为新顶点。
    """
    if not rg.r_neq:
        return rg
    graph = rg.graph
    rotations = [list(r) for r in graph.rotations]
    r_eq = set(rg.r_eq)
    weights = dict(rg.weights)
    for r in sorted(rg.r_neq):
        a, b = rotations[r]
        y = len(rotations)
        rotations[r] = [a, y]
        rotations.append([r, b])
        _replace(rotations[b], r, [y])
        r_eq.add(r)
    new_graph = PlaneGraph(len(rotations), rotations, _outer_hint(graph, rotations))
    logger.debug("≠→= 变换: %d 个请求", len(rg.r_neq))
    return RequestGraph.create(new_graph, r_eq, (), weights)


def gadget_eq_to_neq(rg: RequestGraph) -> RequestGraph:
    """每个相等请求 r（邻居 t,b）换成 4-圈 t–l–b–r′ 和面内邻接 l、r′ 的不等请求 q

    l 沿用 r 的编号，r′ 与 q 为新顶点，q 继承 r 的权重。
    """
    if not rg.r_eq:
        return rg
    graph = rg.graph
    rotations = [list(r) for r in graph.rotations]
    r_neq = set(rg.r_neq)
    weights = dict(rg.weights)
    for r in sorted(rg.r_eq):
        t, b = rotations[r]
        l, r_prime, q = r, len(rotations), len(rotations) + 1
        _replace(rotations[t], r, [r_prime, l])
        _replace(rotations[b], r, [l, r_prime])
        rotations[l] = [t, q, b]
        rotations.append([b, q, t])
        rotations.append([l, r_prime])
        r_neq.add(q)
        weights[q] = weights.pop(r)
    new_graph = PlaneGraph(len(rotations), rotations, _outer_hint(graph, rotations))
    logger.debug("=→≠ 变换: %d 个请求", len(rg.r_eq))
    return RequestGraph.create(new_graph, (), r_neq, weights)


def _clone_rotations(graph: PlaneGraph, copies: Mapping[int, int]) -> tuple[list[list[int]], dict[int, list[int]]]:
    """把每个请求 r 换成 copies[r] 个与之邻域相同的克隆；第一个克隆沿用 r 的编号"""
    rotations = [list(r) for r in graph.rotations]
    clones: dict[int, list[int]] = {}
    for r in sorted(copies):
        t, b = rotations[r]
        group = [r] + list(range(len(rotations), len(rotations) + copies[r] - 1))
        rotations.extend([t, b] for _ in group[1:])
        _replace(rotations[t], r, group)
        _replace(rotations[b], r, list(reversed(group)))
        clones[r] = group
    return rotations, clones


def integerize_and_clone(rg: RequestGraph) -> RequestGraph:
    """权重乘以分母的最小公倍数后，把每个请求换成相应个数的单位权重克隆

    Raises:
        HypothesisViolation: 存在不等请求
    """
    if rg.r_neq:
        raise HypothesisViolation(ErrorCode.HYPOTHESIS_VIOLATION, "克隆只适用于全部为相等请求的实例")
    scale = lcm_of_denominators(rg.weights.values())
    copies = {r: int(w * scale) for r, w in rg.weights.items()}
    rotations, clones = _clone_rotations(rg.graph, copies)
    new_graph = PlaneGraph(len(rotations), rotations, _outer_hint(rg.graph, rotations))
    r_eq = {c for group in clones.values() for c in group}
    logger.debug("克隆: 缩放因子 %d，%d 个请求 -> %d 个", scale, len(copies), len(r_eq))
    return RequestGraph.create(new_graph, r_eq, (), {c: Fraction(1) for c in r_eq})


def _normalized_edges(graph: PlaneGraph, edges: Iterable[tuple[int, int]]) -> list[tuple[int, int]]:
    result = []
    for u, v in edges:
        if not graph.has_edge(u, v):
            raise HypothesisViolation(ErrorCode.BAD_PARAMS, f"({u}, {v}) 不是图的边")
        result.append((min(u, v), max(u, v)))
    return sorted(set(result))


def delete_edges(graph: PlaneGraph, edges: Iterable[tuple[int, int]]) -> PlaneGraph:
    """删除若干边（保留全部顶点）"""
    gone = set()
    for u, v in _normalized_edges(graph, edges):
        gone.add((u, v))
        gone.add((v, u))
    rotations = [[w for w in graph.neighbors(u) if (u, w) not in gone] for u in graph.vertices()]
    return PlaneGraph(graph.vertex_count, rotations, _outer_hint(graph, rotations))


def subdivide_for_tria(graph: PlaneGraph, edges: Iterable[tuple[int, int]]) -> RequestGraph:
    """细分 X 中的每条边，细分顶点成为单位权重的不等请求

    Raises:
        HypothesisViolation: G − X 仍含三角形（STILL_HAS_TRIANGLE）
    """
    chosen = _normalized_edges(graph, edges)
    remaining = graph.to_networkx()
    remaining.remove_edges_from(chosen)
    if any(nx.triangles(remaining).values()):
        raise HypothesisViolation(ErrorCode.STILL_HAS_TRIANGLE, "删除 X 后图中仍有三角形")

    rotations = [list(r) for r in graph.rotations]
    requests = []
    for u, v in chosen:
        s = len(rotations)
        _replace(rotations[u], v, [s])
        _replace(rotations[v], u, [s])
        rotations.append([u, v])
        requests.append(s)
    new_graph = PlaneGraph(len(rotations), rotations, _outer_hint(graph, rotations))
    return RequestGraph.create(new_graph, (), requests, {s: Fraction(1) for s in requests})


def max_bicolored_edges(graph: PlaneGraph, edges: Iterable[tuple[int, int]]) -> int:
    """G − X 的所有着色中 X 里两端异色的边数的最大值"""
    chosen = _normalized_edges(graph, edges)
    base = delete_edges(graph, chosen)
    best = -1
    for coloring in enumerate_colorings(base, fix_first=True):
        best = max(best, sum(1 for u, v in chosen if coloring[u] != coloring[v]))
        if best == len(chosen):
            break
    return best


def clone_explosion(rg: RequestGraph, clones: int) -> tuple[PlaneGraph, list[CloneRow]]:
    """每个相等请求换成 N 个克隆，并逐个基础着色核对扩展数 2^{s(φ)N}

    Args:
        rg: 只含相等请求的请求图
        clones: 每个请求的克隆数 N

    Returns:
        tuple: (克隆后的图, 每个 G − R₌ 着色一行的核对结果)

    Raises:
        HypothesisViolation: 存在不等请求或 N 不是正整数
    """
    if rg.r_neq:
        raise HypothesisViolation(ErrorCode.HYPOTHESIS_VIOLATION, "克隆爆炸只适用于全部为相等请求的实例")
    if clones < 1:
        raise HypothesisViolation(ErrorCode.BAD_PARAMS, f"克隆数 {clones} 必须为正整数")

    rotations, _ = _clone_rotations(rg.graph, {r: clones for r in rg.r_eq})
    exploded = PlaneGraph(len(rotations), rotations, _outer_hint(rg.graph, rotations))
    base, old_ids = rg.graph.delete_vertices(rg.requests)

    rows = []
    for coloring in enumerate_colorings(base):
        colors = {old_ids[v]: c for v, c in coloring.assignment.items()}
        satisfied = sum(1 for r in rg.r_eq if rg.is_satisfied(r, colors))
        rows.append(CloneRow(
            base_coloring=Coloring(assignment=colors, total=False),
            satisfied=satisfied,
            expected=2 ** (satisfied * clones),
            actual=count_colorings(exploded, colors),
        ))
    logger.debug("克隆爆炸: N=%d，%d 个基础着色", clones, len(rows))
    return exploded, rows
