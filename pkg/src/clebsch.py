# Clebsch 图与同态
"""GF(16) 上的 Clebsch 图、三角形自由平面图到它的同态搜索，以及由此得到的距离-3 16-着色"""

import logging
from functools import lru_cache
from itertools import combinations
from typing import Optional

import networkx as nx
from pydantic import BaseModel, ConfigDict, Field

from .plane_graph import PlaneGraph
from .utils import CLEBSCH_MODULUS, ErrorCode, HypothesisViolation, StatementViolation


logger = logging.getLogger(__name__)

FIELD_SIZE = 16


def gf_mul(a: int, b: int) -> int:
    """GF(2)[x]/(x⁴+x+1) 中的乘法（无进位乘法后取模）"""
    result = 0
    while b:
        if b & 1:
            result ^= a
        b >>= 1
        a <<= 1
        if a & FIELD_SIZE:
            a ^= CLEBSCH_MODULUS
    return result


def gf_pow(a: int, exponent: int) -> int:
    result = 1
    for _ in range(exponent):
        result = gf_mul(result, a)
    return result


def cubes() -> frozenset[int]:
    """非零立方元，即乘法群中指数为 3 的子群（5 个元素）"""
    return frozenset(gf_pow(t, 3) for t in range(1, FIELD_SIZE))


class ClebschGraph(BaseModel):
    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    vertices: tuple[int, ...] = Field(description="GF(16) 的元素（4 位向量）")
    cube_set: frozenset[int] = Field(description="差集：非零立方元")
    graph: nx.Graph

    def adjacent(self, u: int, v: int) -> bool:
        # 特征 2 中减法即异或
        return (u ^ v) in self.cube_set

    def neighbors(self, v: int) -> frozenset[int]:
        return frozenset(self.graph.neighbors(v))


class Homomorphism(BaseModel):
    model_config = ConfigDict(frozen=True)

    mapping: dict[int, int] = Field(description="G 的顶点 -> Clebsch 图的顶点")


@lru_cache(maxsize=1)
def build_clebsch() -> ClebschGraph:
    """构造 Clebsch 图：GF(16) 的元素为顶点，差为非零立方元时相邻"""
    cube_set = cubes()
    graph = nx.Graph()
    graph.add_nodes_from(range(FIELD_SIZE))
    graph.add_edges_from(
        (u, v) for u, v in combinations(range(FIELD_SIZE), 2) if (u ^ v) in cube_set
    )
    logger.debug("Clebsch 图: %d 个顶点, %d 条边", graph.number_of_nodes(), graph.number_of_edges())
    return ClebschGraph(vertices=tuple(range(FIELD_SIZE)), cube_set=cube_set, graph=graph)


def strongly_regular_parameters(clebsch: Optional[ClebschGraph] = None) -> Optional[tuple[int, int, int, int]]:
    """穷举验证强正则参数 (n, k, λ, μ)；不是强正则图时返回 None"""
    clebsch = clebsch or build_clebsch()
    graph = clebsch.graph
    degrees = {d for _, d in graph.degree()}
    if len(degrees) != 1:
        return None
    lambdas: set[int] = set()
    mus: set[int] = set()
    for u, v in combinations(graph.nodes, 2):
        common = len(set(graph[u]) & set(graph[v]))
        (lambdas if graph.has_edge(u, v) else mus).add(common)
    if len(lambdas) > 1 or len(mus) > 1:
        return None
    return (
        graph.number_of_nodes(),
        degrees.pop(),
        lambdas.pop() if lambdas else 0,
        mus.pop() if mus else 0,
    )


def is_homomorphism(graph: PlaneGraph, mapping: dict[int, int], clebsch: Optional[ClebschGraph] = None) -> bool:
    clebsch = clebsch or build_clebsch()
    if set(mapping) != set(graph.vertices()):
        return False
    return all(clebsch.adjacent(mapping[u], mapping[v]) for u, v in graph.edges())


def find_homomorphism(graph: PlaneGraph) -> Homomorphism:
    """回溯搜索到 Clebsch 图的同态

    顶点顺序为"已赋值邻居最多者优先"（并列时取编号最小者），像按 0..15 字典序尝试。

    Raises:
        HypothesisViolation: 图中含三角形
        StatementViolation: 三角形自由平面图上搜索失败
    """
    if not graph.is_triangle_free():
        tri = next(graph.triangles())
        raise HypothesisViolation(ErrorCode.HYPOTHESIS_VIOLATION, f"图含三角形 {tri}")

    clebsch = build_clebsch()
    mapping: dict[int, int] = {}
    unassigned = set(graph.vertices())
    steps = 0

    def candidates(v: int) -> list[int]:
        images = [mapping[w] for w in graph.adjacency(v) if w in mapping]
        if not images:
            return list(clebsch.vertices)
        allowed = set(clebsch.neighbors(images[0]))
        for image in images[1:]:
            allowed &= clebsch.neighbors(image)
        return sorted(allowed)

    def pick() -> int:
        return min(
            unassigned,
            key=lambda v: (-sum(1 for w in graph.adjacency(v) if w in mapping), v),
        )

    def search() -> bool:
        nonlocal steps
        if not unassigned:
            return True
        v = pick()
        unassigned.discard(v)
        for image in candidates(v):
            steps += 1
            mapping[v] = image
            if search():
                return True
            del mapping[v]
        unassigned.add(v)
        return False

    if not search():
        logger.warning("同态搜索失败: %r", graph)
        raise StatementViolation(
            ErrorCode.STATEMENT_VIOLATION,
            "三角形自由平面图不存在到 Clebsch 图的同态"
        )
    logger.debug("同态搜索: %d 步", steps)
    return Homomorphism(mapping=dict(sorted(mapping.items())))


def verify_dist3(graph: PlaneGraph, colors: dict[int, int]) -> dict[str, bool]:
    """独立校验：正常着色，且长度为 3 的每条路两端颜色不同"""
    proper = all(colors[u] != colors[v] for u, v in graph.edges())
    distance3 = True
    for a in graph.vertices():
        for b in graph.neighbors(a):
            for c in graph.neighbors(b):
                if c == a:
                    continue
                for d in graph.neighbors(c):
                    if d not in (a, b) and colors[a] == colors[d]:
                        distance3 = False
    return {"proper": proper, "distance3": distance3}


def dist3_coloring(graph: PlaneGraph) -> dict[int, int]:
    """同态像即为 16-着色；返回前重新校验两条性质

    Raises:
        StatementViolation: 同态给出的着色没有通过校验
    """
    colors = find_homomorphism(graph).mapping
    checks = verify_dist3(graph, colors)
    if not all(checks.values()):
        raise StatementViolation(
            ErrorCode.STATEMENT_VIOLATION,
            f"距离-3 着色校验失败: {checks}"
        )
    return colors
