# 列表着色
"""列表分配、穷举列表着色、四个列表着色定理的前提检查、外壳构造与阻挡关系"""

import logging
from typing import Iterable, Iterator, Optional, Sequence

from pydantic import BaseModel, ConfigDict, Field

from .coloring import find_coloring
from .models import (
    Coloring,
    ConditionResult,
    HypothesisReport,
    ListAssignment,
    StatementId,
)
from .plane_graph import PlaneGraph
from .utils import COLORS, ErrorCode, HypothesisViolation, StatementViolation


logger = logging.getLogger(__name__)

FULL_LIST = frozenset(COLORS)


class Casing(BaseModel):
    """外壳 G′：G 外加一个与 Z 完美匹配的外圈 K

    host 中前 base_vertex_count 个顶点即 G 的顶点，K 的顶点随后按顺时针顺序编号。
    """
    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    host: PlaneGraph
    base_vertex_count: int
    outer_cycle: tuple[int, ...] = Field(description="K 的顶点（host 编号，顺时针）")
    matching: dict[int, int] = Field(description="z -> k_z")
    order: tuple[int, ...] = Field(description="Z 按 ≺ 排列")

    def precedes(self, a: int, b: int) -> bool:
        return self.order.index(a) < self.order.index(b)


def list_of(lists: ListAssignment, v: int) -> frozenset[int]:
    return lists.lists.get(v, FULL_LIST)


def solve_list_coloring(graph: PlaneGraph, lists: ListAssignment) -> Optional[Coloring]:
    """确定性回溯求 L-着色；不存在时返回 None"""
    domains = {v: list_of(lists, v) for v in graph.vertices()}
    return find_coloring(graph, domains=domains)


# ---------------------------------------------------------------- 路径扫描


def _paths_with_sizes(
    graph: PlaneGraph,
    lists: ListAssignment,
    sizes: Sequence[int],
    start: Optional[int] = None,
) -> Iterator[list[int]]:
    """列表大小依次为 sizes 的简单路（start 给定时首顶点固定，且不检查其列表大小）"""
    path: list[int] = []

    def extend() -> Iterator[list[int]]:
        if len(path) == len(sizes):
            yield list(path)
            return
        need = sizes[len(path)]
        for w in graph.neighbors(path[-1]):
            if w not in path and len(list_of(lists, w)) == need:
                path.append(w)
                yield from extend()
                path.pop()

    starts = [start] if start is not None else [
        v for v in graph.vertices() if len(list_of(lists, v)) == sizes[0]
    ]
    for v in starts:
        path[:] = [v]
        yield from extend()


def _first_path(
    graph: PlaneGraph,
    lists: ListAssignment,
    sizes: Sequence[int],
    start: Optional[int] = None,
) -> Optional[list[int]]:
    return next(_paths_with_sizes(graph, lists, sizes, start), None)


def blocks(
    graph: PlaneGraph,
    lists: ListAssignment,
    edge: tuple[int, int],
    p: int,
) -> bool:
    """边 xy 是否阻挡 p：存在路 p u v x y，|L(u)|=2，|L(v)|=3（两个方向都试）

    Raises:
        HypothesisViolation: x 或 y 的列表大小不是 2
    """
    x, y = edge
    if len(list_of(lists, x)) != 2 or len(list_of(lists, y)) != 2:
        raise HypothesisViolation(ErrorCode.BAD_PARAMS, f"边 ({x}, {y}) 的两端列表大小必须为 2")
    if not graph.has_edge(x, y):
        return False
    for a, b in ((x, y), (y, x)):
        for path in _paths_with_sizes(graph, lists, [0, 2, 3], start=p):
            if path[-1] in graph.adjacency(a) and a not in path and b not in path:
                return True
    return False


# ---------------------------------------------------------------- 外壳


def _validate_boundary_edges(graph: PlaneGraph, path: Sequence[int], matching: Iterable[tuple[int, int]]) -> list[tuple[int, int]]:
    edges = [tuple(e) for e in matching]
    seen: set[int] = set()
    for x, y in edges:
        if not graph.has_edge(x, y) or not graph.edge_on_outer_face(x, y):
            raise HypothesisViolation(ErrorCode.X_NOT_MATCHING, f"({x}, {y}) 不是外面边界上的边")
        if x in seen or y in seen:
            raise HypothesisViolation(ErrorCode.X_NOT_MATCHING, f"X 中的边在顶点 {x if x in seen else y} 处相交")
        seen.update((x, y))
    if seen & set(path):
        raise HypothesisViolation(ErrorCode.X_MEETS_P, f"X 与 P 共享顶点 {sorted(seen & set(path))}")
    for a, b in zip(path, path[1:]):
        if not graph.has_edge(a, b) or not graph.edge_on_outer_face(a, b):
            raise HypothesisViolation(ErrorCode.HYPOTHESIS_VIOLATION, f"P 的边 ({a}, {b}) 不在外面边界上")
    return edges


def build_casing(
    graph: PlaneGraph,
    path: Sequence[int],
    matching: Iterable[tuple[int, int]],
) -> Casing:
    """沿外面途径构造外壳

    Z 的顺序取自外面途径（从 P 的第一个顶点起）；k_z 插在外面途径经过 z 的角上，
    因而每条 X ∪ E(P) 中的边 xy 都与 k_x、k_y 围成一个 4-面。

    Raises:
        HypothesisViolation: X 不是外面上的匹配（X_NOT_MATCHING）或与 P 相交（X_MEETS_P）
    """
    path = list(path)
    edges = _validate_boundary_edges(graph, path, matching)
    outer = graph.outer_face
    walk = list(outer.darts)
    if path:
        start = next((i for i, (a, _) in enumerate(walk) if a == path[0]), 0)
        walk = walk[start:] + walk[:start]
    index = {dart: i for i, dart in enumerate(walk)}

    # 每个 z 的位置：它所在的 X ∪ E(P) 边在外面途径上的有向边
    position: dict[int, tuple[int, int]] = {}
    corner_prev: dict[int, int] = {}
    for x, y in edges + list(zip(path, path[1:])):
        dart = (x, y) if (x, y) in index else (y, x)
        i = index[dart]
        tail, head = dart
        prev = walk[i - 1][0]
        for z, key, before in ((tail, (i, 0), prev), (head, (i, 1), tail)):
            if z not in position or key < position[z]:
                position[z] = key
                corner_prev[z] = before
    for z in path:
        if z not in position:
            i = next(i for i, (a, _) in enumerate(walk) if a == z) if walk else 0
            position[z] = (i, 0)
            corner_prev[z] = walk[i - 1][0] if walk else z

    zs = sorted(position, key=lambda z: position[z])
    n = graph.vertex_count
    m = len(zs)
    k_of = {z: n + i for i, z in enumerate(zs)}

    rotations = [list(r) for r in graph.rotations] + [[] for _ in range(m)]
    for z in zs:
        rot = rotations[z]
        if rot and corner_prev[z] in rot:
            rot.insert(rot.index(corner_prev[z]) + 1, k_of[z])
        else:
            rot.append(k_of[z])
    for i, z in enumerate(zs):
        k = k_of[z]
        if m == 1:
            rotations[k] = [z]
        elif m == 2:
            rotations[k] = [z, n + (1 - i)]
        else:
            rotations[k] = [z, n + (i - 1) % m, n + (i + 1) % m]

    hint = (n, n + 1) if m >= 2 else ((n, zs[0]) if m == 1 else None)
    host = PlaneGraph(n + m, rotations, hint)
    logger.debug("外壳: |Z|=%d", m)
    return Casing(
        host=host,
        base_vertex_count=n,
        outer_cycle=tuple(range(n, n + m)),
        matching=k_of,
        order=tuple(zs),
    )


def validate_casing(
    casing: Casing,
    graph: PlaneGraph,
    path: Sequence[int],
    matching: Iterable[tuple[int, int]],
) -> dict[str, bool]:
    """逐条检查外壳的定义条件"""
    host = casing.host
    n = casing.base_vertex_count
    k_vertices = set(casing.outer_cycle)
    z_set = set(path) | {v for e in matching for v in e}
    m = len(casing.outer_cycle)

    induced_same = all(
        [w for w in host.neighbors(v) if w < n] == list(graph.neighbors(v))
        for v in graph.vertices()
    )
    if m >= 3:
        cycle_ok = (
            host.outer_face.length == m
            and host.outer_face.vertex_set == frozenset(k_vertices)
            and all(len([w for w in host.neighbors(k) if w in k_vertices]) == 2 for k in k_vertices)
        )
    else:
        cycle_ok = m == len(z_set)
    matching_ok = (
        set(casing.matching) == z_set
        and sorted(casing.matching.values()) == sorted(k_vertices)
        and all(len([w for w in host.neighbors(k) if w < n]) == 1 for k in k_vertices)
        and all(host.has_edge(z, k) for z, k in casing.matching.items())
    )
    faces_ok = True
    for x, y in list(matching) + list(zip(path, path[1:])):
        kx, ky = casing.matching[x], casing.matching[y]
        if not host.has_edge(kx, ky):
            faces_ok = False
            break
        target = frozenset((x, y, kx, ky))
        if not any(f.length == 4 and f.vertex_set == target for f in host.faces):
            faces_ok = False
            break
    return {
        "induced": induced_same,
        "outer_cycle": cycle_ok,
        "perfect_matching": matching_ok,
        "four_faces": faces_ok,
    }


def casing_order(casing: Casing, start: Optional[int] = None) -> list[int]:
    """Z 按 K 上从 k_start 起的顺时针顺序"""
    order = list(casing.order)
    if start is not None and start in order:
        i = order.index(start)
        order = order[i:] + order[:i]
    return order


# ---------------------------------------------------------------- 前提检查


def _cond(name: str, witness: Optional[Iterable[int]] = None, detail: str = "") -> ConditionResult:
    return ConditionResult(
        name=name,
        holds=witness is None,
        witness=list(witness) if witness is not None else None,
        detail=detail if witness is not None else "",
    )


def _check_girth(graph: PlaneGraph) -> ConditionResult:
    g = graph.girth()
    if g is not None and g < 5:
        shortest = next((c for length in range(3, 5) for c in graph.cycles_of_length(length)), ())
        return _cond("girth", shortest, f"围长 {g} 小于 5")
    return _cond("girth")


def _check_path(graph: PlaneGraph, path: Sequence[int]) -> ConditionResult:
    if len(path) > 3 or len(set(path)) != len(path):
        return _cond("path", path, "P 至多三个互不相同的顶点")
    for v in path:
        if not graph.is_on_outer_face(v):
            return _cond("path", [v], "P 的顶点不在外面上")
    for a, b in zip(path, path[1:]):
        if not graph.has_edge(a, b) or not graph.edge_on_outer_face(a, b):
            return _cond("path", [a, b], "P 的边不在外面边界上")
    return _cond("path")


def _check_lists(
    graph: PlaneGraph,
    path: Sequence[int],
    lists: ListAssignment,
    exact: bool = False,
    name: str = "lists",
) -> ConditionResult:
    on_path = set(path)
    for v in graph.vertices():
        colors = list_of(lists, v)
        if v in on_path:
            if len(colors) != 1:
                return _cond(name, [v], "P 上的顶点列表大小应为 1")
        elif not graph.is_on_outer_face(v):
            if colors != FULL_LIST:
                return _cond(name, [v], "内部顶点的列表应为 {1,2,3}")
        elif exact:
            if colors not in (frozenset({1, 2}), FULL_LIST):
                return _cond(name, [v], "外面上的顶点列表应为 {1,2} 或 {1,2,3}")
        elif len(colors) < 2:
            return _cond(name, [v], "外面上的顶点列表大小应为 2 或 3")
    for a, b in zip(path, path[1:]):
        if list_of(lists, a) == list_of(lists, b):
            return _cond(name, [a, b], "P 上的单元素列表不是正常着色")
    return _cond(name)


def _check_independent(graph: PlaneGraph, lists: ListAssignment) -> ConditionResult:
    for u, v in graph.edges():
        if len(list_of(lists, u)) == 2 and len(list_of(lists, v)) == 2:
            return _cond("independent", [u, v], "列表大小为 2 的顶点相邻")
    return _cond("independent")


def _check_no_path(graph: PlaneGraph, lists: ListAssignment, sizes: Sequence[int], name: str) -> ConditionResult:
    witness = _first_path(graph, lists, sizes)
    return _cond(name, witness, f"存在列表大小为 {list(sizes)} 的路") if witness else _cond(name)


def _endpoint_clear(graph: PlaneGraph, lists: ListAssignment, p: int, patterns: Sequence[Sequence[int]]) -> Optional[list[int]]:
    for sizes in patterns:
        witness = _first_path(graph, lists, [0] + list(sizes), start=p)
        if witness is not None:
            return witness
    return None


def _check_endpoint(
    graph: PlaneGraph,
    path: Sequence[int],
    lists: ListAssignment,
    patterns: Sequence[Sequence[int]],
    name: str,
) -> ConditionResult:
    """|V(P)|=3 时至少一个端点不是给定模式路的起点"""
    if len(path) != 3:
        return _cond(name)
    witnesses = []
    for p in (path[0], path[-1]):
        witness = _endpoint_clear(graph, lists, p, patterns)
        if witness is None:
            return _cond(name)
        witnesses.extend(witness)
    return _cond(name, witnesses, "P 的两个端点都引出被禁止的路")


def _x_edges(graph: PlaneGraph, lists: ListAssignment) -> list[tuple[int, int]]:
    return [
        (u, v) for u, v in graph.edges()
        if len(list_of(lists, u)) == 2 and len(list_of(lists, v)) == 2
    ]


def _check_i_prime(graph: PlaneGraph, path: Sequence[int], lists: ListAssignment) -> ConditionResult:
    base = _check_lists(graph, path, lists, name="i_prime")
    if not base.holds:
        return base
    for u, v in graph.edges():
        if len(list_of(lists, u)) < 3 and len(list_of(lists, v)) < 3 and not graph.edge_on_outer_face(u, v):
            return _cond("i_prime", [u, v], "连接两个小列表顶点的边不在外面边界上")
    return _cond("i_prime")


def _check_iii_prime(
    graph: PlaneGraph,
    path: Sequence[int],
    lists: ListAssignment,
    casing: Optional[Casing],
) -> tuple[ConditionResult, Optional[Casing]]:
    edges = _x_edges(graph, lists)
    if casing is None:
        try:
            casing = build_casing(graph, path, edges)
        except HypothesisViolation as e:
            return _cond("iii_prime", [], f"无法构造外壳: {e}"), None
    checks = validate_casing(casing, graph, path, edges)
    if not all(checks.values()):
        failed = [k for k, ok in checks.items() if not ok]
        return _cond("iii_prime", [], f"外壳不合法: {failed}"), casing

    order = casing_order(casing, path[0] if path else None)
    rank = {z: i for i, z in enumerate(order)}
    oriented = [tuple(sorted(e, key=lambda z: rank[z])) for e in edges]
    for v1, v2 in oriented:
        for v4, v5 in oriented:
            if (v1, v2) == (v4, v5) or not rank[v2] < rank[v4]:
                continue
            common = (graph.adjacency(v2) & graph.adjacency(v4)) or (graph.adjacency(v1) & graph.adjacency(v5))
            if common:
                return _cond("iii_prime", [v1, v2, v4, v5], "≺ 次序下分开的两条 X 边有公共邻居"), casing
    return _cond("iii_prime"), casing


def _check_iv_prime(graph: PlaneGraph, path: Sequence[int], lists: ListAssignment) -> ConditionResult:
    if len(path) != 3:
        return _cond("iv_prime")
    p1, p2, p3 = path
    witness = _first_path(graph, lists, [0, 2, 2], start=p1)
    if witness is not None:
        return _cond("iv_prime", witness, "存在路 p1 v2 v3，列表大小为 2、2")
    for x, y in _x_edges(graph, lists):
        if not blocks(graph, lists, (x, y), p1):
            continue
        if graph.has_edge(x, p3) or graph.has_edge(y, p3):
            continue
        if not blocks(graph, lists, (x, y), p3):
            return _cond("iv_prime", [x, y], "阻挡 p1 的边没有阻挡 p3")
        if not list_of(lists, p2) <= list_of(lists, x) | list_of(lists, y):
            return _cond("iv_prime", [x, y], "L(p2) 不包含于 L(x) ∪ L(y)")
    return _cond("iv_prime")


def _check_cycle_outer(graph: PlaneGraph, lists: ListAssignment) -> ConditionResult:
    outer = graph.outer_face
    if not outer.is_cycle() or outer.length > 9:
        return _cond("cycle_outer", list(outer.boundary), "外面不是长度不超过 9 的圈")
    on_cycle = outer.vertex_set
    for v in graph.vertices():
        size = len(list_of(lists, v))
        if (v in on_cycle and size != 1) or (v not in on_cycle and size != 3):
            return _cond("cycle_outer", [v], "K 上列表大小应为 1，其余应为 3")
    k = outer.boundary
    for i in range(len(k)):
        if list_of(lists, k[i]) == list_of(lists, k[(i + 1) % len(k)]):
            return _cond("cycle_outer", [k[i], k[(i + 1) % len(k)]], "K 上的预着色不正常")
    return _cond("cycle_outer")


def _check_no_exception(graph: PlaneGraph) -> ConditionResult:
    """排除两种例外：|K|∈{8,9} 且 K 有弦；|K|=9 且 K 外有顶点在 K 上有三个邻居"""
    outer = graph.outer_face
    length = outer.length
    if length in (8, 9):
        chords = graph.chords()
        if chords:
            return _cond("no_exception", list(chords[0]), "K 有弦")
    if length == 9:
        on_cycle = outer.vertex_set
        for v in graph.vertices():
            if v not in on_cycle and len(graph.adjacency(v) & on_cycle) >= 3:
                return _cond("no_exception", [v], "K 外的顶点在 K 上有三个邻居")
    return _cond("no_exception")


def check_hypotheses(
    statement: StatementId,
    graph: PlaneGraph,
    path: Sequence[int],
    lists: ListAssignment,
    casing: Optional[Casing] = None,
) -> HypothesisReport:
    """逐条检查列表着色定理的前提；前提全部成立时用求解器核对结论

    Args:
        statement: 定理编号
        graph: 指定外面的平面图
        path: 外面边界上的预着色路 P（THM_CYCEX 忽略）
        lists: 列表分配
        casing: LEM_DVOKAW_STRONG 使用的外壳，缺省时规范构造

    Returns:
        HypothesisReport: 每个条件的结果与反例

    Raises:
        StatementViolation: 前提成立而求解器失败
    """
    path = list(path)
    conditions: list[ConditionResult] = [_check_girth(graph)]

    if statement == StatementId.THM_CYCEX:
        conditions.append(_check_cycle_outer(graph, lists))
        conditions.append(_check_no_exception(graph))
        path = []
    else:
        conditions.append(_check_path(graph, path))
        if statement == StatementId.THM_3CHOOS:
            conditions.append(_check_lists(graph, path, lists))
            conditions.append(_check_independent(graph, lists))
        elif statement == StatementId.THM_DVOKAW:
            conditions.append(_check_lists(graph, path, lists))
            conditions.append(_check_no_path(graph, lists, [2, 2, 2], "ii"))
            conditions.append(_check_no_path(graph, lists, [2, 2, 3, 2, 2], "iii"))
            conditions.append(_check_endpoint(graph, path, lists, [[2, 2], [2, 3, 2, 2]], "iv"))
        elif statement == StatementId.LEM_SAME:
            conditions.append(_check_lists(graph, path, lists, exact=True))
            conditions.append(_check_no_path(graph, lists, [2, 2, 2], "ii"))
            conditions.append(_check_endpoint(graph, path, lists, [[2, 2]], "iii"))
        elif statement == StatementId.LEM_DVOKAW_STRONG:
            conditions.append(_check_i_prime(graph, path, lists))
            conditions.append(_check_no_path(graph, lists, [2, 2, 2], "ii"))
            result, casing = _check_iii_prime(graph, path, lists, casing)
            conditions.append(result)
            conditions.append(_check_iv_prime(graph, path, lists))

    all_hold = all(c.holds for c in conditions)
    report = HypothesisReport(
        statement=statement,
        conditions=conditions,
        all_hold=all_hold,
        middle_vertex=path[1] if len(path) == 3 else None,
    )
    if not all_hold:
        return report

    coloring = solve_list_coloring(graph, lists)
    if coloring is None:
        raise StatementViolation(
            ErrorCode.STATEMENT_VIOLATION,
            f"{statement.value} 的前提全部成立，但不存在 L-着色"
        )
    return report.model_copy(update={"solver_succeeded": True, "coloring": coloring})
