# 3-着色引擎
"""精确的 3-着色枚举与计数、预着色扩展、双色面统计、Kempe 交换与收缩"""

import logging
from fractions import Fraction
from itertools import product
from typing import Iterable, Iterator, Mapping, Optional, Sequence, Union

import networkx as nx

from .models import BichromaticReport, Coloring, CycleRef, ExtensionReport, ManyColorReport
from .plane_graph import PlaneGraph
from .utils import COLORS, ErrorCode, HypothesisViolation, StatementViolation, validate_color_map


logger = logging.getLogger(__name__)

COLOR_PAIRS = ((1, 2), (1, 3), (2, 3))

PrecoloringLike = Union[None, Coloring, Mapping[int, int]]


def _as_map(precoloring: PrecoloringLike) -> dict[int, int]:
    if precoloring is None:
        return {}
    if isinstance(precoloring, Coloring):
        return dict(precoloring.assignment)
    return dict(precoloring)


def is_proper(graph: PlaneGraph, coloring: PrecoloringLike) -> bool:
    """相邻且都已着色的顶点颜色不同"""
    colors = _as_map(coloring)
    return all(
        colors[u] != colors[v]
        for u, v in graph.edges()
        if u in colors and v in colors
    )


def _check_precoloring(graph: PlaneGraph, colors: dict[int, int]) -> None:
    try:
        validate_color_map(colors, graph.vertex_count)
    except HypothesisViolation as e:
        raise HypothesisViolation(ErrorCode.IMPROPER_PRECOLORING, str(e)) from e
    for u, v in graph.edges():
        if colors.get(u) is not None and colors.get(u) == colors.get(v):
            raise HypothesisViolation(
                ErrorCode.IMPROPER_PRECOLORING,
                f"预着色在边 ({u}, {v}) 两端都使用颜色 {colors[u]}"
            )


def _check_total(graph: PlaneGraph, phi: PrecoloringLike, code: ErrorCode = ErrorCode.IMPROPER_COLORING) -> dict[int, int]:
    colors = _as_map(phi)
    missing = [v for v in graph.vertices() if v not in colors]
    if missing:
        raise HypothesisViolation(code, f"着色未覆盖顶点 {missing[:5]}")
    if not is_proper(graph, colors) or any(c not in COLORS for c in colors.values()):
        raise HypothesisViolation(code, "着色不是正常着色")
    return colors


def _search(
    graph: PlaneGraph,
    fixed: dict[int, int],
    domains: Optional[Mapping[int, Iterable[int]]] = None,
    fix_first: bool = False,
) -> Iterator[list[int]]:
    """回溯搜索所有正常扩展

    单选顶点（预着色或单元素列表）排在最前，其余按编号；
    同一顶点内颜色升序，故输出按顶点编号字典序排列。产出的列表会被复用。
    """
    n = graph.vertex_count
    allowed: list[tuple[int, ...]] = []
    for v in range(n):
        if v in fixed:
            allowed.append((fixed[v],))
        elif domains is not None and v in domains:
            allowed.append(tuple(sorted(set(domains[v]))))
        else:
            allowed.append(COLORS)
    if fix_first:
        free = next((v for v in range(n) if len(allowed[v]) == 3), None)
        if free is not None:
            allowed[free] = (COLORS[0],)

    order = sorted(range(n), key=lambda v: (len(allowed[v]) != 1, v))
    rank = {v: i for i, v in enumerate(order)}
    earlier = [tuple(w for w in graph.neighbors(v) if rank[w] < rank[v]) for v in order]
    options = [allowed[v] for v in order]

    colors = [0] * n
    cursor = [0] * (n + 1)
    depth = 0
    if n == 0:
        yield colors
        return
    while depth >= 0:
        if depth == n:
            yield colors
            depth -= 1
            continue
        v = order[depth]
        opts = options[depth]
        placed = False
        while cursor[depth] < len(opts):
            c = opts[cursor[depth]]
            cursor[depth] += 1
            if all(colors[w] != c for w in earlier[depth]):
                colors[v] = c
                placed = True
                break
        if placed:
            depth += 1
        else:
            cursor[depth] = 0
            colors[v] = 0
            depth -= 1


def enumerate_colorings(
    graph: PlaneGraph,
    precoloring: PrecoloringLike = None,
    limit: Optional[int] = None,
    domains: Optional[Mapping[int, Iterable[int]]] = None,
    fix_first: bool = False,
) -> Iterator[Coloring]:
    """枚举预着色的全部正常扩展

    Args:
        graph: 平面图
        precoloring: 部分着色
        limit: 最多产出的个数
        domains: 可选的顶点列表（列表着色）
        fix_first: 对称约化，把第一个自由顶点固定为颜色 1

    Yields:
        Coloring: 全图着色，按顶点编号字典序

    Raises:
        HypothesisViolation: 预着色不正常
    """
    fixed = _as_map(precoloring)
    _check_precoloring(graph, fixed)
    if limit is not None and limit <= 0:
        return
    produced = 0
    for colors in _search(graph, fixed, domains, fix_first and not fixed and domains is None):
        yield Coloring.model_construct(assignment=dict(enumerate(colors)), total=True)
        produced += 1
        if limit is not None and produced >= limit:
            return


def count_colorings(
    graph: PlaneGraph,
    precoloring: PrecoloringLike = None,
    limit: Optional[int] = None,
    domains: Optional[Mapping[int, Iterable[int]]] = None,
    symmetric: bool = False,
) -> int:
    """预着色的正常扩展个数（与 enumerate_colorings 的产出个数一致）

    Args:
        limit: 达到该数目即停止计数
        symmetric: 无预着色时固定第一个自由顶点并乘以 3
    """
    fixed = _as_map(precoloring)
    _check_precoloring(graph, fixed)
    reduce = symmetric and not fixed and domains is None and graph.vertex_count > 0
    total = 0
    for _ in _search(graph, fixed, domains, reduce):
        total += 3 if reduce else 1
        if limit is not None and total >= limit:
            break
    logger.debug("计数: n=%d 预着色=%d 结果=%d", graph.vertex_count, len(fixed), total)
    return total


def find_coloring(
    graph: PlaneGraph,
    precoloring: PrecoloringLike = None,
    domains: Optional[Mapping[int, Iterable[int]]] = None,
) -> Optional[Coloring]:
    """字典序最小的正常扩展；不存在时返回 None"""
    return next(enumerate_colorings(graph, precoloring, limit=1, domains=domains), None)


def proper_colorings_of_cycle(length: int) -> list[tuple[int, ...]]:
    """长为 length 的圈的全部正常 3-着色（字典序）"""
    return [
        colors for colors in product(COLORS, repeat=length)
        if all(colors[i] != colors[(i + 1) % length] for i in range(length))
    ]


def _cycle_psi(cycle: Sequence[int], psi: Union[Coloring, Sequence[int], Mapping[int, int]]) -> dict[int, int]:
    if isinstance(psi, Coloring):
        return {v: psi.assignment[v] for v in cycle if v in psi.assignment}
    if isinstance(psi, Mapping):
        return {v: psi[v] for v in cycle if v in psi}
    colors = list(psi)
    if len(colors) != len(cycle):
        raise HypothesisViolation(
            ErrorCode.BAD_PRECOLORING, f"颜色序列长度 {len(colors)} 与圈长 {len(cycle)} 不一致"
        )
    return dict(zip(cycle, colors))


def extension_count_from_cycle(
    graph: PlaneGraph,
    cycle: Union[CycleRef, Sequence[int]],
    psi: Union[Coloring, Sequence[int], Mapping[int, int]],
) -> ExtensionReport:
    """外圈预着色的扩展个数；扩展少于两个时给出邻接两种颜色的见证顶点

    Args:
        graph: 无三角形平面图，外面由 cycle 围成
        cycle: 长度不超过 5 的外圈
        psi: 圈上的正常着色（序列按圈顶点顺序）

    Returns:
        ExtensionReport: 扩展个数与见证顶点

    Raises:
        HypothesisViolation: 前提不满足
        StatementViolation: 没有扩展，或扩展不足两个却找不到见证顶点
    """
    vertices = tuple(cycle.vertices if isinstance(cycle, CycleRef) else cycle)
    if len(vertices) > 5 or not graph.is_cycle(vertices):
        raise HypothesisViolation(ErrorCode.HYPOTHESIS_VIOLATION, f"{list(vertices)} 不是长度不超过 5 的圈")
    outer = graph.outer_face
    if outer.length != len(vertices) or outer.vertex_set != frozenset(vertices):
        raise HypothesisViolation(ErrorCode.HYPOTHESIS_VIOLATION, f"圈 {list(vertices)} 不是外面的边界")
    if not graph.is_triangle_free():
        raise HypothesisViolation(ErrorCode.HYPOTHESIS_VIOLATION, "图中含三角形")

    colors = _cycle_psi(vertices, psi)
    if set(colors) != set(vertices) or any(c not in COLORS for c in colors.values()):
        raise HypothesisViolation(ErrorCode.BAD_PRECOLORING, "ψ 必须为圈上每个顶点指定 {1,2,3} 中的颜色")
    k = len(vertices)
    if any(colors[vertices[i]] == colors[vertices[(i + 1) % k]] for i in range(k)):
        raise HypothesisViolation(ErrorCode.BAD_PRECOLORING, "ψ 在圈上不是正常着色")

    count = count_colorings(graph, colors)
    if count == 0:
        raise StatementViolation(ErrorCode.LEMMA_VIOLATION, f"圈的预着色 {colors} 不能扩展")
    witness = None
    if count <= 1 and graph.vertex_count > k:
        on_cycle = set(vertices)
        for v in graph.vertices():
            if v in on_cycle:
                continue
            seen = {colors[w] for w in graph.neighbors(v) if w in on_cycle}
            if len(seen) >= 2:
                witness = v
                break
        if witness is None:
            raise StatementViolation(
                ErrorCode.LEMMA_VIOLATION,
                f"预着色 {colors} 只有 {count} 个扩展，但没有顶点邻接圈上两种颜色"
            )
    return ExtensionReport(count=count, witness=witness)


def bichromatic_report(graph: PlaneGraph, phi: PrecoloringLike) -> BichromaticReport:
    """统计双色 4-面、s⁺ 以及各颜色对诱导子图的连通分支数"""
    colors = _check_total(graph, phi)
    q = 0
    four_faces = 0
    s_plus = 0
    for face in graph.faces:
        if face.length == 4:
            four_faces += 1
            if len({colors[v] for v in face.boundary}) == 2:
                q += 1
        elif face.length >= 5:
            s_plus += face.length - 4

    nx_graph = graph.to_networkx()
    c_pairs: dict[str, int] = {}
    for a, b in COLOR_PAIRS:
        members = [v for v in graph.vertices() if colors[v] in (a, b)]
        c_pairs[f"{a}{b}"] = nx.number_connected_components(nx_graph.subgraph(members)) if members else 0

    return BichromaticReport(
        q=q,
        four_faces=four_faces,
        s_plus=s_plus,
        c_pairs=c_pairs,
        bound_exponent=Fraction(s_plus + 8 + q, 6),
    )


def verify_manycolor_bound(graph: PlaneGraph, phi: PrecoloringLike) -> ManyColorReport:
    """检查 count ≥ 2^{(s⁺+8+q)/6} 与 max c_ab ≥ (s⁺+8+q)/6（整数精确比较）

    Raises:
        HypothesisViolation: 含三角形、不连通或顶点数小于 3
    """
    if graph.vertex_count < 3:
        raise HypothesisViolation(ErrorCode.HYPOTHESIS_VIOLATION, f"顶点数 {graph.vertex_count} 小于 3")
    if not graph.is_connected():
        raise HypothesisViolation(ErrorCode.HYPOTHESIS_VIOLATION, "图不连通")
    if not graph.is_triangle_free():
        raise HypothesisViolation(ErrorCode.HYPOTHESIS_VIOLATION, "图中含三角形")

    report = bichromatic_report(graph, phi)
    exponent = report.exponent_numerator
    count = count_colorings(graph)
    return ManyColorReport(
        bound=2 ** (exponent / 6),
        count=count,
        ok=count ** 6 >= 2 ** exponent,
        exponent_numerator=exponent,
        max_component_count=report.max_component_count,
        components_ok=6 * report.max_component_count >= exponent,
    )


def _pair(pair: Iterable[int]) -> tuple[int, int]:
    values = sorted(set(pair))
    if len(values) != 2 or not set(values) <= set(COLORS):
        raise HypothesisViolation(ErrorCode.BAD_PARAMS, f"颜色对 {values} 必须是两种不同的颜色")
    return values[0], values[1]


def kempe_components(graph: PlaneGraph, phi: PrecoloringLike, pair: Iterable[int]) -> list[frozenset[int]]:
    """G[V_ab] 的连通分支，按最小顶点排序"""
    a, b = _pair(pair)
    colors = _check_total(graph, phi)
    members = [v for v in graph.vertices() if colors[v] in (a, b)]
    subgraph = graph.to_networkx().subgraph(members)
    return sorted((frozenset(c) for c in nx.connected_components(subgraph)), key=min)


def kempe_swap(
    graph: PlaneGraph,
    phi: PrecoloringLike,
    pair: Iterable[int],
    component_index: int,
) -> Coloring:
    """在 G[V_ab] 的一个分支上交换颜色 a 与 b

    Raises:
        HypothesisViolation: 分支编号无效（BAD_COMPONENT）
    """
    components = kempe_components(graph, phi, pair)
    if component_index < 0 or component_index >= len(components):
        raise HypothesisViolation(
            ErrorCode.BAD_COMPONENT,
            f"分支编号 {component_index} 超出范围（共 {len(components)} 个分支）"
        )
    a, b = _pair(pair)
    colors = _as_map(phi)
    for v in components[component_index]:
        colors[v] = b if colors[v] == a else a
    return Coloring(assignment=colors, total=True)


def _on_cycle_of_length(graph: PlaneGraph, v: int, length: int) -> bool:
    path = [v]

    def extend() -> bool:
        last = path[-1]
        if len(path) == length:
            return v in graph.adjacency(last)
        for w in graph.neighbors(last):
            if w not in path:
                path.append(w)
                if extend():
                    return True
                path.pop()
        return False

    return extend()


def minc_vertex_map(graph: PlaneGraph, v: int) -> dict[int, int]:
    """收缩 v 的邻域后，原顶点（除 v）到新图顶点的映射"""
    nbrs = graph.neighbors(v)
    merged = min(nbrs) if nbrs else None
    keep = [u for u in graph.vertices() if u != v and (u not in nbrs or u == merged)]
    new_id = {old: i for i, old in enumerate(keep)}
    mapping = {u: new_id[u] for u in keep}
    for u in nbrs:
        mapping[u] = new_id[merged]
    return mapping


def contract_for_minc(graph: PlaneGraph, v: int) -> PlaneGraph:
    """删除 v 并把它的全部邻居叠合为一个顶点

    Raises:
        HypothesisViolation: v 在某个 5-圈上，或输入含三角形
        StatementViolation: 结果含三角形
    """
    if v < 0 or v >= graph.vertex_count:
        raise HypothesisViolation(ErrorCode.BAD_PARAMS, f"顶点 {v} 不存在")
    if not graph.is_triangle_free():
        raise HypothesisViolation(ErrorCode.HYPOTHESIS_VIOLATION, "图中含三角形")
    if _on_cycle_of_length(graph, v, 5):
        raise HypothesisViolation(ErrorCode.V_IN_5CYCLE, f"顶点 {v} 在某个 5-圈上")

    nbrs = graph.neighbors(v)
    mapping = minc_vertex_map(graph, v)
    size = len(set(mapping.values()))
    if not nbrs:
        rotations = [[] for _ in range(size)]
        for u, image in mapping.items():
            rotations[image] = [mapping[w] for w in graph.neighbors(u)]
        return PlaneGraph(size, rotations)

    merged = mapping[nbrs[0]]
    nbr_index = {u: i for i, u in enumerate(nbrs)}
    # 叠合顶点的旋转：按 v 处的顺时针顺序依次接上各邻居从 v 之后开始的旋转
    merged_rot: list[tuple[int, int]] = []
    for i, u in enumerate(nbrs):
        rot = graph.neighbors(u)
        start = rot.index(v)
        for step in range(1, len(rot)):
            merged_rot.append((rot[(start + step) % len(rot)], i))
    kept_copy: dict[int, int] = {}
    for w, i in merged_rot:
        kept_copy.setdefault(w, i)

    rotations: list[list[int]] = [[] for _ in range(size)]
    rotations[merged] = [mapping[w] for w, i in merged_rot if kept_copy[w] == i]
    for u, image in mapping.items():
        if u in nbr_index:
            continue
        rot = []
        for w in graph.neighbors(u):
            if w in nbr_index:
                if kept_copy.get(u) == nbr_index[w]:
                    rot.append(merged)
            else:
                rot.append(mapping[w])
        rotations[image] = rot

    contracted = PlaneGraph(size, rotations)
    if not contracted.is_triangle_free():
        raise StatementViolation(
            ErrorCode.RESULT_HAS_TRIANGLE, f"收缩顶点 {v} 的邻域后出现三角形"
        )
    logger.debug("收缩顶点 %d: %d 个顶点 -> %d 个顶点", v, graph.vertex_count, size)
    return contracted


def minc_lift_multiplicity(graph: PlaneGraph, v: int) -> int:
    """收缩图的每个着色提升到原图的最少着色个数（应为 2）"""
    contracted = contract_for_minc(graph, v)
    mapping = minc_vertex_map(graph, v)
    best: Optional[int] = None
    for coloring in enumerate_colorings(contracted):
        lifted = {u: coloring[image] for u, image in mapping.items()}
        lifts = count_colorings(graph, lifted)
        best = lifts if best is None else min(best, lifts)
    return best or 0
