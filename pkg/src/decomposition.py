# 5-圈分解
"""分离 5-圈的层状族、贫富节点、郊区与可重排顶点对"""

import logging
from collections import deque
from typing import Iterable, Optional, Sequence

from pydantic import BaseModel, ConfigDict, Field

from .coloring import count_colorings, is_proper, proper_colorings_of_cycle, _as_map
from .models import (
    Coloring,
    ConfigKind,
    CycleRef,
    Face,
    RearrangeablePair,
    Richness,
    Suburb,
)
from .plane_graph import PlaneGraph, find_separating_cycles
from .utils import ErrorCode, HypothesisViolation, StatementViolation


logger = logging.getLogger(__name__)

SUBURB_LENGTH = 11
STRATEGY = "smallest-interior-first greedy, ties by canonical cycle sequence"


class DecompositionNode(BaseModel):
    """分解树节点；根节点的区域为整个平面（cycle 为 None）"""
    model_config = ConfigDict(frozen=True)

    id: int
    parent: Optional[int] = None
    children: tuple[int, ...] = ()
    depth: int = 0
    cycle: Optional[CycleRef] = None


class NodePiece(BaseModel):
    """节点的块 G_v 及其丰富度"""
    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    node: int
    piece: PlaneGraph
    vertex_map: tuple[int, ...] = Field(description="块中编号 -> 原图编号")
    outer_cycle: Optional[CycleRef] = None
    richness: Richness


class FiveCycleDecomposition(BaseModel):
    """5-圈分解 (T, Λ)，节点 0 为根"""
    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    graph: PlaneGraph
    nodes: tuple[DecompositionNode, ...]
    metadata: dict[str, str] = Field(default_factory=lambda: {"strategy": STRATEGY})

    @property
    def root(self) -> DecompositionNode:
        return self.nodes[0]

    def node(self, node_id: int) -> DecompositionNode:
        return self.nodes[node_id]

    def is_ancestor(self, ancestor: int, node_id: int) -> bool:
        current = self.nodes[node_id].parent
        while current is not None:
            if current == ancestor:
                return True
            current = self.nodes[current].parent
        return False

    def region_interior(self, node_id: int) -> frozenset[int]:
        """区域内部的顶点（根为全部顶点）"""
        cycle = self.nodes[node_id].cycle
        if cycle is None:
            return frozenset(self.graph.vertices())
        return cycle.interior

    def piece_vertices(self, node_id: int) -> frozenset[int]:
        """G_v 的顶点：区域闭包去掉各子区域的内部"""
        node = self.nodes[node_id]
        vertices = set(self.region_interior(node_id))
        if node.cycle is not None:
            vertices |= set(node.cycle.vertices)
        for child in node.children:
            vertices -= self.region_interior(child)
        return frozenset(vertices)


def _outer_dart(cycle: CycleRef) -> tuple[int, int]:
    """内部在左侧时外面位于 (c1→c0) 的左侧"""
    c0, c1 = cycle.vertices[0], cycle.vertices[1]
    return (c1, c0) if cycle.interior_side == "left" else (c0, c1)


def _compatible(a: CycleRef, b: CycleRef) -> bool:
    fa, fb = a.interior_faces, b.interior_faces
    return fa <= fb or fb <= fa or not (fa & fb)


def build_decomposition(graph: PlaneGraph) -> FiveCycleDecomposition:
    """构造极大的 5-圈分解

    按内部顶点数从小到大（同数按圈序列）贪心加入与已选圈嵌套或不交的分离 5-圈。

    Raises:
        HypothesisViolation: 图中含三角形
    """
    if not graph.is_triangle_free():
        raise HypothesisViolation(ErrorCode.HYPOTHESIS_VIOLATION, "5-圈分解要求无三角形")

    candidates = sorted(
        find_separating_cycles(graph, 5),
        key=lambda c: (len(c.interior), c.vertices),
    )
    chosen: list[CycleRef] = []
    for cycle in candidates:
        if all(_compatible(cycle, other) for other in chosen):
            chosen.append(cycle)

    # 父节点为严格包含它的最小已选圈
    parent_of: dict[int, Optional[int]] = {}
    for i, cycle in enumerate(chosen):
        containing = [
            j for j, other in enumerate(chosen)
            if j != i and cycle.interior_faces < other.interior_faces
        ]
        parent_of[i] = min(containing, key=lambda j: len(chosen[j].interior_faces)) if containing else None

    children_of: dict[Optional[int], list[int]] = {}
    for i, parent in parent_of.items():
        children_of.setdefault(parent, []).append(i)
    for group in children_of.values():
        group.sort(key=lambda i: chosen[i].vertices)

    # 从根开始广度优先分配节点编号
    order: list[tuple[Optional[int], Optional[int], int]] = [(None, None, 0)]
    queue: deque[tuple[Optional[int], int, int]] = deque([(None, 0, 0)])
    while queue:
        source, node_id, depth = queue.popleft()
        for i in children_of.get(source, []):
            new_id = len(order)
            order.append((i, node_id, depth + 1))
            queue.append((i, new_id, depth + 1))

    children: dict[int, list[int]] = {i: [] for i in range(len(order))}
    for new_id, (_, parent, _) in enumerate(order):
        if parent is not None:
            children[parent].append(new_id)
    nodes = tuple(
        DecompositionNode(
            id=new_id,
            parent=parent,
            children=tuple(children[new_id]),
            depth=depth,
            cycle=chosen[source] if source is not None else None,
        )
        for new_id, (source, parent, depth) in enumerate(order)
    )
    logger.debug("5-圈分解: %d 个分离 5-圈候选，选出 %d 个", len(candidates), len(chosen))
    return FiveCycleDecomposition(graph=graph, nodes=nodes)


def caught_vertices(decomposition: FiveCycleDecomposition) -> frozenset[int]:
    """落在某个非根区域边界圈上的顶点"""
    caught: set[int] = set()
    for node in decomposition.nodes[1:]:
        caught.update(node.cycle.vertices)
    return frozenset(caught)


def five_face_vertices(graph: PlaneGraph) -> frozenset[int]:
    return frozenset(v for face in graph.faces if face.length == 5 for v in face.boundary)


def uncaught_five_cycle_vertices(decomposition: FiveCycleDecomposition) -> frozenset[int]:
    """在某个 5-圈上、既未被捕获也不在 5-面上的顶点"""
    graph = decomposition.graph
    on_cycle = {v for cycle in graph.cycles_of_length(5) for v in cycle}
    covered = caught_vertices(decomposition) | five_face_vertices(graph)
    return frozenset(on_cycle - covered)


def caught_bound_holds(decomposition: FiveCycleDecomposition) -> bool:
    """|捕获顶点 ∪ 5-面顶点| ≤ 5(|V(T)| + s₅)"""
    graph = decomposition.graph
    s5 = graph.face_length_counts().get(5, 0)
    covered = caught_vertices(decomposition) | five_face_vertices(graph)
    return len(covered) <= 5 * (len(decomposition.nodes) + s5)


def check_laminar(decomposition: FiveCycleDecomposition) -> bool:
    """后代的内部真包含于祖先的内部，不可比节点的内部不交"""
    nodes = decomposition.nodes[1:]
    for a in nodes:
        for b in nodes:
            if a.id >= b.id:
                continue
            ia, ib = a.cycle.interior, b.cycle.interior
            fa, fb = a.cycle.interior_faces, b.cycle.interior_faces
            if decomposition.is_ancestor(a.id, b.id):
                if not (ib <= ia and fb < fa):
                    return False
            elif decomposition.is_ancestor(b.id, a.id):
                if not (ia <= ib and fa < fb):
                    return False
            elif ia & ib or fa & fb:
                return False
    return True


def node_piece_graph(decomposition: FiveCycleDecomposition, node_id: int) -> tuple[PlaneGraph, tuple[int, ...]]:
    """G_v 作为诱导平面子图，外面为 K_v（根则沿用原外面）"""
    node = decomposition.nodes[node_id]
    vertices = decomposition.piece_vertices(node_id)
    if node.cycle is None:
        return decomposition.graph.induced_subgraph(vertices)
    return decomposition.graph.induced_subgraph(vertices, _outer_dart(node.cycle))


def check_maximal(decomposition: FiveCycleDecomposition) -> bool:
    """没有任何 G_v 含分离 5-圈"""
    for node in decomposition.nodes:
        piece, _ = node_piece_graph(decomposition, node.id)
        if find_separating_cycles(piece, 5):
            return False
    return True


def piece_richness(piece: PlaneGraph, cycle: Sequence[int]) -> Richness:
    """外圈的每个正常预着色都至少有两个扩展时为 RICH"""
    for colors in proper_colorings_of_cycle(len(cycle)):
        if count_colorings(piece, dict(zip(cycle, colors)), limit=2) < 2:
            return Richness.POOR
    return Richness.RICH


def is_poor_shape(piece: PlaneGraph, cycle: Sequence[int]) -> bool:
    """G_v 是否为 5-圈加一个邻接圈上两个顶点的顶点"""
    if piece.vertex_count != len(cycle) + 1:
        return False
    on_cycle = set(cycle)
    extra = [v for v in piece.vertices() if v not in on_cycle]
    return (
        len(extra) == 1
        and piece.degree(extra[0]) == 2
        and set(piece.neighbors(extra[0])) <= on_cycle
        and piece.edge_count == len(cycle) + 2
    )


def classify_node(decomposition: FiveCycleDecomposition, node_id: int) -> NodePiece:
    """计算节点的块与丰富度；贫节点须符合贫块引理给出的形状

    Raises:
        StatementViolation: 贫块形状不符（POOR_SHAPE_VIOLATION）
    """
    node = decomposition.nodes[node_id]
    piece, vertex_map = node_piece_graph(decomposition, node_id)
    if node.cycle is None:
        return NodePiece(node=node_id, piece=piece, vertex_map=vertex_map, richness=Richness.RICH)

    local = {old: new for new, old in enumerate(vertex_map)}
    cycle = [local[v] for v in node.cycle.vertices]
    richness = piece_richness(piece, cycle)
    if richness == Richness.POOR and not is_poor_shape(piece, cycle):
        raise StatementViolation(
            ErrorCode.POOR_SHAPE_VIOLATION,
            f"节点 {node_id} 是贫节点，但块有 {piece.vertex_count} 个顶点，不是 5-圈加一个顶点"
        )
    return NodePiece(
        node=node_id,
        piece=piece,
        vertex_map=vertex_map,
        outer_cycle=node.cycle,
        richness=richness,
    )


def classify_all(decomposition: FiveCycleDecomposition) -> list[NodePiece]:
    return [classify_node(decomposition, node.id) for node in decomposition.nodes]


def suburb_piece(
    decomposition: FiveCycleDecomposition,
    nodes: Sequence[int],
) -> tuple[PlaneGraph, tuple[int, ...], frozenset[int]]:
    """G_P 及其边界 F（外圈 ∪ 最深节点块的内 5-面），F 用 G_P 中的编号

    Returns:
        tuple: (G_P, G_P 编号 -> 原图编号, F)
    """
    top = decomposition.nodes[nodes[0]]
    vertices: set[int] = set()
    for node_id in nodes:
        vertices |= decomposition.piece_vertices(node_id)
    union, vertex_map = decomposition.graph.induced_subgraph(vertices, _outer_dart(top.cycle))
    local = {old: new for new, old in enumerate(vertex_map)}

    boundary = {local[v] for v in top.cycle.vertices}
    last_piece, last_map = node_piece_graph(decomposition, nodes[-1])
    inner = next(
        (f for f in last_piece.faces if f.id != last_piece.outer_face_id and f.length == 5),
        None,
    )
    if inner is not None:
        boundary |= {local[last_map[v]] for v in inner.boundary}
    return union, vertex_map, frozenset(boundary)


def is_upwardly_mobile(decomposition: FiveCycleDecomposition, nodes: Sequence[int]) -> bool:
    """G_P 外面的每个正常预着色都至少有两个扩展"""
    union, vertex_map, _ = suburb_piece(decomposition, nodes)
    local = {old: new for new, old in enumerate(vertex_map)}
    cycle = [local[v] for v in decomposition.nodes[nodes[0]].cycle.vertices]
    return piece_richness(union, cycle) == Richness.RICH


def find_suburbs(decomposition: FiveCycleDecomposition, k: int) -> list[Suburb]:
    """两两不交的 k-郊区的极大集合

    贫节点至多一个孩子，故贫节点构成若干向下的链；每条链从最深处起每 k 个切成一段。
    """
    if k < 1:
        raise HypothesisViolation(ErrorCode.BAD_PARAMS, f"郊区长度 {k} 必须为正")
    poor = {p.node for p in classify_all(decomposition) if p.richness == Richness.POOR}

    suburbs: list[Suburb] = []
    for node in decomposition.nodes:
        if node.id not in poor or (node.parent is not None and node.parent in poor):
            continue
        chain = [node.id]
        while True:
            below = [c for c in decomposition.nodes[chain[-1]].children if c in poor]
            if len(below) != 1:
                break
            chain.append(below[0])
        end = len(chain)
        while end - k >= 0:
            block = tuple(chain[end - k:end])
            suburbs.append(Suburb(
                nodes=block,
                k=k,
                upwardly_mobile=is_upwardly_mobile(decomposition, block),
            ))
            end -= k
    suburbs.sort(key=lambda s: s.nodes)
    logger.debug("%d-郊区: %d 个", k, len(suburbs))
    return suburbs


# ---------------------------------------------------------------- 可重排顶点对


def _four_face_cycle(face: Face) -> bool:
    return face.length == 4 and face.is_cycle()


def _rotate_to(boundary: Sequence[int], start: int) -> tuple[int, ...]:
    i = list(boundary).index(start)
    return tuple(boundary[i:]) + tuple(boundary[:i])


def _only_four_faces(graph: PlaneGraph, v: int) -> bool:
    return all(_four_face_cycle(graph.face(f)) for f in graph.faces_at(v))


def _face_at_corner(graph: PlaneGraph, v: int, a: int, b: int) -> Optional[Face]:
    """v 处同时包含邻居 a、b 的 4-面"""
    for f in graph.faces_at(v):
        face = graph.face(f)
        if _four_face_cycle(face) and {a, b} <= face.vertex_set:
            return face
    return None


def _pair(x: int, y: int, u: int, face: Face, kind: ConfigKind, **roles: int) -> RearrangeablePair:
    x, y = min(x, y), max(x, y)
    return RearrangeablePair(x=x, y=y, u=u, shared_face=face, config_kind=kind, **roles)


def _scan_config_one(graph: PlaneGraph, fixed: frozenset[int]) -> Optional[RearrangeablePair]:
    for z in graph.vertices():
        if z in fixed or graph.degree(z) != 2:
            continue
        for f in sorted(graph.faces_at(z)):
            face = graph.face(f)
            if _four_face_cycle(face):
                _, a, u, b = _rotate_to(face.boundary, z)
                return _pair(a, b, u, face, ConfigKind.I, apex=z)
    return None


def _scan_config_two(graph: PlaneGraph, fixed: frozenset[int]) -> Optional[RearrangeablePair]:
    for z in graph.vertices():
        if z in fixed or graph.degree(z) != 3 or not _only_four_faces(graph, z):
            continue
        for partner in sorted(graph.neighbors(z)):
            if partner in fixed or graph.degree(partner) != 3:
                continue
            x, y = [w for w in graph.neighbors(z) if w != partner]
            face = _face_at_corner(graph, z, x, y)
            if face is None or partner in face.vertex_set:
                continue
            u = _rotate_to(face.boundary, z)[2]
            return _pair(x, y, u, face, ConfigKind.II, apex=z, partner=partner)
    return None


def _scan_config_three(graph: PlaneGraph, fixed: frozenset[int]) -> Optional[RearrangeablePair]:
    for z in graph.vertices():
        if z in fixed or graph.degree(z) != 4 or not _only_four_faces(graph, z):
            continue
        rot = graph.neighbors(z)
        for i in range(4):
            z1, z2 = rot[i], rot[(i + 2) % 4]
            if z1 in fixed or z2 in fixed:
                continue
            if graph.degree(z1) != 3 or graph.degree(z2) != 3 or not _only_four_faces(graph, z1):
                continue
            x, y = [w for w in graph.neighbors(z1) if w != z]
            face = _face_at_corner(graph, z1, x, y)
            if face is None or z in face.vertex_set:
                continue
            u = _rotate_to(face.boundary, z1)[2]
            return _pair(x, y, u, face, ConfigKind.III, apex=z1, partner=z2, hub=z)
    return None


def find_rearrangeable_pair(
    graph: PlaneGraph,
    boundary: Iterable[int],
    validated: bool = False,
) -> RearrangeablePair:
    """按 I、II、III 的顺序寻找可重排配置

    Args:
        graph: 郊区的并 G_P
        boundary: F 的顶点（外圈与内 5-面）
        validated: 输入是否已验证为非向上流动的 11-郊区

    Raises:
        StatementViolation: 已验证的输入上找不到配置
        HypothesisViolation: 未验证的输入上找不到配置
    """
    fixed = frozenset(boundary)
    for scan in (_scan_config_one, _scan_config_two, _scan_config_three):
        pair = scan(graph, fixed)
        if pair is not None:
            logger.debug("可重排配置 %s: x=%d y=%d", pair.config_kind.value, pair.x, pair.y)
            return pair
    message = "G_P 中没有 I、II、III 型配置"
    if validated:
        raise StatementViolation(ErrorCode.NO_CONFIGURATION, message)
    raise HypothesisViolation(ErrorCode.NO_CONFIGURATION, message)


def suburb_rearrangeable_pair(
    decomposition: FiveCycleDecomposition,
    suburb: Suburb,
) -> RearrangeablePair:
    """对非向上流动的 11-郊区给出可重排顶点对（原图编号）

    Raises:
        HypothesisViolation: 郊区长度不是 11 或它向上流动
    """
    if suburb.k != SUBURB_LENGTH or len(suburb.nodes) != SUBURB_LENGTH:
        raise HypothesisViolation(ErrorCode.HYPOTHESIS_VIOLATION, f"需要 {SUBURB_LENGTH}-郊区，得到 {suburb.k}")
    if is_upwardly_mobile(decomposition, suburb.nodes):
        raise HypothesisViolation(ErrorCode.HYPOTHESIS_VIOLATION, "郊区向上流动，引理不适用")

    union, vertex_map, boundary = suburb_piece(decomposition, suburb.nodes)
    local_pair = find_rearrangeable_pair(union, boundary, validated=True)

    def up(v: Optional[int]) -> Optional[int]:
        return None if v is None else vertex_map[v]

    a, b = local_pair.shared_face.darts[0]
    face = decomposition.graph.face_of_dart(vertex_map[a], vertex_map[b])
    return RearrangeablePair(
        x=vertex_map[local_pair.x],
        y=vertex_map[local_pair.y],
        u=vertex_map[local_pair.u],
        apex=vertex_map[local_pair.apex],
        partner=up(local_pair.partner),
        hub=up(local_pair.hub),
        shared_face=face,
        config_kind=local_pair.config_kind,
    )


def rearrange(graph: PlaneGraph, phi: Coloring, pair: RearrangeablePair) -> Coloring:
    """重新着色使共享 4-面变为双色，F 上颜色不变

    Raises:
        HypothesisViolation: φ(x) ≠ φ(y)（PRECOLOR_MISMATCH）或 φ 不正常
        StatementViolation: 重新着色后不再是正常着色
    """
    colors = _as_map(phi)
    if not is_proper(graph, colors) or any(v not in colors for v in graph.vertices()):
        raise HypothesisViolation(ErrorCode.IMPROPER_COLORING, "φ 不是全图正常着色")
    a = colors[pair.x]
    if a != colors[pair.y]:
        raise HypothesisViolation(
            ErrorCode.PRECOLOR_MISMATCH, f"φ({pair.x})={a} 与 φ({pair.y})={colors[pair.y]} 不同"
        )
    b = colors[pair.u]

    if pair.config_kind == ConfigKind.I:
        colors[pair.apex] = b
    elif pair.config_kind == ConfigKind.II:
        colors[pair.partner] = a
        colors[pair.apex] = b
    elif colors[pair.hub] != b:
        colors[pair.apex] = b
    else:
        colors[pair.partner] = 6 - a - b
        colors[pair.hub] = a
        colors[pair.apex] = b

    if not is_proper(graph, colors):
        raise StatementViolation(
            ErrorCode.STATEMENT_VIOLATION, f"{pair.config_kind.value} 型重新着色后不再是正常着色"
        )
    return Coloring(assignment=colors, total=True)


def suburb_chain(positions: Sequence[int]) -> PlaneGraph:
    """由位置序列 D 构造郊区链

    从 5-圈 u1…u5（编号 0…4）开始，第 i 步在当前内 5-面中新增顶点（编号 5+i），
    与当前位置 d_i−1、d_i+1 上的顶点相邻，并在内圈中取代位置 d_i。
    """
    graph = PlaneGraph(5, [[(v - 1) % 5, (v + 1) % 5] for v in range(5)])
    current = [0, 1, 2, 3, 4]
    for d in positions:
        if d < 1 or d > 5:
            raise HypothesisViolation(ErrorCode.BAD_PARAMS, f"位置 {d} 不在 1..5 中")
        inner = next(
            f for f in graph.faces
            if f.id != graph.outer_face_id and f.vertex_set == frozenset(current)
        )
        i = d - 1
        anchors = [current[(i - 1) % 5], current[(i + 1) % 5]]
        graph = graph.insert_vertex_in_face(inner.id, anchors)
        current[i] = graph.vertex_count - 1
    return graph


def chain_boundary(graph: PlaneGraph, positions: Sequence[int]) -> frozenset[int]:
    """郊区链的 F：外 5-圈与最终内 5-面的顶点"""
    current = [0, 1, 2, 3, 4]
    for step, d in enumerate(positions):
        current[d - 1] = 5 + step
    return frozenset(range(5)) | frozenset(current)
