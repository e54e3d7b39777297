# 平面图核心
"""以旋转系统表示的平面图：面提取、围长、三角形检测、弦与分离圈枚举"""

import logging
import math
from collections import deque
from typing import Iterable, Iterator, Optional, Sequence, Union

import networkx as nx

from .models import CycleRef, Face
from .utils import ErrorCode, HypothesisViolation


logger = logging.getLogger(__name__)

Dart = tuple[int, int]
OuterHint = Union[None, int, Dart]


class PlaneGraph:
    """平面图

    顶点为 0..n-1，rotations[v] 为 v 的邻居按顺时针排列的循环序列。
    构造后不可变：面、外面及其它派生量在构造时计算完毕。

    面遍历约定：有向边 (u→v) 的下一条为 (v→w)，w 为 v 处紧接 u 的顺时针后继；
    每个面位于其有向边的左侧。
    """

    def __init__(
        self,
        vertex_count: int,
        rotations: Sequence[Sequence[int]],
        outer_face_hint: OuterHint = None,
    ) -> None:
        """构造并验证平面图

        Args:
            vertex_count: 顶点数
            rotations: 每个顶点的顺时针邻居序列
            outer_face_hint: 外面的指定方式：面编号、有向边 (u, v)（取其左侧的面），
                或 None（顶点 0 第一条有向边所在的面）

        Raises:
            HypothesisViolation: 旋转系统不对称、含环或重边、非平面或外面不存在
        """
        if vertex_count < 0:
            raise HypothesisViolation(ErrorCode.BAD_PARAMS, f"顶点数 {vertex_count} 不能为负")
        if len(rotations) != vertex_count:
            raise HypothesisViolation(
                ErrorCode.BAD_PARAMS,
                f"旋转系统长度 {len(rotations)} 与顶点数 {vertex_count} 不一致"
            )

        self._n = vertex_count
        self._rot: tuple[tuple[int, ...], ...] = tuple(tuple(int(w) for w in r) for r in rotations)
        self._validate_rotations()

        self._pos: tuple[dict[int, int], ...] = tuple(
            {w: i for i, w in enumerate(r)} for r in self._rot
        )
        self._adj: tuple[frozenset[int], ...] = tuple(frozenset(r) for r in self._rot)
        self._edge_count = sum(len(r) for r in self._rot) // 2
        self._component_of, self._components = self._compute_components()

        raw_faces = self._trace_faces()
        self._check_euler(raw_faces)
        self._faces, self._dart_face, self._outer_id = self._finalize_faces(raw_faces, outer_face_hint)

    # ------------------------------------------------------------ 验证

    def _validate_rotations(self) -> None:
        n = self._n
        for v, rot in enumerate(self._rot):
            for w in rot:
                if w < 0 or w >= n:
                    raise HypothesisViolation(
                        ErrorCode.ID_OUT_OF_RANGE, f"顶点 {v} 的邻居 {w} 超出范围 0-{n - 1}"
                    )
                if w == v:
                    raise HypothesisViolation(ErrorCode.LOOP_OR_MULTIEDGE, f"顶点 {v} 上有环")
            if len(set(rot)) != len(rot):
                raise HypothesisViolation(ErrorCode.LOOP_OR_MULTIEDGE, f"顶点 {v} 处有重边")
        for v, rot in enumerate(self._rot):
            for w in rot:
                if v not in self._rot[w]:
                    raise HypothesisViolation(
                        ErrorCode.ASYMMETRIC_ROTATION,
                        f"顶点 {v} 列出了邻居 {w}，但顶点 {w} 没有列出 {v}"
                    )

    def _compute_components(self) -> tuple[list[int], list[frozenset[int]]]:
        component_of = [-1] * self._n
        components: list[frozenset[int]] = []
        for s in range(self._n):
            if component_of[s] != -1:
                continue
            idx = len(components)
            component_of[s] = idx
            members = [s]
            queue = deque([s])
            while queue:
                u = queue.popleft()
                for w in self._rot[u]:
                    if component_of[w] == -1:
                        component_of[w] = idx
                        members.append(w)
                        queue.append(w)
            components.append(frozenset(members))
        return component_of, components

    def _trace_faces(self) -> list[list[Dart]]:
        """按顶点 0 起的遍历顺序追踪所有面；孤立顶点得到一个空途径的伪面"""
        seen: set[Dart] = set()
        faces: list[list[Dart]] = []
        for v in range(self._n):
            if not self._rot[v]:
                faces.append([(v, v)])
                continue
            for w in self._rot[v]:
                if (v, w) in seen:
                    continue
                walk: list[Dart] = []
                dart = (v, w)
                while dart not in seen:
                    seen.add(dart)
                    walk.append(dart)
                    dart = self._next_dart(dart)
                faces.append(walk)
        return faces

    def _next_dart(self, dart: Dart) -> Dart:
        u, v = dart
        return v, self.successor(v, u)

    def _check_euler(self, raw_faces: list[list[Dart]]) -> None:
        faces_per_component = [0] * len(self._components)
        for walk in raw_faces:
            faces_per_component[self._component_of[walk[0][0]]] += 1
        for idx, members in enumerate(self._components):
            edges = sum(len(self._rot[v]) for v in members) // 2
            if len(members) - edges + faces_per_component[idx] != 2:
                raise HypothesisViolation(
                    ErrorCode.NON_PLANAR_ROTATION,
                    f"包含顶点 {min(members)} 的分支不满足欧拉公式，旋转系统不是平面嵌入"
                )

    def _finalize_faces(
        self,
        raw_faces: list[list[Dart]],
        hint: OuterHint,
    ) -> tuple[tuple[Face, ...], dict[Dart, int], int]:
        """确定外面，把其它连通分支的外面并入，重新编号"""
        first_dart_face: dict[Dart, int] = {}
        for idx, walk in enumerate(raw_faces):
            for dart in walk:
                first_dart_face[dart] = idx

        if hint is None:
            outer_raw = 0 if raw_faces else -1
        elif isinstance(hint, tuple):
            if tuple(hint) not in first_dart_face or hint[0] == hint[1]:
                raise HypothesisViolation(ErrorCode.BAD_OUTER_FACE, f"有向边 {hint} 不存在")
            outer_raw = first_dart_face[tuple(hint)]
        else:
            if hint < 0 or hint >= len(raw_faces):
                raise HypothesisViolation(
                    ErrorCode.BAD_OUTER_FACE, f"外面编号 {hint} 不存在（共 {len(raw_faces)} 个面）"
                )
            outer_raw = int(hint)

        merged_into_outer: list[int] = []
        if outer_raw >= 0 and len(self._components) > 1:
            outer_component = self._component_of[raw_faces[outer_raw][0][0]]
            for idx, members in enumerate(self._components):
                if idx == outer_component:
                    continue
                root = min(members)
                dart = (root, self._rot[root][0]) if self._rot[root] else (root, root)
                merged_into_outer.append(first_dart_face[dart])

        faces: list[Face] = []
        dart_face: dict[Dart, int] = {}
        outer_id = -1
        skip = set(merged_into_outer)
        for idx, walk in enumerate(raw_faces):
            if idx in skip:
                continue
            darts = list(walk)
            if idx == outer_raw:
                for extra in merged_into_outer:
                    darts.extend(raw_faces[extra])
                outer_id = len(faces)
            real = tuple(d for d in darts if d[0] != d[1])
            boundary = tuple(d[0] for d in darts)
            face = Face(id=len(faces), boundary=boundary, length=len(real), darts=real)
            for dart in real:
                dart_face[dart] = face.id
            faces.append(face)

        logger.debug("平面图: n=%d e=%d 面=%d 外面=%d", self._n, self._edge_count, len(faces), outer_id)
        return tuple(faces), dart_face, outer_id

    # ------------------------------------------------------------ 基本查询

    @property
    def vertex_count(self) -> int:
        return self._n

    @property
    def edge_count(self) -> int:
        return self._edge_count

    @property
    def rotations(self) -> tuple[tuple[int, ...], ...]:
        return self._rot

    @property
    def outer_face_id(self) -> int:
        return self._outer_id

    @property
    def outer_face(self) -> Face:
        return self._faces[self._outer_id]

    @property
    def faces(self) -> tuple[Face, ...]:
        return self._faces

    def raw_outer_index(self) -> int:
        """外面在合并前的追踪顺序中的编号（即可作为 outer_face_hint 重建本图的整数）"""
        raw = self._trace_faces()
        if not raw:
            return 0
        face = self.outer_face
        first = face.boundary[0]
        key = (first, first) if not self._rot[first] else face.darts[0]
        return next(i for i, walk in enumerate(raw) if key in walk)

    def face(self, face_id: int) -> Face:
        return self._faces[face_id]

    def face_of_dart(self, u: int, v: int) -> Face:
        """有向边 (u→v) 左侧的面"""
        return self._faces[self._dart_face[(u, v)]]

    def vertices(self) -> range:
        return range(self._n)

    def neighbors(self, v: int) -> tuple[int, ...]:
        """v 的邻居（顺时针顺序）"""
        return self._rot[v]

    def adjacency(self, v: int) -> frozenset[int]:
        return self._adj[v]

    def degree(self, v: int) -> int:
        return len(self._rot[v])

    def has_edge(self, u: int, v: int) -> bool:
        return v in self._adj[u]

    def edges(self) -> list[tuple[int, int]]:
        """所有边 (u, v)，u < v，按字典序"""
        return sorted((u, v) for u in range(self._n) for v in self._rot[u] if u < v)

    def successor(self, v: int, u: int) -> int:
        """v 处紧接 u 的顺时针邻居"""
        rot = self._rot[v]
        return rot[(self._pos[v][u] + 1) % len(rot)]

    def predecessor(self, v: int, u: int) -> int:
        """v 处紧靠 u 之前的顺时针邻居"""
        rot = self._rot[v]
        return rot[(self._pos[v][u] - 1) % len(rot)]

    def faces_at(self, v: int) -> list[int]:
        """v 处各角对应的面编号；第 i 个角位于 rotations[v][i-1] 与 rotations[v][i] 之间"""
        return [self._dart_face[(v, w)] for w in self._rot[v]]

    def components(self) -> list[frozenset[int]]:
        return list(self._components)

    def is_connected(self) -> bool:
        return len(self._components) <= 1

    def outer_vertices(self) -> frozenset[int]:
        return self.outer_face.vertex_set

    def is_on_outer_face(self, v: int) -> bool:
        return v in self.outer_face.vertex_set

    def edge_on_outer_face(self, u: int, v: int) -> bool:
        outer = self._outer_id
        return self._dart_face.get((u, v)) == outer or self._dart_face.get((v, u)) == outer

    def chords(self) -> list[tuple[int, int]]:
        """两端都在外面上、本身不在外面边界上的边"""
        outer = self.outer_vertices()
        return [
            (u, v) for u, v in self.edges()
            if u in outer and v in outer and not self.edge_on_outer_face(u, v)
        ]

    def face_length_counts(self) -> dict[int, int]:
        """s_i：长度恰为 i 的面的个数"""
        counts: dict[int, int] = {}
        for face in self._faces:
            counts[face.length] = counts.get(face.length, 0) + 1
        return counts

    # ------------------------------------------------------------ 圈与围长

    def girth(self) -> Optional[int]:
        """最短圈长度；森林返回 None"""
        best: Optional[int] = None
        for s in range(self._n):
            dist = {s: 0}
            parent = {s: -1}
            queue = deque([s])
            while queue:
                u = queue.popleft()
                if best is not None and 2 * dist[u] + 1 >= best:
                    break
                for w in self._rot[u]:
                    if w not in dist:
                        dist[w] = dist[u] + 1
                        parent[w] = u
                        queue.append(w)
                    elif parent[u] != w:
                        length = dist[u] + dist[w] + 1
                        if best is None or length < best:
                            best = length
        return best

    def triangles(self) -> Iterator[tuple[int, int, int]]:
        for u, v in self.edges():
            for w in self._adj[u] & self._adj[v]:
                if w > v:
                    yield (u, v, w)

    def is_triangle_free(self) -> bool:
        return next(self.triangles(), None) is None

    def cycles_of_length(self, length: int) -> list[tuple[int, ...]]:
        """所有长为 length 的圈，规范形式：从最小顶点出发，第二个顶点小于最后一个"""
        if length < 3:
            return []
        found: list[tuple[int, ...]] = []
        path: list[int] = []
        on_path: set[int] = set()

        def extend(s: int) -> None:
            last = path[-1]
            if len(path) == length:
                if s in self._adj[last] and path[1] < path[-1]:
                    found.append(tuple(path))
                return
            for w in self._rot[last]:
                if w > s and w not in on_path:
                    path.append(w)
                    on_path.add(w)
                    extend(s)
                    path.pop()
                    on_path.discard(w)

        for s in range(self._n):
            path[:] = [s]
            on_path.clear()
            on_path.add(s)
            extend(s)
        return sorted(found)

    def is_cycle(self, cycle: Sequence[int]) -> bool:
        k = len(cycle)
        if k < 3 or len(set(cycle)) != k:
            return False
        return all(self.has_edge(cycle[i], cycle[(i + 1) % k]) for i in range(k))

    def cycle_regions(self, cycle: Sequence[int]) -> CycleRef:
        """计算圈两侧的顶点与面，并以外面所在一侧为外部

        Args:
            cycle: 圈的顶点序列

        Returns:
            CycleRef: 含内部顶点集、外部顶点集与内部面集

        Raises:
            HypothesisViolation: 序列不构成圈
        """
        cycle = tuple(cycle)
        if not self.is_cycle(cycle):
            raise HypothesisViolation(ErrorCode.BAD_PARAMS, f"顶点序列 {list(cycle)} 不是圈")
        k = len(cycle)
        index = {c: i for i, c in enumerate(cycle)}

        vertex_side: dict[int, str] = {}
        chord_side: dict[Dart, str] = {}
        queue: deque[int] = deque()
        for i, c in enumerate(cycle):
            prev, nxt = cycle[i - 1], cycle[(i + 1) % k]
            rot = self._rot[c]
            start = self._pos[c][prev]
            side = "left"
            for step in range(1, len(rot)):
                w = rot[(start + step) % len(rot)]
                if w == nxt:
                    side = "right"
                    continue
                if w in index:
                    chord_side[(c, w)] = side
                elif w not in vertex_side:
                    vertex_side[w] = side
                    queue.append(w)
        while queue:
            u = queue.popleft()
            for w in self._rot[u]:
                if w not in index and w not in vertex_side:
                    vertex_side[w] = vertex_side[u]
                    queue.append(w)

        def dart_side(a: int, b: int) -> Optional[str]:
            if a in vertex_side:
                return vertex_side[a]
            if b in vertex_side:
                return vertex_side[b]
            if a in index and b in index:
                i = index[a]
                if cycle[(i + 1) % k] == b:
                    return "left"
                if cycle[i - 1] == b:
                    return "right"
                return chord_side.get((a, b))
            return None

        face_side: dict[int, str] = {}
        for face in self._faces:
            for a, b in face.darts:
                side = dart_side(a, b)
                if side is not None:
                    face_side[face.id] = side
                    break

        outer_side = face_side.get(self._outer_id, "right")
        inner_side = "left" if outer_side == "right" else "right"
        interior = frozenset(v for v, s in vertex_side.items() if s == inner_side)
        exterior = frozenset(v for v in range(self._n) if v not in index and v not in interior)
        interior_faces = frozenset(f for f, s in face_side.items() if s == inner_side)
        return CycleRef(
            vertices=cycle,
            separating=bool(interior) and bool(exterior),
            interior=interior,
            exterior=exterior,
            interior_faces=interior_faces,
            interior_side=inner_side,
        )

    # ------------------------------------------------------------ 派生图

    def induced_subgraph(
        self,
        vertices: Iterable[int],
        outer_dart: Optional[Dart] = None,
    ) -> tuple["PlaneGraph", tuple[int, ...]]:
        """诱导子图（继承旋转系统）

        Args:
            vertices: 保留的顶点
            outer_dart: 原编号下的有向边，其左侧的面成为子图的外面；
                缺省时取原外面上第一条两端都保留的有向边

        Returns:
            tuple: (子图, 新编号 -> 原编号)
        """
        keep = sorted(set(vertices))
        new_id = {old: i for i, old in enumerate(keep)}
        rotations = [[new_id[w] for w in self._rot[old] if w in new_id] for old in keep]

        hint: OuterHint = None
        if outer_dart is not None:
            hint = (new_id[outer_dart[0]], new_id[outer_dart[1]])
        else:
            for a, b in self.outer_face.darts:
                if a in new_id and b in new_id:
                    hint = (new_id[a], new_id[b])
                    break
        return PlaneGraph(len(keep), rotations, hint), tuple(keep)

    def delete_vertices(self, removed: Iterable[int]) -> tuple["PlaneGraph", tuple[int, ...]]:
        gone = set(removed)
        return self.induced_subgraph(v for v in range(self._n) if v not in gone)

    def insert_vertex_in_face(self, face_id: int, anchors: Sequence[int]) -> "PlaneGraph":
        """在面内新增一个顶点并与面上的若干顶点相连

        Args:
            face_id: 面编号
            anchors: 面边界上的顶点，按面途径顺序给出

        Returns:
            PlaneGraph: 新图，新顶点编号为 vertex_count
        """
        face = self._faces[face_id]
        new = self._n
        rotations = [list(r) for r in self._rot] + [[]]
        for a in anchors:
            entering = next((d for d in face.darts if d[1] == a), None)
            if entering is None:
                raise HypothesisViolation(ErrorCode.BAD_PARAMS, f"顶点 {a} 不在面 {face_id} 上")
            prev = entering[0]
            rot = rotations[a]
            rot.insert(rot.index(prev) + 1, new)
        # 面途径绕面内部逆时针，新顶点处的顺时针顺序与之相反
        rotations[new] = list(reversed(anchors))
        outer = self.outer_face.darts[0] if self.outer_face.darts else None
        if outer is not None and face_id == self._outer_id:
            outer = None
        return PlaneGraph(self._n + 1, rotations, outer)

    def to_networkx(self) -> nx.Graph:
        graph = nx.Graph()
        graph.add_nodes_from(range(self._n))
        graph.add_edges_from(self.edges())
        return graph

    # ------------------------------------------------------------ 杂项

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, PlaneGraph):
            return NotImplemented
        return (
            self._n == other._n
            and self._rot == other._rot
            and self._outer_id == other._outer_id
        )

    def __hash__(self) -> int:
        return hash((self._n, self._rot, self._outer_id))

    def __repr__(self) -> str:
        return f"PlaneGraph(n={self._n}, e={self._edge_count}, faces={len(self._faces)})"


def build_plane_graph(
    vertex_count: int,
    rotations: Sequence[Sequence[int]],
    outer_face_hint: OuterHint = None,
) -> PlaneGraph:
    """构造并验证平面图

    Args:
        vertex_count: 顶点数
        rotations: 每个顶点的顺时针邻居序列
        outer_face_hint: 面编号、有向边或 None

    Returns:
        PlaneGraph: 已计算面的平面图
    """
    return PlaneGraph(vertex_count, rotations, outer_face_hint)


def faces(graph: PlaneGraph) -> list[Face]:
    return list(graph.faces)


def girth(graph: PlaneGraph) -> Optional[int]:
    return graph.girth()


def find_separating_cycles(graph: PlaneGraph, length: int) -> list[CycleRef]:
    """给定长度的所有分离圈（两侧都含顶点），附内部顶点集"""
    result = []
    for cycle in graph.cycles_of_length(length):
        ref = graph.cycle_regions(cycle)
        if ref.separating:
            result.append(ref)
    logger.debug("长为 %d 的分离圈: %d 个", length, len(result))
    return result


def rotation_from_coordinates(
    vertex_count: int,
    edges: Iterable[tuple[int, int]],
    coords: Sequence[tuple[float, float]],
) -> list[list[int]]:
    """由直线画法的坐标计算顺时针旋转系统（按极角降序）"""
    adjacency: list[list[int]] = [[] for _ in range(vertex_count)]
    for u, v in edges:
        adjacency[u].append(v)
        adjacency[v].append(u)
    rotations = []
    for v in range(vertex_count):
        x0, y0 = coords[v]
        rotations.append(sorted(
            adjacency[v],
            key=lambda w: -math.atan2(coords[w][1] - y0, coords[w][0] - x0),
        ))
    return rotations


def outer_dart_from_coordinates(
    graph: PlaneGraph,
    coords: Sequence[tuple[float, float]],
) -> Optional[Dart]:
    """有向面积最小（顺时针绕行）的面即无界面，返回其一条有向边"""
    best: Optional[tuple[float, Dart]] = None
    for face in graph.faces:
        if not face.darts:
            continue
        area = 0.0
        for a, b in face.darts:
            area += coords[a][0] * coords[b][1] - coords[b][0] * coords[a][1]
        if best is None or area < best[0]:
            best = (area, face.darts[0])
    return best[1] if best else None


def cycle_graph(n: int) -> PlaneGraph:
    """n-圈 0-1-…-(n-1)"""
    if n < 3:
        raise HypothesisViolation(ErrorCode.BAD_PARAMS, f"圈长度 {n} 至少为 3")
    return PlaneGraph(n, [[(v - 1) % n, (v + 1) % n] for v in range(n)])


def path_graph(n: int) -> PlaneGraph:
    """n 个顶点的路"""
    if n < 1:
        raise HypothesisViolation(ErrorCode.BAD_PARAMS, f"路的顶点数 {n} 至少为 1")
    rotations = [[w for w in (v - 1, v + 1) if 0 <= w < n] for v in range(n)]
    return PlaneGraph(n, rotations)


def embed_straight_line(
    vertex_count: int,
    edges: Iterable[tuple[int, int]],
    coords: Sequence[tuple[float, float]],
) -> PlaneGraph:
    """由直线画法构造平面图，外面取无界面"""
    edges = list(edges)
    rotations = rotation_from_coordinates(vertex_count, edges, coords)
    draft = PlaneGraph(vertex_count, rotations)
    return PlaneGraph(vertex_count, rotations, outer_dart_from_coordinates(draft, coords))
