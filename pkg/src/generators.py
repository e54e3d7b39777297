# 实例生成器
"""生成嵌入的实例：基本图族、图示中的固定实例、随机实例与小规模穷举目录"""

import logging
import random
from fractions import Fraction
from functools import lru_cache
from typing import Any, Callable, Iterator, Optional

import networkx as nx

from .cogs import Cog, combined_cog, obstruction_cog
from .decomposition import chain_boundary, suburb_chain
from .models import CogRoles, ObstructionKind
from .plane_graph import PlaneGraph, cycle_graph, embed_straight_line, path_graph
from .readers.base import Instance
from .request_graph import RequestGraph, gadget_eq_to_neq, gadget_neq_to_eq, subdivide_for_tria
from .utils import MAX_EXHAUSTIVE_N, ErrorCode, HypothesisViolation, read_seed


logger = logging.getLogger(__name__)

# 阻碍齿轮上迫使全部需求得到颜色 3 的 P 的预着色
FORCING_PSI: dict[ObstructionKind, tuple[int, ...]] = {
    ObstructionKind.A: (1, 2),
    ObstructionKind.B: (1, 2, 1),
    ObstructionKind.C: (1, 3, 2),
    ObstructionKind.D: (3, 1, 3),
}

REQUEST_WEIGHTS = (Fraction(1), Fraction(1, 2), Fraction(3, 2), Fraction(2))


def _instance(graph: PlaneGraph, family: str, **metadata: Any) -> Instance:
    return Instance(graph=graph, metadata={"family": family, **metadata})


def _request_instance(rg: RequestGraph, family: str, **metadata: Any) -> Instance:
    return Instance(
        graph=rg.graph,
        requests_eq=tuple(sorted(rg.r_eq)),
        requests_neq=tuple(sorted(rg.r_neq)),
        weights=dict(rg.weights),
        metadata={"family": family, **metadata},
    )


def cog_instance(cog: Cog, family: str, psi: tuple[int, ...] = (), **metadata: Any) -> Instance:
    return Instance(
        graph=cog.graph,
        weights=dict(cog.weights),
        cog_roles=CogRoles(
            path=list(cog.path),
            s=sorted(cog.s),
            t=sorted(cog.t),
            precoloring=list(psi),
        ),
        metadata={"family": family, **metadata},
    )


def _positive(name: str, value: int, minimum: int = 1) -> int:
    if not isinstance(value, int) or value < minimum:
        raise HypothesisViolation(ErrorCode.BAD_PARAMS, f"参数 {name}={value} 必须是不小于 {minimum} 的整数")
    return value


# ---------------------------------------------------------------- 基本图族


def grid_graph(rows: int, cols: int) -> PlaneGraph:
    _positive("rows", rows)
    _positive("cols", cols)
    n = rows * cols
    edges = [(r * cols + c, r * cols + c + 1) for r in range(rows) for c in range(cols - 1)]
    edges += [(r * cols + c, (r + 1) * cols + c) for r in range(rows - 1) for c in range(cols)]
    coords = [(float(c), float(-r)) for r in range(rows) for c in range(cols)]
    return embed_straight_line(n, edges, coords)


def theta_graph(a: int, b: int, c: int) -> PlaneGraph:
    """两极点 0、1 之间三条内部不交的路，长度分别为 a、b、c"""
    lengths = [a, b, c]
    ordered = sorted(lengths)
    if ordered[0] < 1 or ordered[1] < 2 or ordered[0] + ordered[1] < 4:
        raise HypothesisViolation(ErrorCode.BAD_PARAMS, f"θ 图 ({a}, {b}, {c}) 会有重边或三角形")
    # 长度为 1 的路只能画在中间
    if 1 in (a, c):
        i = lengths.index(1)
        lengths[1], lengths[i] = lengths[i], lengths[1]
    edges: list[tuple[int, int]] = []
    coords: list[tuple[float, float]] = [(0.0, 0.0), (1.0, 0.0)]
    for height, length in zip((1.0, 0.0, -1.0), lengths):
        prev = 0
        for k in range(1, length):
            coords.append((k / length, height))
            edges.append((prev, len(coords) - 1))
            prev = len(coords) - 1
        edges.append((prev, 1))
    return embed_straight_line(len(coords), edges, coords)


def cube_graph() -> PlaneGraph:
    """3-方体：外正方形 0..3，内正方形 4..7"""
    coords = [(-2.0, 2.0), (2.0, 2.0), (2.0, -2.0), (-2.0, -2.0),
              (-1.0, 1.0), (1.0, 1.0), (1.0, -1.0), (-1.0, -1.0)]
    edges = [(i, (i + 1) % 4) for i in range(4)]
    edges += [(4 + i, 4 + (i + 1) % 4) for i in range(4)]
    edges += [(i, i + 4) for i in range(4)]
    return embed_straight_line(8, edges, coords)


def rhombic_dodecahedron() -> PlaneGraph:
    """立方体角点 0..7 与面心 8..13 组成的四边形剖分

    面心 8 + 2i + b 邻接第 i 位为 b 的四个角点。所有面都是 4-面，角点度 3、面心度 4，
    每个面心都给出 III 型可重排配置，且没有 I、II 型配置。
    """
    graph = nx.Graph()
    graph.add_nodes_from(range(14))
    for corner in range(8):
        for axis in range(3):
            graph.add_edge(corner, 8 + 2 * axis + ((corner >> axis) & 1))
    return _embed(graph)


# ---------------------------------------------------------------- 图示实例


def figure_gadget(kind: str) -> list[Instance]:
    """小工具图示：左侧的单请求实例及其替换结果"""
    graph = path_graph(3)
    if kind == "a":
        left = RequestGraph.create(graph, r_neq=[1])
        right = gadget_neq_to_eq(left)
    else:
        left = RequestGraph.create(graph, r_eq=[1])
        right = gadget_eq_to_neq(left)
    family = f"figure1{kind}"
    return [
        _request_instance(left, family, side="left"),
        _request_instance(right, family, side="right"),
    ]


# 顶点名称，编号即其下标
FIGURE2_NAMES = (
    "u1", "u2", "u3", "u4", "u5", "u5'", "u5''", "u4'", "u2'", "u3'",
    "w2", "w3", "w4", "w4'", "w5", "w6", "w7", "w8", "w9", "w10",
    "w6'", "w3'", "w7'", "w2'",
)

FIGURE2_COORDS = (
    (0.0, 2.5), (2.3776, 0.7725), (1.4695, -2.0225), (-1.4695, -2.0225), (-2.3776, 0.7725),
    (-1.807, 0.5871), (-1.2364, 0.4017), (-1.1168, -1.5371), (1.807, 0.5871), (0.7641, -1.0517),
    (0.9078, 5.2939), (-1.4689, 7.0207), (-3.8456, 5.2939), (-3.3456, 5.0439), (-2.7956, 3.6439),
    (-2.0073, 5.8323), (-2.5456, 4.6439), (-0.8189, 4.9689), (-0.3346, 2.8716), (-1.8493, 1.9054),
    (-1.0073, 5.8323), (-0.0497, 5.5631), (-0.9131, 5.4006), (-0.4343, 5.2660),
)

FIGURE2_EDGES = (
    ("u1", "u2"), ("u2", "u3"), ("u3", "u4"), ("u4", "u5"), ("u5", "u1"),
    ("u5''", "u4"), ("u4", "u5'"), ("u5'", "u1"), ("u1", "u5''"),
    ("u3", "u2'"), ("u2'", "u1"), ("u4'", "u3'"), ("u3'", "u2'"),
    ("u5''", "u4'"), ("u4'", "u3"),
    ("w6'", "w7'"), ("w7'", "w8"), ("w3'", "w2'"), ("w2'", "w8"),
    ("w3", "w6'"), ("w6'", "w7"), ("w6'", "w3'"), ("w3'", "w2"),
    ("u1", "w2"), ("w2", "w8"), ("w8", "w7"), ("w7", "u5"), ("u5", "w4"),
    ("w4", "w3"), ("w3", "w4'"), ("w4'", "w5"), ("w5", "w7"), ("w7", "w6"),
    ("w6", "w3"), ("w3", "w2"),
    ("w2", "w9"), ("w9", "u5"), ("u5", "w4'"),
    ("w7", "w10"), ("w10", "w9"),
)


def figure2_graph() -> PlaneGraph:
    """带极大 5-圈分解示例的图（24 个顶点，直线画法取自图示）"""
    index = {name: i for i, name in enumerate(FIGURE2_NAMES)}
    edges = [(index[a], index[b]) for a, b in FIGURE2_EDGES]
    return embed_straight_line(len(FIGURE2_NAMES), edges, FIGURE2_COORDS)


# ---------------------------------------------------------------- 随机实例


def _planar_with(graph: nx.Graph, u: int, neighbors: list[int]) -> bool:
    trial = graph.copy()
    trial.add_edges_from((u, w) for w in neighbors)
    return nx.check_planarity(trial)[0]


def _embed(graph: nx.Graph) -> PlaneGraph:
    """取 networkx 平面嵌入的顺时针邻居序作为旋转系统"""
    planar, embedding = nx.check_planarity(graph)
    if not planar:
        raise HypothesisViolation(ErrorCode.NON_PLANAR_ROTATION, "图不是平面图")
    n = graph.number_of_nodes()
    rotations = [list(embedding.neighbors_cw_order(v)) if graph.degree(v) else [] for v in range(n)]
    return PlaneGraph(n, rotations)


def random_tfp_graph(seed: int, n: int, extra_edges: Optional[int] = None) -> PlaneGraph:
    """可复现的随机连通三角形自由平面图

    逐个加入顶点并连到 1–3 个两两不相邻的已有顶点，再尝试加入若干条两端无公共邻居的边。
    """
    _positive("n", n)
    rng = random.Random(seed)
    graph = nx.Graph()
    graph.add_node(0)
    for u in range(1, n):
        vertices = list(range(u))
        while True:
            size = rng.randint(1, min(3, u))
            chosen = rng.sample(vertices, size)
            independent = all(not graph.has_edge(a, b) for i, a in enumerate(chosen) for b in chosen[i + 1:])
            if independent and _planar_with(graph, u, chosen):
                break
        graph.add_edges_from((u, w) for w in chosen)
    attempts = n if extra_edges is None else extra_edges
    for _ in range(attempts):
        a, b = rng.sample(range(n), 2) if n >= 2 else (0, 0)
        if a == b or graph.has_edge(a, b) or set(graph[a]) & set(graph[b]):
            continue
        if _planar_with(graph, a, [b]):
            graph.add_edge(a, b)
    return _embed(graph)


def random_request_graph(seed: int, n: int, k: int) -> RequestGraph:
    """随机请求实例：n − k 个顶点的随机图上细分 k 条不同的边作为请求"""
    _positive("k", k, minimum=0)
    if n - k < 2:
        raise HypothesisViolation(ErrorCode.BAD_PARAMS, f"n={n} 太小，放不下 {k} 个请求")
    rng = random.Random(seed)
    base = random_tfp_graph(rng.randrange(2 ** 31), n - k)
    edges = base.edges()
    if len(edges) < k:
        raise HypothesisViolation(ErrorCode.BAD_PARAMS, f"底图只有 {len(edges)} 条边，放不下 {k} 个请求")
    subdivided = subdivide_for_tria(base, rng.sample(edges, k))

    r_eq: list[int] = []
    r_neq: list[int] = []
    for r in sorted(subdivided.requests):
        (r_eq if rng.random() < 0.5 else r_neq).append(r)
    weights = {r: rng.choice(REQUEST_WEIGHTS) for r in sorted(subdivided.requests)}
    return RequestGraph.create(subdivided.graph, r_eq, r_neq, weights)


# ---------------------------------------------------------------- 穷举目录


@lru_cache(maxsize=None)
def _connected_tfp(n: int) -> tuple[nx.Graph, ...]:
    """n 个顶点的全部连通三角形自由平面图（同构类代表）

    每个这样的图都有一个非割点，其邻域独立；因此由 n − 1 的目录加一个与独立集相邻的顶点得到。
    """
    if n <= 0:
        return ()
    if n == 1:
        single = nx.Graph()
        single.add_node(0)
        return (single,)
    buckets: dict[str, list[nx.Graph]] = {}
    found: list[nx.Graph] = []
    for base in _connected_tfp(n - 1):
        for subset in _independent_subsets(base):
            graph = base.copy()
            graph.add_edges_from((n - 1, w) for w in subset)
            if not nx.check_planarity(graph)[0]:
                continue
            key = nx.weisfeiler_lehman_graph_hash(graph, iterations=3)
            bucket = buckets.setdefault(key, [])
            if any(nx.is_isomorphic(graph, other) for other in bucket):
                continue
            bucket.append(graph)
            found.append(graph)
    logger.debug("穷举目录: n=%d 共 %d 个图", n, len(found))
    return tuple(found)


def _independent_subsets(graph: nx.Graph) -> Iterator[tuple[int, ...]]:
    """全部非空独立集（按字典序）"""
    vertices = sorted(graph.nodes)

    def extend(start: int, chosen: list[int]) -> Iterator[tuple[int, ...]]:
        for i in range(start, len(vertices)):
            v = vertices[i]
            if any(graph.has_edge(v, w) for w in chosen):
                continue
            chosen.append(v)
            yield tuple(chosen)
            yield from extend(i + 1, chosen)
            chosen.pop()

    yield from extend(0, [])


def exhaustive_tfp(max_n: int, min_n: int = 1) -> list[PlaneGraph]:
    """顶点数在 [min_n, max_n] 内的全部连通三角形自由平面图，每个取一种嵌入

    Raises:
        HypothesisViolation: max_n 超过内部穷举上限（更大的目录请用外部 planar_code 文件）
    """
    if max_n > MAX_EXHAUSTIVE_N:
        raise HypothesisViolation(
            ErrorCode.BAD_PARAMS,
            f"内部穷举只支持 n ≤ {MAX_EXHAUSTIVE_N}，更大的目录请通过 --input 提供 planar_code 文件"
        )
    return [_embed(graph) for n in range(max(min_n, 1), max_n + 1) for graph in _connected_tfp(n)]


# ---------------------------------------------------------------- 统一入口


def _family_cycle(n: int = 5) -> list[Instance]:
    return [_instance(cycle_graph(n), "cycle", n=n)]


def _family_path(n: int = 4) -> list[Instance]:
    return [_instance(path_graph(_positive("n", n)), "path", n=n)]


def _family_grid(rows: int = 3, cols: int = 3) -> list[Instance]:
    return [_instance(grid_graph(rows, cols), "grid", rows=rows, cols=cols)]


def _family_theta(a: int = 2, b: int = 3, c: int = 4) -> list[Instance]:
    return [_instance(theta_graph(a, b, c), "theta", a=a, b=b, c=c)]


def _family_cube() -> list[Instance]:
    return [_instance(cube_graph(), "cube")]


def _family_rhombic_dodecahedron() -> list[Instance]:
    return [_instance(rhombic_dodecahedron(), "rhombic_dodecahedron")]


def _family_figure2() -> list[Instance]:
    return [_instance(figure2_graph(), "figure2", names=list(FIGURE2_NAMES))]


def _family_obstruction(kind: ObstructionKind) -> Callable[[], list[Instance]]:
    def build() -> list[Instance]:
        family = f"figure3{kind.value.lower()}"
        return [cog_instance(obstruction_cog(kind), family, FORCING_PSI[kind])]
    return build


def _family_figure4() -> list[Instance]:
    return [cog_instance(combined_cog(), "figure4", FORCING_PSI[ObstructionKind.D])]


def _family_suburb(positions: Optional[list[int]] = None) -> list[Instance]:
    positions = list(positions or [2, 1, 2, 3, 2, 1, 2, 3, 2, 1, 2, 3])
    graph = suburb_chain(positions)
    return [_instance(graph, "suburb", positions=positions, fixed=sorted(chain_boundary(graph, positions)))]


def _family_random_tfp(n: int = 8, seed: Optional[int] = None, count: int = 1) -> list[Instance]:
    seed = read_seed() if seed is None else seed
    return [
        _instance(random_tfp_graph(seed + i, n), "random_tfp", seed=seed + i, n=n)
        for i in range(_positive("count", count))
    ]


def _family_random_requests(n: int = 10, k: int = 3, seed: Optional[int] = None, count: int = 1) -> list[Instance]:
    seed = read_seed() if seed is None else seed
    return [
        _request_instance(random_request_graph(seed + i, n, k), "random_requests", seed=seed + i, n=n, k=k)
        for i in range(_positive("count", count))
    ]


def _family_exhaustive(max_n: int = 6, min_n: int = 1) -> list[Instance]:
    return [_instance(graph, "exhaustive_tfp") for graph in exhaustive_tfp(max_n, min_n)]


FAMILIES: dict[str, Callable[..., list[Instance]]] = {
    "cycle": _family_cycle,
    "path": _family_path,
    "grid": _family_grid,
    "theta": _family_theta,
    "cube": _family_cube,
    "rhombic_dodecahedron": _family_rhombic_dodecahedron,
    "figure1a": lambda: figure_gadget("a"),
    "figure1b": lambda: figure_gadget("b"),
    "figure2": _family_figure2,
    "figure3a": _family_obstruction(ObstructionKind.A),
    "figure3b": _family_obstruction(ObstructionKind.B),
    "figure3c": _family_obstruction(ObstructionKind.C),
    "figure3d": _family_obstruction(ObstructionKind.D),
    "figure4": _family_figure4,
    "suburb": _family_suburb,
    "random_tfp": _family_random_tfp,
    "random_requests": _family_random_requests,
    "exhaustive_tfp": _family_exhaustive,
}


def generate(family: str, **params: Any) -> list[Instance]:
    """按图族名生成实例

    Raises:
        HypothesisViolation: 未知图族或参数不合法（BAD_PARAMS）
    """
    builder = FAMILIES.get(family)
    if builder is None:
        raise HypothesisViolation(
            ErrorCode.BAD_PARAMS,
            f"未知图族 '{family}'。支持的图族: {', '.join(FAMILIES)}"
        )
    try:
        instances = builder(**params)
    except TypeError as e:
        raise HypothesisViolation(ErrorCode.BAD_PARAMS, f"图族 '{family}' 的参数不合法: {e}") from e
    logger.debug("生成 %s: %d 个实例", family, len(instances))
    return instances
