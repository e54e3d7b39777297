# 齿轮
"""齿轮 (G, P, S, T, w)：合法性与打磨检查、阻碍模式检测、弱 2-弦与 Q-分量、
需求比例的精确最优化，以及"请求集中在一个顶点"的完整流程
"""

import logging
import math
from fractions import Fraction
from typing import Iterable, Mapping, Optional, Sequence, Union

import networkx as nx
from networkx.algorithms.isomorphism import GraphMatcher
from pydantic import BaseModel, ConfigDict, Field

from .coloring import _as_map, enumerate_colorings
from .models import (
    AlphaReport,
    CogReport,
    Coloring,
    DemandClassification,
    ObstructionKind,
    ObstructionMatch,
    SatisfactionResult,
)
from .plane_graph import PlaneGraph, embed_straight_line
from .request_graph import RequestGraph, satisfied_fraction
from .utils import (
    ALPHA_0,
    ALPHA_1,
    COLORS,
    ErrorCode,
    HypothesisViolation,
    StatementViolation,
)


logger = logging.getLogger(__name__)

PsiLike = Union[None, Coloring, Mapping[int, int], Sequence[int]]


class Cog(BaseModel):
    """齿轮 (G, P, S, T, w)

    origin 记录新编号到来源图编号的映射（Q-分量等派生齿轮使用），为空表示恒等。
    """
    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    graph: PlaneGraph
    path: tuple[int, ...] = Field(default=(), description="预着色路 P")
    s: frozenset[int] = Field(default_factory=frozenset, description="只能用颜色 1、2 的顶点")
    t: frozenset[int] = Field(default_factory=frozenset, description="需求")
    weights: dict[int, Fraction] = Field(default_factory=dict)
    origin: tuple[int, ...] = ()

    @classmethod
    def create(
        cls,
        graph: PlaneGraph,
        path: Iterable[int] = (),
        s: Iterable[int] = (),
        t: Iterable[int] = (),
        weights: Optional[Mapping[int, Fraction]] = None,
        origin: Sequence[int] = (),
    ) -> "Cog":
        """构造齿轮；需求权重缺省为 1（其余不变量由 validate_cog 报告）

        Raises:
            HypothesisViolation: 顶点编号越界
        """
        path = tuple(path)
        s_set, t_set = frozenset(s), frozenset(t)
        for v in (*path, *s_set, *t_set):
            if v < 0 or v >= graph.vertex_count:
                raise HypothesisViolation(ErrorCode.ID_OUT_OF_RANGE, f"齿轮顶点 {v} 不存在")
        given = dict(weights or {})
        resolved = {z: Fraction(given.get(z, 1)) for z in sorted(t_set)}
        return cls(graph=graph, path=path, s=s_set, t=t_set, weights=resolved, origin=tuple(origin))

    @property
    def total_weight(self) -> Fraction:
        return sum(self.weights.values(), Fraction(0))

    def role(self, v: int) -> str:
        if v in self.path:
            return "P"
        if v in self.s:
            return "S"
        if v in self.t:
            return "T"
        return "O"

    def original(self, v: int) -> int:
        return self.origin[v] if self.origin else v


# ---------------------------------------------------------------- 合法性


def validate_cog(cog: Cog) -> CogReport:
    """逐条检查齿轮与平面齿轮的不变量"""
    graph = cog.graph
    checks: dict[str, bool] = {}
    witnesses: dict[str, list[int]] = {}

    def record(name: str, witness: Optional[list[int]]) -> None:
        checks[name] = witness is None
        if witness is not None:
            witnesses[name] = witness

    record("s_t_disjoint", sorted(cog.s & cog.t) or None)
    record("path_disjoint", sorted(set(cog.path) & (cog.s | cog.t)) or None)
    s_edge = next(([u, v] for u, v in graph.edges() if u in cog.s and v in cog.s), None)
    record("s_independent", s_edge)

    path_bad = None
    if len(set(cog.path)) != len(cog.path):
        path_bad = list(cog.path)
    else:
        path_bad = next(([a, b] for a, b in zip(cog.path, cog.path[1:]) if not graph.has_edge(a, b)), None)
    record("path_is_path", path_bad)

    record("weights_positive", sorted(
        z for z in cog.t if cog.weights.get(z, Fraction(0)) <= 0
    ) or None)

    off_outer = next(([v] for v in cog.path if not graph.is_on_outer_face(v)), None)
    if off_outer is None:
        off_outer = next(
            ([a, b] for a, b in zip(cog.path, cog.path[1:])
             if graph.has_edge(a, b) and not graph.edge_on_outer_face(a, b)),
            None,
        )
    record("path_on_outer_face", off_outer)
    record("roles_on_outer_face", sorted(
        v for v in cog.s | cog.t if not graph.is_on_outer_face(v)
    ) or None)
    return CogReport(checks=checks, witnesses=witnesses)


def _tst_path(cog: Cog) -> Optional[list[int]]:
    for v in sorted(cog.s):
        demands = sorted(w for w in cog.graph.neighbors(v) if w in cog.t)
        if len(demands) >= 2:
            return [demands[0], v, demands[1]]
    return None


def is_polished(cog: Cog) -> bool:
    """T 独立，且不存在 T–S–T 路"""
    if any(u in cog.t and v in cog.t for u, v in cog.graph.edges()):
        return False
    return _tst_path(cog) is None


def chords(cog: Cog) -> list[tuple[int, int]]:
    return cog.graph.chords()


# ---------------------------------------------------------------- 阻碍模式

# 圈上的角色依次排列；(d) 额外有一条弦连接两个普通顶点
PATTERNS: dict[ObstructionKind, tuple[tuple[str, ...], tuple[tuple[int, int], ...]]] = {
    ObstructionKind.A: (("p1", "p2", "s1", "t", "s2"), ()),
    ObstructionKind.B: (("p1", "p2", "p3", "t", "s"), ()),
    ObstructionKind.C: (("p1", "p2", "p3", "s1", "t", "s2"), ()),
    ObstructionKind.D: (("p1", "p2", "p3", "a", "s1", "t", "s2", "b"), ((3, 7),)),
}


def _label_role(label: str) -> str:
    return {"p": "P", "s": "S", "t": "T"}.get(label[0], "O")


def pattern_graph(kind: ObstructionKind) -> nx.Graph:
    labels, extra = PATTERNS[kind]
    n = len(labels)
    pattern = nx.cycle_graph(n)
    pattern.add_edges_from(extra)
    nx.set_node_attributes(pattern, {i: _label_role(label) for i, label in enumerate(labels)}, "role")
    nx.set_node_attributes(pattern, dict(enumerate(labels)), "label")
    return pattern


def _role_match(cog_node: dict, pattern_node: dict) -> bool:
    wanted = pattern_node["role"]
    have = cog_node["role"]
    if wanted == "O":
        # 子齿轮可以丢弃 S、T 角色，但 P 必须保留
        return have != "P"
    return wanted == have


def detect_obstructions(cog: Cog) -> list[ObstructionMatch]:
    """找出四种阻碍模式作为子齿轮的全部嵌入（按边集去重）"""
    host = cog.graph.to_networkx()
    nx.set_node_attributes(host, {v: cog.role(v) for v in host.nodes}, "role")

    matches: list[ObstructionMatch] = []
    seen: set[tuple[ObstructionKind, frozenset]] = set()
    for kind in ObstructionKind:
        pattern = pattern_graph(kind)
        matcher = GraphMatcher(host, pattern, node_match=_role_match)
        for mapping in matcher.subgraph_monomorphisms_iter():
            inverse = {p: g for g, p in mapping.items()}
            edge_set = frozenset(frozenset((inverse[a], inverse[b])) for a, b in pattern.edges)
            if (kind, edge_set) in seen:
                continue
            seen.add((kind, edge_set))
            labels = nx.get_node_attributes(pattern, "label")
            matches.append(ObstructionMatch(
                kind=kind,
                vertex_map={labels[p]: g for p, g in sorted(inverse.items())},
            ))
    matches.sort(key=lambda m: (m.kind.value, sorted(m.vertex_map.values())))
    logger.debug("阻碍模式: %d 个", len(matches))
    return matches


# ---------------------------------------------------------------- Q-分量


def _check_splitting_path(graph: PlaneGraph, q: Sequence[int]) -> None:
    q = list(q)
    if len(q) < 2 or len(set(q)) != len(q):
        raise HypothesisViolation(ErrorCode.Q_NOT_SPLITTING, f"Q={q} 不是路")
    for i, a in enumerate(q):
        for j in range(i + 1, len(q)):
            adjacent = graph.has_edge(a, q[j])
            if (j == i + 1) != adjacent:
                raise HypothesisViolation(ErrorCode.Q_NOT_SPLITTING, f"Q={q} 不是诱导路")
    if not graph.is_on_outer_face(q[0]) or not graph.is_on_outer_face(q[-1]):
        raise HypothesisViolation(ErrorCode.Q_NOT_SPLITTING, f"Q={q} 的端点不在外面上")
    if any(graph.is_on_outer_face(v) for v in q[1:-1]):
        raise HypothesisViolation(ErrorCode.Q_NOT_SPLITTING, f"Q={q} 的内部顶点在外面上")
    if any(graph.edge_on_outer_face(a, b) for a, b in zip(q, q[1:])):
        raise HypothesisViolation(ErrorCode.Q_NOT_SPLITTING, f"Q={q} 的边在外面边界上")


def _split(cog: Cog, q: Sequence[int]) -> tuple[frozenset[int], frozenset[int]]:
    """G₁、G₂ 的顶点集（P 所在的一侧为 G₁）"""
    graph = cog.graph
    _check_splitting_path(graph, q)
    q_set = set(q)
    rest = graph.to_networkx()
    rest.remove_nodes_from(q_set)
    components = [frozenset(c) for c in nx.connected_components(rest)]
    anchors = set(cog.path) - q_set
    if anchors:
        first = [c for c in components if c & anchors]
    else:
        smallest = min((v for v in graph.vertices() if v not in q_set), default=None)
        first = [c for c in components if smallest in c]
    second = [c for c in components if c not in first]
    if not first or not second:
        raise HypothesisViolation(ErrorCode.Q_NOT_SPLITTING, f"Q={list(q)} 没有把齿轮分成两部分")
    side1 = frozenset(q_set).union(*first)
    side2 = frozenset(q_set).union(*second)
    return side1, side2


def _sub_cog(cog: Cog, vertices: frozenset[int], path: Sequence[int], q: frozenset[int]) -> Cog:
    graph = cog.graph
    dart = next(
        ((a, b) for a, b in graph.outer_face.darts
         if a in vertices and b in vertices and not (a in q and b in q)),
        None,
    )
    sub, old_ids = graph.induced_subgraph(vertices, dart)
    new_id = {old: i for i, old in enumerate(old_ids)}
    s = [new_id[v] for v in cog.s if v in vertices and v not in q]
    t = [v for v in cog.t if v in vertices and v not in q]
    return Cog.create(
        sub,
        path=[new_id[v] for v in path],
        s=s,
        t=[new_id[v] for v in t],
        weights={new_id[v]: cog.weights[v] for v in t},
        origin=[cog.original(v) for v in old_ids],
    )


def q_components(cog: Cog, q: Sequence[int]) -> tuple[Cog, Cog]:
    """沿 Q 切开齿轮：C₁ 含 P，C₂ 被 Q 切下并以 Q 为预着色路

    C₁ 保留 Q 上的 S、T 角色，C₂ 中 Q 的顶点只属于 P。

    Raises:
        HypothesisViolation: Q 不是合乎定义的分割路（Q_NOT_SPLITTING）
    """
    side1, side2 = _split(cog, q)
    first = _sub_cog(cog, side1, cog.path, frozenset())
    second = _sub_cog(cog, side2, list(q), frozenset(q))
    logger.debug("Q-分量: |G₁|=%d |G₂|=%d", len(side1), len(side2))
    return first, second


def weak_2chords(cog: Cog) -> list[tuple[int, int, int]]:
    """所有弱 2-弦 u–v–z（u < z，至少一端属于 S ∪ T，且确实分割齿轮）"""
    graph = cog.graph
    roles = cog.s | cog.t
    found: list[tuple[int, int, int]] = []
    for v in graph.vertices():
        if graph.is_on_outer_face(v):
            continue
        ends = sorted(w for w in graph.neighbors(v) if graph.is_on_outer_face(w))
        for i, u in enumerate(ends):
            for z in ends[i + 1:]:
                if not (u in roles or z in roles):
                    continue
                try:
                    _split(cog, (u, v, z))
                except HypothesisViolation:
                    continue
                found.append((u, v, z))
    return sorted(found)


# ---------------------------------------------------------------- 需求比例


def _psi_map(cog: Cog, psi: PsiLike) -> dict[int, int]:
    if psi is None:
        colors: dict[int, int] = {}
    elif isinstance(psi, (Coloring, Mapping)):
        colors = _as_map(psi)
    else:
        values = list(psi)
        if len(values) != len(cog.path):
            raise HypothesisViolation(ErrorCode.BAD_PRECOLORING, f"ψ 有 {len(values)} 个颜色，P 有 {len(cog.path)} 个顶点")
        colors = dict(zip(cog.path, values))
    if set(colors) != set(cog.path):
        raise HypothesisViolation(ErrorCode.BAD_PRECOLORING, "ψ 的定义域必须恰为 V(P)")
    if any(c not in COLORS for c in colors.values()):
        raise HypothesisViolation(ErrorCode.BAD_PRECOLORING, "ψ 的颜色必须在 {1,2,3} 中")
    for a, b in zip(cog.path, cog.path[1:]):
        if colors[a] == colors[b]:
            raise HypothesisViolation(ErrorCode.BAD_PRECOLORING, f"ψ 在 P 的边 ({a}, {b}) 上不正常")
    return colors


def best_demand_fraction(cog: Cog, psi: PsiLike = None) -> tuple[Fraction, Coloring]:
    """精确穷举：扩展 ψ 且 S 只用颜色 1、2 的全部 3-着色中，满足需求权重比例的最大值

    Args:
        cog: 齿轮
        psi: P 上的正常 3-着色（映射、Coloring 或与 P 对齐的颜色序列）

    Returns:
        tuple: (最大比例, 达到它的着色)；T 为空时比例为 1

    Raises:
        HypothesisViolation: ψ 不正常（BAD_PRECOLORING）或不存在这样的着色（NO_COG_COLORING）
    """
    colors = _psi_map(cog, psi)
    domains = {v: (1, 2) for v in cog.s}
    total = cog.total_weight
    best: Optional[tuple[Fraction, Coloring]] = None
    for coloring in enumerate_colorings(cog.graph, colors, domains=domains):
        satisfied = sum(
            (cog.weights[z] for z in cog.t if coloring.assignment[z] != 3),
            Fraction(0),
        )
        if best is None or satisfied > best[0]:
            best = (satisfied, Coloring(assignment=dict(coloring.assignment), total=True))
            if satisfied == total:
                break
    if best is None:
        raise HypothesisViolation(ErrorCode.NO_COG_COLORING, "ψ 不能扩展为 S 只用颜色 1、2 的 3-着色")
    satisfied, witness = best
    fraction = satisfied / total if total else Fraction(1)
    logger.debug("最佳需求比例: %s", fraction)
    return fraction, witness


def verify_alpha_lemmas(cog: Cog, psi: PsiLike = None) -> AlphaReport:
    """检查两个 α 引理的前提，前提成立时核对最佳比例不低于相应常数

    Raises:
        HypothesisViolation: 齿轮本身不合法，或 ψ 不正常
        StatementViolation: 某个引理的前提成立而比例低于常数
    """
    report = validate_cog(cog)
    if not report.valid:
        failed = [k for k, ok in report.checks.items() if not ok]
        raise HypothesisViolation(ErrorCode.HYPOTHESIS_VIOLATION, f"不是合法的平面齿轮: {failed}")

    graph = cog.graph
    witnesses: dict[str, list[int]] = {}
    girth = graph.girth()
    obstructions = detect_obstructions(cog)
    if obstructions:
        witnesses["obstruction"] = sorted(obstructions[0].vertex_map.values())
    polished = is_polished(cog)
    if not polished:
        witnesses["polished"] = _tst_path(cog) or next(
            [u, v] for u, v in graph.edges() if u in cog.t and v in cog.t
        )
    if girth is not None and girth < 5:
        witnesses["girth"] = list(next(
            c for length in range(3, 5) for c in graph.cycles_of_length(length)
        ))

    alpha1 = {
        "polished": polished,
        "girth_at_least_5": girth is None or girth >= 5,
        "obstruction_free": not obstructions,
        "path_at_most_3": len(cog.path) <= 3,
    }
    p_clear = len(cog.path) <= 1 or any(not (graph.adjacency(p) & cog.s) for p in cog.path)
    alpha0 = {
        "triangle_free": girth is None or girth >= 4,
        "path_at_most_2": len(cog.path) <= 2,
        "path_vertex_without_s_neighbor": p_clear,
    }
    alpha1_applies = all(alpha1.values())
    alpha0_applies = all(alpha0.values())

    try:
        fraction, _ = best_demand_fraction(cog, psi)
    except HypothesisViolation as e:
        if e.code == ErrorCode.NO_COG_COLORING and (alpha1_applies or alpha0_applies):
            raise StatementViolation(ErrorCode.STATEMENT_VIOLATION, f"前提成立但 ψ 无法扩展: {e}") from e
        raise

    if alpha1_applies and fraction < ALPHA_1:
        raise StatementViolation(ErrorCode.STATEMENT_VIOLATION, f"打磨齿轮的需求比例 {fraction} < {ALPHA_1}")
    if alpha0_applies and fraction < ALPHA_0:
        raise StatementViolation(ErrorCode.STATEMENT_VIOLATION, f"齿轮的需求比例 {fraction} < {ALPHA_0}")
    return AlphaReport(
        alpha1_hypotheses=alpha1,
        alpha0_hypotheses=alpha0,
        witnesses=witnesses,
        fraction=fraction,
        alpha1_applies=alpha1_applies,
        alpha0_applies=alpha0_applies,
        ok=True,
    )


# ---------------------------------------------------------------- 诊断分类


def classify_demands(cog: Cog) -> DemandClassification:
    """按 G[S∪T] 的分支给需求分类，并找出外围需求及其连接顶点"""
    graph = cog.graph
    induced = graph.to_networkx().subgraph(cog.s | cog.t)
    t1: list[int] = []
    t2: list[int] = []
    other: list[int] = []
    for component in nx.connected_components(induced):
        part = induced.subgraph(component)
        is_path = nx.is_tree(part) and max(d for _, d in part.degree()) <= 2
        demands = sorted(component & cog.t)
        if is_path and len(component) == 2:
            t1.extend(demands)
        elif is_path and len(component) == 3:
            t2.extend(demands)
        else:
            other.extend(demands)

    splitters: list[tuple[int, ...]] = [tuple(c) for c in graph.chords()]
    splitters.extend(weak_2chords(cog))
    peripheral: dict[int, int] = {}
    for q in splitters:
        try:
            _, cut_off = _split(cog, q)
        except HypothesisViolation:
            continue
        inside = cut_off - set(q)
        for z in t2:
            if z in peripheral or z not in inside:
                continue
            for end in sorted((q[0], q[-1])):
                if any(w in cog.s and w not in cut_off for w in graph.neighbors(end)):
                    peripheral[z] = end
                    break
    return DemandClassification(
        t1=sorted(t1),
        t2=sorted(t2),
        other=sorted(other),
        peripheral=dict(sorted(peripheral.items())),
    )


# ---------------------------------------------------------------- 单顶点请求


def vertex_cog(rg: RequestGraph, v: int) -> Cog:
    """齿轮 (G − (R≠ ∪ {v}), ∅, S, T, w′)

    S 为 v 的非请求邻居，T 为请求的其它邻居，w′(t) 为与 t 相邻的请求权重之和。
    外面取删去 v 与请求后 v 原来所在的面，S ∪ T 都在它上面。返回齿轮的 origin 为原编号。

    Raises:
        HypothesisViolation: 存在相等请求、图含三角形或请求不与 v 相邻（REQUEST_NOT_AT_V）
    """
    graph = rg.graph
    if rg.r_eq:
        raise HypothesisViolation(ErrorCode.HYPOTHESIS_VIOLATION, "该流程只处理不等请求")
    if not graph.is_triangle_free():
        raise HypothesisViolation(ErrorCode.HYPOTHESIS_VIOLATION, f"图含三角形 {next(graph.triangles())}")
    if v < 0 or v >= graph.vertex_count or v in rg.r_neq:
        raise HypothesisViolation(ErrorCode.BAD_PARAMS, f"顶点 {v} 不能作为公共邻居")
    far = sorted(r for r in rg.r_neq if v not in graph.adjacency(r))
    if far:
        raise HypothesisViolation(ErrorCode.REQUEST_NOT_AT_V, f"请求 {far} 不与顶点 {v} 相邻")

    demand_weight: dict[int, Fraction] = {}
    for r in sorted(rg.r_neq):
        for t in graph.neighbors(r):
            if t != v:
                demand_weight[t] = demand_weight.get(t, Fraction(0)) + rg.weights[r]
    s_vertices = [w for w in graph.neighbors(v) if w not in rg.r_neq]

    removed = set(rg.r_neq) | {v}
    outer_dart = next(
        (
            (a, b)
            for f in graph.faces_at(v)
            for a, b in graph.face(f).darts
            if a not in removed and b not in removed
        ),
        None,
    )
    sub, old_ids = graph.induced_subgraph((u for u in graph.vertices() if u not in removed), outer_dart)
    new_id = {old: i for i, old in enumerate(old_ids)}
    cog = Cog.create(
        sub,
        s=[new_id[w] for w in s_vertices],
        t=[new_id[t] for t in demand_weight],
        weights={new_id[t]: w for t, w in demand_weight.items()},
        origin=old_ids,
    )
    logger.debug("顶点 %d 的齿轮: %d 个顶点, |S|=%d, |T|=%d", v, sub.vertex_count, len(cog.s), len(cog.t))
    return cog


def requests_at_vertex_pipeline(rg: RequestGraph, v: int) -> SatisfactionResult:
    """所有不等请求都与 v 相邻时的构造性着色

    在 vertex_cog 上穷举最佳需求比例，然后令 v 取颜色 3，请求顶点贪心着色。

    Raises:
        HypothesisViolation: 同 vertex_cog
        StatementViolation: 得到的比例低于 α₀
    """
    graph = rg.graph
    cog = vertex_cog(rg, v)
    _, witness = best_demand_fraction(cog)

    colors = {cog.original(i): c for i, c in witness.assignment.items()}
    colors[v] = 3
    for r in sorted(rg.r_neq):
        a, b = graph.neighbors(r)
        colors[r] = next(c for c in COLORS if c != colors[a] and c != colors[b])
    result = satisfied_fraction(rg, Coloring(assignment=dict(sorted(colors.items())), total=True))
    if result.fraction < ALPHA_0:
        raise StatementViolation(ErrorCode.STATEMENT_VIOLATION, f"单顶点请求的满足比例 {result.fraction} < {ALPHA_0}")
    return result


# ---------------------------------------------------------------- 图示齿轮


def _regular_polygon(n: int) -> list[tuple[float, float]]:
    return [
        (math.cos(2 * math.pi * i / n), math.sin(2 * math.pi * i / n))
        for i in range(n)
    ]


def obstruction_cog(kind: ObstructionKind) -> Cog:
    """阻碍模式本身作为平面齿轮（圈按逆时针画出，与模式标签同序编号）"""
    labels, extra = PATTERNS[kind]
    n = len(labels)
    edges = [(i, (i + 1) % n) for i in range(n)] + list(extra)
    coords = _regular_polygon(n)
    graph = embed_straight_line(n, edges, coords)
    roles = [_label_role(label) for label in labels]
    return Cog.create(
        graph,
        path=[i for i, r in enumerate(roles) if r == "P"],
        s=[i for i, r in enumerate(roles) if r == "S"],
        t=[i for i, r in enumerate(roles) if r == "T"],
    )


def combined_cog() -> Cog:
    """被弱 2-弦切下的组合齿轮：模式 (d) 的 p1 与 b 之间再接一条 S–T–S 路

    顶点 0..7 与模式 (d) 相同，8、9、10 依次为新路上的 S、T、S。
    """
    coords = _regular_polygon(8)
    coords += [(2.0, 0.0), (2.0, -1.4), (1.3, -1.4)]
    edges = [(i, (i + 1) % 8) for i in range(8)] + [(3, 7), (0, 8), (8, 9), (9, 10), (10, 7)]
    graph = embed_straight_line(11, edges, coords)
    return Cog.create(graph, path=[0, 1, 2], s=[4, 6, 8, 10], t=[5, 9])
