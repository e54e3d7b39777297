# 目录验证
"""在实例目录上批量核对各条结论，统计反例

每个检查都是一个注册函数：取得实例、逐个实例收集违反项，汇总为 VerifyReport。
结论被证伪时底层函数抛出 StatementViolation，这里把它记为一条违反而不中断整个扫描。
"""

import logging
import random
from functools import partial
from typing import Callable, Iterable, Optional

from .clebsch import dist3_coloring, strongly_regular_parameters, verify_dist3
from .cogs import Cog, best_demand_fraction, combined_cog, detect_obstructions, obstruction_cog, verify_alpha_lemmas
from .coloring import (
    COLOR_PAIRS,
    bichromatic_report,
    count_colorings,
    enumerate_colorings,
    extension_count_from_cycle,
    is_proper,
    kempe_components,
    kempe_swap,
    minc_lift_multiplicity,
    proper_colorings_of_cycle,
    verify_manycolor_bound,
)
from .decomposition import (
    build_decomposition,
    caught_bound_holds,
    chain_boundary,
    check_laminar,
    check_maximal,
    classify_all,
    find_rearrangeable_pair,
    find_suburbs,
    is_upwardly_mobile,
    rearrange,
    suburb_chain,
    suburb_rearrangeable_pair,
    uncaught_five_cycle_vertices,
    SUBURB_LENGTH,
)
from .generators import FORCING_PSI, exhaustive_tfp, figure2_graph, random_request_graph, random_tfp_graph, rhombic_dodecahedron
from .listcolor import FULL_LIST, check_hypotheses
from .models import ConfigKind, ListAssignment, ObstructionKind, StatementId, VerifyInput, VerifyReport
from .plane_graph import PlaneGraph, cycle_graph, path_graph
from .readers.base import Instance
from .readers.json_doc import emit_json, parse_json
from .readers.planar_code import emit_planar_code, parse_planar_code
from .request_graph import (
    RequestGraph,
    best_fraction,
    clone_explosion,
    gadget_eq_to_neq,
    gadget_neq_to_eq,
    integerize_and_clone,
    max_bicolored_edges,
    subdivide_for_tria,
)
from .router import get_router
from .utils import COLORS, ErrorCode, HypothesisViolation, StatementViolation, map_in_order


logger = logging.getLogger(__name__)

# 报告中保留的违反详情条数
MAX_DETAILS = 20

CheckFunc = Callable[[VerifyInput], VerifyReport]
CHECKS: dict[str, CheckFunc] = {}


def register_check(name: str) -> Callable[[CheckFunc], CheckFunc]:
    def wrap(func: CheckFunc) -> CheckFunc:
        CHECKS[name] = func
        return func
    return wrap


def _guarded(per_item: Callable[..., list[str]], item: object) -> list[str]:
    """调用单实例检查；结论被证伪记为违反"""
    try:
        return per_item(item)
    except StatementViolation as e:
        return [str(e)]


def _sweep(name: str, items: Iterable[object], per_item: Callable[..., list[str]], jobs: int) -> VerifyReport:
    items = list(items)
    results = map_in_order(partial(_guarded, per_item), items, jobs)
    details = [f"#{i}: {msg}" for i, found in enumerate(results) for msg in found]
    logger.info("验证 %s: %d 个实例, %d 个违反", name, len(items), len(details))
    return VerifyReport(check=name, instances=len(items), violations=len(details), details=details[:MAX_DETAILS])


def load_catalog(options: VerifyInput) -> list[PlaneGraph]:
    """外部文件给出的图，或内部穷举目录（n ≤ max_n）"""
    if options.input:
        return [instance.graph for instance in get_router().load(options.input)]
    return exhaustive_tfp(options.max_n)


def _seeds(options: VerifyInput) -> list[int]:
    return [options.seed + i for i in range(options.trials)]


def run_check(options: VerifyInput) -> VerifyReport:
    """运行指定编号的检查

    Raises:
        HypothesisViolation: 未知的检查编号（BAD_PARAMS）
    """
    check = CHECKS.get(options.check_id)
    if check is None:
        raise HypothesisViolation(
            ErrorCode.BAD_PARAMS,
            f"未知检查 '{options.check_id}'。支持的检查: {', '.join(CHECKS)}"
        )
    return check(options)


# ---------------------------------------------------------------- 着色


def _cycles_item(n: int) -> list[str]:
    found = []
    count = count_colorings(cycle_graph(n))
    if count != 2 ** n + 2 * (-1) ** n:
        found.append(f"C{n} 有 {count} 个着色，应为 {2 ** n + 2 * (-1) ** n}")
    count = count_colorings(path_graph(n))
    if count != 3 * 2 ** (n - 1):
        found.append(f"P{n} 有 {count} 个着色，应为 {3 * 2 ** (n - 1)}")
    return found


@register_check("cycles")
def check_cycles(options: VerifyInput) -> VerifyReport:
    return _sweep("cycles", range(3, 15), _cycles_item, options.jobs)


def _manycolor_item(graph: PlaneGraph) -> list[str]:
    first = next(enumerate_colorings(graph), None)
    if first is None:
        return ["图不可 3-着色"]
    report = verify_manycolor_bound(graph, first)
    count = report.count
    found = []
    for phi in enumerate_colorings(graph):
        bichromatic = bichromatic_report(graph, phi)
        exponent = bichromatic.exponent_numerator
        if count ** 6 < 2 ** exponent:
            found.append(f"{count} 个着色少于 2^({exponent}/6)")
        if 6 * bichromatic.max_component_count < exponent:
            found.append(f"max c_ab = {bichromatic.max_component_count} < {exponent}/6")
        if found:
            break
    return found


@register_check("manycolor")
def check_manycolor(options: VerifyInput) -> VerifyReport:
    graphs = [g for g in load_catalog(options) if g.vertex_count >= 3]
    return _sweep("manycolor", graphs, _manycolor_item, options.jobs)


def _extension_item(graph: PlaneGraph) -> list[str]:
    found = []
    if count_colorings(graph, limit=1) == 0:
        found.append("图不可 3-着色")
    for face in graph.faces:
        if not face.is_cycle() or face.length > 5:
            continue
        rooted = PlaneGraph(graph.vertex_count, graph.rotations, face.darts[0])
        for psi in proper_colorings_of_cycle(face.length):
            try:
                extension_count_from_cycle(rooted, face.boundary, psi)
            except StatementViolation as e:
                found.append(f"面 {list(face.boundary)}: {e}")
    return found


@register_check("extension")
def check_extension(options: VerifyInput) -> VerifyReport:
    return _sweep("extension", load_catalog(options), _extension_item, options.jobs)


def _minc_item(graph: PlaneGraph) -> list[str]:
    found = []
    if graph.vertex_count < 2:
        return found
    for v in graph.vertices():
        try:
            multiplicity = minc_lift_multiplicity(graph, v)
        except HypothesisViolation as e:
            if e.code == ErrorCode.V_IN_5CYCLE:
                continue
            raise
        if multiplicity < 2:
            found.append(f"收缩 {v} 的邻域后某个着色只提升为 {multiplicity} 个")
    return found


@register_check("minc")
def check_minc(options: VerifyInput) -> VerifyReport:
    return _sweep("minc", load_catalog(options), _minc_item, options.jobs)


def _kempe_item(graph: PlaneGraph, limit: int = 30) -> list[str]:
    found = []
    for phi in enumerate_colorings(graph, limit=limit):
        for pair in COLOR_PAIRS:
            for index in range(len(kempe_components(graph, phi, pair))):
                once = kempe_swap(graph, phi, pair, index)
                if not is_proper(graph, once):
                    found.append(f"交换 {pair} 分支 {index} 后不正常")
                twice = kempe_swap(graph, once, pair, index)
                if twice.assignment != phi.assignment:
                    found.append(f"交换 {pair} 分支 {index} 两次未还原")
    return found


@register_check("kempe")
def check_kempe(options: VerifyInput) -> VerifyReport:
    return _sweep("kempe", load_catalog(options), _kempe_item, options.jobs)


# ---------------------------------------------------------------- 请求


def _gadgets_item(seed: int) -> list[str]:
    rng = random.Random(seed)
    n = rng.randint(4, 12)
    # 底图连通，n − k 个顶点至少 n − k − 1 条边，够细分 k 条
    k = rng.randint(1, min(4, (n - 1) // 2))
    rg = random_request_graph(seed, n, k)
    expected = best_fraction(rg).fraction
    found = []
    as_eq = gadget_neq_to_eq(rg)
    transforms = {
        "gadget_neq_to_eq": as_eq,
        "gadget_eq_to_neq": gadget_eq_to_neq(rg),
        "integerize_and_clone": integerize_and_clone(as_eq),
    }
    for name, transformed in transforms.items():
        if not transformed.graph.is_triangle_free():
            found.append(f"{name} 的结果含三角形")
        value = best_fraction(transformed).fraction
        if value != expected:
            found.append(f"{name}: {value} ≠ {expected}")

    graph = random_tfp_graph(seed, rng.randint(4, 8))
    edges = graph.edges()
    chosen = rng.sample(edges, rng.randint(0, min(4, len(edges))))
    subdivided = best_fraction(subdivide_for_tria(graph, chosen)).satisfied_weight
    bicolored = max_bicolored_edges(graph, chosen)
    if chosen and subdivided != bicolored:
        found.append(f"细分后满足 {subdivided} 个请求，但最多 {bicolored} 条边异色")
    return found


@register_check("gadgets")
def check_gadgets(options: VerifyInput) -> VerifyReport:
    return _sweep("gadgets", _seeds(options), _gadgets_item, options.jobs)


def _clone_item(seed: int) -> list[str]:
    rng = random.Random(seed)
    k = rng.randint(1, 3)
    drawn = random_request_graph(seed, rng.randint(2 * k + 1, 7), k)
    rg = RequestGraph.create(drawn.graph, r_eq=drawn.requests, weights=drawn.weights)
    clones = rng.randint(1, 3)
    _, rows = clone_explosion(rg, clones)
    return [
        f"s(φ)={row.satisfied}, N={clones}: {row.actual} 个扩展，应为 {row.expected}"
        for row in rows if not row.ok
    ]


@register_check("clone")
def check_clone(options: VerifyInput) -> VerifyReport:
    return _sweep("clone", _seeds(options), _clone_item, options.jobs)


# ---------------------------------------------------------------- 分解


def _decomposition_item(graph: PlaneGraph) -> list[str]:
    decomposition = build_decomposition(graph)
    found = []
    if not check_laminar(decomposition):
        found.append("分解不是层状的")
    if not check_maximal(decomposition):
        found.append("分解不是极大的")
    if not caught_bound_holds(decomposition):
        found.append("捕获顶点数超出上界")
    uncaught = uncaught_five_cycle_vertices(decomposition)
    if uncaught:
        found.append(f"5-圈上的顶点 {sorted(uncaught)} 既未被捕获也不在 5-面上")
    classify_all(decomposition)
    return found


@register_check("decomposition")
def check_decomposition(options: VerifyInput) -> VerifyReport:
    graphs = load_catalog(options) + [figure2_graph()]
    return _sweep("decomposition", graphs, _decomposition_item, options.jobs)


def _rearrange_item(seed: int, per_color: int = 10) -> list[str]:
    rng = random.Random(seed)
    positions = [rng.randint(1, 5) for _ in range(SUBURB_LENGTH)]
    graph = suburb_chain(positions)
    found = []

    decomposition = build_decomposition(graph)
    for suburb in find_suburbs(decomposition, SUBURB_LENGTH):
        if not is_upwardly_mobile(decomposition, suburb.nodes):
            suburb_rearrangeable_pair(decomposition, suburb)

    fixed = chain_boundary(graph, positions)
    try:
        pair = find_rearrangeable_pair(graph, fixed)
    except HypothesisViolation:
        return found
    for color in COLORS:
        for phi in enumerate_colorings(graph, {pair.x: color, pair.y: color}, limit=per_color):
            result = rearrange(graph, phi, pair)
            moved = sorted(v for v in fixed if result[v] != phi[v])
            if moved:
                found.append(f"D={positions}: F 上的顶点 {moved} 改变了颜色")
            if len({result[v] for v in pair.shared_face.boundary}) != 2:
                found.append(f"D={positions}: 共享 4-面不是双色的")
    return found


def _configuration_three_violations(_: object = None) -> list[str]:
    """菱形十二面体上只有 III 型配置；对所有 φ(x)=φ(y)=1 的着色重排"""
    graph = rhombic_dodecahedron()
    pair = find_rearrangeable_pair(graph, ())
    if pair.config_kind != ConfigKind.III:
        return [f"菱形十二面体给出 {pair.config_kind.value} 型配置，应为 III 型"]
    found = []
    for phi in enumerate_colorings(graph, {pair.x: 1, pair.y: 1}):
        result = rearrange(graph, phi, pair)
        if len({result[v] for v in pair.shared_face.boundary}) != 2:
            found.append(f"φ(hub)={phi[pair.hub]}: 共享 4-面不是双色的")
    return found


@register_check("rearrange")
def check_rearrange(options: VerifyInput) -> VerifyReport:
    report = _sweep("rearrange", _seeds(options), _rearrange_item, options.jobs)
    fixtures = _guarded(_configuration_three_violations, None)
    report.violations += len(fixtures)
    report.details = (fixtures + report.details)[:MAX_DETAILS]
    return report


# ---------------------------------------------------------------- 列表着色


def _random_lists(graph: PlaneGraph, path: tuple[int, ...], rng: random.Random) -> ListAssignment:
    """P 上单元素、外面上互不相邻的随机 2-列表、其余 {1,2,3}"""
    lists = {path[0]: frozenset({1}), path[1]: frozenset({2})}
    short: set[int] = set()
    for v in sorted(graph.outer_vertices()):
        if v in lists:
            continue
        if rng.random() < 0.5 and not graph.adjacency(v) & short:
            lists[v] = frozenset(rng.sample(COLORS, 2))
            short.add(v)
    return ListAssignment(lists=lists)


def _lists_item(args: tuple[PlaneGraph, int]) -> list[str]:
    graph, seed = args
    girth = graph.girth()
    if graph.edge_count == 0 or (girth is not None and girth < 5):
        return []
    rng = random.Random(seed)
    path = graph.outer_face.darts[0]
    for _ in range(3):
        check_hypotheses(StatementId.THM_3CHOOS, graph, path, _random_lists(graph, path, rng))
    same = ListAssignment(lists={
        v: frozenset({1, 2}) if v not in path and graph.is_on_outer_face(v) else FULL_LIST
        for v in graph.vertices()
    } | {path[0]: frozenset({1}), path[1]: frozenset({2})})
    check_hypotheses(StatementId.LEM_SAME, graph, path, same)

    for face in graph.faces:
        if not face.is_cycle() or face.length > 9:
            continue
        rooted = PlaneGraph(graph.vertex_count, graph.rotations, face.darts[0])
        colorings = proper_colorings_of_cycle(face.length)
        for psi in rng.sample(colorings, min(6, len(colorings))):
            lists = {v: frozenset({c}) for v, c in zip(face.boundary, psi)}
            check_hypotheses(StatementId.THM_CYCEX, rooted, (), ListAssignment(lists=lists))
    return []


@register_check("lists")
def check_lists(options: VerifyInput) -> VerifyReport:
    items = [(graph, options.seed + i) for i, graph in enumerate(load_catalog(options))]
    return _sweep("lists", items, _lists_item, options.jobs)


# ---------------------------------------------------------------- Clebsch


def _clebsch_item(graph: PlaneGraph) -> list[str]:
    colors = dist3_coloring(graph)
    report = verify_dist3(graph, colors)
    return [f"距离 3 着色检查失败: {report}"] if not all(report.values()) else []


@register_check("clebsch")
def check_clebsch(options: VerifyInput) -> VerifyReport:
    report = _sweep("clebsch", load_catalog(options), _clebsch_item, options.jobs)
    if strongly_regular_parameters() != (16, 5, 0, 2):
        report.violations += 1
        report.details.insert(0, "Clebsch 图不是 (16,5,0,2) 强正则图")
    return report


# ---------------------------------------------------------------- 齿轮


def _fixture_violations() -> list[str]:
    """阻碍模式在迫使着色下比例为 0；组合齿轮只要求检测到 (d) 型模式"""
    found = []
    fixtures: list[tuple[str, Cog, ObstructionKind, bool]] = [
        (kind.value, obstruction_cog(kind), kind, True) for kind in ObstructionKind
    ]
    fixtures.append(("figure4", combined_cog(), ObstructionKind.D, False))
    for name, cog, kind, forced in fixtures:
        fraction, _ = best_demand_fraction(cog, FORCING_PSI[kind])
        if forced and fraction != 0:
            found.append(f"阻碍齿轮 {name} 在迫使着色下的比例为 {fraction}")
        if kind not in {match.kind for match in detect_obstructions(cog)}:
            found.append(f"阻碍齿轮 {name} 中没有检测到 {kind.value} 型模式")
    return found


def _catalog_cog(graph: PlaneGraph) -> Optional[Cog]:
    """P 为外面的第一条边，T 为外面上其余顶点中贪心选出的独立集"""
    if graph.edge_count == 0:
        return None
    path = graph.outer_face.darts[0]
    demands: list[int] = []
    for v in sorted(graph.outer_vertices()):
        if v not in path and not any(graph.has_edge(v, z) for z in demands):
            demands.append(v)
    return Cog.create(graph, path, (), demands) if demands else None


def _cogs_item(graph: PlaneGraph) -> list[str]:
    cog = _catalog_cog(graph)
    if cog is None:
        return []
    for a in COLORS:
        for b in COLORS:
            if a != b:
                verify_alpha_lemmas(cog, (a, b))
    return []


@register_check("cogs")
def check_cogs(options: VerifyInput) -> VerifyReport:
    report = _sweep("cogs", load_catalog(options), _cogs_item, options.jobs)
    fixtures = _fixture_violations()
    report.violations += len(fixtures)
    report.details = (fixtures + report.details)[:MAX_DETAILS]
    return report


# ---------------------------------------------------------------- 格式


def _formats_item(graphs: list[PlaneGraph]) -> list[str]:
    found = []
    for endian in (None, "<", ">"):
        data = emit_planar_code(graphs, endian)
        parsed = parse_planar_code(data)
        if [g.rotations for g in parsed] != [g.rotations for g in graphs]:
            found.append(f"planar_code ({endian or '默认'}) 往返后旋转系统改变")
        if emit_planar_code(parsed, endian) != data:
            found.append(f"planar_code ({endian or '默认'}) 重新输出的字节不同")

    text = emit_json([Instance(graph=g) for g in graphs])
    parsed_instances = parse_json(text)
    if [i.graph for i in parsed_instances] != graphs:
        found.append("JSON 往返后图改变")
    if emit_json(parsed_instances) != text:
        found.append("JSON 重新输出的文本不同")
    return found


@register_check("formats")
def check_formats(options: VerifyInput) -> VerifyReport:
    graphs = load_catalog(options)
    found = _guarded(_formats_item, graphs)
    return VerifyReport(check="formats", instances=len(graphs), violations=len(found), details=found[:MAX_DETAILS])
