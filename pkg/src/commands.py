# 单实例命令
"""命令行与 MCP 服务共用的单实例处理：每个函数把一个实例变成一条可序列化的记录"""

import logging
from typing import Any, Callable, Optional

from .clebsch import dist3_coloring, verify_dist3
from .cogs import best_demand_fraction, detect_obstructions, is_polished, requests_at_vertex_pipeline, verify_alpha_lemmas
from .coloring import count_colorings, enumerate_colorings
from .decomposition import (
    SUBURB_LENGTH,
    build_decomposition,
    caught_bound_holds,
    caught_vertices,
    check_laminar,
    check_maximal,
    classify_all,
    find_suburbs,
)
from .readers.base import Instance
from .request_graph import best_fraction
from .utils import format_fraction


logger = logging.getLogger(__name__)


def count_record(instance: Instance) -> dict[str, Any]:
    return {"colorings": count_colorings(instance.graph, instance.psi())}


def enumerate_record(instance: Instance, limit: Optional[int] = None) -> dict[str, Any]:
    n = instance.graph.vertex_count
    colorings = [
        list(coloring.as_tuple(n))
        for coloring in enumerate_colorings(instance.graph, instance.psi(), limit=limit)
    ]
    return {"count": len(colorings), "colorings": colorings}


def decompose_record(instance: Instance, suburb_length: int = SUBURB_LENGTH) -> dict[str, Any]:
    decomposition = build_decomposition(instance.graph)
    logger.debug("分解树: %d 个节点", len(decomposition.nodes))
    pieces = {piece.node: piece for piece in classify_all(decomposition)}
    tree = [
        {
            "id": node.id,
            "parent": node.parent,
            "depth": node.depth,
            "cycle": list(node.cycle.vertices) if node.cycle else None,
            "richness": pieces[node.id].richness.value,
        }
        for node in decomposition.nodes
    ]
    return {
        "nodes": len(decomposition.nodes),
        "tree": tree,
        "caught": sorted(caught_vertices(decomposition)),
        "laminar": check_laminar(decomposition),
        "maximal": check_maximal(decomposition),
        "caught_bound": caught_bound_holds(decomposition),
        "suburbs": [
            {"nodes": list(s.nodes), "upwardly_mobile": s.upwardly_mobile}
            for s in find_suburbs(decomposition, suburb_length)
        ],
    }


def requests_record(instance: Instance, vertex: Optional[int] = None) -> dict[str, Any]:
    rg = instance.request_graph()
    if vertex is None:
        result = best_fraction(rg)
    else:
        result = requests_at_vertex_pipeline(rg, vertex)
    return {
        "fraction": format_fraction(result.fraction),
        "satisfied_weight": format_fraction(result.satisfied_weight),
        "total_weight": format_fraction(result.total_weight),
        "coloring": list(result.coloring.as_tuple(rg.graph.vertex_count)),
    }


def cog_record(instance: Instance) -> dict[str, Any]:
    cog = instance.cog()
    psi = instance.psi()
    fraction, witness = best_demand_fraction(cog, psi)
    report = verify_alpha_lemmas(cog, psi)
    return {
        "fraction": format_fraction(fraction),
        "coloring": list(witness.as_tuple(cog.graph.vertex_count)),
        "polished": is_polished(cog),
        "obstructions": [match.kind.value for match in detect_obstructions(cog)],
        "alpha1_applies": report.alpha1_applies,
        "alpha0_applies": report.alpha0_applies,
    }


def clebsch_record(instance: Instance) -> dict[str, Any]:
    colors = dist3_coloring(instance.graph)
    checks = verify_dist3(instance.graph, colors)
    return {"colors": [colors[v] for v in instance.graph.vertices()], **checks}


INSTANCE_COMMANDS: dict[str, Callable[..., dict[str, Any]]] = {
    "count": count_record,
    "enumerate": enumerate_record,
    "decompose": decompose_record,
    "requests-solve": requests_record,
    "cog-solve": cog_record,
    "clebsch-dist3": clebsch_record,
}


