# FastMCP 服务器主入口
"""TFP Coloring Toolkit MCP Server - 以只读工具的形式提供着色计数、分解、距离 3 着色、目录验证与实例生成"""

import logging
import sys

from mcp.server.fastmcp import FastMCP

from .commands import clebsch_record, count_record, decompose_record
from .formatter import ResponseFormatter
from .generators import generate
from .models import CommandResult, ResponseFormat, VerifyInput
from .readers.json_doc import emit_json
from .router import get_router
from .utils import handle_error, read_log_level
from .verify import run_check


logger = logging.getLogger(__name__)

# 创建 FastMCP 服务器实例
mcp = FastMCP(
    name="TFP Coloring Toolkit",
)

READ_ONLY = {
    "readOnlyHint": True,
    "destructiveHint": False,
    "idempotentHint": True,
    "openWorldHint": False,
}


def _run_per_instance(command: str, record, file_path: str, response_format: str) -> str:
    instances = get_router().load(file_path)
    result = CommandResult(command=command, records=[record(instance) for instance in instances])
    return ResponseFormatter.format(result, ResponseFormat(response_format))


@mcp.tool(
    name="count_colorings",
    description="统计实例文件中每个平面图的正常 3-着色个数（有齿轮预着色时统计其扩展个数）",
    annotations={"title": "统计 3-着色", **READ_ONLY},
)
async def count_colorings(file_path: str, response_format: str = "json") -> str:
    """统计 3-着色个数

    Args:
        file_path: planar_code 或 JSON 实例文件的路径
        response_format: 输出格式，可选 "json" 或 "csv"，默认 "json"

    Returns:
        str: 每个实例一条 {"colorings": N} 记录
    """
    try:
        return _run_per_instance("count", count_record, file_path, response_format)
    except Exception as e:
        _, error_msg = handle_error(e, file_path)
        return error_msg


@mcp.tool(
    name="decompose",
    description="计算极大 5-圈分解：分解树、各节点块的丰富度、捕获顶点与 11-郊区",
    annotations={"title": "5-圈分解", **READ_ONLY},
)
async def decompose(file_path: str, response_format: str = "json") -> str:
    """计算极大 5-圈分解

    Args:
        file_path: 实例文件路径
        response_format: "json" 或 "csv"
    """
    try:
        return _run_per_instance("decompose", decompose_record, file_path, response_format)
    except Exception as e:
        _, error_msg = handle_error(e, file_path)
        return error_msg


@mcp.tool(
    name="clebsch_dist3",
    description="经 Clebsch 图同态为无三角形平面图求 16 色距离 3 着色，并独立验证",
    annotations={"title": "距离 3 着色", **READ_ONLY},
)
async def clebsch_dist3(file_path: str, response_format: str = "json") -> str:
    try:
        return _run_per_instance("clebsch-dist3", clebsch_record, file_path, response_format)
    except Exception as e:
        _, error_msg = handle_error(e, file_path)
        return error_msg


@mcp.tool(
    name="verify_catalog",
    description="在内部穷举目录或给定文件上运行一项检查，报告实例数与违反数",
    annotations={"title": "目录验证", **READ_ONLY},
)
async def verify_catalog(
    check_id: str,
    max_n: int = 6,
    seed: int = 0,
    trials: int = 20,
    file_path: str | None = None,
) -> str:
    """运行目录检查

    Args:
        check_id: 检查编号，如 "manycolor"、"clebsch"、"cogs"
        max_n: 内部目录的顶点数上限（不超过 9）
        seed: 随机检查的种子
        trials: 随机实例个数
        file_path: 可选的外部目录文件

    Returns:
        str: VerifyReport 的 JSON
    """
    try:
        params = VerifyInput(check_id=check_id, input=file_path, max_n=max_n, seed=seed, trials=trials)
        report = run_check(params)
        return report.model_dump_json(indent=2)
    except Exception as e:
        _, error_msg = handle_error(e, file_path)
        return error_msg


@mcp.tool(
    name="generate_instances",
    description="按图族生成实例，返回规范 JSON 文档（cycle、grid、figure1a..figure4、random_tfp、exhaustive_tfp 等）",
    annotations={"title": "生成实例", **READ_ONLY},
)
async def generate_instances(family: str, params: dict | None = None) -> str:
    """生成实例

    Args:
        family: 图族名
        params: 图族参数，如 {"n": 7} 或 {"seed": 3, "n": 10}

    Returns:
        str: 实例文档（多个实例时为数组）
    """
    try:
        return emit_json(generate(family, **(params or {})))
    except Exception as e:
        _, error_msg = handle_error(e)
        return error_msg


def main():
    """启动 MCP 服务器（标准输出是传输通道，日志写到标准错误）"""
    logging.basicConfig(level=read_log_level(), stream=sys.stderr)
    mcp.run()


if __name__ == "__main__":
    main()
