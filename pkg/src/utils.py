# 共享工具函数
"""提供常量、错误类型和通用校验函数"""

import os
import csv
import io
import math
import logging
from enum import Enum
from fractions import Fraction
from multiprocessing import Pool
from typing import Any, Callable, Iterable, Optional, TypeVar

from pydantic import ValidationError


logger = logging.getLogger(__name__)


# 常量定义
COLORS = (1, 2, 3)
ORIENTATION = "clockwise"  # 旋转系统统一按顺时针记录
FORMAT_VERSION = 1
MAX_EXHAUSTIVE_N = 9  # 内部穷举目录的顶点上限
DEFAULT_MAX_N = 7  # verify 未指定 --max-n 时的上限

ALPHA_1 = Fraction(1, 562)
ALPHA_0 = ALPHA_1 / 9

# GF(16) = GF(2)[x]/(x^4+x+1)
CLEBSCH_MODULUS = 0b10011

PLANAR_CODE_HEADER = b">>planar_code<<"
PLANAR_CODE_HEADER_LE = b">>planar_code le<<"
PLANAR_CODE_HEADER_BE = b">>planar_code be<<"

# 退出码
EXIT_OK = 0
EXIT_HYPOTHESIS = 1
EXIT_STATEMENT = 2
EXIT_IO = 3


class ErrorCode(str, Enum):
    """错误代码枚举"""
    ASYMMETRIC_ROTATION = "ASYMMETRIC_ROTATION"
    LOOP_OR_MULTIEDGE = "LOOP_OR_MULTIEDGE"
    BAD_OUTER_FACE = "BAD_OUTER_FACE"
    NON_PLANAR_ROTATION = "NON_PLANAR_ROTATION"
    IMPROPER_PRECOLORING = "IMPROPER_PRECOLORING"
    IMPROPER_COLORING = "IMPROPER_COLORING"
    BAD_PRECOLORING = "BAD_PRECOLORING"
    LEMMA_VIOLATION = "LEMMA_VIOLATION"
    HYPOTHESIS_VIOLATION = "HYPOTHESIS_VIOLATION"
    BAD_COMPONENT = "BAD_COMPONENT"
    V_IN_5CYCLE = "V_IN_5CYCLE"
    RESULT_HAS_TRIANGLE = "RESULT_HAS_TRIANGLE"
    UNCOLORABLE = "UNCOLORABLE"
    STILL_HAS_TRIANGLE = "STILL_HAS_TRIANGLE"
    POOR_SHAPE_VIOLATION = "POOR_SHAPE_VIOLATION"
    NO_CONFIGURATION = "NO_CONFIGURATION"
    PRECOLOR_MISMATCH = "PRECOLOR_MISMATCH"
    STATEMENT_VIOLATION = "STATEMENT_VIOLATION"
    X_NOT_MATCHING = "X_NOT_MATCHING"
    X_MEETS_P = "X_MEETS_P"
    Q_NOT_SPLITTING = "Q_NOT_SPLITTING"
    NO_COG_COLORING = "NO_COG_COLORING"
    REQUEST_NOT_AT_V = "REQUEST_NOT_AT_V"
    BAD_HEADER = "BAD_HEADER"
    TRUNCATED = "TRUNCATED"
    ID_OUT_OF_RANGE = "ID_OUT_OF_RANGE"
    SCHEMA_VIOLATION = "SCHEMA_VIOLATION"
    BAD_PARAMS = "BAD_PARAMS"
    IO_ERROR = "IO_ERROR"


class ToolkitError(ValueError):
    """工具包错误基类

    Attributes:
        code: 错误代码
        exit_code: 命令行退出码
    """

    exit_code = EXIT_HYPOTHESIS

    def __init__(self, code: ErrorCode, message: str) -> None:
        self.code = code
        self.message = message
        super().__init__(f"错误: [{code.value}] {message}")

    def __reduce__(self):
        # 进程池回传异常时按 (code, message) 重建
        return type(self), (self.code, self.message)


class HypothesisViolation(ToolkitError):
    """输入不满足操作前提"""
    exit_code = EXIT_HYPOTHESIS


class StatementViolation(ToolkitError):
    """已发表的结论在该输入上不成立（只可能是实现缺陷）"""
    exit_code = EXIT_STATEMENT

    def __init__(self, code: ErrorCode, message: str) -> None:
        super().__init__(code, message)
        logger.warning("结论被证伪: %s", self)


class FormatError(ToolkitError):
    """输入输出格式错误"""
    exit_code = EXIT_IO


def read_seed(default: int = 0) -> int:
    """读取环境变量 TFP_SEED 作为默认随机种子

    Args:
        default: 未设置时的默认值

    Returns:
        int: 随机种子

    Raises:
        HypothesisViolation: 环境变量不是整数
    """
    raw = os.environ.get("TFP_SEED")
    if raw is None or raw.strip() == "":
        return default
    try:
        return int(raw)
    except ValueError:
        raise HypothesisViolation(
            ErrorCode.BAD_PARAMS, f"环境变量 TFP_SEED='{raw}' 不是整数"
        )


def read_log_level(default: str = "WARNING") -> str:
    """读取环境变量 TFP_LOG_LEVEL"""
    return os.environ.get("TFP_LOG_LEVEL", default).upper()


def validate_color_map(assignment: dict[int, int], vertex_count: int) -> None:
    """验证着色映射的顶点编号与颜色取值

    Args:
        assignment: 顶点到颜色的映射
        vertex_count: 图的顶点数

    Raises:
        HypothesisViolation: 顶点越界或颜色不在 {1,2,3} 中
    """
    for v, c in assignment.items():
        if v < 0 or v >= vertex_count:
            raise HypothesisViolation(
                ErrorCode.IMPROPER_PRECOLORING, f"顶点 {v} 超出范围 0-{vertex_count - 1}"
            )
        if c not in COLORS:
            raise HypothesisViolation(
                ErrorCode.IMPROPER_PRECOLORING, f"顶点 {v} 的颜色 {c} 不在 {{1,2,3}} 中"
            )


def lcm_of_denominators(values: Iterable[Fraction]) -> int:
    """计算一组有理数分母的最小公倍数"""
    return math.lcm(1, *(value.denominator for value in values))


def format_fraction(value: Fraction) -> str:
    """将有理数格式化为 'p/q' 字符串（整数时省略分母）"""
    if value.denominator == 1:
        return str(value.numerator)
    return f"{value.numerator}/{value.denominator}"


def parse_fraction(text: Any) -> Fraction:
    """解析 'p/q'、整数或 [p, q] 形式的有理数

    Raises:
        FormatError: 无法解析或分母为零
    """
    try:
        if isinstance(text, (list, tuple)) and len(text) == 2:
            return Fraction(int(text[0]), int(text[1]))
        return Fraction(str(text))
    except (ValueError, ZeroDivisionError):
        raise FormatError(ErrorCode.SCHEMA_VIOLATION, f"无法解析有理数 '{text}'")


def convert_to_csv(rows: list[dict[str, Any]], columns: Optional[list[str]] = None) -> str:
    """将记录列表转换为 CSV 格式字符串

    列顺序固定：显式给出的 columns，否则按首次出现顺序。

    Args:
        rows: 记录列表
        columns: 列名列表

    Returns:
        str: CSV 格式字符串
    """
    if columns is None:
        columns = []
        for row in rows:
            for key in row:
                if key not in columns:
                    columns.append(key)

    output = io.StringIO()
    writer = csv.writer(output, lineterminator="\n")
    writer.writerow(columns)

    for row in rows:
        writer.writerow([_csv_cell(row.get(col)) for col in columns])

    return output.getvalue()


def _csv_cell(value: Any) -> str:
    if value is None:
        return ""
    if isinstance(value, Fraction):
        return format_fraction(value)
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, (list, tuple, set, frozenset, dict)):
        return repr(value)
    return str(value)


T = TypeVar("T")
R = TypeVar("R")


def map_in_order(func: Callable[[T], R], items: Iterable[T], jobs: int = 1) -> list[R]:
    """逐项调用 func；jobs > 1 时用进程池并行，结果顺序与输入一致

    func 必须是模块级函数（或其 functools.partial），以便在进程间传递。
    """
    items = list(items)
    if jobs <= 1 or len(items) <= 1:
        return [func(item) for item in items]
    with Pool(min(jobs, len(items))) as pool:
        return pool.map(func, items)


def handle_error(e: Exception, source: Optional[str] = None) -> tuple[int, str]:
    """统一的错误处理

    Args:
        e: 异常对象
        source: 出错的输入来源（文件路径等）

    Returns:
        tuple: (退出码, 友好的错误消息)
    """
    where = f" (输入: '{source}')" if source else ""
    error_type = type(e).__name__

    if isinstance(e, ToolkitError):
        return e.exit_code, f"{e}{where}"
    elif isinstance(e, ValidationError):
        return EXIT_IO, f"错误: [{ErrorCode.SCHEMA_VIOLATION.value}] 文档不符合格式定义{where}: {e}"
    elif isinstance(e, FileNotFoundError):
        return EXIT_IO, f"错误: 文件未找到 '{source}'。请检查路径是否正确。"
    elif isinstance(e, PermissionError):
        return EXIT_IO, f"错误: 无权限访问文件 '{source}'。请检查文件权限。"
    elif isinstance(e, OSError):
        return EXIT_IO, f"错误: [{ErrorCode.IO_ERROR.value}] 读写失败{where}: {e}"
    elif isinstance(e, ValueError):
        return EXIT_HYPOTHESIS, str(e)
    else:
        return EXIT_IO, f"错误: 处理输入{where}时发生错误 ({error_type}): {str(e)}"
