# 响应格式化器
"""将命令结果转换为 JSON 或 CSV 格式"""

import json
from typing import Any

from .models import CommandResult, ResponseFormat
from .utils import convert_to_csv


class ResponseFormatter:
    """响应格式化器

    JSON 输出完整的 CommandResult；CSV 每个实例一行，列顺序固定。
    """

    @staticmethod
    def format(result: CommandResult, response_format: ResponseFormat) -> str:
        if response_format == ResponseFormat.JSON:
            return ResponseFormatter.to_json(result)
        else:
            return ResponseFormatter.to_csv(result)

    @staticmethod
    def to_json(result: CommandResult) -> str:
        output: dict[str, Any] = result.model_dump(mode="json")
        # 单条记录的命令直接输出记录本身
        if len(result.records) == 1 and not result.summary:
            output = output["records"][0]
        return json.dumps(output, ensure_ascii=False, indent=2)

    @staticmethod
    def to_csv(result: CommandResult) -> str:
        """CSV 格式：表头为记录中首次出现的键顺序；没有记录时输出汇总"""
        if not result.records:
            return convert_to_csv([result.summary])
        return convert_to_csv(result.records)
