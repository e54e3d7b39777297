# MCP 工具测试
"""工具函数直接以协程调用"""

import json

import pytest

from src.server import count_colorings, generate_instances, verify_catalog


@pytest.mark.asyncio
async def test_generate_then_count(tmp_path):
    text = await generate_instances("cycle", {"n": 5})
    path = tmp_path / "c5.json"
    path.write_text(text, encoding="utf-8")
    result = json.loads(await count_colorings(str(path)))
    assert result == {"colorings": 30}


@pytest.mark.asyncio
async def test_verify_catalog():
    report = json.loads(await verify_catalog("cycles"))
    assert report["violations"] == 0


@pytest.mark.asyncio
async def test_errors_are_returned_as_text(tmp_path):
    message = await count_colorings(str(tmp_path / "missing.pc"))
    assert message.startswith("错误")
    assert (await generate_instances("no_such_family")).startswith("错误")
