# 目录验证测试
"""小规模目录上的各项检查、检查注册表与参数校验"""

import pytest
from pydantic import ValidationError

from src.models import VerifyInput
from src.plane_graph import cycle_graph
from src.readers.planar_code import emit_planar_code
from src.utils import ErrorCode, HypothesisViolation, map_in_order
from src.verify import CHECKS, run_check


def test_registry_names():
    assert {
        "cycles", "manycolor", "extension", "minc", "kempe", "gadgets", "clone",
        "decomposition", "rearrange", "lists", "clebsch", "cogs", "formats",
    } <= set(CHECKS)


@pytest.mark.parametrize("check_id", ["cycles", "kempe", "clebsch", "formats"])
def test_small_catalog_has_no_violations(check_id):
    report = run_check(VerifyInput(check_id=check_id, max_n=5, trials=3))
    assert report.ok, report.details
    assert report.instances > 0


def test_cycles_check_counts_instances():
    report = run_check(VerifyInput(check_id="cycles"))
    assert report.instances == 12
    assert report.details == []


@pytest.mark.parametrize("check_id", ["clone", "gadgets"])
def test_seeded_request_checks(check_id):
    report = run_check(VerifyInput(check_id=check_id, seed=0, trials=50))
    assert report.instances == 50
    assert report.ok, report.details


def test_unknown_check():
    with pytest.raises(HypothesisViolation) as exc:
        run_check(VerifyInput(check_id="no_such_check"))
    assert exc.value.code == ErrorCode.BAD_PARAMS


def test_catalog_size_is_bounded():
    with pytest.raises(ValidationError):
        VerifyInput(check_id="cycles", max_n=13)


def test_catalog_from_file(tmp_path):
    path = tmp_path / "cycles.pc"
    path.write_bytes(emit_planar_code([cycle_graph(4), cycle_graph(6)]))
    report = run_check(VerifyInput(check_id="kempe", input=str(path)))
    assert report.instances == 2
    assert report.ok


def test_parallel_map_keeps_order():
    assert map_in_order(abs, [-3, 1, -2, 5], jobs=2) == [3, 1, 2, 5]
    assert map_in_order(abs, [-1]) == [1]
