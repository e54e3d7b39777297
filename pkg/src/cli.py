# 命令行入口
"""tfp-toolkit 命令行

子命令 count、enumerate、decompose、requests-solve、cog-solve、clebsch-dist3 逐个处理输入实例，
verify 在目录上批量核对结论，generate 输出生成的实例。结果只写到标准输出，日志写到标准错误。
"""

import argparse
import json
import logging
import sys
from functools import partial
from typing import Any, Optional, Sequence, TypeVar

from pydantic import BaseModel, ValidationError

from .commands import INSTANCE_COMMANDS, decompose_record, enumerate_record, requests_record
from .decomposition import SUBURB_LENGTH
from .formatter import ResponseFormatter
from .generators import generate
from .models import CommandResult, ResponseFormat, RunOptions, VerifyInput
from .readers.base import Instance
from .readers.json_doc import emit_json
from .readers.planar_code import emit_planar_code
from .router import get_router
from .utils import (
    EXIT_OK,
    EXIT_STATEMENT,
    DEFAULT_MAX_N,
    ErrorCode,
    HypothesisViolation,
    handle_error,
    map_in_order,
    read_log_level,
    read_seed,
)
from .verify import CHECKS, run_check


logger = logging.getLogger(__name__)

ModelT = TypeVar("ModelT", bound=BaseModel)


# ---------------------------------------------------------------- 参数


def _parse_param(text: str) -> tuple[str, Any]:
    """解析 key=value，value 按 JSON 解释（失败时保留字符串）"""
    if "=" not in text:
        raise argparse.ArgumentTypeError(f"参数 '{text}' 应为 key=value 形式")
    key, raw = text.split("=", 1)
    try:
        return key, json.loads(raw)
    except json.JSONDecodeError:
        return key, raw


class ToolkitArgumentParser(argparse.ArgumentParser):
    """参数错误按 BAD_PARAMS 抛出，退出码 1；退出码 2 只留给结论被证伪"""

    def error(self, message: str):
        raise HypothesisViolation(ErrorCode.BAD_PARAMS, f"{self.prog}: {message}")


def build_parser() -> argparse.ArgumentParser:
    common = ToolkitArgumentParser(add_help=False)
    common.add_argument("--input", help="输入文件（planar_code 或 JSON，按文件头识别）；缺省读标准输入")
    common.add_argument("--output", choices=[f.value for f in ResponseFormat], default="json", help="输出格式")
    common.add_argument("--jobs", type=int, default=1, help="并行进程数")
    common.add_argument("--log-level", default=None, help="日志级别（缺省取 TFP_LOG_LEVEL，否则 WARNING）")

    parser = ToolkitArgumentParser(
        prog="tfp-toolkit",
        description="无三角形平面图 3-着色工具箱",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    sub.add_parser("count", parents=[common], help="统计 3-着色个数（有齿轮 ψ 时统计其扩展）")
    enumerate_parser = sub.add_parser("enumerate", parents=[common], help="按字典序列出 3-着色")
    enumerate_parser.add_argument("--limit", type=int, default=None)
    decompose_parser = sub.add_parser("decompose", parents=[common], help="极大 5-圈分解")
    decompose_parser.add_argument("--suburb-length", type=int, default=SUBURB_LENGTH)
    requests_parser = sub.add_parser("requests-solve", parents=[common], help="最大请求满足比例")
    requests_parser.add_argument("--vertex", type=int, default=None, help="所有不等请求共同邻接的顶点（走齿轮流程）")
    sub.add_parser("cog-solve", parents=[common], help="齿轮的最佳需求比例与 α 引理检查")
    sub.add_parser("clebsch-dist3", parents=[common], help="经 Clebsch 图同态的距离 3 着色")

    verify_parser = sub.add_parser("verify", parents=[common], help="在目录上核对结论")
    verify_parser.add_argument("check", help=f"检查编号: {', '.join(sorted(CHECKS))}")
    verify_parser.add_argument("--max-n", type=int, default=DEFAULT_MAX_N)
    verify_parser.add_argument("--seed", type=int, default=None, help="缺省取 TFP_SEED")
    verify_parser.add_argument("--trials", type=int, default=50)

    generate_parser = sub.add_parser("generate", parents=[common], help="生成实例")
    generate_parser.add_argument("family", help="图族名，如 cycle、figure2、random_tfp")
    generate_parser.add_argument("--param", action="append", type=_parse_param, default=[], metavar="KEY=VALUE")
    generate_parser.add_argument("--planar-code", action="store_true", help="以 planar_code 输出（只含图）")
    return parser


# ---------------------------------------------------------------- 执行


def _validated(model: type[ModelT], **fields: Any) -> ModelT:
    """命令行参数越界同样是 BAD_PARAMS，而不是文档格式错误"""
    try:
        return model(**fields)
    except ValidationError as e:
        error = e.errors()[0]
        where = ".".join(str(part) for part in error["loc"])
        raise HypothesisViolation(ErrorCode.BAD_PARAMS, f"参数 {where} 不合法: {error['msg']}") from e


def _load_instances(options: RunOptions) -> list[Instance]:
    router = get_router()
    if options.input:
        return router.load(options.input)
    return router.parse(sys.stdin.buffer.read())


def _run_instances(args: argparse.Namespace, options: RunOptions) -> CommandResult:
    func = INSTANCE_COMMANDS[args.command]
    if args.command == "enumerate":
        func = partial(enumerate_record, limit=args.limit)
    elif args.command == "decompose":
        func = partial(decompose_record, suburb_length=args.suburb_length)
    elif args.command == "requests-solve":
        func = partial(requests_record, vertex=args.vertex)
    instances = _load_instances(options)
    records = map_in_order(func, instances, options.jobs)
    logger.info("%s: 处理了 %d 个实例", args.command, len(records))
    return CommandResult(command=args.command, records=records)


def _run_generate(args: argparse.Namespace) -> None:
    instances = generate(args.family, **dict(args.param))
    if args.planar_code:
        sys.stdout.buffer.write(emit_planar_code(instance.graph for instance in instances))
        sys.stdout.buffer.flush()
    else:
        sys.stdout.write(emit_json(instances))


def main(argv: Optional[Sequence[str]] = None) -> int:
    """命令行主函数，返回退出码"""
    source: Optional[str] = None
    try:
        args = build_parser().parse_args(argv)
        source = args.input
        logging.basicConfig(
            level=(args.log_level or read_log_level()).upper(),
            stream=sys.stderr,
            format="%(levelname)s %(name)s: %(message)s",
        )
        options = _validated(RunOptions, input=args.input, output=ResponseFormat(args.output), jobs=args.jobs)
        if args.command == "generate":
            _run_generate(args)
            return EXIT_OK

        exit_code = EXIT_OK
        if args.command == "verify":
            seed = read_seed() if args.seed is None else args.seed
            report = run_check(_validated(
                VerifyInput,
                check_id=args.check,
                input=args.input,
                max_n=args.max_n,
                seed=seed,
                trials=args.trials,
                jobs=args.jobs,
            ))
            if not report.ok:
                logger.warning("检查 %s 发现 %d 个违反", report.check, report.violations)
                exit_code = EXIT_STATEMENT
            result = CommandResult(command="verify", records=[report.model_dump(mode="json")])
        else:
            result = _run_instances(args, options)

        text = ResponseFormatter.format(result, options.output)
        # CSV 已以换行结尾，不再追加空行
        sys.stdout.write(text if text.endswith("\n") else text + "\n")
        return exit_code

    except Exception as e:
        exit_code, message = handle_error(e, source)
        print(message, file=sys.stderr)
        return exit_code


if __name__ == "__main__":
    sys.exit(main())
