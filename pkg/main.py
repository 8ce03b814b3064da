#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
Entangle Lab - 数值纠缠容错实验框架
====================================

命令行入口：参数表生成、故障注入扫描、相对开销基准测试与解析运算量曲线。

退出码: 0 成功；1 用法错误；2 出现违反单故障保证的试验
"""

import argparse
import sys
from pathlib import Path
from typing import List, Optional

# 添加项目根目录到Python路径
sys.path.insert(0, str(Path(__file__).parent))

from pydantic import ValidationError

from cli import COMMANDS, RunSpec, UsageError
from cli.commands import TABLE_M_VALUES, TABLE_WORD_BITS
from config import get_settings, update_settings
from core.errors import CertificationError, ConfigurationError
from utils.logger import get_logger, setup_logger


EXIT_OK = 0
EXIT_USAGE = 1
EXIT_VIOLATION = 2


class UsageArgumentParser(argparse.ArgumentParser):
    """解析失败时抛出 UsageError 而不是直接退出进程"""

    def error(self, message):
        raise UsageError(message)


class EntangleLabApplication:
    """
    Entangle Lab应用程序主类

    负责日志初始化、子命令分发与收尾
    """

    def __init__(self, spec: RunSpec):
        """
        Args:
            spec: 已校验的运行规格
        """
        self.spec = spec
        self.logger = None

    def initialize(self):
        settings = get_settings()
        settings.ensure_directories()
        setup_logger(
            name="entangle",
            level=settings.effective_log_level,
            log_file=settings.LOG_FILE_PATH,
            format_string=settings.LOG_FORMAT,
        )
        self.logger = get_logger("entangle.app")
        self.logger.info("🚀 Entangle Lab启动", subcommand=self.spec.subcommand, seed=self.spec.seed)

    def run(self) -> int:
        code = COMMANDS[self.spec.subcommand](self.spec)
        self.logger.info("✅ 子命令完成", subcommand=self.spec.subcommand, exit_code=code)
        return code

    def shutdown(self):
        if self.logger:
            self.logger.debug("🔄 应用程序已退出")


def _int_list(text: str) -> List[int]:
    try:
        values = [int(part) for part in text.split(",") if part.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"需要逗号分隔的整数列表: {text!r}") from None
    if not values:
        raise argparse.ArgumentTypeError("列表不能为空")
    return values


def _str_list(text: str) -> List[str]:
    values = [part.strip() for part in text.split(",") if part.strip()]
    if not values:
        raise argparse.ArgumentTypeError("列表不能为空")
    return values


def _add_common(parser: argparse.ArgumentParser):
    parser.add_argument("--seed", type=int, help="随机种子（默认取环境变量 ENTANGLE_SEED）")
    parser.add_argument("--output", "-o", default="-", help="输出CSV路径，- 表示stdout")
    parser.add_argument("--w", dest="word_bits", type=_int_list, help="字长列表，如 32 或 32,64")


def create_arg_parser() -> argparse.ArgumentParser:
    """
    创建命令行参数解析器
    """
    parser = UsageArgumentParser(
        description="Entangle Lab - 数值纠缠容错实验框架",
        formatter_class=argparse.RawDescriptionHelpFormatter,
        epilog="""
示例用法:
  python main.py table                                  # 重新生成 (l, k) 参数表
  python main.py run --method entangle --M 3 --N 16 --kernel conv --scenario all-bitflips
  python main.py run --method both --scenario stream-drop --M 3,4,5
  python main.py bench --workload gemm --M 3 --N 200,500,1000,2000
  python main.py curves --workload conv_time --M 3,8 --N 100,1000
        """
    )
    parser.add_argument("--debug", "-d", action="store_true", help="启用调试日志")
    parser.add_argument(
        "--version", "-v",
        action="version",
        version=f"EntangleLab {get_settings().VERSION}"
    )

    sub = parser.add_subparsers(dest="command", metavar="{table,run,bench,curves}")

    table = sub.add_parser("table", help="重新生成 (l, k) 参数表")
    _add_common(table)
    table.add_argument("--M", dest="m_values", type=_int_list, help="流数列表")
    table.add_argument("--format", dest="output_format", choices=["csv", "text"], default="csv")
    table.set_defaults(m_values=list(TABLE_M_VALUES), word_bits=list(TABLE_WORD_BITS))

    run = sub.add_parser("run", help="故障注入扫描")
    _add_common(run)
    run.add_argument("--method", default="entangle", help="entangle, abft 或 both")
    run.add_argument("--M", dest="m_values", type=_int_list, default=[3], help="流数列表")
    run.add_argument("--N", dest="lengths", type=_int_list, default=[16], help="流长度列表")
    run.add_argument("--kernel", default="conv", help="算子名称")
    run.add_argument("--scenario", default="all-bitflips", help="场景族")
    run.add_argument("--trials", type=int, default=100, help="随机场景族的试验次数")
    run.add_argument("--grid", dest="grid_file", help="YAML网格文件，覆盖网格相关参数")

    bench_parser = sub.add_parser("bench", help="相对开销基准测试")
    _add_common(bench_parser)
    bench_parser.add_argument("--workload", dest="workloads", type=_str_list, default=["gemm"])
    bench_parser.add_argument("--M", dest="m_values", type=_int_list, default=[3])
    bench_parser.add_argument("--N", dest="lengths", type=_int_list, default=[200, 500, 1000, 2000])
    bench_parser.add_argument("--repetitions", type=int, help="重复次数（默认取 BENCH_REPETITIONS）")

    curves_parser = sub.add_parser("curves", help="解析运算量比例曲线")
    _add_common(curves_parser)
    curves_parser.add_argument("--workload", dest="workloads", type=_str_list, default=["gemm"])
    curves_parser.add_argument("--M", dest="m_values", type=_int_list, default=[3, 8, 32])
    curves_parser.add_argument(
        "--N", dest="lengths", type=_int_list, default=[100, 200, 500, 1000, 2000, 5000, 10000]
    )

    return parser


def build_spec(args: argparse.Namespace) -> RunSpec:
    """
    把解析后的参数转为 RunSpec

    Raises:
        pydantic.ValidationError: 参数不满足前置条件
    """
    fields = {"subcommand": args.command}
    for name in (
        "m_values", "word_bits", "lengths", "kernel", "scenario", "workloads",
        "seed", "repetitions", "trials", "output", "output_format", "grid_file",
    ):
        value = getattr(args, name, None)
        if value is not None:
            fields[name] = value
    method = getattr(args, "method", None)
    if method is not None:
        fields["methods"] = ["entangle", "abft"] if method == "both" else [method]
    return RunSpec(**fields)


def main(argv: Optional[List[str]] = None) -> int:
    """
    主函数

    Args:
        argv: 命令行参数，默认取 sys.argv[1:]

    Returns:
        int: 进程退出码
    """
    parser = create_arg_parser()
    try:
        args = parser.parse_args(argv)
    except UsageError as e:
        print(f"❌ 用法错误: {e}", file=sys.stderr)
        return EXIT_USAGE
    except SystemExit as e:
        # --help / --version
        return e.code if isinstance(e.code, int) else EXIT_OK

    if args.debug:
        update_settings(DEBUG=True)

    if args.command is None:
        parser.print_help(sys.stderr)
        return EXIT_USAGE

    try:
        spec = build_spec(args)
    except ValidationError as e:
        print(f"❌ 用法错误: {e}", file=sys.stderr)
        return EXIT_USAGE

    app = EntangleLabApplication(spec)
    try:
        app.initialize()
        return app.run()
    except (UsageError, ValidationError, ConfigurationError, CertificationError, OSError) as e:
        print(f"❌ 无法执行: {e}", file=sys.stderr)
        return EXIT_USAGE
    except KeyboardInterrupt:
        print("\n👋 程序已退出", file=sys.stderr)
        return EXIT_USAGE
    finally:
        app.shutdown()


if __name__ == "__main__":
    sys.exit(main())
