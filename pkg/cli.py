"""独立命令行入口

    python -m astrbot_plugin_invariants dim --r 3 --m 2
    python -m astrbot_plugin_invariants table --rmax 8 --mmax 6 --json
    python -m astrbot_plugin_invariants orbits --r 3 --m 2 --dot out/
    python -m astrbot_plugin_invariants invariant --r 3 --m 2 --orbit 1 --dims 2,2,2
    python -m astrbot_plugin_invariants verify --r 3 --m 2 --dims 2,2,2 --trials 20
    python -m astrbot_plugin_invariants trees --matching "(1 4)(2 3)(5 8)(6 7)"
    python -m astrbot_plugin_invariants trees --act "(1 3 5)(2 4)" --forest forest.json

标准输出只写结果；出错时向标准错误写一行 "error: <kind>: <message>"。
"""
import argparse
import logging
import sys
from typing import List, Optional, TextIO

from .models.errors import MalformedInputError
from .models.run import (
    DEFAULT_BRUTE_CAP, DEFAULT_CANONICAL_CAP, DEFAULT_EVALUATION_BUDGET, DEFAULT_SEED,
    DEFAULT_TOLERANCE, DEFAULT_TRIALS, GROUP_KINDS, OUTPUT_FORMATS, RunConfig, env_enum_cap,
)
from .services.executor import EXIT_USAGE, CommandExecutor
from .utils.cycle_parser import CycleParser
from .utils.formatter import dumps


class UsageError(Exception):
    pass


class _ArgumentParser(argparse.ArgumentParser):
    def error(self, message: str):
        raise UsageError(message)


def _common(parser: argparse.ArgumentParser):
    parser.add_argument("--json", action="store_true", help="输出 JSON")
    parser.add_argument("--format", choices=OUTPUT_FORMATS, default=None, help="输出格式")
    parser.add_argument("--threads", type=int, default=0, help="并行进程数，0 为全部可用核心")
    parser.add_argument("--enum-cap", type=int, default=None, help="匹配枚举上限 2m")
    parser.add_argument("--brute-cap", type=int, default=DEFAULT_BRUTE_CAP, help="暴力校验上限 2m")
    parser.add_argument("--canonical-cap", type=int, default=DEFAULT_CANONICAL_CAP, help="规范化上限 2m")
    parser.add_argument("--budget", type=int, default=DEFAULT_EVALUATION_BUDGET, help="求值乘法次数预算")
    parser.add_argument("-v", "--verbose", action="store_true", help="向标准错误输出日志")


def build_parser() -> argparse.ArgumentParser:
    parser = _ArgumentParser(prog="astrbot_plugin_invariants", description="正交群张量不变量计算")
    sub = parser.add_subparsers(dest="command", parser_class=_ArgumentParser)

    p = sub.add_parser("dim", help="稳定维数")
    p.add_argument("--r", type=int, required=True)
    p.add_argument("--m", type=int, required=True)
    _common(p)

    p = sub.add_parser("table", help="维数表")
    p.add_argument("--rmax", type=int, default=8)
    p.add_argument("--mmax", type=int, default=6)
    _common(p)

    p = sub.add_parser("orbits", help="轨道代表与着色图")
    p.add_argument("--r", type=int, required=True)
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--dot", dest="dot_dir", default=None, help="DOT 文件输出目录")
    _common(p)

    p = sub.add_parser("invariant", help="轨道对应的不变多项式")
    p.add_argument("--r", type=int, required=True)
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--orbit", type=int, default=1)
    p.add_argument("--dims", default=None, help="n1,n2,…，缺省为 2m")
    p.add_argument("--tensor", dest="tensor_file", default=None, help="张量 JSON 文件，给出时输出不变量在其上的值")
    _common(p)

    p = sub.add_parser("verify", help="正交不变性与线性无关校验")
    p.add_argument("--r", type=int, required=True)
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--dims", default=None)
    p.add_argument("--trials", type=int, default=DEFAULT_TRIALS)
    p.add_argument("--seed", type=int, default=DEFAULT_SEED)
    p.add_argument("--kind", choices=GROUP_KINDS, default="both")
    p.add_argument("--tolerance", type=float, default=DEFAULT_TOLERANCE)
    _common(p)

    p = sub.add_parser("trees", help="匹配与系统发生树")
    p.add_argument("--matching", default=None, help='如 "(1 4)(2 3)(5 8)(6 7)"')
    p.add_argument("--newick", default=None, help='如 "(((1,4),(2,3)),5);"')
    p.add_argument("--act", default=None, help='置换，如 "(1 3 5)(2 4)(6)"')
    p.add_argument("--forest", dest="forest_file", default=None, help="森林 JSON 文件")
    _common(p)
    return parser


def config_from_args(args: argparse.Namespace) -> RunConfig:
    output = args.format or ("json" if args.json else "text")
    dims = CycleParser.parse_dims(getattr(args, "dims", None))
    return RunConfig(
        command=args.command,
        r=getattr(args, "r", 1),
        m=getattr(args, "m", 0),
        dims=dims,
        orbit=getattr(args, "orbit", 1),
        seed=getattr(args, "seed", DEFAULT_SEED),
        trials=getattr(args, "trials", DEFAULT_TRIALS),
        tolerance=getattr(args, "tolerance", DEFAULT_TOLERANCE),
        kind=getattr(args, "kind", "both"),
        output=output,
        r_max=getattr(args, "rmax", 8),
        m_max=getattr(args, "mmax", 6),
        enum_cap=args.enum_cap if args.enum_cap is not None else env_enum_cap(),
        brute_cap=args.brute_cap,
        canonical_cap=args.canonical_cap,
        evaluation_budget=args.budget,
        threads=args.threads,
        matching=getattr(args, "matching", None),
        newick=getattr(args, "newick", None),
        act=getattr(args, "act", None),
        forest_file=getattr(args, "forest_file", None),
        dot_dir=getattr(args, "dot_dir", None),
        tensor_file=getattr(args, "tensor_file", None),
    )


def _setup_logging(verbose: bool):
    logger = logging.getLogger("astrbot_plugin_invariants")
    if logger.handlers:
        return
    handler = logging.StreamHandler(sys.stderr)
    handler.setFormatter(logging.Formatter("%(levelname)s %(message)s"))
    logger.addHandler(handler)
    logger.setLevel(logging.INFO if verbose else logging.WARNING)
    logger.propagate = False


def main(argv: Optional[List[str]] = None, stdout: Optional[TextIO] = None,
         stderr: Optional[TextIO] = None) -> int:
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    try:
        args = build_parser().parse_args(argv)
        if args.command is None:
            raise UsageError("缺少子命令 (dim, table, orbits, invariant, verify, trees)")
        config = config_from_args(args)
    except (UsageError, MalformedInputError) as e:
        print(f"error: usage: {e}", file=stderr)
        return EXIT_USAGE

    _setup_logging(args.verbose)
    result = CommandExecutor().execute(config)
    if result["data"] is not None or result["success"]:
        if config.output == "json":
            print(dumps(result["data"]), file=stdout)
        elif result["text"]:
            print(result["text"].rstrip("\n"), file=stdout)
    if not result["success"]:
        print(f"error: {result['error']}: {result['message']}", file=stderr)
    return result["exit_code"]

