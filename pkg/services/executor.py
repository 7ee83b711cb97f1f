"""命令执行器

每个子命令返回结果字典 {"success", "message", "data", "text", "error", "exit_code"}，
异常不会逃出 execute。退出码：0 成功，1 校验失败，2 用法或输入错误，3 超出上限或预算。
"""
import time
from pathlib import Path
from typing import Any, Callable, Dict, Optional, Tuple

from ..models.errors import (
    CapExceededError, InvariantsError, MalformedInputError, SizeMismatchError,
)
from ..models.run import RunConfig, RunRecord
from ..utils.config_validator import ConfigValidator
from ..utils.cycle_parser import CycleParser
from ..utils.formatter import (
    dimension_to_json, format_polynomial, graph_to_json, orbit_listing, polynomial_to_json,
    render_table, table_to_json, to_dot, tuple_to_text,
    value_to_json,
)
from ..utils.logger import logger
from ..utils.newick import format_newick, parse_newick
from .dimension import DimensionQuery, burnside_dimension_brute, dimension_table, stable_dimension
from .invariants import build_invariant, evaluate, load_tensor, verify_basis
from .matchings import check_cap
from .orbits import enumerate_orbits, orbit_size, to_colored_graph
from .phylo import forest_act, forest_to_tuple, labelled_tree, matching_to_tree, tree_to_matching

EXIT_OK = 0
EXIT_VERIFICATION_FAILED = 1
EXIT_USAGE = 2
EXIT_CAP_EXCEEDED = 3


def error_result(kind: str, message: str, exit_code: int) -> Dict[str, Any]:
    return {
        "success": False,
        "message": message,
        "data": None,
        "text": "",
        "error": kind,
        "exit_code": exit_code,
    }


def exit_code_for(error: InvariantsError) -> int:
    if isinstance(error, CapExceededError):
        return EXIT_CAP_EXCEEDED
    if isinstance(error, (MalformedInputError, SizeMismatchError)):
        return EXIT_USAGE
    return EXIT_VERIFICATION_FAILED


class CommandExecutor:
    """命令执行器"""

    def __init__(self, validator: Optional[ConfigValidator] = None):
        self.validator = validator or ConfigValidator()
        self.handlers: Dict[str, Callable[[RunConfig], Dict[str, Any]]] = {
            "dim": self._execute_dim,
            "table": self._execute_table,
            "orbits": self._execute_orbits,
            "invariant": self._execute_invariant,
            "verify": self._execute_verify,
            "trees": self._execute_trees,
        }

    def execute(self, config: RunConfig) -> Dict[str, Any]:
        """执行单个命令"""
        is_valid, error, _ = self.validator.validate_run_config(config)
        if not is_valid:
            return error_result("usage", error, EXIT_USAGE)
        handler = self.handlers[config.command]
        try:
            return handler(config)
        except InvariantsError as e:
            logger.warning(f"⚠️ 命令 {config.command} 失败 ({e.kind}): {e}")
            return error_result(e.kind, str(e), exit_code_for(e))
        except Exception as e:
            logger.error(f"执行命令 {config.command} 时出错: {e}", exc_info=True)
            return error_result("error", f"命令执行异常: {str(e)}", EXIT_VERIFICATION_FAILED)

    def execute_recorded(self, config: RunConfig) -> Tuple[Dict[str, Any], RunRecord]:
        """执行命令并生成运行记录"""
        start = time.monotonic()
        result = self.execute(config)
        record = RunRecord(
            success=result["success"],
            message=result["message"],
            command=config.command,
            duration=round(time.monotonic() - start, 3),
            error=result["error"],
        )
        return result, record

    @staticmethod
    def _ok(message: str, data: Any, text: str) -> Dict[str, Any]:
        return {"success": True, "message": message, "data": data, "text": text, "error": None, "exit_code": EXIT_OK}

    def _execute_dim(self, config: RunConfig) -> Dict[str, Any]:
        q = DimensionQuery(config.r, config.m)
        dim = stable_dimension(q.r, q.m)
        if q.d <= config.brute_cap:
            brute = burnside_dimension_brute(q.r, q.m, config.brute_cap)
            if brute != dim:
                logger.error(f"❌ 维数公式与 Burnside 暴力结果不一致: {dim} != {brute}")
                return error_result("verification_failed", f"公式 {dim} 与暴力计数 {brute} 不一致",
                                    EXIT_VERIFICATION_FAILED)
        logger.info(f"✅ 稳定维数 r={q.r}, m={q.m}: {dim}")
        return self._ok(f"r={q.r}, m={q.m} 的稳定维数为 {dim}", dimension_to_json(q.r, q.m, dim), str(dim))

    def _execute_table(self, config: RunConfig) -> Dict[str, Any]:
        table = dimension_table(config.r_max, config.m_max)
        return self._ok(f"已生成 {config.r_max}×{config.m_max} 维数表", table_to_json(table), render_table(table))

    def _execute_orbits(self, config: RunConfig) -> Dict[str, Any]:
        check_cap(2 * config.m, config.enum_cap, "匹配枚举")
        reps = enumerate_orbits(config.r, config.m, config.canonical_cap, threads=config.threads)
        sizes = [orbit_size(t, config.canonical_cap) for t in reps]
        expected = stable_dimension(config.r, config.m)
        if len(reps) != expected:
            logger.error(f"❌ 轨道数 {len(reps)} 与稳定维数 {expected} 不一致")
            return error_result("verification_failed", f"轨道数 {len(reps)} 与稳定维数 {expected} 不一致",
                                EXIT_VERIFICATION_FAILED)
        graphs = [to_colored_graph(t) for t in reps]
        dots = [to_dot(g, f"orbit{k}") for k, g in enumerate(graphs, start=1)]
        if config.dot_dir:
            out = Path(config.dot_dir)
            out.mkdir(parents=True, exist_ok=True)
            for k, dot in enumerate(dots, start=1):
                (out / f"orbit_{k}.dot").write_text(dot, encoding="utf-8")
            logger.info(f"已写出 {len(dots)} 个 DOT 文件到 {out}")
        data = {
            "r": config.r,
            "m": config.m,
            "count": len(reps),
            "orbits": [
                {
                    "index": k,
                    "matchings": [tau.to_pairs() for tau in t.taus],
                    "orbit_size": str(size),
                    "graph": graph_to_json(g),
                }
                for k, (t, size, g) in enumerate(zip(reps, sizes, graphs), start=1)
            ],
        }
        text = "".join(dots) if config.output == "dot" else orbit_listing(reps, sizes)
        return self._ok(f"r={config.r}, m={config.m} 共 {len(reps)} 个轨道", data, text)

    def _execute_invariant(self, config: RunConfig) -> Dict[str, Any]:
        check_cap(2 * config.m, config.enum_cap, "匹配枚举")
        reps = enumerate_orbits(config.r, config.m, config.canonical_cap, threads=config.threads)
        if config.orbit > len(reps):
            raise MalformedInputError(f"轨道编号 {config.orbit} 超出范围 1..{len(reps)}")
        t = reps[config.orbit - 1]
        tensor = load_tensor(config.tensor_file) if config.tensor_file else None
        dims = config.resolved_dims() if config.dims or tensor is None else list(tensor.dims)
        f = build_invariant(t, dims)
        data = {
            "r": config.r,
            "m": config.m,
            "orbit": config.orbit,
            "matchings": [tau.to_pairs() for tau in t.taus],
            "polynomial": polynomial_to_json(f),
        }
        text = f"{tuple_to_text(t)}\n{format_polynomial(f)}"
        if tensor is not None:
            value = evaluate(f, tensor, config.evaluation_budget)
            data["value"] = value_to_json(value)
            text += f"\n在 {config.tensor_file} 上的值: {value}"
        return self._ok(f"第 {config.orbit} 个轨道的不变量", data, text)

    def _execute_verify(self, config: RunConfig) -> Dict[str, Any]:
        check_cap(2 * config.m, config.enum_cap, "匹配枚举")
        report = verify_basis(
            config.r, config.m, config.resolved_dims(),
            trials=config.trials, seed=config.seed, kind=config.kind, tolerance=config.tolerance,
            canonical_cap=config.canonical_cap, budget=config.evaluation_budget, threads=config.threads,
        )
        lines = [f"[{k}] 最大残差 {res:.3e}" for k, res in enumerate(report["residuals"], start=1)]
        lines.append(f"总体最大残差 {report['max_residual']:.3e} (容差 {config.tolerance:g})")
        if report["rank"] is not None:
            lines.append(f"精确秩 {report['rank']} / {report['basis_size']}")
        text = "\n".join(lines)
        if report["passed"]:
            logger.info(f"✅ 校验通过: r={config.r}, m={config.m}, 最大残差 {report['max_residual']:.3e}")
            return self._ok("不变性校验通过", report, text)
        result = error_result(
            "verification_failed",
            f"最大残差 {report['max_residual']:.3e}，秩 {report['rank']}/{report['basis_size']}",
            EXIT_VERIFICATION_FAILED,
        )
        result["data"], result["text"] = report, text
        return result

    def _execute_trees(self, config: RunConfig) -> Dict[str, Any]:
        if config.act is not None:
            return self._execute_forest_act(config)
        if config.matching is not None:
            tau = CycleParser.parse_matching(config.matching)
            tree = matching_to_tree(tau)
        elif config.newick is not None:
            tree = parse_newick(config.newick)
            tau = tree_to_matching(tree)
        else:
            raise MalformedInputError("trees 需要 --matching、--newick 或 --act 之一")
        steps = labelled_tree(tree)
        data = {
            "matching": tau.to_pairs(),
            "newick": format_newick(tree),
            "labels": [{"parent": p, "children": [a, b]} for p, a, b in steps],
        }
        text = format_newick(tree) if config.output == "newick" else f"{tau}\n{format_newick(tree)}"
        return self._ok(f"匹配 {tau} 对应 {tree.n_leaves} 个叶子的树", data, text)

    def _execute_forest_act(self, config: RunConfig) -> Dict[str, Any]:
        if not config.forest_file:
            raise MalformedInputError("--act 需要同时给出 --forest 文件")
        try:
            content = Path(config.forest_file).read_text(encoding="utf-8")
        except OSError as e:
            raise MalformedInputError(f"无法读取森林文件 {config.forest_file}: {e}") from e
        is_valid, error, forest = self.validator.validate_forest_file(content)
        if not is_valid:
            raise MalformedInputError(error)
        sigma = CycleParser.parse_permutation(config.act, 2 * (forest.n_leaves - 1))
        moved = forest_act(sigma, forest)
        t = forest_to_tuple(moved)
        data = {
            "permutation": str(sigma),
            "forest": [format_newick(tree) for tree in moved.trees],
            "matchings": [tau.to_pairs() for tau in t.taus],
        }
        text = "\n".join(format_newick(tree) for tree in moved.trees)
        if config.output != "newick":
            text = f"{tuple_to_text(t)}\n{text}"
        return self._ok(f"置换 {sigma} 作用后的森林", data, text)
