"""
正交群张量不变量插件
计算稳定维数、轨道代表、不变多项式，并提供数值校验与系统发生树换算
"""
import asyncio
from typing import Any, Dict

from astrbot.api.event import filter, AstrMessageEvent
from astrbot.api.star import Context, Star, register
from astrbot.api import logger, AstrBotConfig

from .models.errors import MalformedInputError
from .models.run import (
    DEFAULT_BRUTE_CAP, DEFAULT_CANONICAL_CAP, DEFAULT_ENUM_CAP, DEFAULT_EVALUATION_BUDGET,
    DEFAULT_SEED, DEFAULT_TOLERANCE, DEFAULT_TRIALS, RunConfig, RunLedger, env_enum_cap,
)
from .services.dimension import dimension_series
from .services.executor import CommandExecutor
from .utils.cycle_parser import CycleParser
from .utils.formatter import dumps

# 聊天消息过长时截断
MAX_REPLY_CHARS = 3000

HELP_TEXT = """🧮 **张量不变量命令**

• /inv dim <r> <m> - 稳定维数
• /inv table <rmax> <mmax> - 维数表
• /inv orbits <r> <m> - 轨道代表与轨道大小
• /inv invariant <r> <m> <k> [n1,n2,…] - 第 k 个轨道的不变多项式
• /inv verify <r> <m> [n1,n2,…] [trials] - 正交不变性与线性无关校验
• /inv trees <匹配> - 匹配对应的系统发生树，如 (1 4)(2 3)(5 8)(6 7)
• /inv status - 运行统计
• /inv help - 显示本帮助"""


def _to_int(value: Any, name: str) -> int:
    try:
        return int(value)
    except (TypeError, ValueError):
        raise MalformedInputError(f"{name} 必须是整数: {value}")


@register("invariants", "Couei", "正交群张量不变量插件", "1.0.0")
class InvariantPlugin(Star):
    """正交群张量不变量插件"""

    def __init__(self, context: Context, config: AstrBotConfig = None):
        super().__init__(context)

        self.plugin_config = config or {}

        # 扁平化配置，环境变量优先于枚举上限配置
        self.enumeration_cap = env_enum_cap(getattr(self.plugin_config, "enumeration_cap", DEFAULT_ENUM_CAP))
        self.brute_cap = getattr(self.plugin_config, "brute_cap", DEFAULT_BRUTE_CAP)
        self.canonical_cap = getattr(self.plugin_config, "canonical_cap", DEFAULT_CANONICAL_CAP)
        self.evaluation_budget = getattr(self.plugin_config, "evaluation_budget", DEFAULT_EVALUATION_BUDGET)
        self.tolerance = getattr(self.plugin_config, "tolerance", DEFAULT_TOLERANCE)
        self.default_seed = getattr(self.plugin_config, "default_seed", DEFAULT_SEED)
        self.default_trials = getattr(self.plugin_config, "default_trials", DEFAULT_TRIALS)
        # 计算跑在宿主进程的工作线程里，不创建子进程
        self.threads = 1
        self.max_history = getattr(self.plugin_config, "max_history", 200)
        self.show_json = getattr(self.plugin_config, "show_json", False)

        self.executor = CommandExecutor()
        self.ledger = RunLedger(self.max_history)

        logger.info("张量不变量插件已初始化")

    async def terminate(self):
        """插件终止时的清理工作"""
        logger.info(f"张量不变量插件已停止，共执行 {self.ledger.statistics()['total_runs']} 次计算")

    def _config(self, command: str, **overrides) -> RunConfig:
        config = RunConfig(
            command=command,
            seed=self.default_seed,
            trials=self.default_trials,
            tolerance=self.tolerance,
            output="json" if self.show_json else "text",
            enum_cap=self.enumeration_cap,
            brute_cap=self.brute_cap,
            canonical_cap=self.canonical_cap,
            evaluation_budget=self.evaluation_budget,
            threads=self.threads,
        )
        for key, value in overrides.items():
            setattr(config, key, value)
        return config

    async def _run(self, config: RunConfig) -> Dict[str, Any]:
        """在线程中执行计算，避免阻塞事件循环"""
        result, record = await asyncio.to_thread(self.executor.execute_recorded, config)
        self.ledger.record(record)
        return result

    @staticmethod
    def _reply(result: Dict[str, Any], as_json: bool) -> str:
        if not result["success"] and result["data"] is None:
            return f"❌ {result['message']}"
        body = dumps(result["data"]) if as_json else result["text"]
        head = "✅" if result["success"] else "⚠️"
        text = f"{head} {result['message']}\n{body}"
        if len(text) > MAX_REPLY_CHARS:
            text = text[:MAX_REPLY_CHARS] + "\n…（输出过长已截断，请使用命令行工具）"
        return text

    @filter.command_group("inv")
    def inv(self):
        """张量不变量命令组"""
        pass

    @inv.command("dim")
    async def dim(self, event: AstrMessageEvent, r: str = "", m: str = ""):
        """稳定维数 - 使用方法: /inv dim <r> <m>"""
        try:
            config = self._config("dim", r=_to_int(r, "r"), m=_to_int(m, "m"))
            result = await self._run(config)
            yield event.plain_result(self._reply(result, self.show_json))
        except MalformedInputError as e:
            yield event.plain_result(f"❌ {e}\n使用方法: /inv dim <r> <m>")
        except Exception as e:
            logger.error(f"计算稳定维数失败: {e}", exc_info=True)
            yield event.plain_result("😥 计算稳定维数失败")

    @inv.command("table")
    async def table(self, event: AstrMessageEvent, rmax: str = "8", mmax: str = "6"):
        """维数表 - 使用方法: /inv table <rmax> <mmax>"""
        try:
            config = self._config("table", r_max=_to_int(rmax, "rmax"), m_max=_to_int(mmax, "mmax"))
            result = await self._run(config)
            yield event.plain_result(self._reply(result, self.show_json))
        except MalformedInputError as e:
            yield event.plain_result(f"❌ {e}\n使用方法: /inv table <rmax> <mmax>")
        except Exception as e:
            logger.error(f"生成维数表失败: {e}", exc_info=True)
            yield event.plain_result("😥 生成维数表失败")

    @inv.command("orbits")
    async def orbits(self, event: AstrMessageEvent, r: str = "", m: str = ""):
        """轨道代表 - 使用方法: /inv orbits <r> <m>"""
        try:
            config = self._config("orbits", r=_to_int(r, "r"), m=_to_int(m, "m"))
            result = await self._run(config)
            yield event.plain_result(self._reply(result, self.show_json))
        except MalformedInputError as e:
            yield event.plain_result(f"❌ {e}\n使用方法: /inv orbits <r> <m>")
        except Exception as e:
            logger.error(f"枚举轨道失败: {e}", exc_info=True)
            yield event.plain_result("😥 枚举轨道失败")

    @inv.command("invariant")
    async def invariant(self, event: AstrMessageEvent, r: str = "", m: str = "", k: str = "1", dims: str = ""):
        """轨道不变量 - 使用方法: /inv invariant <r> <m> <k> [n1,n2,…]"""
        try:
            config = self._config(
                "invariant",
                r=_to_int(r, "r"),
                m=_to_int(m, "m"),
                orbit=_to_int(k, "k"),
                dims=CycleParser.parse_dims(dims),
            )
            result = await self._run(config)
            yield event.plain_result(self._reply(result, self.show_json))
        except MalformedInputError as e:
            yield event.plain_result(f"❌ {e}\n使用方法: /inv invariant <r> <m> <k> [n1,n2,…]")
        except Exception as e:
            logger.error(f"构造不变量失败: {e}", exc_info=True)
            yield event.plain_result("😥 构造不变量失败")

    @inv.command("verify")
    async def verify(self, event: AstrMessageEvent, r: str = "", m: str = "", dims: str = "", trials: str = ""):
        """不变性校验 - 使用方法: /inv verify <r> <m> [n1,n2,…] [trials]"""
        try:
            config = self._config(
                "verify",
                r=_to_int(r, "r"),
                m=_to_int(m, "m"),
                dims=CycleParser.parse_dims(dims),
            )
            if trials:
                config.trials = _to_int(trials, "trials")
            result = await self._run(config)
            yield event.plain_result(self._reply(result, self.show_json))
        except MalformedInputError as e:
            yield event.plain_result(f"❌ {e}\n使用方法: /inv verify <r> <m> [n1,n2,…] [trials]")
        except Exception as e:
            logger.error(f"不变性校验失败: {e}", exc_info=True)
            yield event.plain_result("😥 不变性校验失败")

    @inv.command("trees")
    async def trees(self, event: AstrMessageEvent, matching: str = ""):
        """匹配转系统发生树 - 使用方法: /inv trees <匹配>"""
        try:
            # 匹配中的空格会被拆成多个参数，取整条消息的剩余部分
            text = event.message_str.split("trees", 1)[-1].strip() or matching
            if not text:
                raise MalformedInputError("缺少匹配")
            config = self._config("trees", matching=text)
            result = await self._run(config)
            yield event.plain_result(self._reply(result, self.show_json))
        except MalformedInputError as e:
            yield event.plain_result(f"❌ {e}\n使用方法: /inv trees (1 4)(2 3)(5 8)(6 7)")
        except Exception as e:
            logger.error(f"换算系统发生树失败: {e}", exc_info=True)
            yield event.plain_result("😥 换算系统发生树失败")

    @inv.command("status")
    async def status(self, event: AstrMessageEvent):
        """查看运行统计"""
        try:
            stats = self.ledger.statistics()
            by_command = ", ".join(f"{k}×{v}" for k, v in stats["by_command"].items()) or "无"
            recent = self.ledger.recent(5)
            recent_lines = "\n".join(
                f"• {'🟢' if rec.success else '🔴'} {rec.command} ({rec.duration:.2f}s) {rec.message}"
                for rec in recent
            ) or "无"

            status_text = f"""📊 **运行状态**

**统计:**
• 总计算次数: {stats['total_runs']}
• 成功率: {stats['success_rate']}%
• 近期失败: {stats['recent_failures']}
• 累计耗时: {stats['total_duration']:.2f}s
• 各命令: {by_command}

**配置:**
• 枚举上限 2m ≤ {self.enumeration_cap}，规范化上限 2m ≤ {self.canonical_cap}
• 求值预算 {self.evaluation_budget}，容差 {self.tolerance:g}
• r=2 的维数序列: {dimension_series(2, 5)}

**最近运行:**
{recent_lines}
"""
            yield event.plain_result(status_text)

        except Exception as e:
            logger.error(f"查看运行状态失败: {e}", exc_info=True)
            yield event.plain_result("😥 获取运行状态失败")

    @inv.command("help")
    async def help(self, event: AstrMessageEvent):
        """显示帮助"""
        yield event.plain_result(HELP_TEXT)
